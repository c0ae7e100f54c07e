#pragma once

#include <cstdint>

#include "hetlda/discriminant.hpp"

namespace hetlda {

struct SweepConfig {
    double step = 0.001;  // C-HLD grid spacing on [0, 1]
    int trials = 1000;    // random draws for R-HLD-1 / R-HLD-2
    double s_min = -2.0;
    double s_max = 3.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct BaselineResult {
    LinearDiscriminant disc;
    double bayes_error = 0.0;
    double s1 = 0.0;  // best s (C-HLD, R-HLD-1) or best s1 (R-HLD-2)
    double s2 = 0.0;  // best s2 (R-HLD-2 only)
    int candidates = 0;
};

/// Classical LDA. Direction (n1*S1 + n2*S2)^+ (m1 - m2); the threshold is the
/// log-prior-ratio rule evaluated with the pooled maximum-likelihood covariance
/// (n1*S1 + n2*S2) / (n1 + n2) and rescaled to match w.
BaselineResult train_lda(const ClassStats& s1, const ClassStats& s2, const Priors& priors);

/// C-HLD: grid s = 0, step, 2*step, ..., 1 over w = [s*S1 + (1-s)*S2]^+ (m1 - m2)
/// with the weighted-mean threshold. Ties go to the smaller s.
BaselineResult train_chld(const ClassStats& s1, const ClassStats& s2, const Priors& priors,
                          const SweepConfig& cfg = {});

/// R-HLD-1: `trials` uniform draws of s over [s_min, s_max] for
/// w = [s*S2 + (1-s)*S1]^+ (m1 - m2) with the threshold
/// (s*v2*mu1 + (1-s)*v1*mu2) / ((1-s)*v1 + s*v2).
BaselineResult train_rhld1(const ClassStats& s1, const ClassStats& s2, const Priors& priors,
                           const SweepConfig& cfg = {});

/// R-HLD-2: `trials` uniform draws of (s1, s2) over [s_min, s_max]^2 for
/// w = [s1*S1 + s2*S2]^+ (m1 - m2). The two threshold readings mu1 - s1*v1 and
/// mu2 + s2*v2 and their midpoint are all scored; the best one is kept.
BaselineResult train_rhld2(const ClassStats& s1, const ClassStats& s2, const Priors& priors,
                           const SweepConfig& cfg = {});

}  // namespace hetlda
