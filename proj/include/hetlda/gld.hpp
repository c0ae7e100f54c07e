#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "hetlda/discriminant.hpp"

namespace hetlda {

struct GldConfig {
    int max_iters = 20;                    // I
    double grad_tol = 1e-6;                // stop once |grad p_e| <= grad_tol
    double objective_tol = 0.0;            // |delta p_e| tolerance; <= 0 disables
    double weight_tol = 0.0;               // |delta ||w||| tolerance; <= 0 disables
    int patience = 3;                      // consecutive iterations for the two above
    double variance_equality_tol = 1e-12;  // relative; below it the homoscedastic limit is used

    void validate() const;
};

enum class StopReason {
    gradient,
    objective,
    weight_norm,
    iteration_cap,
    complex_root,
    degenerate_projection,
    singular_update,
};

std::string_view to_string(StopReason reason) noexcept;

struct GldIterate {
    LinearDiscriminant disc;
    double bayes_error = 0.0;
    double gradient_norm = 0.0;
};

struct GldTrace {
    std::vector<GldIterate> iterates;
    StopReason converged_by = StopReason::iteration_cap;
    std::size_t best_index = 0;
};

struct GldResult {
    LinearDiscriminant disc;
    double bayes_error = 0.0;
    GldTrace trace;
};

struct ThresholdRoots {
    double plus;   // the root that minimises p_e
    double minus;  // the other stationary point (a local maximum)
};

/// Both stationary thresholds of p_e(w0) for a projected pair of Gaussians
/// with unequal variances. Throws ComplexRoot when no real root exists and
/// InvalidArgument when var1 == var2.
ThresholdRoots threshold_roots(double mu1, double mu2, double var1, double var2, double tau);

/// Optimal threshold for fixed projected moments. Falls back to the
/// homoscedastic closed form when |var1 - var2| <= tol * max(var1, var2).
double solve_threshold(double mu1, double mu2, double var1, double var2, double tau,
                       double variance_equality_tol = GldConfig{}.variance_equality_tol);

/// Second-order condition d^2 p_e / d w0^2 >= 0 at the stationary threshold:
/// z2/sigma2 >= z1/sigma1 (with a 1e-12 allowance at equality).
bool second_order_holds(const ProjectedStats& proj);

/// Fisher direction (n1*S1 + n2*S2)^+ (m1 - m2).
Vector fisher_init(const ClassStats& s1, const ClassStats& s2);

/// Fixed-point weight update (z2/sigma2 * S2 - z1/sigma1 * S1)^+ (m1 - m2).
Vector update_weights(const ClassStats& s1, const ClassStats& s2, const ProjectedStats& proj);

/// Blend parameter s of the R-HLD-1 family that reproduces the current
/// (w, w0) up to positive scale: s = -sigma2 z1 / (sigma1 z2 - sigma2 z1).
double recover_s(const ProjectedStats& proj);

/**
 * Gaussian Linear Discriminant.
 *
 * Starts from the Fisher direction and alternates the optimal threshold with
 * the fixed-point weight update. Every iterate is recorded; the one with the
 * smallest Bayes error is returned. A ComplexRoot, DegenerateProjection or
 * SingularUpdate mid-run ends the loop and is reported in the trace.
 * ZeroDirection from the Fisher start, or a failure before the first iterate
 * is recorded, propagates.
 */
GldResult train_gld(const ClassStats& s1, const ClassStats& s2, const Priors& priors,
                    const GldConfig& cfg = {});

}  // namespace hetlda
