#include "hetlda/baselines.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "hetlda/error.hpp"
#include "hetlda/random.hpp"

namespace hetlda {

void SweepConfig::validate() const {
    if (!(step > 0.0) || step > 1.0)
        throw Error(ErrorKind::InvalidArgument, "sweep step must be in (0, 1]");
    if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be positive");
    if (!(s_min <= s_max)) throw Error(ErrorKind::InvalidArgument, "s_min must not exceed s_max");
}

namespace {

Vector mean_difference(const ClassStats& s1, const ClassStats& s2) {
    if (s1.mean.size() != s2.mean.size())
        throw Error(ErrorKind::DimensionMismatch, "class means differ in dimension");
    Vector delta = s1.mean - s2.mean;
    if (delta.isZero(0.0))
        throw Error(ErrorKind::ZeroDirection, "class means coincide");
    return delta;
}

struct Moments {
    double mu1, mu2, var1, var2;
};

// Projected moments of w, or nothing when w is unusable (zero or degenerate).
std::optional<Moments> moments_of(const Vector& w, const ClassStats& s1, const ClassStats& s2) {
    if (w.isZero(0.0) || !w.allFinite()) return std::nullopt;
    const Moments m{w.dot(s1.mean), w.dot(s2.mean), w.dot(s1.cov * w), w.dot(s2.cov * w)};
    if (!(m.var1 > 1e-300) || !(m.var2 > 1e-300) || !std::isfinite(m.var1) || !std::isfinite(m.var2))
        return std::nullopt;
    return m;
}

std::optional<double> score(const Moments& m, double w0, const Priors& priors) {
    if (!std::isfinite(w0)) return std::nullopt;
    return bayes_error(ProjectedStats::from_moments(m.mu1, m.mu2, m.var1, m.var2, w0), priors);
}

// Keeps the first strictly better candidate, so earlier candidates win ties.
struct Best {
    BaselineResult result;
    bool found = false;

    void offer(const Vector& w, double w0, double pe, double s1, double s2) {
        if (found && !(pe < result.bayes_error)) return;
        result.disc = {w, w0};
        result.bayes_error = pe;
        result.s1 = s1;
        result.s2 = s2;
        found = true;
    }

    BaselineResult take(const char* method, int candidates) {
        if (!found)
            throw Error(ErrorKind::DegenerateProjection,
                        std::string(method) + ": no candidate produced a valid projection");
        result.candidates = candidates;
        return result;
    }
};

std::vector<double> draw_uniform(std::uint64_t seed, std::size_t count, double lo, double hi) {
    Rng rng(seed);
    std::vector<double> draws(count);
    for (double& v : draws) v = rng.uniform(lo, hi);
    return draws;
}

}  // namespace

BaselineResult train_lda(const ClassStats& s1, const ClassStats& s2, const Priors& priors) {
    const Vector delta = mean_difference(s1, s2);
    const double n1 = static_cast<double>(s1.count);
    const double n2 = static_cast<double>(s2.count);
    const Matrix scatter = n1 * s1.cov + n2 * s2.cov;
    const Vector w = numkit::solve_symmetric(scatter, delta);
    if (w.isZero(0.0))
        throw Error(ErrorKind::ZeroDirection, "pooled scatter annihilates the mean difference");

    // With the pooled covariance P = scatter / n the rule is
    //   x' P^+ d >= ln(tau) + (m1' P^+ m1 - m2' P^+ m2) / 2,
    // and dividing through by n expresses it in terms of w = scatter^+ d.
    const double n = n1 + n2;
    const double w0 = std::log(priors.tau) / n + 0.5 * (s1.mean + s2.mean).dot(w);

    BaselineResult r;
    r.disc = {w, w0};
    r.bayes_error = bayes_error(project_stats(r.disc, s1, s2), priors);
    r.candidates = 1;
    return r;
}

BaselineResult train_chld(const ClassStats& s1, const ClassStats& s2, const Priors& priors,
                          const SweepConfig& cfg) {
    cfg.validate();
    const Vector delta = mean_difference(s1, s2);
    const int steps = static_cast<int>(std::floor(1.0 / cfg.step + 1e-9));

    Best best;
    for (int k = 0; k <= steps; ++k) {
        const double s = std::min(k * cfg.step, 1.0);
        const Vector w = numkit::solve_symmetric(s * s1.cov + (1.0 - s) * s2.cov, delta);
        const auto m = moments_of(w, s1, s2);
        if (!m) continue;
        const double w0 =
            (s * m->mu2 * m->var1 + (1.0 - s) * m->mu1 * m->var2) / (s * m->var1 + (1.0 - s) * m->var2);
        if (const auto pe = score(*m, w0, priors)) best.offer(w, w0, *pe, s, 0.0);
    }
    return best.take("C-HLD", steps + 1);
}

BaselineResult train_rhld1(const ClassStats& s1, const ClassStats& s2, const Priors& priors,
                           const SweepConfig& cfg) {
    cfg.validate();
    const Vector delta = mean_difference(s1, s2);
    const auto draws = draw_uniform(cfg.seed, static_cast<std::size_t>(cfg.trials), cfg.s_min, cfg.s_max);

    Best best;
    for (const double s : draws) {
        const Vector w = numkit::solve_symmetric(s * s2.cov + (1.0 - s) * s1.cov, delta);
        const auto m = moments_of(w, s1, s2);
        if (!m) continue;
        const double den = (1.0 - s) * m->var1 + s * m->var2;
        if (den == 0.0) continue;
        const double w0 = (s * m->var2 * m->mu1 + (1.0 - s) * m->var1 * m->mu2) / den;
        if (const auto pe = score(*m, w0, priors)) best.offer(w, w0, *pe, s, 0.0);
    }
    return best.take("R-HLD-1", cfg.trials);
}

BaselineResult train_rhld2(const ClassStats& s1, const ClassStats& s2, const Priors& priors,
                           const SweepConfig& cfg) {
    cfg.validate();
    const Vector delta = mean_difference(s1, s2);
    const auto draws =
        draw_uniform(cfg.seed, 2 * static_cast<std::size_t>(cfg.trials), cfg.s_min, cfg.s_max);

    Best best;
    for (std::size_t t = 0; t < static_cast<std::size_t>(cfg.trials); ++t) {
        const double a = draws[2 * t];
        const double b = draws[2 * t + 1];
        const Vector w = numkit::solve_symmetric(a * s1.cov + b * s2.cov, delta);
        const auto m = moments_of(w, s1, s2);
        if (!m) continue;
        const double from_first = m->mu1 - a * m->var1;
        const double from_second = m->mu2 + b * m->var2;
        for (const double w0 : {from_first, from_second, 0.5 * (from_first + from_second)}) {
            if (const auto pe = score(*m, w0, priors)) best.offer(w, w0, *pe, a, b);
        }
    }
    return best.take("R-HLD-2", 3 * cfg.trials);
}

}  // namespace hetlda
