#include "hetlda/gld.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hetlda/error.hpp"

namespace hetlda {

void GldConfig::validate() const {
    if (max_iters < 1) throw Error(ErrorKind::InvalidArgument, "max_iters must be positive");
    if (!(grad_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "grad_tol must be positive");
    if (!(objective_tol >= 0.0) || !(weight_tol >= 0.0))
        throw Error(ErrorKind::InvalidArgument, "objective_tol and weight_tol must be >= 0 (0 disables)");
    if (patience < 1) throw Error(ErrorKind::InvalidArgument, "patience must be at least 1");
    if (!(variance_equality_tol >= 0.0))
        throw Error(ErrorKind::InvalidArgument, "variance_equality_tol must be non-negative");
}

std::string_view to_string(StopReason reason) noexcept {
    switch (reason) {
        case StopReason::gradient: return "gradient";
        case StopReason::objective: return "objective";
        case StopReason::weight_norm: return "weight_norm";
        case StopReason::iteration_cap: return "iteration_cap";
        case StopReason::complex_root: return "complex_root";
        case StopReason::degenerate_projection: return "degenerate_projection";
        case StopReason::singular_update: return "singular_update";
    }
    return "unknown";
}

namespace {

void require_threshold_inputs(double var1, double var2, double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw Error(ErrorKind::InvalidArgument, "tau must be positive and finite");
    if (!(var1 > 0.0) || !(var2 > 0.0) || !std::isfinite(var1) || !std::isfinite(var2))
        throw Error(ErrorKind::DegenerateProjection, "projected variances must be positive");
}

}  // namespace

ThresholdRoots threshold_roots(double mu1, double mu2, double var1, double var2, double tau) {
    require_threshold_inputs(var1, var2, tau);
    const double denom = var1 - var2;
    if (denom == 0.0)
        throw Error(ErrorKind::InvalidArgument, "equal projected variances have a single root");

    const double sigma1 = std::sqrt(var1);
    const double sigma2 = std::sqrt(var2);
    const double log_term = std::log(tau * sigma1 / sigma2);
    const double radicand = (mu1 - mu2) * (mu1 - mu2) + 2.0 * denom * log_term;
    if (radicand < 0.0)
        throw Error(ErrorKind::ComplexRoot,
                    "threshold equation has no real root (radicand " + std::to_string(radicand) + ")");

    // Roots are (a +- b) / denom. Their numerators multiply to denom * c, so the
    // root whose numerator would cancel is taken from c instead.
    const double a = mu2 * var1 - mu1 * var2;
    const double b = sigma1 * sigma2 * std::sqrt(radicand);
    const double c = mu2 * mu2 * var1 - mu1 * mu1 * var2 - 2.0 * var1 * var2 * log_term;

    ThresholdRoots roots{};
    if (a >= 0.0) {
        roots.plus = (a + b) / denom;
        roots.minus = (a + b) != 0.0 ? c / (a + b) : (a - b) / denom;
    } else {
        roots.plus = c / (a - b);
        roots.minus = (a - b) / denom;
    }
    return roots;
}

double solve_threshold(double mu1, double mu2, double var1, double var2, double tau,
                       double variance_equality_tol) {
    require_threshold_inputs(var1, var2, tau);
    if (std::abs(var1 - var2) <= variance_equality_tol * std::max(var1, var2)) {
        const double midpoint = 0.5 * (mu1 + mu2);
        if (mu1 == mu2) return midpoint;
        const double var = 0.5 * (var1 + var2);
        return midpoint + var * std::log(tau) / (mu1 - mu2);
    }
    return threshold_roots(mu1, mu2, var1, var2, tau).plus;
}

bool second_order_holds(const ProjectedStats& proj) {
    return proj.z2 / proj.sigma2() >= proj.z1 / proj.sigma1() - 1e-12;
}

Vector fisher_init(const ClassStats& s1, const ClassStats& s2) {
    const Vector delta = s1.mean - s2.mean;
    if (delta.isZero(0.0))
        throw Error(ErrorKind::ZeroDirection, "class means coincide; Fisher direction is zero");
    const Matrix scatter =
        static_cast<double>(s1.count) * s1.cov + static_cast<double>(s2.count) * s2.cov;
    Vector w = numkit::solve_symmetric(scatter, delta);
    if (w.isZero(0.0))
        throw Error(ErrorKind::ZeroDirection, "pooled scatter annihilates the mean difference");
    return w;
}

Vector update_weights(const ClassStats& s1, const ClassStats& s2, const ProjectedStats& proj) {
    const Matrix blend = (proj.z2 / proj.sigma2()) * s2.cov - (proj.z1 / proj.sigma1()) * s1.cov;
    Vector w = numkit::solve_symmetric(blend, s1.mean - s2.mean);
    if (w.isZero(0.0) || !w.allFinite())
        throw Error(ErrorKind::SingularUpdate, "weight update produced no usable direction");
    return w;
}

double recover_s(const ProjectedStats& proj) {
    const double sigma1 = proj.sigma1();
    const double sigma2 = proj.sigma2();
    const double denom = sigma1 * proj.z2 - sigma2 * proj.z1;
    if (denom == 0.0)
        throw Error(ErrorKind::Indeterminate, "sigma1*z2 == sigma2*z1; s is undefined");
    return -sigma2 * proj.z1 / denom + 0.0;
}

GldResult train_gld(const ClassStats& s1, const ClassStats& s2, const Priors& priors,
                    const GldConfig& cfg) {
    cfg.validate();
    LinearDiscriminant current{fisher_init(s1, s2), 0.0};
    ProjectedStats proj = project_stats(current, s1, s2);

    GldTrace trace;
    int objective_streak = 0;
    int weight_streak = 0;
    bool stopped = false;

    for (int iter = 0; iter < cfg.max_iters && !stopped; ++iter) {
        try {
            current.w0 = solve_threshold(proj.mu1, proj.mu2, proj.var1, proj.var2, priors.tau,
                                         cfg.variance_equality_tol);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ComplexRoot || trace.iterates.empty()) throw;
            trace.converged_by = StopReason::complex_root;
            break;
        }
        proj = ProjectedStats::from_moments(proj.mu1, proj.mu2, proj.var1, proj.var2, current.w0);
        const double pe = bayes_error(proj, priors);
        const double grad_norm = gradient_bayes_error(current, s1, s2, priors).norm();

        if (!trace.iterates.empty()) {
            const GldIterate& prev = trace.iterates.back();
            objective_streak =
                std::abs(pe - prev.bayes_error) <= cfg.objective_tol ? objective_streak + 1 : 0;
            weight_streak = std::abs(current.w.norm() - prev.disc.w.norm()) <= cfg.weight_tol
                                ? weight_streak + 1
                                : 0;
        }
        trace.iterates.push_back({current, pe, grad_norm});

        if (grad_norm <= cfg.grad_tol) {
            trace.converged_by = StopReason::gradient;
            break;
        }
        if (cfg.objective_tol > 0.0 && objective_streak >= cfg.patience) {
            trace.converged_by = StopReason::objective;
            break;
        }
        if (cfg.weight_tol > 0.0 && weight_streak >= cfg.patience) {
            trace.converged_by = StopReason::weight_norm;
            break;
        }
        if (iter + 1 == cfg.max_iters) {
            trace.converged_by = StopReason::iteration_cap;
            break;
        }

        try {
            current.w = update_weights(s1, s2, proj);
            proj = project_stats(current, s1, s2);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::SingularUpdate) {
                trace.converged_by = StopReason::singular_update;
            } else if (e.kind() == ErrorKind::DegenerateProjection) {
                trace.converged_by = StopReason::degenerate_projection;
            } else {
                throw;
            }
            stopped = true;
        }
    }

    const auto best = std::min_element(
        trace.iterates.begin(), trace.iterates.end(),
        [](const GldIterate& x, const GldIterate& y) { return x.bayes_error < y.bayes_error; });
    trace.best_index = static_cast<std::size_t>(best - trace.iterates.begin());

    GldResult result;
    result.disc = best->disc;
    result.bayes_error = best->bayes_error;
    result.trace = std::move(trace);
    return result;
}

}  // namespace hetlda
