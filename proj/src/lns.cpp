#include "hetlda/lns.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hetlda/error.hpp"

namespace hetlda {

void LnsConfig::validate() const {
    if (max_iters < 1) throw Error(ErrorKind::InvalidArgument, "LNS max_iters must be positive");
    if (early_stop < 1 || early_stop > max_iters)
        throw Error(ErrorKind::InvalidArgument, "LNS early_stop must be in [1, max_iters]");
    if (!(perturb_fraction > 0.0))
        throw Error(ErrorKind::InvalidArgument, "LNS perturb_fraction must be positive");
    if (zero_component_step && !(*zero_component_step > 0.0))
        throw Error(ErrorKind::InvalidArgument, "LNS zero_component_step must be positive");
}

namespace {

// Training samples of the two classes with their targets. Samples are kept as
// separate vectors so scoring runs the exact dot product classify() runs and
// counts agree with training_error_count() bit for bit.
struct BinarySet {
    std::vector<Vector> samples;
    std::vector<bool> is_a;
};

BinarySet restrict_to_pair(const LabeledDataset& data, int class_a, int class_b) {
    const Matrix rows_a = data.rows_of_class(class_a);
    const Matrix rows_b = data.rows_of_class(class_b);
    if (rows_a.rows() == 0 || rows_b.rows() == 0)
        throw Error(ErrorKind::EmptyClass, "LNS needs samples from both classes");
    BinarySet set;
    for (Eigen::Index i = 0; i < rows_a.rows(); ++i) {
        set.samples.emplace_back(rows_a.row(i).transpose());
        set.is_a.push_back(true);
    }
    for (Eigen::Index i = 0; i < rows_b.rows(); ++i) {
        set.samples.emplace_back(rows_b.row(i).transpose());
        set.is_a.push_back(false);
    }
    return set;
}

// v[0] is the threshold, v[1..d] the weights.
std::size_t count_errors(const BinarySet& set, const Vector& v) {
    const LinearDiscriminant disc{v.tail(v.size() - 1), v[0]};
    std::size_t errors = 0;
    for (std::size_t i = 0; i < set.samples.size(); ++i) {
        if ((classify(disc, set.samples[i]) == Side::a) != set.is_a[i]) ++errors;
    }
    return errors;
}

}  // namespace

LnsResult local_neighbourhood_search(const LinearDiscriminant& init, const LabeledDataset& train,
                                     int class_a, int class_b, const LnsConfig& cfg) {
    cfg.validate();
    if (init.w.size() != train.dimension())
        throw Error(ErrorKind::DimensionMismatch,
                    "initial discriminant has dimension " + std::to_string(init.w.size()) +
                        ", data has " + std::to_string(train.dimension()));
    const BinarySet set = restrict_to_pair(train, class_a, class_b);
    const Eigen::Index len = init.w.size() + 1;

    Vector current(len);
    current << init.w0, init.w;
    Vector best = current;
    std::size_t best_errors = count_errors(set, current);

    LnsResult result;
    int stale = 0;
    Vector candidate(len);
    Vector chosen(len);
    while (result.sweeps < cfg.max_iters && stale < cfg.early_stop) {
        const double fallback =
            cfg.zero_component_step.value_or(1e-3 * current.cwiseAbs().maxCoeff());
        std::size_t sweep_best = 0;
        bool have_move = false;
        for (Eigen::Index i = 0; i < len; ++i) {
            const double delta = current[i] != 0.0 ? cfg.perturb_fraction * std::abs(current[i]) : fallback;
            if (!(delta > 0.0)) continue;
            for (const double sign : {1.0, -1.0}) {
                candidate = current;
                candidate[i] += sign * delta;
                const std::size_t errors = count_errors(set, candidate);
                if (!have_move || errors < sweep_best) {
                    sweep_best = errors;
                    chosen = candidate;
                    have_move = true;
                }
            }
        }
        ++result.sweeps;
        if (!have_move) {
            result.best_history.push_back(best_errors);
            break;
        }
        current = chosen;
        if (sweep_best < best_errors) {
            best_errors = sweep_best;
            best = current;
            stale = 0;
        } else {
            ++stale;
        }
        result.best_history.push_back(best_errors);
    }

    result.disc = {best.tail(len - 1), best[0]};
    result.error_count = best_errors;
    return result;
}

}  // namespace hetlda
