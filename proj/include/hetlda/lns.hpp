#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hetlda/discriminant.hpp"

namespace hetlda {

struct LnsConfig {
    int max_iters = 1000;            // R, sweeps
    int early_stop = 100;            // r_max, sweeps without a new best
    double perturb_fraction = 0.1;   // delta_i = perturb_fraction * |v_i|
    // Step for components that are exactly zero. Unset means
    // 1e-3 * max_i |v_i| of the current solution.
    std::optional<double> zero_component_step;
    std::uint64_t seed = 0;          // reserved; the search is deterministic

    void validate() const;
};

struct LnsResult {
    LinearDiscriminant disc;
    std::size_t error_count = 0;
    int sweeps = 0;
    std::vector<std::size_t> best_history;  // best-so-far count after each sweep
};

/**
 * Local neighbourhood search over v = [w0, w] minimising training
 * misclassifications between `class_a` (decided when w.x >= w0) and `class_b`.
 *
 * Each sweep scores the 2(d+1) single-component moves v_i +- delta_i and moves
 * to the best one even when it is not an improvement; ties go to the lowest
 * component index, + before -. The best solution ever seen is returned.
 */
LnsResult local_neighbourhood_search(const LinearDiscriminant& init, const LabeledDataset& train,
                                     int class_a, int class_b, const LnsConfig& cfg = {});

}  // namespace hetlda
