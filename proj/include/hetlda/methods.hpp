#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hetlda/baselines.hpp"
#include "hetlda/gld.hpp"
#include "hetlda/lns.hpp"
#include "hetlda/multiclass.hpp"

namespace hetlda {

enum class Method { lda, chld, rhld1, rhld2, gld, gld_lns };

std::string_view to_string(Method method) noexcept;

/// Accepts the CLI spellings: lda, chld, rhld1, rhld2, gld, gld-lns.
Method parse_method(std::string_view name);
std::vector<Method> parse_method_list(std::string_view comma_separated);

struct TrainerConfig {
    GldConfig gld;
    SweepConfig sweep;
    LnsConfig lns;
};

/// Binary trainer for `method`. gld-lns refines the GLD solution with LNS on
/// the pair's training samples and reports the training error rate as p_e.
BinaryTrainer make_trainer(Method method, const TrainerConfig& cfg);

}  // namespace hetlda
