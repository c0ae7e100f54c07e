#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hetlda/discriminant.hpp"

namespace hetlda {

/// One pairwise training job: the full dataset plus the two classes and their
/// statistics. Trainers that need samples read them from `data` by label.
struct BinaryProblem {
    const LabeledDataset& data;
    int class_a;
    int class_b;
    BinaryStats stats;
};

struct BinaryFit {
    LinearDiscriminant disc;
    double bayes_error = 0.0;  // vote confidence is 1 - bayes_error
};

using BinaryTrainer = std::function<BinaryFit(const BinaryProblem&)>;

struct PairModel {
    int class_a = 0;
    int class_b = 1;
    LinearDiscriminant disc;
    double bayes_error = 0.0;
};

struct OvoModel {
    int num_classes = 0;
    std::vector<std::string> class_names;
    std::vector<PairModel> pairs;  // (0,1), (0,2), ..., (K-2,K-1)

    Eigen::Index dimension() const;
    double mean_bayes_error() const;
};

/// Trains one classifier per unordered class pair on that pair's samples only.
OvoModel train_ovo(const LabeledDataset& data, const BinaryTrainer& trainer);

/// Per-class vote totals, each vote weighted by 1 - p_e of the pair that cast it.
std::vector<double> ovo_scores(const OvoModel& model, const Vector& x);

/// Highest weighted vote; exact ties go to the lowest class index.
int predict_ovo(const OvoModel& model, const Vector& x);

}  // namespace hetlda
