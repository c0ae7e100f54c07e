#include "hetlda/multiclass.hpp"

#include <string>

#include "hetlda/error.hpp"

namespace hetlda {

Eigen::Index OvoModel::dimension() const { return pairs.empty() ? 0 : pairs.front().disc.w.size(); }

double OvoModel::mean_bayes_error() const {
    if (pairs.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& p : pairs) sum += p.bayes_error;
    return sum / static_cast<double>(pairs.size());
}

OvoModel train_ovo(const LabeledDataset& data, const BinaryTrainer& trainer) {
    const int k = data.num_classes();
    if (k < 2) throw Error(ErrorKind::InvalidArgument, "one-vs-one needs at least two classes");

    OvoModel model;
    model.num_classes = k;
    model.class_names = data.class_names();
    model.pairs.reserve(static_cast<std::size_t>(k * (k - 1) / 2));
    for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) {
            BinaryStats stats;
            try {
                stats = compute_class_stats(data, a, b);
            } catch (const Error& e) {
                throw Error(e.kind(), "pair (" + data.class_names()[static_cast<std::size_t>(a)] + ", " +
                                          data.class_names()[static_cast<std::size_t>(b)] + "): " + e.what());
            }
            const BinaryFit fit = trainer(BinaryProblem{data, a, b, std::move(stats)});
            model.pairs.push_back({a, b, fit.disc, fit.bayes_error});
        }
    }
    return model;
}

std::vector<double> ovo_scores(const OvoModel& model, const Vector& x) {
    std::vector<double> scores(static_cast<std::size_t>(model.num_classes), 0.0);
    for (const auto& pair : model.pairs) {
        const int winner = classify(pair.disc, x) == Side::a ? pair.class_a : pair.class_b;
        scores[static_cast<std::size_t>(winner)] += 1.0 - pair.bayes_error;
    }
    return scores;
}

int predict_ovo(const OvoModel& model, const Vector& x) {
    if (x.size() != model.dimension())
        throw Error(ErrorKind::DimensionMismatch,
                    "sample dimension " + std::to_string(x.size()) + " does not match model dimension " +
                        std::to_string(model.dimension()));
    const auto scores = ovo_scores(model, x);
    int best = 0;
    for (int k = 1; k < model.num_classes; ++k) {
        if (scores[static_cast<std::size_t>(k)] > scores[static_cast<std::size_t>(best)]) best = k;
    }
    return best;
}

}  // namespace hetlda
