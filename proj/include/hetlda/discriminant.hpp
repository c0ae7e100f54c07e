#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hetlda/numkit.hpp"

namespace hetlda {

/// Feature matrix (one sample per row) with dense integer labels in [0, K).
class LabeledDataset {
public:
    LabeledDataset() = default;

    /// Validates every invariant: n >= 1, d >= 1, finite features, labels in
    /// range. When `class_names` is empty, K is max(label) + 1 and names are
    /// the label indices.
    LabeledDataset(Matrix features, std::vector<int> labels,
                   std::vector<std::string> class_names = {});

    const Matrix& features() const noexcept { return features_; }
    const std::vector<int>& labels() const noexcept { return labels_; }
    const std::vector<std::string>& class_names() const noexcept { return class_names_; }

    std::size_t size() const noexcept { return labels_.size(); }
    Eigen::Index dimension() const noexcept { return features_.cols(); }
    int num_classes() const noexcept { return static_cast<int>(class_names_.size()); }
    std::vector<std::size_t> class_counts() const;

    /// Rows selected by `indices`, keeping the class list.
    LabeledDataset subset(const std::vector<std::size_t>& indices) const;

    /// Rows carrying label `label`, one per row.
    Matrix rows_of_class(int label) const;

private:
    Matrix features_;
    std::vector<int> labels_;
    std::vector<std::string> class_names_;
};

struct ClassStats {
    Vector mean;
    Matrix cov;
    std::size_t count = 0;
    double prior = 0.0;
};

struct Priors {
    double pi1 = 0.5;
    double pi2 = 0.5;
    double tau = 1.0;  // pi2 / pi1

    static Priors from_probabilities(double pi1, double pi2);
    static Priors from_counts(std::size_t n1, std::size_t n2);
};

/// Decide class a when w.x >= w0, class b otherwise.
struct LinearDiscriminant {
    Vector w;
    double w0 = 0.0;
};

struct ProjectedStats {
    double mu1 = 0.0;
    double mu2 = 0.0;
    double var1 = 1.0;
    double var2 = 1.0;
    double z1 = 0.0;
    double z2 = 0.0;

    double sigma1() const;
    double sigma2() const;

    /// Builds the projected stats of a scalar threshold against two 1-D
    /// Gaussians; throws DegenerateProjection on non-positive variance.
    static ProjectedStats from_moments(double mu1, double mu2, double var1, double var2, double w0);
};

struct BinaryStats {
    ClassStats first;   // class a, decided when w.x >= w0
    ClassStats second;  // class b
    Priors priors;
};

/// Per-class moments of `class_a` and `class_b` with relative-frequency priors.
/// Each class needs at least two samples.
BinaryStats compute_class_stats(const LabeledDataset& data, int class_a, int class_b);

/// Stats from raw row blocks; used when the caller already split the classes.
BinaryStats compute_class_stats(const Matrix& rows_a, const Matrix& rows_b);

ProjectedStats project_stats(const LinearDiscriminant& disc, const ClassStats& s1,
                             const ClassStats& s2);

/// Gaussian-model probability of misclassification,
///   p_e = pi1 * [1 - Q(z1)] + pi2 * Q(z2).
double bayes_error(const ProjectedStats& proj, const Priors& priors);

struct Gradient {
    Vector w;
    double w0 = 0.0;

    double norm() const;
};

/// Analytic gradient of bayes_error with respect to (w, w0).
Gradient gradient_bayes_error(const LinearDiscriminant& disc, const ClassStats& s1,
                              const ClassStats& s2, const Priors& priors);

enum class Side { a, b };

Side classify(const LinearDiscriminant& disc, const Vector& x);

/// Samples of class_a/class_b on the wrong side of `disc`. Other labels are
/// ignored.
std::size_t training_error_count(const LinearDiscriminant& disc, const LabeledDataset& data,
                                 int class_a, int class_b);

}  // namespace hetlda
