#include "hetlda/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hetlda/error.hpp"

namespace hetlda {

LabeledDataset::LabeledDataset(Matrix features, std::vector<int> labels,
                               std::vector<std::string> class_names)
    : features_(std::move(features)), labels_(std::move(labels)),
      class_names_(std::move(class_names)) {
    if (labels_.empty()) throw Error(ErrorKind::InvalidArgument, "dataset has no samples");
    if (features_.rows() != static_cast<Eigen::Index>(labels_.size()))
        throw Error(ErrorKind::DimensionMismatch, "feature rows and labels differ in length");
    if (features_.cols() < 1) throw Error(ErrorKind::InvalidArgument, "dataset has no features");
    if (!features_.allFinite())
        throw Error(ErrorKind::InvalidArgument, "dataset contains non-finite features");

    const int max_label = *std::max_element(labels_.begin(), labels_.end());
    if (class_names_.empty()) {
        for (int k = 0; k <= max_label; ++k) class_names_.push_back(std::to_string(k));
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] < 0 || labels_[i] >= num_classes())
            throw Error(ErrorKind::InvalidArgument,
                        "label " + std::to_string(labels_[i]) + " at row " + std::to_string(i) +
                            " out of range");
    }
}

std::vector<std::size_t> LabeledDataset::class_counts() const {
    std::vector<std::size_t> counts(class_names_.size(), 0);
    for (int label : labels_) ++counts[static_cast<std::size_t>(label)];
    return counts;
}

LabeledDataset LabeledDataset::subset(const std::vector<std::size_t>& indices) const {
    Matrix rows(static_cast<Eigen::Index>(indices.size()), features_.cols());
    std::vector<int> labels;
    labels.reserve(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        rows.row(static_cast<Eigen::Index>(i)) = features_.row(static_cast<Eigen::Index>(indices[i]));
        labels.push_back(labels_.at(indices[i]));
    }
    return LabeledDataset(std::move(rows), std::move(labels), class_names_);
}

Matrix LabeledDataset::rows_of_class(int label) const {
    const auto count = static_cast<Eigen::Index>(std::count(labels_.begin(), labels_.end(), label));
    Matrix rows(count, features_.cols());
    Eigen::Index r = 0;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) rows.row(r++) = features_.row(static_cast<Eigen::Index>(i));
    }
    return rows;
}

Priors Priors::from_probabilities(double pi1, double pi2) {
    if (!(pi1 > 0.0 && pi2 > 0.0) || std::abs(pi1 + pi2 - 1.0) > 1e-12)
        throw Error(ErrorKind::InvalidArgument, "priors must be positive and sum to one");
    return Priors{pi1, pi2, pi2 / pi1};
}

Priors Priors::from_counts(std::size_t n1, std::size_t n2) {
    if (n1 == 0 || n2 == 0) throw Error(ErrorKind::EmptyClass, "prior from an empty class");
    const double total = static_cast<double>(n1 + n2);
    const double pi1 = static_cast<double>(n1) / total;
    return Priors{pi1, 1.0 - pi1, static_cast<double>(n2) / static_cast<double>(n1)};
}

double ProjectedStats::sigma1() const { return std::sqrt(var1); }
double ProjectedStats::sigma2() const { return std::sqrt(var2); }

namespace {

constexpr double kMinProjectedVariance = 1e-300;

void require_valid_variance(double var, const char* which) {
    if (!std::isfinite(var) || var <= kMinProjectedVariance)
        throw Error(ErrorKind::DegenerateProjection,
                    std::string("projected variance of ") + which + " is " + std::to_string(var));
}

ClassStats stats_of(const Matrix& rows, const char* which) {
    if (rows.rows() < 2)
        throw Error(ErrorKind::EmptyClass,
                    std::string(which) + " has " + std::to_string(rows.rows()) +
                        " samples; at least 2 are required");
    ClassStats s;
    s.mean = numkit::mean_of_rows(rows);
    s.cov = numkit::covariance_of_rows(rows, s.mean);
    s.count = static_cast<std::size_t>(rows.rows());
    return s;
}

}  // namespace

ProjectedStats ProjectedStats::from_moments(double mu1, double mu2, double var1, double var2,
                                            double w0) {
    require_valid_variance(var1, "class a");
    require_valid_variance(var2, "class b");
    ProjectedStats p{mu1, mu2, var1, var2, 0.0, 0.0};
    p.z1 = (w0 - mu1) / p.sigma1();
    p.z2 = (w0 - mu2) / p.sigma2();
    return p;
}

BinaryStats compute_class_stats(const Matrix& rows_a, const Matrix& rows_b) {
    if (rows_a.cols() != rows_b.cols())
        throw Error(ErrorKind::DimensionMismatch, "class blocks differ in dimension");
    BinaryStats out;
    out.first = stats_of(rows_a, "class a");
    out.second = stats_of(rows_b, "class b");
    out.priors = Priors::from_counts(out.first.count, out.second.count);
    out.first.prior = out.priors.pi1;
    out.second.prior = out.priors.pi2;
    return out;
}

BinaryStats compute_class_stats(const LabeledDataset& data, int class_a, int class_b) {
    if (class_a == class_b)
        throw Error(ErrorKind::InvalidArgument, "class_a and class_b must differ");
    return compute_class_stats(data.rows_of_class(class_a), data.rows_of_class(class_b));
}

ProjectedStats project_stats(const LinearDiscriminant& disc, const ClassStats& s1,
                             const ClassStats& s2) {
    const auto d = disc.w.size();
    if (s1.mean.size() != d || s2.mean.size() != d || s1.cov.rows() != d || s2.cov.rows() != d)
        throw Error(ErrorKind::DimensionMismatch, "discriminant and class stats differ in dimension");
    return ProjectedStats::from_moments(disc.w.dot(s1.mean), disc.w.dot(s2.mean),
                                        disc.w.dot(s1.cov * disc.w), disc.w.dot(s2.cov * disc.w),
                                        disc.w0);
}

double bayes_error(const ProjectedStats& proj, const Priors& priors) {
    // 1 - Q(z1) is evaluated as Q(-z1) to keep full accuracy in the tails.
    return priors.pi1 * numkit::q_function(-proj.z1) + priors.pi2 * numkit::q_function(proj.z2);
}

double Gradient::norm() const { return std::sqrt(w.squaredNorm() + w0 * w0); }

Gradient gradient_bayes_error(const LinearDiscriminant& disc, const ClassStats& s1,
                              const ClassStats& s2, const Priors& priors) {
    const ProjectedStats p = project_stats(disc, s1, s2);
    const double sigma1 = p.sigma1();
    const double sigma2 = p.sigma2();
    const double e1 = priors.pi1 * numkit::normal_pdf(p.z1);
    const double e2 = priors.pi2 * numkit::normal_pdf(p.z2);

    // dz_k/dw = -(sigma_k * mean_k + z_k * cov_k * w) / sigma_k^2, dz_k/dw0 = 1/sigma_k
    const Vector dz1 = -(sigma1 * s1.mean + p.z1 * (s1.cov * disc.w)) / p.var1;
    const Vector dz2 = -(sigma2 * s2.mean + p.z2 * (s2.cov * disc.w)) / p.var2;

    Gradient g;
    g.w = e1 * dz1 - e2 * dz2;
    g.w0 = e1 / sigma1 - e2 / sigma2;
    return g;
}

Side classify(const LinearDiscriminant& disc, const Vector& x) {
    if (x.size() != disc.w.size())
        throw Error(ErrorKind::DimensionMismatch,
                    "sample dimension " + std::to_string(x.size()) + " does not match discriminant " +
                        std::to_string(disc.w.size()));
    return disc.w.dot(x) >= disc.w0 ? Side::a : Side::b;
}

std::size_t training_error_count(const LinearDiscriminant& disc, const LabeledDataset& data,
                                 int class_a, int class_b) {
    if (data.dimension() != disc.w.size())
        throw Error(ErrorKind::DimensionMismatch, "dataset and discriminant differ in dimension");
    std::size_t errors = 0;
    const auto& labels = data.labels();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != class_a && labels[i] != class_b) continue;
        const Side side = classify(disc, data.features().row(static_cast<Eigen::Index>(i)).transpose());
        if ((side == Side::a) != (labels[i] == class_a)) ++errors;
    }
    return errors;
}

}  // namespace hetlda
