#include "hetlda/numkit.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hetlda/error.hpp"

namespace hetlda {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::EmptyClass: return "EmptyClass";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::DegenerateProjection: return "DegenerateProjection";
        case ErrorKind::ComplexRoot: return "ComplexRoot";
        case ErrorKind::ZeroDirection: return "ZeroDirection";
        case ErrorKind::SingularUpdate: return "SingularUpdate";
        case ErrorKind::Indeterminate: return "Indeterminate";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::InconsistentWidth: return "InconsistentWidth";
        case ErrorKind::InfeasibleStratification: return "InfeasibleStratification";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::VersionMismatch: return "VersionMismatch";
    }
    return "Unknown";
}

namespace numkit {
namespace {

constexpr double kRankTolerance = 1e-12;

Matrix pack_rows(std::span<const Vector> samples) {
    if (samples.empty()) throw Error(ErrorKind::EmptyClass, "no samples");
    const Eigen::Index d = samples.front().size();
    Matrix rows(static_cast<Eigen::Index>(samples.size()), d);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].size() != d)
            throw Error(ErrorKind::DimensionMismatch,
                        "sample " + std::to_string(i) + " has dimension " +
                            std::to_string(samples[i].size()) + ", expected " + std::to_string(d));
        rows.row(static_cast<Eigen::Index>(i)) = samples[i].transpose();
    }
    return rows;
}

}  // namespace

Vector mean_of_rows(const Matrix& rows) {
    if (rows.rows() == 0) throw Error(ErrorKind::EmptyClass, "no samples");
    return rows.colwise().mean().transpose();
}

Matrix covariance_of_rows(const Matrix& rows, const Vector& mean) {
    if (rows.rows() == 0) throw Error(ErrorKind::EmptyClass, "no samples");
    if (rows.cols() != mean.size())
        throw Error(ErrorKind::DimensionMismatch, "mean dimension does not match samples");
    const Matrix centered = rows.rowwise() - mean.transpose();
    const Eigen::Index d = mean.size();
    const double n = static_cast<double>(rows.rows());
    Matrix cov(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i; j < d; ++j) {
            const double v = centered.col(i).dot(centered.col(j)) / n;
            cov(i, j) = v;
            cov(j, i) = v;
        }
    }
    return cov;
}

Vector mean_vector(std::span<const Vector> samples) { return mean_of_rows(pack_rows(samples)); }

Matrix covariance_matrix(std::span<const Vector> samples, const Vector& mean) {
    return covariance_of_rows(pack_rows(samples), mean);
}

Vector solve_symmetric(const Matrix& a, const Vector& b) {
    if (a.rows() != a.cols())
        throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
    if (a.rows() != b.size())
        throw Error(ErrorKind::DimensionMismatch, "right-hand side length does not match matrix");
    if (a.rows() == 0) return Vector();
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    svd.setThreshold(static_cast<double>(a.rows()) * kRankTolerance);
    return svd.solve(b);
}

Eigen::Index numerical_rank(const Matrix& a) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(a);
    svd.setThreshold(static_cast<double>(a.rows()) * kRankTolerance);
    return svd.rank();
}

double q_function(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2);
}

}  // namespace numkit
}  // namespace hetlda
