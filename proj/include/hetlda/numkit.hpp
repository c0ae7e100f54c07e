#pragma once

#include <span>

#include <Eigen/Dense>

namespace hetlda {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

namespace numkit {

// Arithmetic mean of a list of samples. Throws EmptyClass on an empty list
// and DimensionMismatch on ragged input.
Vector mean_vector(std::span<const Vector> samples);

// Population covariance (1/n) of the samples about `mean`. The result is
// symmetric bit for bit.
Matrix covariance_matrix(std::span<const Vector> samples, const Vector& mean);

// Same as above with one sample per row of `rows`.
Vector mean_of_rows(const Matrix& rows);
Matrix covariance_of_rows(const Matrix& rows, const Vector& mean);

// Solves A x = b. Singular values at or below max_sv * d * 1e-12 are dropped,
// which yields the minimum-norm least-squares (pseudo-inverse) solution when A
// is numerically rank deficient and the exact solution otherwise.
Vector solve_symmetric(const Matrix& a, const Vector& b);

// Numerical rank under the same threshold solve_symmetric uses.
Eigen::Index numerical_rank(const Matrix& a);

/// Upper tail of the standard normal distribution, Q(z) = P(Z > z).
double q_function(double z);

/// Standard normal density.
double normal_pdf(double z);

}  // namespace numkit
}  // namespace hetlda
