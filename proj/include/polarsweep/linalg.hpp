#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace polarsweep {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Thrown when an input violates a documented precondition.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Orthonormal basis of a linear subspace of R^d, stored column-wise.
/// rank 0 is a valid frame (the zero subspace).
struct Frame {
  Mat basis;  // ambient_dim x rank, columns orthonormal

  int ambient_dim() const { return static_cast<int>(basis.rows()); }
  int rank() const { return static_cast<int>(basis.cols()); }

  static Frame empty(int ambient_dim) { return Frame{Mat(ambient_dim, 0)}; }
};

/// Max-norm asymmetry of A + A^T. Zero for a skew matrix.
double skew_defect(const Mat& A);

void require_skew(const Mat& A, double tol = 1e-12);

/// exp(t*A) for skew A, by scaling-and-squaring with a fixed-order
/// Taylor kernel. Result is special orthogonal up to roundoff.
Mat exp_skew(const Mat& A, double t, double skew_tol = 1e-12);

/// Gram-Schmidt with pivoting. Vectors whose residual after projection
/// onto the running span has norm < tol are dropped. Empty input gives
/// the rank-0 frame.
Frame orthonormalize(const std::vector<Vec>& vectors, double tol = 1e-8);
Frame orthonormalize(const Mat& columns, double tol = 1e-8);

/// Orthonormal frame of the orthogonal complement of F.
Frame complement(const Frame& F);

/// Orthogonal projection of v onto span(F).
Vec project(const Vec& v, const Frame& F);

}  // namespace polarsweep
