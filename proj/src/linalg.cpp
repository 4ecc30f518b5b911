#include "polarsweep/linalg.hpp"

#include <cmath>

namespace polarsweep {

double skew_defect(const Mat& A) {
  return (A + A.transpose()).cwiseAbs().maxCoeff();
}

void require_skew(const Mat& A, double tol) {
  if (A.rows() != A.cols())
    throw validation_error("skew matrix must be square");
  if (skew_defect(A) > tol)
    throw validation_error("matrix is not skew-symmetric within tolerance");
}

Mat exp_skew(const Mat& A, double t, double skew_tol) {
  require_skew(A, skew_tol);
  const int d = static_cast<int>(A.rows());
  Mat B = t * A;
  double nrm = B.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (nrm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
    B /= std::pow(2.0, squarings);
  }
  // Taylor to order 14; after scaling ||B|| <= 1/2 so the tail is
  // far below double roundoff.
  Mat R = Mat::Identity(d, d);
  Mat term = Mat::Identity(d, d);
  for (int k = 1; k <= 14; ++k) {
    term = (term * B) / static_cast<double>(k);
    R += term;
  }
  for (int k = 0; k < squarings; ++k) R = R * R;
  return R;
}

Frame orthonormalize(const std::vector<Vec>& vectors, double tol) {
  if (vectors.empty()) return Frame{Mat(0, 0)};
  const int d = static_cast<int>(vectors.front().size());
  Mat cols(d, static_cast<int>(vectors.size()));
  for (size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != d)
      throw validation_error("orthonormalize: mixed ambient dimensions");
    cols.col(static_cast<int>(i)) = vectors[i];
  }
  return orthonormalize(cols, tol);
}

Frame orthonormalize(const Mat& columns, double tol) {
  const int d = static_cast<int>(columns.rows());
  const int m = static_cast<int>(columns.cols());
  Mat work = columns;
  Mat basis(d, std::min(d, m));
  int rank = 0;
  std::vector<bool> used(m, false);
  for (int step = 0; step < m && rank < d; ++step) {
    // pivot: largest residual norm
    int best = -1;
    double best_norm = tol;
    for (int j = 0; j < m; ++j) {
      if (used[j]) continue;
      double n = work.col(j).norm();
      if (n >= best_norm) {
        best_norm = n;
        best = j;
      }
    }
    if (best < 0) break;
    used[best] = true;
    Vec q = work.col(best) / best_norm;
    // re-orthogonalize once against the accepted basis
    for (int i = 0; i < rank; ++i) q -= basis.col(i).dot(q) * basis.col(i);
    double qn = q.norm();
    if (qn < tol) continue;
    q /= qn;
    basis.col(rank++) = q;
    for (int j = 0; j < m; ++j) {
      if (!used[j]) work.col(j) -= q.dot(work.col(j)) * q;
    }
  }
  return Frame{basis.leftCols(rank)};
}

Frame complement(const Frame& F) {
  const int d = F.ambient_dim();
  Mat residual = Mat::Identity(d, d);
  if (F.rank() > 0) residual -= F.basis * F.basis.transpose();
  return orthonormalize(residual, 1e-10);
}

Vec project(const Vec& v, const Frame& F) {
  if (v.size() != F.ambient_dim())
    throw validation_error("project: dimension mismatch");
  if (F.rank() == 0) return Vec::Zero(v.size());
  return F.basis * (F.basis.transpose() * v);
}

}  // namespace polarsweep
