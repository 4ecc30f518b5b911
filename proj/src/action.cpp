#include "polarsweep/action.hpp"

#include <random>

namespace polarsweep {

namespace {

double frob_dot(const Mat& A, const Mat& B) {
  return (A.array() * B.array()).sum();
}

// Append M to the orthonormal (Frobenius) basis if it has a component
// outside the current span.
bool absorb(std::vector<Mat>& basis, Mat M, double tol) {
  for (const Mat& B : basis) M -= frob_dot(B, M) * B;
  double n = M.norm();
  if (n < tol) return false;
  basis.push_back(M / n);
  return true;
}

Vec random_unit(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = gauss(rng);
  double n = v.norm();
  if (n < 1e-12) return Vec::Unit(d, 0);
  return v / n;
}

}  // namespace

LinearAction::LinearAction(int ambient_dim, std::vector<Mat> generators,
                           std::string label)
    : ambient_dim_(ambient_dim),
      generators_(std::move(generators)),
      label_(std::move(label)) {
  if (generators_.empty())
    throw validation_error("LinearAction: generator list is empty");
  for (const Mat& A : generators_) {
    if (A.rows() != ambient_dim_ || A.cols() != ambient_dim_)
      throw validation_error("LinearAction: generator dimension mismatch");
    require_skew(A);
  }
  // Bracket closure, capped at dim so(d).
  const size_t cap = static_cast<size_t>(ambient_dim_) * (ambient_dim_ - 1) / 2;
  for (const Mat& A : generators_) absorb(algebra_, A, 1e-10);
  size_t frontier = 0;
  while (frontier < algebra_.size() && algebra_.size() < cap) {
    size_t end = algebra_.size();
    for (size_t i = frontier; i < end && algebra_.size() < cap; ++i) {
      for (size_t j = 0; j < end && algebra_.size() < cap; ++j) {
        Mat bracket = algebra_[i] * algebra_[j] - algebra_[j] * algebra_[i];
        absorb(algebra_, bracket, 1e-10);
      }
    }
    frontier = end;
  }
}

Vec LinearAction::killing_field(int gen_index, const Vec& q) const {
  if (gen_index < 0 || gen_index >= static_cast<int>(generators_.size()))
    throw validation_error("killing_field: generator index out of range");
  if (q.size() != ambient_dim_)
    throw validation_error("killing_field: point dimension mismatch");
  return generators_[gen_index] * q;
}

Frame orbit_tangent(const LinearAction& action, const Vec& p, double tol) {
  const auto& algebra = action.algebra_basis();
  Mat cols(action.ambient_dim(), static_cast<int>(algebra.size()));
  for (size_t i = 0; i < algebra.size(); ++i)
    cols.col(static_cast<int>(i)) = algebra[i] * p;
  return orthonormalize(cols, tol);
}

int orbit_dimension(const LinearAction& action, const Vec& p, double tol) {
  return orbit_tangent(action, p, tol).rank();
}

Vec find_regular_point(const LinearAction& action, std::uint64_t sampler_seed,
                       int samples) {
  if (samples < 1) throw validation_error("find_regular_point: samples < 1");
  std::mt19937_64 rng(sampler_seed);
  Vec best;
  int best_dim = -1;
  for (int s = 0; s < samples; ++s) {
    Vec q = random_unit(rng, action.ambient_dim());
    int dim = orbit_dimension(action, q);
    if (dim > best_dim) {
      best_dim = dim;
      best = q;
    }
  }
  return best;
}

int max_orbit_dimension(const LinearAction& action, std::uint64_t sampler_seed,
                        int samples) {
  Vec p = find_regular_point(action, sampler_seed, samples);
  return orbit_dimension(action, p);
}

int cohomogeneity(const LinearAction& action, std::uint64_t sampler_seed,
                  int samples) {
  return action.ambient_dim() -
         max_orbit_dimension(action, sampler_seed, samples);
}

SectionSubspace section_at(const LinearAction& action, const Vec& p_regular,
                           std::uint64_t sampler_seed, int samples) {
  int max_dim = max_orbit_dimension(action, sampler_seed, samples);
  if (orbit_dimension(action, p_regular) < max_dim)
    throw validation_error(
        "section_at: point is not regular (orbit dimension below maximum)");
  Frame tangent = orbit_tangent(action, p_regular);
  return SectionSubspace{complement(tangent), p_regular};
}

PolarCertificate certify_polar(const LinearAction& action,
                               const SectionSubspace& section,
                               const SamplingSpec& grid, double tol) {
  std::mt19937_64 rng(grid.seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const Frame& F = section.frame;
  double worst = 0.0;
  for (int s = 0; s < grid.count; ++s) {
    Vec c(F.rank());
    for (int i = 0; i < F.rank(); ++i) c[i] = coef(rng);
    Vec q = F.basis * c;
    double qn = q.norm();
    if (qn < 1e-12) continue;
    q /= qn;
    for (const Mat& A : action.algebra_basis()) {
      // largest inner product of A q with a unit vector of the section
      double r = (F.basis.transpose() * (A * q)).norm();
      worst = std::max(worst, r);
    }
  }
  return PolarCertificate{worst, worst < tol, grid, tol};
}

Frame fixed_subspace(const LinearAction& action, double tol) {
  const auto& algebra = action.algebra_basis();
  const int d = action.ambient_dim();
  Mat stacked(static_cast<int>(algebra.size()) * d, d);
  for (size_t i = 0; i < algebra.size(); ++i)
    stacked.middleRows(static_cast<int>(i) * d, d) = algebra[i];
  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
  int rank = 0;
  for (int i = 0; i < d; ++i)
    if (svd.singularValues()[i] > tol) ++rank;
  return Frame{svd.matrixV().rightCols(d - rank)};
}

OrbitClass classify_orbit(const LinearAction& action, const Vec& p,
                          int isotropy_samples, std::uint64_t seed) {
  int dim = orbit_dimension(action, p);
  int max_dim = max_orbit_dimension(action, seed);
  if (dim < max_dim) return OrbitClass{OrbitKind::singular, dim};

  Frame tangent = orbit_tangent(action, p);
  Frame normal = complement(tangent);

  // Isotropy algebra: elements K of the closed algebra with K p = 0.
  // exp(t K) fixes p exactly; the slice representation of the identity
  // component is nontrivial iff some such K moves a normal vector.
  const auto& algebra = action.algebra_basis();
  const int d = action.ambient_dim();
  Mat evals(d, static_cast<int>(algebra.size()));
  for (size_t i = 0; i < algebra.size(); ++i)
    evals.col(static_cast<int>(i)) = algebra[i] * p;
  Eigen::JacobiSVD<Mat> svd(evals, Eigen::ComputeFullV);
  std::vector<Mat> isotropy;
  for (int i = 0; i < svd.matrixV().cols(); ++i) {
    double sv = i < svd.singularValues().size() ? svd.singularValues()[i] : 0.0;
    if (sv <= 1e-8 * std::max(1.0, p.norm())) {
      Mat K = Mat::Zero(d, d);
      for (size_t a = 0; a < algebra.size(); ++a)
        K += svd.matrixV()(static_cast<int>(a), i) * algebra[a];
      if (K.norm() > 1e-10) isotropy.push_back(K);
    }
  }
  double moved = 0.0;
  for (const Mat& K : isotropy) {
    for (int j = 0; j < normal.rank(); ++j) {
      Vec w = K * normal.basis.col(j);
      moved = std::max(moved, project(w, normal).norm());
    }
  }
  // Best-effort search for discrete stabilizer elements: random group
  // elements that happen to fix p while moving a normal vector.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int s = 0; s < isotropy_samples; ++s) {
    Vec c(static_cast<int>(algebra.size()));
    for (int i = 0; i < c.size(); ++i) c[i] = coef(rng);
    Mat A = Mat::Zero(d, d);
    for (size_t i = 0; i < algebra.size(); ++i) A += c[static_cast<int>(i)] * algebra[i];
    Mat g = exp_skew(A, 1.0);
    if ((g * p - p).norm() < 1e-8 * std::max(1.0, p.norm())) {
      for (int j = 0; j < normal.rank(); ++j) {
        Vec w = g * normal.basis.col(j) - normal.basis.col(j);
        moved = std::max(moved, w.norm());
      }
    }
  }
  if (moved > 1e-6)
    return OrbitClass{OrbitKind::exceptional_suspect, dim};
  return OrbitClass{OrbitKind::principal, dim};
}

namespace actions {

LinearAction axis_block(int d, int axis_dim) {
  if (axis_dim < 0 || axis_dim >= d)
    throw validation_error("axis_block: need 0 <= axis_dim < d");
  std::vector<Mat> gens;
  for (int a = axis_dim; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      Mat A = Mat::Zero(d, d);
      A(a, b) = -1.0;
      A(b, a) = 1.0;
      gens.push_back(A);
    }
  }
  return LinearAction(d, std::move(gens),
                      "I_" + std::to_string(axis_dim) + "+SO(" +
                          std::to_string(d - axis_dim) + ")");
}

LinearAction so(int d) { return axis_block(d, 0); }

LinearAction torus(int blocks) {
  const int d = 2 * blocks;
  std::vector<Mat> gens;
  for (int b = 0; b < blocks; ++b) {
    Mat A = Mat::Zero(d, d);
    A(2 * b, 2 * b + 1) = -1.0;
    A(2 * b + 1, 2 * b) = 1.0;
    gens.push_back(A);
  }
  return LinearAction(d, std::move(gens), "T^" + std::to_string(blocks));
}

LinearAction diagonal_u1_c2() {
  Mat A = Mat::Zero(4, 4);
  A(0, 1) = -1.0;
  A(1, 0) = 1.0;
  A(2, 3) = -1.0;
  A(3, 2) = 1.0;
  return LinearAction(4, {A}, "U(1)-diagonal-on-C2");
}

}  // namespace actions

}  // namespace polarsweep
