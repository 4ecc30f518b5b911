#include "polarsweep/isopar.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace polarsweep {

namespace {

// alpha(X, X) for X given in tangent-frame coordinates.
Vec quadratic_eval(const SecondFF& ff, const Vec& x) {
  Vec out = Vec::Zero(ff.basepoint.size());
  const int m = ff.orbit_dim();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out += x[i] * x[j] * ff.values[i][j];
  return out;
}

}  // namespace

SecondFF orbit_second_ff(const LinearAction& action, const Vec& p) {
  if (p.norm() < 1e-14)
    throw validation_error("orbit_second_ff: point orbit has no second fundamental form");
  Frame tangent = orbit_tangent(action, p);
  if (tangent.rank() == 0)
    throw validation_error("orbit_second_ff: point orbit has no second fundamental form");
  Frame normal = complement(tangent);

  // Represent each tangent basis vector X_i as M_i p with M_i in the
  // algebra; then alpha(Ap, Bp) is the normal part of (AB+BA)p/2.
  const auto& algebra = action.algebra_basis();
  const int d = action.ambient_dim();
  Mat K(d, static_cast<int>(algebra.size()));
  for (size_t a = 0; a < algebra.size(); ++a)
    K.col(static_cast<int>(a)) = algebra[a] * p;
  std::vector<Mat> reps;
  for (int i = 0; i < tangent.rank(); ++i) {
    Vec c = K.colPivHouseholderQr().solve(tangent.basis.col(i));
    Mat M = Mat::Zero(d, d);
    for (size_t a = 0; a < algebra.size(); ++a)
      M += c[static_cast<int>(a)] * algebra[a];
    reps.push_back(M);
  }

  SecondFF ff{p, tangent, normal, {}};
  ff.values.assign(tangent.rank(), std::vector<Vec>(tangent.rank()));
  for (int i = 0; i < tangent.rank(); ++i) {
    for (int j = i; j < tangent.rank(); ++j) {
      Vec v = project(0.5 * (reps[i] * reps[j] + reps[j] * reps[i]) * p, normal);
      ff.values[i][j] = v;
      ff.values[j][i] = v;
    }
  }
  return ff;
}

Mat shape_operator(const SecondFF& ff, const Vec& xi, double tol) {
  Vec tangential = project(xi, ff.tangent);
  if (tangential.norm() > tol * std::max(1.0, xi.norm()))
    throw validation_error("shape_operator: direction has a tangential component");
  const int m = ff.orbit_dim();
  Mat S(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) S(i, j) = ff.values[i][j].dot(xi);
  return S;
}

double commutation_residual(const SecondFF& ff) {
  std::vector<Mat> ops;
  for (int a = 0; a < ff.normal.rank(); ++a)
    ops.push_back(shape_operator(ff, ff.normal.basis.col(a)));
  double worst = 0.0;
  for (size_t a = 0; a < ops.size(); ++a)
    for (size_t b = a + 1; b < ops.size(); ++b)
      worst = std::max(worst,
                       (ops[a] * ops[b] - ops[b] * ops[a]).cwiseAbs().maxCoeff());
  return worst;
}

PrincipalNormalDecomp principal_normals(const SecondFF& ff, double cluster_tol,
                                        std::uint64_t seed) {
  if (commutation_residual(ff) > 1e-6)
    throw validation_error(
        "principal_normals: shape operators do not commute (normal bundle not flat)");
  const int m = ff.orbit_dim();

  // Shape operator of a generic normal direction; its eigenbasis
  // diagonalizes all shape operators simultaneously.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec c(ff.normal.rank());
  for (int i = 0; i < c.size(); ++i) c[i] = gauss(rng);
  if (c.norm() < 1e-12) c = Vec::Unit(ff.normal.rank(), 0);
  Vec xi = ff.normal.basis * (c / c.norm());
  Eigen::SelfAdjointEigenSolver<Mat> eig(shape_operator(ff, xi));

  // One candidate normal per eigenvector, clustered by distance.
  std::vector<Vec> candidates(m);
  for (int i = 0; i < m; ++i)
    candidates[i] = quadratic_eval(ff, eig.eigenvectors().col(i));
  std::vector<int> label(m, -1);
  std::vector<Vec> reps;
  for (int i = 0; i < m; ++i) {
    for (size_t r = 0; r < reps.size(); ++r) {
      if ((candidates[i] - reps[r]).norm() < cluster_tol) {
        label[i] = static_cast<int>(r);
        break;
      }
    }
    if (label[i] < 0) {
      label[i] = static_cast<int>(reps.size());
      reps.push_back(candidates[i]);
    }
  }
  for (size_t a = 0; a < reps.size(); ++a) {
    for (size_t b = a + 1; b < reps.size(); ++b) {
      double dist = (reps[a] - reps[b]).norm();
      if (dist >= cluster_tol && dist < 2.0 * cluster_tol)
        throw validation_error(
            "principal_normals: clustering ambiguity; adjust cluster_tol");
    }
  }

  PrincipalNormalDecomp out;
  for (size_t r = 0; r < reps.size(); ++r) {
    Mat cols(ff.basepoint.size(), m);
    int count = 0;
    Vec mean = Vec::Zero(ff.basepoint.size());
    for (int i = 0; i < m; ++i) {
      if (label[i] != static_cast<int>(r)) continue;
      cols.col(count++) = ff.tangent.basis * eig.eigenvectors().col(i);
      mean += candidates[i];
    }
    mean /= count;
    out.normals.push_back(mean);
    out.spaces.push_back(orthonormalize(cols.leftCols(count), 1e-10));
    out.multiplicities.push_back(count);
  }

  // Reconstruction residual: alpha(X,X) against eta_i on each space.
  double worst = 0.0;
  for (int r = 0; r < out.count(); ++r) {
    for (int j = 0; j < out.spaces[r].rank(); ++j) {
      Vec x = ff.tangent.basis.transpose() * out.spaces[r].basis.col(j);
      worst = std::max(worst, (quadratic_eval(ff, x) - out.normals[r]).norm());
    }
  }
  out.reconstruction_residual = worst;
  return out;
}

Mat gauss_curvature_table(const PrincipalNormalDecomp& d) {
  const int s = d.count();
  Mat K(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) K(i, j) = d.normals[i].dot(d.normals[j]);
  return K;
}

SpaceFormReport check_space_form_relations(const PrincipalNormalDecomp& d,
                                           double c, double tol) {
  SpaceFormReport report;
  const int s = d.count();
  for (int i = 0; i < s; ++i) {
    for (int j = i + 1; j < s; ++j) {
      double prod = d.normals[i].dot(d.normals[j]);
      if (std::abs(prod - c) > tol) {
        report.pass = false;
        report.violations.push_back(
            "<eta_" + std::to_string(i) + ",eta_" + std::to_string(j) +
            "> = " + std::to_string(prod) + " != c = " + std::to_string(c));
      }
    }
  }
  int at_c = 0;
  for (int i = 0; i < s; ++i)
    if (std::abs(d.normals[i].squaredNorm() - c) <= tol) ++at_c;
  if (at_c > 1) {
    report.pass = false;
    report.violations.push_back("more than one |eta_i|^2 equals c");
  }
  for (int k = 0; k < s; ++k) {
    for (int i = 0; i < s; ++i) {
      for (int j = i + 1; j < s; ++j) {
        if (i == k || j == k) continue;
        Vec u = d.normals[i] - d.normals[k];
        Vec v = d.normals[j] - d.normals[k];
        Mat pair(u.size(), 2);
        pair.col(0) = u;
        pair.col(1) = v;
        if (orthonormalize(pair, tol).rank() < 2) {
          report.pass = false;
          report.violations.push_back(
              "eta_" + std::to_string(i) + "-eta_" + std::to_string(k) +
              " and eta_" + std::to_string(j) + "-eta_" + std::to_string(k) +
              " are linearly dependent");
        }
      }
    }
  }
  return report;
}

std::vector<FocalHyperplane> focal_hyperplanes(const PrincipalNormalDecomp& d,
                                               const Frame& normal,
                                               std::vector<int>* skipped,
                                               double zero_tol) {
  std::vector<FocalHyperplane> out;
  for (int i = 0; i < d.count(); ++i) {
    Vec coords = normal.basis.transpose() * d.normals[i];
    if (coords.norm() < zero_tol) {
      if (skipped) skipped->push_back(i);
      continue;
    }
    out.push_back(FocalHyperplane{coords, 1.0});
  }
  return out;
}

WeylGroupRep weyl_group(const std::vector<FocalHyperplane>& hyperplanes,
                        const Frame& normal, const Vec& basepoint, int cap,
                        double ident_tol) {
  if (hyperplanes.empty())
    throw validation_error("weyl_group: hyperplane list is empty");
  const int r = normal.rank();
  Vec p_coords = normal.basis.transpose() * basepoint;

  WeylGroupRep rep;
  rep.section_frame = normal;
  for (const auto& h : hyperplanes) {
    double n2 = h.covector.squaredNorm();
    AffineIsometry refl{
        Mat::Identity(r, r) - 2.0 / n2 * (h.covector * h.covector.transpose()),
        (2.0 * (h.covector.dot(p_coords) + h.offset) / n2) * h.covector};
    rep.generators.push_back(refl);
  }

  auto known = [&](const AffineIsometry& g) {
    for (const auto& e : rep.elements)
      if (e.distance(g) < ident_tol) return true;
    return false;
  };
  rep.elements.push_back(AffineIsometry{Mat::Identity(r, r), Vec::Zero(r)});
  size_t frontier = 0;
  while (frontier < rep.elements.size()) {
    size_t end = rep.elements.size();
    for (size_t i = frontier; i < end; ++i) {
      for (const auto& g : rep.generators) {
        AffineIsometry h = g.compose(rep.elements[i]);
        if (!known(h)) {
          rep.elements.push_back(h);
          if (static_cast<int>(rep.elements.size()) > cap)
            throw validation_error("weyl_group: group enumeration exceeded cap");
        }
      }
    }
    frontier = end;
  }
  return rep;
}

std::optional<Vec> invariant_hyperplane_reduction(
    const PrincipalNormalDecomp& d, const Frame& normal, double tol) {
  const int r = normal.rank();
  Mat rows(d.count(), r);
  for (int i = 0; i < d.count(); ++i)
    rows.row(i) = (normal.basis.transpose() * d.normals[i]).transpose();
  Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeFullV);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > tol) ++rank;
  if (rank >= r) return std::nullopt;
  return normal.basis * svd.matrixV().col(r - 1);
}

}  // namespace polarsweep
