#include "polarsweep/analysis.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace polarsweep {

namespace {

Vec shifted(const Vec& t, int i, double h) {
  Vec s = t;
  s[i] += h;
  return s;
}

Vec shifted2(const Vec& t, int i, double hi, int j, double hj) {
  Vec s = t;
  s[i] += hi;
  s[j] += hj;
  return s;
}

}  // namespace

CurvatureSample fundamental_forms(const Chart& chart, const Vec& node,
                                  double fd_step) {
  const int k = chart.param_dim;
  const double h = fd_step;
  CurvatureSample out;
  out.point = chart.map(node);
  if (out.point.size() != k + 1)
    throw validation_error("fundamental_forms: chart must map into R^(k+1)");

  Mat J(k + 1, k);
  Vec centroid = Vec::Zero(k + 1);
  for (int i = 0; i < k; ++i) {
    Vec fp = chart.map(shifted(node, i, h));
    Vec fm = chart.map(shifted(node, i, -h));
    J.col(i) = (fp - fm) / (2.0 * h);
    centroid += fp + fm;
  }
  centroid /= 2.0 * k;

  Frame tangent = orthonormalize(J, 1e-8);
  if (tangent.rank() < k)
    throw validation_error("fundamental_forms: degenerate chart tangents");
  Vec N = complement(tangent).basis.col(0);
  if (N.dot(out.point - centroid) < 0.0) N = -N;

  out.first_ff = J.transpose() * J;
  out.second_ff.resize(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      Vec H;
      if (i == j) {
        H = (chart.map(shifted(node, i, h)) - 2.0 * out.point +
             chart.map(shifted(node, i, -h))) /
            (h * h);
      } else {
        H = (chart.map(shifted2(node, i, h, j, h)) -
             chart.map(shifted2(node, i, h, j, -h)) -
             chart.map(shifted2(node, i, -h, j, h)) +
             chart.map(shifted2(node, i, -h, j, -h))) /
            (4.0 * h * h);
      }
      out.second_ff(i, j) = out.second_ff(j, i) = H.dot(N);
    }
  }
  out.unit_normal = N;

  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> solver(-out.second_ff,
                                                       out.first_ff);
  out.principal_curvatures = solver.eigenvalues();
  return out;
}

int relative_nullity(const CurvatureSample& sample, double eig_tol) {
  int nu = 0;
  for (int i = 0; i < sample.principal_curvatures.size(); ++i)
    if (std::abs(sample.principal_curvatures[i]) < eig_tol) ++nu;
  return nu;
}

TangencyReport position_tangency(const Chart& chart, const Vec& node,
                                 double tol, double fd_step) {
  CurvatureSample s = fundamental_forms(chart, node, fd_step);
  double comp = std::abs(s.point.dot(s.unit_normal));
  return TangencyReport{comp < tol, comp};
}

std::vector<int> totally_geodesic_points(const Chart& chart,
                                         const std::vector<Vec>& nodes,
                                         double tol, double fd_step) {
  std::vector<int> flagged;
  for (size_t i = 0; i < nodes.size(); ++i) {
    CurvatureSample s = fundamental_forms(chart, nodes[i], fd_step);
    if (s.second_ff.cwiseAbs().maxCoeff() < tol)
      flagged.push_back(static_cast<int>(i));
  }
  return flagged;
}

UmbilicityReport orbit_umbilicity(const LinearAction& action,
                                  const SweptHypersurface& M,
                                  int sample_index, double tol) {
  const SweptSample& s = M.samples.at(sample_index);
  if (!s.frame_valid)
    throw validation_error("orbit_umbilicity: sample has no tangent frame");
  SecondFF ff = orbit_second_ff(action, s.point);
  const int m = ff.orbit_dim();
  UmbilicityReport report;
  report.orbit_dim = m;
  if (m <= 1) {
    report.umbilic_in_M = true;
    return report;
  }

  // directions tangent to M but normal to the orbit
  Mat residual =
      s.tangent.basis -
      ff.tangent.basis * (ff.tangent.basis.transpose() * s.tangent.basis);
  Frame in_M_normals = orthonormalize(residual, 1e-8);
  for (int b = 0; b < in_M_normals.rank(); ++b) {
    Mat S = shape_operator(ff, in_M_normals.basis.col(b));
    double trace = S.trace() / m;
    double dev = (S - trace * Mat::Identity(m, m)).cwiseAbs().maxCoeff();
    double norm = S.cwiseAbs().maxCoeff();
    if (norm > 1e-14) dev /= norm;
    report.deviation = std::max(report.deviation, dev);
  }
  report.umbilic_in_M = report.deviation < tol;
  return report;
}

RotationStructureReport rotation_structure_report(const LinearAction& action,
                                                  const SweptHypersurface& M,
                                                  double tol,
                                                  int orbit_samples) {
  RotationStructureReport report;
  const int n = action.ambient_dim() - 1;
  report.max_cohomogeneity = cohomogeneity(action, M.seed) == n - 1;

  std::vector<int> picks;
  const int N = M.num_samples();
  for (int i = 0; i < N && static_cast<int>(picks.size()) < orbit_samples;
       i += std::max(1, N / orbit_samples))
    if (M.samples[i].frame_valid) picks.push_back(i);
  if (picks.empty())
    throw validation_error("rotation_structure_report: no regular samples");

  bool umbilic = true, tot_geo = false;
  for (int idx : picks) {
    UmbilicityReport u = orbit_umbilicity(action, M, idx, tol);
    report.umbilic_deviation = std::max(report.umbilic_deviation, u.deviation);
    umbilic = umbilic && u.umbilic_in_M;

    // (i): the orbit second form within M vanishes
    const SweptSample& s = M.samples[idx];
    SecondFF ff = orbit_second_ff(action, s.point);
    if (ff.orbit_dim() >= 1) {
      Mat residual =
          s.tangent.basis -
          ff.tangent.basis * (ff.tangent.basis.transpose() * s.tangent.basis);
      Frame in_M = orthonormalize(residual, 1e-8);
      double worst = 0.0;
      for (int b = 0; b < in_M.rank(); ++b)
        worst = std::max(worst, shape_operator(ff, in_M.basis.col(b))
                                    .cwiseAbs()
                                    .maxCoeff());
      if (in_M.rank() > 0 && worst < tol) tot_geo = true;
    }
  }
  report.orbits_umbilic = umbilic;
  report.totally_geodesic_orbit = tot_geo;

  // curvature conditions from a representative orbit
  SecondFF ff = orbit_second_ff(action, M.samples[picks.front()].point);
  if (ff.orbit_dim() >= 2) {
    PrincipalNormalDecomp d = principal_normals(ff);
    report.curvature_table = gauss_curvature_table(d);
    const Mat& K = report.curvature_table;
    double kmin = K.minCoeff(), kmax = K.maxCoeff();
    // only planes inside a curvature distribution exist when the
    // distribution is at least 2-dimensional; drop 1-dim diagonals
    bool has_plane = false;
    double cmin = std::numeric_limits<double>::infinity(), cmax = -cmin;
    for (int i = 0; i < d.count(); ++i) {
      for (int j = 0; j < d.count(); ++j) {
        if (i == j && d.multiplicities[i] < 2) continue;
        has_plane = true;
        cmin = std::min(cmin, K(i, j));
        cmax = std::max(cmax, K(i, j));
      }
    }
    if (has_plane) {
      report.constant_curvature_orbit =
          (cmax - cmin) < tol && std::abs(cmin) > tol;
      report.positive_curvature_orbit = cmin > tol;
    }
    (void)kmin;
    (void)kmax;
  }

  report.rotation_structure =
      report.totally_geodesic_orbit || report.max_cohomogeneity ||
      report.orbits_umbilic || report.constant_curvature_orbit ||
      report.positive_curvature_orbit;
  if (report.rotation_structure) report.candidate_axis = fixed_subspace(action);
  return report;
}

}  // namespace polarsweep
