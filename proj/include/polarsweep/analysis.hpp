#pragma once

#include <functional>
#include <vector>

#include "polarsweep/isopar.hpp"
#include "polarsweep/linalg.hpp"
#include "polarsweep/synthesis.hpp"

namespace polarsweep {

/// Parametrized hypersurface patch: a map from k parameters into
/// R^(k+1), evaluable in a neighborhood of any queried node.
struct Chart {
  std::function<Vec(const Vec&)> map;
  int param_dim = 1;
};

/// Pointwise curvature data of a chart, by central finite differences.
/// Principal curvatures are signed against the inward co-orientation,
/// so round spheres report +1/r.
struct CurvatureSample {
  Vec point;
  Mat first_ff;   // k x k, positive definite
  Mat second_ff;  // k x k, scalar form w.r.t. unit_normal
  Vec unit_normal;
  Vec principal_curvatures;
};

struct TangencyReport {
  bool tangent = false;
  double normal_component = 0.0;
};

struct UmbilicityReport {
  bool umbilic_in_M = false;
  double deviation = 0.0;
  int orbit_dim = 0;
};

/// Which of the sufficient rotation-structure conditions hold for a
/// swept hypersurface, from sampled orbit data.
struct RotationStructureReport {
  bool totally_geodesic_orbit = false;   // (i)
  bool max_cohomogeneity = false;        // (ii) cohomogeneity = n-1
  bool orbits_umbilic = false;           // (iii)
  bool constant_curvature_orbit = false; // (iv) nonzero constant
  bool positive_curvature_orbit = false; // (v)
  double umbilic_deviation = 0.0;
  Mat curvature_table;  // representative orbit, <eta_i, eta_j>
  bool rotation_structure = false;
  Frame candidate_axis;  // fixed subspace, filled when any condition holds
};

/// First/second fundamental forms and principal curvatures at a node.
/// The unit normal points away from the centroid of the FD stencil.
CurvatureSample fundamental_forms(const Chart& chart, const Vec& node,
                                  double fd_step = 1e-3);

/// Number of principal curvatures below eig_tol in magnitude.
int relative_nullity(const CurvatureSample& sample, double eig_tol = 1e-4);

/// Whether the position vector of the chart point lies in the tangent
/// space; normal_component = |<position, unit normal>|.
TangencyReport position_tangency(const Chart& chart, const Vec& node,
                                 double tol = 1e-6, double fd_step = 1e-3);

/// Indices of the given nodes where the second form vanishes in
/// max norm below tol.
std::vector<int> totally_geodesic_points(const Chart& chart,
                                         const std::vector<Vec>& nodes,
                                         double tol, double fd_step = 1e-3);

/// Umbilicity of the orbit through a swept sample as a submanifold of
/// the sampled hypersurface: every shape operator in a direction
/// tangent to M and normal to the orbit must be proportional to the
/// identity. The deviation is max-norm distance to the nearest multiple
/// of the identity, normalized by the operator max norm. Orbits of
/// dimension <= 1 are vacuously umbilic.
UmbilicityReport orbit_umbilicity(const LinearAction& action,
                                  const SweptHypersurface& M,
                                  int sample_index, double tol = 1e-4);

/// Evaluate the sufficient rotation-structure conditions on sampled
/// principal orbits of a swept hypersurface.
RotationStructureReport rotation_structure_report(const LinearAction& action,
                                                  const SweptHypersurface& M,
                                                  double tol = 1e-4,
                                                  int orbit_samples = 5);

}  // namespace polarsweep
