#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polarsweep/action.hpp"
#include "polarsweep/linalg.hpp"

namespace polarsweep {

/// Second fundamental form of an orbit Gp, in an orthonormal tangent
/// frame, with ambient-coordinate values lying in the normal space.
struct SecondFF {
  Vec basepoint;
  Frame tangent;
  Frame normal;
  std::vector<std::vector<Vec>> values;  // values[i][j] = alpha(X_i, X_j)

  int orbit_dim() const { return tangent.rank(); }
};

/// The distinct principal normals eta_i with their curvature
/// distributions E_{eta_i} and multiplicities.
struct PrincipalNormalDecomp {
  std::vector<Vec> normals;   // ambient coordinates, units 1/length
  std::vector<Frame> spaces;  // mutually orthogonal, sum = tangent space
  std::vector<int> multiplicities;
  double reconstruction_residual = 0.0;

  int count() const { return static_cast<int>(normals.size()); }
};

/// Affine hyperplane <covector, xi> = offset in the coordinates of a
/// normal frame based at the orbit point (xi measured from the point).
struct FocalHyperplane {
  Vec covector;
  double offset = 1.0;
};

/// Orthogonal-affine map x -> lin*x + trans on section coordinates.
struct AffineIsometry {
  Mat lin;
  Vec trans;

  Vec apply(const Vec& x) const { return lin * x + trans; }
  AffineIsometry compose(const AffineIsometry& other) const {
    return AffineIsometry{lin * other.lin, lin * other.trans + trans};
  }
  double distance(const AffineIsometry& other) const {
    return std::max((lin - other.lin).cwiseAbs().maxCoeff(),
                    (trans - other.trans).cwiseAbs().maxCoeff());
  }
};

/// Finite reflection group acting on section coordinates (coordinates
/// with respect to section_frame, origin at the ambient origin).
struct WeylGroupRep {
  Frame section_frame;
  std::vector<AffineIsometry> elements;    // contains the identity
  std::vector<AffineIsometry> generators;  // reflections

  int order() const { return static_cast<int>(elements.size()); }
};

struct SpaceFormReport {
  bool pass = true;
  std::vector<std::string> violations;
};

/// Second fundamental form of the orbit through p, from the closed-form
/// polarization alpha(Ap, Bp) = normal part of (AB+BA)p/2.
SecondFF orbit_second_ff(const LinearAction& action, const Vec& p);

/// Shape operator A_xi in tangent coordinates; xi must be normal.
Mat shape_operator(const SecondFF& ff, const Vec& xi, double tol = 1e-6);

/// Max commutator norm over an orthonormal normal basis. Near zero
/// exactly when the normal bundle is flat at the point.
double commutation_residual(const SecondFF& ff);

/// Simultaneous diagonalization of the commuting shape operators,
/// refined by clustering the resulting normal vectors. Throws on
/// clustering ambiguity (two candidates at distance inside
/// [cluster_tol, 2*cluster_tol]).
PrincipalNormalDecomp principal_normals(const SecondFF& ff,
                                        double cluster_tol = 1e-4,
                                        std::uint64_t seed = 7);

/// K[i][j] = <eta_i, eta_j>: sectional curvatures of orbit planes
/// within and across the curvature distributions.
Mat gauss_curvature_table(const PrincipalNormalDecomp& d);

/// Constant-curvature-c consistency checks: off-diagonal products equal
/// c, at most one |eta_i|^2 = c, and pairwise independence of normal
/// differences.
SpaceFormReport check_space_form_relations(const PrincipalNormalDecomp& d,
                                           double c, double tol = 1e-8);

/// Focal hyperplanes <eta_j, .> = 1 in the coordinates of the given
/// normal frame. Zero principal normals are skipped (no focal point at
/// finite distance); their indices are reported in skipped.
std::vector<FocalHyperplane> focal_hyperplanes(const PrincipalNormalDecomp& d,
                                               const Frame& normal,
                                               std::vector<int>* skipped = nullptr,
                                               double zero_tol = 1e-10);

/// The reflection group generated by the focal-hyperplane reflections,
/// enumerated by closure. Acts on section coordinates with the ambient
/// origin as base; basepoint is the orbit point the normal space is
/// attached at. Throws if the order exceeds cap.
WeylGroupRep weyl_group(const std::vector<FocalHyperplane>& hyperplanes,
                        const Frame& normal, const Vec& basepoint,
                        int cap = 1024, double ident_tol = 1e-8);

/// A normal direction orthogonal to every principal normal, if one
/// exists: the orbit then lies in an affine hyperplane orthogonal to it.
std::optional<Vec> invariant_hyperplane_reduction(
    const PrincipalNormalDecomp& d, const Frame& normal, double tol = 1e-8);

}  // namespace polarsweep
