#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polarsweep/linalg.hpp"

namespace polarsweep {

/// A connected subgroup of SO(d) given by skew Lie-algebra generators.
/// The generator list is closed under commutators at construction time,
/// so orbit tangent spaces see the full algebra even when the user
/// supplies a proper generating set.
class LinearAction {
 public:
  LinearAction(int ambient_dim, std::vector<Mat> generators,
               std::string label = "");

  int ambient_dim() const { return ambient_dim_; }
  const std::string& label() const { return label_; }
  const std::vector<Mat>& generators() const { return generators_; }
  /// Orthonormal (Frobenius) basis of the bracket-closed Lie algebra.
  const std::vector<Mat>& algebra_basis() const { return algebra_; }

  /// Value of the Killing field of generator gen_index at q, i.e. A*q.
  Vec killing_field(int gen_index, const Vec& q) const;

 private:
  int ambient_dim_;
  std::vector<Mat> generators_;
  std::string label_;
  std::vector<Mat> algebra_;
};

struct SectionSubspace {
  Frame frame;    // linear subspace through the origin
  Vec basepoint;  // the regular point it was computed at (lies in span)
};

enum class OrbitKind { principal, exceptional_suspect, singular };

struct OrbitClass {
  OrbitKind kind;
  int orbit_dim;
};

struct SamplingSpec {
  std::uint64_t seed = 1;
  int count = 128;
};

struct PolarCertificate {
  double max_residual;
  bool polar;
  SamplingSpec grid;
  double tol;
};

/// Orthonormal frame of the orbit tangent space T_p(Gp), spanned by the
/// closed algebra applied to p. Rank 0 at fixed points (including p=0).
Frame orbit_tangent(const LinearAction& action, const Vec& p,
                    double tol = 1e-8);

int orbit_dimension(const LinearAction& action, const Vec& p,
                    double tol = 1e-8);

/// Seeded search on the unit sphere for a point of maximal orbit
/// dimension. Deterministic given the seed.
Vec find_regular_point(const LinearAction& action,
                       std::uint64_t sampler_seed = 1, int samples = 256);

/// Maximal orbit dimension over a seeded sample of the unit sphere.
int max_orbit_dimension(const LinearAction& action,
                        std::uint64_t sampler_seed = 1, int samples = 256);

int cohomogeneity(const LinearAction& action, std::uint64_t sampler_seed = 1,
                  int samples = 256);

/// Normal space of the orbit through a regular point, as a candidate
/// section. Throws if p does not attain the maximal orbit dimension.
SectionSubspace section_at(const LinearAction& action, const Vec& p_regular,
                           std::uint64_t sampler_seed = 1, int samples = 256);

/// Numerical polarity certificate: the residual is the largest component
/// inside the section of any Killing field evaluated at sampled unit
/// points of the section. Polar actions give roundoff-size residuals.
PolarCertificate certify_polar(const LinearAction& action,
                               const SectionSubspace& section,
                               const SamplingSpec& grid = {},
                               double tol = 1e-10);

/// Common kernel of the closed algebra: the pointwise-fixed subspace
/// (the rotation axis when nontrivial).
Frame fixed_subspace(const LinearAction& action, double tol = 1e-8);

/// Orbit classification. Singular detection is exact up to sampling of
/// the maximal dimension; exceptional detection is a sampled heuristic
/// over the isotropy algebra and random group elements fixing p, hence
/// the "suspect" naming.
OrbitClass classify_orbit(const LinearAction& action, const Vec& p,
                          int isotropy_samples = 64, std::uint64_t seed = 1);

// Canned actions used throughout tests and examples.
namespace actions {
/// so(m) block acting on the last m coordinates of R^d, identity on the
/// first d-m (the rotation-hypersurface model I_k + SO(n-k+1)).
LinearAction axis_block(int d, int axis_dim);
/// Full so(d).
LinearAction so(int d);
/// Product of so(2) blocks on consecutive coordinate pairs of R^(2k).
LinearAction torus(int blocks);
/// so(2) acting diagonally on R^4 = C^2 (non-polar, cohomogeneity 3).
LinearAction diagonal_u1_c2();
}  // namespace actions

}  // namespace polarsweep
