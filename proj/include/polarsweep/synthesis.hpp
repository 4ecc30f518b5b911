#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polarsweep/action.hpp"
#include "polarsweep/isopar.hpp"
#include "polarsweep/linalg.hpp"

namespace polarsweep {

/// Thrown when a profile fails the required reflection symmetry.
struct weyl_invariance_error : validation_error {
  double deviation;
  weyl_invariance_error(const std::string& msg, double dev)
      : validation_error(msg), deviation(dev) {}
};

/// Thrown when a swept set fails the equivariance residual bound.
struct equivariance_error : validation_error {
  using validation_error::validation_error;
};

/// Thrown when the section fails to meet the swept set transversally.
struct transversality_error : validation_error {
  using validation_error::validation_error;
};

/// Thrown when a profile graph at an axis crossing is not even.
struct smoothness_error : validation_error {
  using validation_error::validation_error;
};

/// Thrown when warped-product data cannot be realized as a rotation
/// hypersurface.
struct realizability_error : validation_error {
  using validation_error::validation_error;
};

/// Thrown when an action fails the polarity certificate.
struct polarity_error : validation_error {
  using validation_error::validation_error;
};

/// Sampled immersed hypersurface L of a section, given by a chart from
/// a parameter grid (dimension rank(section)-1) into section
/// coordinates. The chart must be evaluable in a neighborhood of the
/// parameter box (periodic directions wrap).
struct ProfileHypersurface {
  SectionSubspace section;
  std::function<Vec(const Vec&)> chart;  // params -> section coordinates
  int param_dim = 1;
  std::vector<int> resolution;
  std::vector<bool> periodic;
  bool closed = false;

  Mat samples;                       // rank(section) x N, column per sample
  std::vector<Mat> sample_tangents;  // chart differential at each sample
  std::vector<Vec> sample_params;

  int num_samples() const { return static_cast<int>(samples.cols()); }
  /// Sample in ambient coordinates.
  Vec ambient(int i) const { return section.frame.basis * samples.col(i); }
};

/// Grid-sample a chart and verify the immersion condition (minimum
/// singular value of the differential above min_sv at every node).
ProfileHypersurface make_profile(SectionSubspace section,
                                 std::function<Vec(const Vec&)> chart,
                                 int param_dim, std::vector<int> resolution,
                                 std::vector<bool> periodic,
                                 double fd_step = 1e-6, double min_sv = 1e-6);

/// Closed round curve in a 2-dimensional section: center + radius circle.
ProfileHypersurface make_circle_profile(SectionSubspace section, Vec center,
                                        double radius, int resolution);

struct SweptSample {
  Vec point;
  Frame tangent;    // rank n when valid
  Vec unit_normal;  // empty when frame_valid is false
  int group_tag;
  int profile_tag;
  bool frame_valid = true;  // false at singular-orbit (axis) points
};

/// Sampled G(L) with tangent frames and normals.
struct SweptHypersurface {
  LinearAction action;
  std::vector<SweptSample> samples;
  std::vector<Mat> group_elements;
  Mat points;  // ambient_dim x N cache for distance queries
  double resolution_estimate = 0.0;  // empirical covering radius
  std::uint64_t seed = 0;
  int profile_count = 0;

  int num_samples() const { return static_cast<int>(points.cols()); }
};

struct InvarianceReport {
  double max_deviation = 0.0;
  // smallest distance of a reflected sample to the profile: large when
  // every non-identity image is a disjoint copy of the profile
  double min_separation = 0.0;
  bool invariant = false;
  bool disjoint_orbit = false;
  double tol = 0.0;
};

struct TransversalityReport {
  int intersection_samples = 0;
  int failures = 0;
  double min_margin = 0.0;  // smallest normal component of a section vector
  bool transversal = false;
};

struct OddDerivativeEstimate {
  int order;
  double value;   // derivative estimate
  double scaled;  // |value| * h^order / order!
  bool pass;
};

struct SmoothnessReport {
  bool pass = true;
  std::vector<OddDerivativeEstimate> odd_derivatives;
};

struct MetricMatchReport {
  double max_relative_error = 0.0;
  int nodes_checked = 0;
  bool pass = false;
};

/// Warped-product data L^k x_rho N^(n-k): a base chart into the section
/// half-space (first k coordinates along the axis, last coordinate the
/// axis distance), the warping function on base parameters, and the
/// fiber sphere dimension. rho * fiber_radius_convention must equal the
/// axis distance for the rotation realization to apply.
struct WarpedProductSpec {
  std::function<Vec(const Vec&)> base_chart;  // params(k) -> R^(k+1)
  std::function<double(const Vec&)> rho;      // > 0 on the open grid
  int base_dim = 1;
  std::vector<int> resolution;
  std::vector<bool> periodic;
  int fiber_dim = 2;
  double fiber_radius_convention = 1.0;
};

/// Distance from every Weyl image of every profile sample to the
/// profile sample set (with projection onto neighboring segments for
/// curve profiles). Invariant profiles give deviations at sampling
/// accuracy. A profile whose non-identity images are all disjoint
/// copies (min_separation above the sampling spacing) is a valid
/// fundamental-domain representative: its sweep equals the sweep of
/// the full Weyl orbit.
InvarianceReport check_weyl_invariance(const ProfileHypersurface& L,
                                       const WeylGroupRep& W, double tol);

/// Deterministic low-discrepancy group elements: identity, exp(pi*A_i)
/// for the supplied generators, then Halton-sampled exponentials of the
/// closed algebra.
std::vector<Mat> sample_group_elements(const LinearAction& action,
                                       std::uint64_t seed, int count);

/// G(L): every sampled group element applied to every profile sample,
/// with pushed-forward tangent frames (profile tangents + Killing
/// directions) and unit normals. Throws if the assembled frame is rank
/// deficient at a regular point (profile tangent to an orbit).
SweptHypersurface sweep(const LinearAction& action,
                        const ProfileHypersurface& L, std::uint64_t seed = 1,
                        int group_count = 64);

/// Max distance of g*(sample) to the sample set over seeded random
/// group elements.
double equivariance_check(const SweptHypersurface& M, int trials = 50,
                          std::uint64_t seed = 99);

/// Empirical covering radius of the sample set: the same probe
/// statistic as equivariance_check under an independent seed.
double covering_resolution(const SweptHypersurface& M, int trials = 50,
                           std::uint64_t seed = 12345);

/// At swept samples lying in the section span: verify the section is
/// not contained in the hypersurface tangent space.
TransversalityReport transversality_check(const SectionSubspace& section,
                                          const SweptHypersurface& M,
                                          double tol);

/// Odd-derivative estimates of a profile graph z = f(x) at x = 0, from
/// a polynomial finite-difference fit on a symmetric (or one-sided,
/// when two_sided is false) stencil of spacing h. Pass requires every
/// scaled odd derivative below tol relative to the largest scaled
/// coefficient.
SmoothnessReport boundary_smoothness_check(
    const std::function<double(double)>& f, int order, double h = 0.05,
    double tol = 1e-5, bool two_sided = true);

struct RotationResult {
  LinearAction action;
  SweptHypersurface swept;
  ProfileHypersurface profile;
};

/// Rotation hypersurface: sweep a profile hypersurface of the
/// half-space R^k x R_+ by I_k + SO(n-k+1). The profile chart maps its
/// parameters to (axis coords, axis distance). Requires Weyl (axis
/// reflection) symmetry; curve profiles crossing the axis additionally
/// pass the even-graph gate.
RotationResult rotation_hypersurface(int k, int n,
                                     std::function<Vec(const Vec&)> profile,
                                     int profile_param_dim,
                                     std::vector<int> resolution,
                                     std::vector<bool> periodic,
                                     std::uint64_t seed = 1,
                                     int group_count = 64,
                                     double weyl_tol = 1e-6,
                                     double axis_tol = 1e-6);

/// Multi-rotational hypersurface for a product of sphere-transitive
/// block actions. The profile chart is given in normalized section
/// coordinates (flat factor, then one unit coordinate per block); the
/// radii scale the block coordinates.
RotationResult multi_rotational(const std::vector<int>& block_dims,
                                const std::vector<double>& radii,
                                std::function<Vec(const Vec&)> profile,
                                int profile_param_dim,
                                std::vector<int> resolution,
                                std::vector<bool> periodic,
                                std::uint64_t seed = 1, int group_count = 64,
                                double weyl_tol = 1e-6);

/// <u,u'> + rho(p)^2 <v,v'>.
double warped_metric_eval(const WarpedProductSpec& spec, const Vec& u,
                          const Vec& u_prime, const Vec& v, const Vec& v_prime,
                          const Vec& base_point);

struct WarpedRealization {
  RotationResult rotation;
  MetricMatchReport metric_report;
};

/// Realize a warped-product spec as a rotation hypersurface and verify
/// the induced metric against warped_metric_eval by finite differences.
/// Throws if the axis distance of the base chart does not match
/// fiber_radius_convention * rho.
WarpedRealization warped_to_rotation(const WarpedProductSpec& spec,
                                     std::uint64_t seed = 1,
                                     int group_count = 64,
                                     double realizability_tol = 1e-8,
                                     double fd_step = 1e-4);

}  // namespace polarsweep
