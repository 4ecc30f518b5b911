#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polarsweep/synthesis.hpp"

using namespace polarsweep;

namespace {

constexpr double kPi = std::numbers::pi;

SectionSubspace plane_section(int d, int k) {
  Mat basis = Mat::Zero(d, k + 1);
  basis.topLeftCorner(k, k).setIdentity();
  basis(k, k) = 1.0;
  return SectionSubspace{Frame{basis}, Vec::Zero(d)};
}

std::function<Vec(const Vec&)> circle(double cx, double cy, double r) {
  return [=](const Vec& t) {
    Vec x(2);
    x[0] = cx + r * std::cos(2.0 * kPi * t[0]);
    x[1] = cy + r * std::sin(2.0 * kPi * t[0]);
    return x;
  };
}

WeylGroupRep axis_flip(int rank) {
  Mat refl = Mat::Identity(rank, rank);
  refl(rank - 1, rank - 1) = -1.0;
  WeylGroupRep W;
  W.section_frame = Frame{Mat::Identity(rank, rank)};
  W.generators.push_back(AffineIsometry{refl, Vec::Zero(rank)});
  W.elements.push_back(AffineIsometry{Mat::Identity(rank, rank), Vec::Zero(rank)});
  W.elements.push_back(W.generators.front());
  return W;
}

}  // namespace

TEST_CASE("make_profile samples a circle with tangents") {
  ProfileHypersurface L =
      make_circle_profile(plane_section(4, 1), Vec(Eigen::Vector2d(0, 3)), 1.0, 32);
  CHECK(L.num_samples() == 32);
  CHECK(L.closed);
  for (int i = 0; i < L.num_samples(); ++i) {
    CHECK(std::abs((L.samples.col(i) - Vec(Eigen::Vector2d(0, 3))).norm() - 1.0) <
          1e-12);
    // tangent orthogonal to the radius
    Vec radial = L.samples.col(i) - Vec(Eigen::Vector2d(0, 3));
    CHECK(std::abs(L.sample_tangents[i].col(0).dot(radial)) < 1e-6);
  }
}

TEST_CASE("make_profile rejects non-immersed charts") {
  auto pinched = [](const Vec& t) {
    Vec x(2);
    x[0] = t[0] * t[0];  // derivative vanishes at t = 0
    x[1] = t[0] * t[0] * t[0];
    return x;
  };
  CHECK_THROWS_AS(
      make_profile(plane_section(4, 1), pinched, 1, {8}, {false}),
      validation_error);
}

TEST_CASE("weyl invariance: symmetric, representative, and asymmetric") {
  WeylGroupRep W = axis_flip(2);
  // symmetric circle about the axis
  ProfileHypersurface sym =
      make_circle_profile(plane_section(4, 1), Vec(Eigen::Vector2d(0, 0)), 2.0, 64);
  InvarianceReport r1 = check_weyl_invariance(sym, W, 1e-6);
  CHECK(r1.invariant);
  CHECK(r1.max_deviation < 1e-12);

  // torus circle: not invariant, but reflected copy is disjoint
  ProfileHypersurface rep =
      make_circle_profile(plane_section(4, 1), Vec(Eigen::Vector2d(0, 3)), 1.0, 64);
  InvarianceReport r2 = check_weyl_invariance(rep, W, 1e-6);
  CHECK_FALSE(r2.invariant);
  CHECK(r2.disjoint_orbit);
  CHECK(r2.max_deviation == doctest::Approx(6.0).epsilon(0.01));

  // nudged circle: overlaps its reflection, deviation = 2 * offset
  ProfileHypersurface bad =
      make_circle_profile(plane_section(4, 1), Vec(Eigen::Vector2d(0, 0.25)), 1.0, 64);
  InvarianceReport r3 = check_weyl_invariance(bad, W, 1e-6);
  CHECK_FALSE(r3.invariant);
  CHECK_FALSE(r3.disjoint_orbit);
  CHECK(r3.max_deviation == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("sample_group_elements is deterministic and orthogonal") {
  LinearAction a = actions::axis_block(4, 1);
  auto g1 = sample_group_elements(a, 5, 16);
  auto g2 = sample_group_elements(a, 5, 16);
  REQUIRE(g1.size() == 16);
  CHECK((g1[0] - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
  for (size_t i = 0; i < g1.size(); ++i) {
    CHECK((g1[i] - g2[i]).cwiseAbs().maxCoeff() == 0.0);
    CHECK((g1[i].transpose() * g1[i] - Mat::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("sweep: sphere profile under SO(4) gives the round sphere") {
  LinearAction so4 = actions::axis_block(4, 0 + 1);  // I_1 + SO(3)
  ProfileHypersurface L =
      make_circle_profile(plane_section(4, 1), Vec(Eigen::Vector2d(0, 0)), 2.0, 48);
  SweptHypersurface M = sweep(so4, L, 1, 32);
  for (int i = 0; i < M.num_samples(); ++i)
    CHECK(std::abs(M.points.col(i).norm() - 2.0) < 1e-10);
  // normals are radial where defined
  for (const auto& s : M.samples) {
    if (!s.frame_valid) continue;
    CHECK(std::abs(std::abs(s.unit_normal.dot(s.point)) - 2.0) < 1e-8);
  }
}

TEST_CASE("sweep flags axis samples instead of failing") {
  LinearAction a = actions::axis_block(4, 1);
  ProfileHypersurface L =
      make_circle_profile(plane_section(4, 1), Vec(Eigen::Vector2d(0, 0)), 1.0, 16);
  SweptHypersurface M = sweep(a, L, 1, 8);
  int invalid = 0;
  for (const auto& s : M.samples)
    if (!s.frame_valid) ++invalid;
  CHECK(invalid > 0);  // the two axis crossings per group element
}

TEST_CASE("equivariance: identity-like checks and a displaced outlier") {
  RotationResult torus = rotation_hypersurface(
      1, 3, circle(0, 3, 1.0), 1, {48}, {true}, 1, 32);
  double res = covering_resolution(torus.swept, 20, 4242);
  double eq = equivariance_check(torus.swept, 20, 999);
  CHECK(eq < 2.0 * res);

  // corrupting one cached point makes the probe detect the displacement
  SweptHypersurface corrupted = torus.swept;
  corrupted.points.col(7) += Vec::Constant(4, 1.5);
  double bad = equivariance_check(corrupted, 20, 999);
  CHECK(bad > 1.0);
}

TEST_CASE("transversality at section intersections") {
  RotationResult torus = rotation_hypersurface(
      1, 3, circle(0, 3, 1.0), 1, {48}, {true}, 1, 32);
  TransversalityReport tv =
      transversality_check(torus.profile.section, torus.swept, 1e-8);
  CHECK(tv.transversal);
  CHECK(tv.intersection_samples > 0);
  CHECK(tv.min_margin > 0.5);
}

TEST_CASE("boundary smoothness gate on analytic graphs") {
  auto even1 = [](double x) { return 1.0 + x * x; };
  auto even2 = [](double x) { return std::cos(x); };
  auto odd3 = [](double x) { return 1.0 + x * x * x; };
  CHECK(boundary_smoothness_check(even1, 5).pass);
  CHECK(boundary_smoothness_check(even2, 5).pass);
  SmoothnessReport bad = boundary_smoothness_check(odd3, 3);
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.odd_derivatives.size() == 2);
  CHECK(bad.odd_derivatives[1].order == 3);
  CHECK_FALSE(bad.odd_derivatives[1].pass);
  // the recovered third derivative of x^3 is 3! = 6
  CHECK(bad.odd_derivatives[1].value == doctest::Approx(6.0).epsilon(1e-3));
  // one-sided variant stays usable for even data
  CHECK(boundary_smoothness_check(even1, 3, 0.05, 1e-5, false).pass);
}

TEST_CASE("rotation constructor rejects uneven axis-touching profiles") {
  auto cubic_arc = [](const Vec& t) {
    Vec x(2);
    x[0] = 1.0 + t[0] * t[0] * t[0];
    x[1] = t[0];
    return x;
  };
  CHECK_THROWS_AS(rotation_hypersurface(1, 3, cubic_arc, 1, {33}, {false}),
                  smoothness_error);
  auto even_arc = [](const Vec& t) {
    Vec x(2);
    x[0] = 1.0 + t[0] * t[0];
    x[1] = t[0];
    return x;
  };
  CHECK_NOTHROW(rotation_hypersurface(1, 3, even_arc, 1, {33}, {false}, 1, 4));
}

TEST_CASE("rotation constructor rejects asymmetric profiles") {
  CHECK_THROWS_AS(rotation_hypersurface(1, 3, circle(0, 0.25, 1.0), 1, {64},
                                        {true}, 1, 4),
                  weyl_invariance_error);
  try {
    rotation_hypersurface(1, 3, circle(0, 0.25, 1.0), 1, {64}, {true}, 1, 4);
  } catch (const weyl_invariance_error& e) {
    CHECK(e.deviation == doctest::Approx(0.5).epsilon(0.1));
  }
}

TEST_CASE("multi-rotational sweep stays on the product of circles radii") {
  // profile pinned to normalized coordinates (1, 1): the orbit is the
  // exact product of circles with the prescribed radii
  std::vector<int> blocks{0, 2, 2};
  std::vector<double> radii{1.0, 3.0};
  auto chart = [](const Vec& t) {
    Vec x(2);
    x[0] = 1.0 + 0.1 * std::cos(2.0 * kPi * t[0]);
    x[1] = 1.0 + 0.1 * std::sin(2.0 * kPi * t[0]);
    return x;
  };
  RotationResult mr = multi_rotational(blocks, radii, chart, 1, {32}, {true});
  CHECK(mr.action.ambient_dim() == 4);
  for (const auto& s : mr.swept.samples) {
    double b1 = s.point.head(2).norm();
    double b2 = s.point.tail(2).norm();
    CHECK(b1 > 0.9 * 1.0 - 0.2);
    CHECK(b2 > 0.9 * 3.0 - 0.4);
    CHECK(b1 < 1.0 * 1.1 + 0.2);
    CHECK(b2 < 3.0 * 1.1 + 0.4);
  }
}

TEST_CASE("warped product metric evaluation") {
  WarpedProductSpec spec;
  spec.rho = [](const Vec& t) { return 2.0 + t[0]; };
  Vec u(1), up(1), v(2), vp(2), base(1);
  u << 1;
  up << 3;
  v << 1, 0;
  vp << 0, 1;
  base << 0.5;
  // <u,u'> + rho^2 <v,v'> with rho = 2.5
  CHECK(warped_metric_eval(spec, u, up, v, vp, base) == doctest::Approx(3.0));
  vp << 2, 0;
  CHECK(warped_metric_eval(spec, u, up, v, vp, base) ==
        doctest::Approx(3.0 + 2.5 * 2.5 * 2.0));
}

TEST_CASE("warped_to_rotation: matching rho realizes, perturbed rejects") {
  auto base = circle(0, 3, 1.0);
  WarpedProductSpec spec;
  spec.base_chart = base;
  spec.rho = [base](const Vec& t) { return base(t)[1]; };
  spec.base_dim = 1;
  spec.resolution = {48};
  spec.periodic = {true};
  spec.fiber_dim = 2;
  WarpedRealization real = warped_to_rotation(spec, 1, 16);
  CHECK(real.metric_report.pass);
  CHECK(real.metric_report.max_relative_error < 1e-3);

  WarpedProductSpec off = spec;
  off.rho = [base](const Vec& t) { return 1.1 * base(t)[1]; };
  CHECK_THROWS_AS(warped_to_rotation(off, 1, 16), realizability_error);
}
