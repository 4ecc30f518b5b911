#include <doctest.h>

#include <cmath>

#include "polarsweep/action.hpp"

using namespace polarsweep;

TEST_CASE("algebra closure: so(3) generated by two rotations") {
  // two independent infinitesimal rotations bracket-generate all of so(3)
  Mat A = Mat::Zero(3, 3), B = Mat::Zero(3, 3);
  A(0, 1) = -1;
  A(1, 0) = 1;
  B(1, 2) = -1;
  B(2, 1) = 1;
  LinearAction action(3, {A, B});
  CHECK(action.algebra_basis().size() == 3);
}

TEST_CASE("algebra closure is idempotent for the torus") {
  LinearAction t2 = actions::torus(2);
  CHECK(t2.algebra_basis().size() == 2);  // abelian, nothing new
}

TEST_CASE("orbit dimensions and cohomogeneity") {
  LinearAction so3 = actions::so(3);
  Vec p(3);
  p << 0, 0, 2;
  CHECK(orbit_dimension(so3, p) == 2);
  CHECK(orbit_dimension(so3, Vec::Zero(3)) == 0);
  CHECK(cohomogeneity(so3) == 1);

  LinearAction t2 = actions::torus(2);
  Vec q(4);
  q << 1, 0, 2, 0;
  CHECK(orbit_dimension(t2, q) == 2);
  Vec axis(4);
  axis << 1, 0, 0, 0;  // second circle factor fixed
  CHECK(orbit_dimension(t2, axis) == 1);
  CHECK(cohomogeneity(t2) == 2);
}

TEST_CASE("rotation model cohomogeneity is k+1") {
  for (auto [n, k] : {std::pair{3, 1}, {4, 1}, {4, 2}, {5, 3}}) {
    LinearAction a = actions::axis_block(n + 1, k);
    CHECK(cohomogeneity(a) == k + 1);
  }
}

TEST_CASE("orbit tangent is orthogonal to the section at the basepoint") {
  LinearAction t2 = actions::torus(2);
  Vec p = find_regular_point(t2);
  SectionSubspace section = section_at(t2, p);
  Frame tangent = orbit_tangent(t2, p, 1e-8);
  CHECK(section.frame.rank() == 2);
  CHECK((tangent.basis.transpose() * section.frame.basis)
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  // the position vector lies in the section (orbits sit in spheres)
  CHECK((p - project(p, section.frame)).norm() < 1e-10);
}

TEST_CASE("polar certificate: polar actions give roundoff residuals") {
  for (LinearAction a :
       {actions::so(3), actions::torus(2), actions::axis_block(4, 1)}) {
    Vec p = find_regular_point(a);
    PolarCertificate cert = certify_polar(a, section_at(a, p));
    CHECK(cert.polar);
    CHECK(cert.max_residual < 1e-10);
  }
}

TEST_CASE("polar certificate: diagonal circle action on C^2 is not polar") {
  LinearAction a = actions::diagonal_u1_c2();
  Vec p = find_regular_point(a);
  PolarCertificate cert = certify_polar(a, section_at(a, p));
  CHECK_FALSE(cert.polar);
  CHECK(cert.max_residual > 1e-3);
}

TEST_CASE("fixed subspace of the rotation model is the axis") {
  LinearAction a = actions::axis_block(5, 2);
  Frame axis = fixed_subspace(a);
  CHECK(axis.rank() == 2);
  // spanned by the first two coordinate directions
  Mat expected = Mat::Zero(5, 2);
  expected(0, 0) = expected(1, 1) = 1;
  CHECK((axis.basis * axis.basis.transpose() -
         expected * expected.transpose())
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK(fixed_subspace(actions::so(3)).rank() == 0);
}

TEST_CASE("orbit classification") {
  LinearAction a = actions::axis_block(4, 1);
  Vec regular(4), axis_pt(4);
  regular << 0.5, 1, 0.2, -0.3;
  axis_pt << 2, 0, 0, 0;
  CHECK(classify_orbit(a, regular).kind == OrbitKind::principal);
  CHECK(classify_orbit(a, axis_pt).kind == OrbitKind::singular);
  CHECK(classify_orbit(a, axis_pt).orbit_dim == 0);

  // polar actions admit no exceptional orbits: sampled points never
  // classify as exceptional-suspect
  LinearAction t2 = actions::torus(2);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    Vec p = find_regular_point(t2, seed);
    CHECK(classify_orbit(t2, p).kind == OrbitKind::principal);
  }
}

TEST_CASE("killing fields are tangent to spheres") {
  LinearAction so4 = actions::so(4);
  Vec p(4);
  p << 1, -2, 0.5, 3;
  for (size_t i = 0; i < so4.algebra_basis().size(); ++i) {
    Vec v = so4.killing_field(static_cast<int>(i), p);
    CHECK(std::abs(v.dot(p)) < 1e-12);
  }
}
