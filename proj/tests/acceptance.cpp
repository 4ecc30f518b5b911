// End-to-end acceptance checks. Each criterion prints exactly one
// PASS/FAIL line; the process exits nonzero if any criterion fails.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "polarsweep/analysis.hpp"
#include "polarsweep/io.hpp"
#include "polarsweep/isopar.hpp"
#include "polarsweep/synthesis.hpp"

using namespace polarsweep;
namespace fs = std::filesystem;

#ifndef POLARSWEEP_CLI
#define POLARSWEEP_CLI "polarsweep"
#endif

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void report(int number, bool pass, const std::string& detail = "") {
  std::cout << "criterion " << number << ": " << (pass ? "PASS" : "FAIL");
  if (!pass && !detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n";
  if (!pass) ++g_failures;
}

void run(int number, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(number, false, e.what());
  }
}

void require(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

Mat random_skew(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat M(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) M(i, j) = gauss(rng);
  return 0.5 * (M - M.transpose());
}

// Second fundamental form value alpha(A_i p, A_j p) estimated purely by
// finite differences of the group flow, independent of the closed form.
Vec fd_alpha(const LinearAction& action, const Vec& p, int i, int j,
             double h) {
  auto point = [&](double s, double t) -> Vec {
    return exp_skew(action.generators()[i], s) *
           (exp_skew(action.generators()[j], t) * p);
  };
  Vec mixed;
  if (i == j) {
    mixed = (point(h, 0) - 2.0 * point(0, 0) + point(-h, 0)) / (h * h);
  } else {
    mixed = (point(h, h) - point(h, -h) - point(-h, h) + point(-h, -h)) /
            (4.0 * h * h);
  }
  Frame tangent = orbit_tangent(action, p);
  return mixed - project(mixed, tangent);
}

std::function<Vec(const Vec&)> circle(double cx, double cy, double r) {
  return [=](const Vec& t) {
    Vec x(2);
    x[0] = cx + r * std::cos(2.0 * kPi * t[0]);
    x[1] = cy + r * std::sin(2.0 * kPi * t[0]);
    return x;
  };
}

Vec point4(double a, double b, double c, double d) {
  Vec p(4);
  p << a, b, c, d;
  return p;
}

WeylGroupRep orbit_weyl(const LinearAction& action, const Vec& p) {
  SecondFF ff = orbit_second_ff(action, p);
  PrincipalNormalDecomp d = principal_normals(ff);
  auto planes = focal_hyperplanes(d, ff.normal);
  return weyl_group(planes, ff.normal, p);
}

void criterion_exponential() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dims(2, 8);
  std::uniform_real_distribution<double> times(-2.0, 2.0);
  double worst_orth = 0.0, worst_law = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    int d = dims(rng);
    Mat A = random_skew(d, rng);
    double s = times(rng), t = times(rng);
    Mat Q = exp_skew(A, s);
    worst_orth = std::max(
        worst_orth,
        (Q.transpose() * Q - Mat::Identity(d, d)).cwiseAbs().maxCoeff());
    worst_law = std::max(
        worst_law,
        (exp_skew(A, s + t) - Q * exp_skew(A, t)).cwiseAbs().maxCoeff());
  }
  require(worst_orth < 1e-10, "orthogonality " + std::to_string(worst_orth));
  require(worst_law < 1e-9, "one-parameter law " + std::to_string(worst_law));
  report(1, true);
}

void criterion_cohomogeneity() {
  struct Case {
    LinearAction action;
    int expected;
  };
  std::vector<Case> cases;
  cases.push_back({actions::so(3), 1});
  cases.push_back({actions::torus(2), 2});
  for (auto [n, k] : std::vector<std::pair<int, int>>{{3, 1}, {4, 1}, {4, 2},
                                                      {5, 3}})
    cases.push_back({actions::axis_block(n + 1, k), k + 1});
  for (const auto& c : cases) {
    require(cohomogeneity(c.action) == c.expected, "cohomogeneity mismatch");
    Vec p = find_regular_point(c.action, 1);
    SectionSubspace section = section_at(c.action, p, 1);
    PolarCertificate cert = certify_polar(c.action, section);
    require(cert.polar && cert.max_residual < 1e-10,
            "polar residual " + std::to_string(cert.max_residual));
  }
  report(2, true);
}

void criterion_decomposition() {
  for (auto [r1, r2] : std::vector<std::pair<double, double>>{
           {1, 1}, {1, 2}, {0.5, 3}}) {
    LinearAction torus = actions::torus(2);
    Vec p = point4(r1, 0, r2, 0);
    SecondFF ff = orbit_second_ff(torus, p);
    PrincipalNormalDecomp d = principal_normals(ff);
    require(d.count() == 2, "torus orbit normal count");
    std::vector<double> want{1.0 / std::max(r1, r2), 1.0 / std::min(r1, r2)};
    std::vector<double> got{d.normals[0].norm(), d.normals[1].norm()};
    std::sort(got.begin(), got.end());
    require(std::abs(got[0] - want[0]) < 1e-8 &&
                std::abs(got[1] - want[1]) < 1e-8,
            "closed-form curvature norms");
    require(std::abs(d.normals[0].dot(d.normals[1])) < 1e-8, "flat orbit");
    // finite-difference cross-check: |alpha(U,U)| / |U|^2 along each circle
    for (int i = 0; i < 2; ++i) {
      double radius = (i == 0) ? r1 : r2;
      double fd = fd_alpha(torus, p, i, i, 1e-4).norm() / (radius * radius);
      require(std::abs(fd - 1.0 / radius) < 1e-5, "finite-difference path");
    }
  }
  for (double r : {1.0, 2.5}) {
    LinearAction so3 = actions::so(3);
    Vec p(3);
    p << r, 0, 0;
    PrincipalNormalDecomp d = principal_normals(orbit_second_ff(so3, p));
    require(d.count() == 1, "sphere orbit normal count");
    require(std::abs(d.normals[0].norm() - 1.0 / r) < 1e-8,
            "sphere curvature norm");
  }
  report(3, true);
}

void criterion_weyl() {
  Vec sp(3);
  sp << 2.0, 0, 0;
  require(orbit_weyl(actions::so(3), sp).order() == 2, "sphere order");

  WeylGroupRep tw = orbit_weyl(actions::torus(2), point4(1, 0, 2, 0));
  require(tw.order() == 4, "torus order");
  require(tw.generators.size() == 2, "torus generator count");
  for (const auto& g : tw.generators) {
    AffineIsometry sq = g.compose(g);
    require((sq.lin - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8 &&
                sq.trans.cwiseAbs().maxCoeff() < 1e-8,
            "torus generators are involutions");
  }

  require(orbit_weyl(actions::axis_block(4, 1), point4(0.7, 2, 0, 0)).order() ==
              2,
          "rotation model order");
  report(4, true);
}

void criterion_round_trip() {
  RotationResult torus =
      rotation_hypersurface(1, 3, circle(0, 3, 1), 1, {64}, {true}, 1, 64);
  double res = torus.swept.resolution_estimate;
  double eq = equivariance_check(torus.swept, 50, 12345);
  require(eq < 2.0 * res, "equivariance residual " + std::to_string(eq));

  TransversalityReport tv =
      transversality_check(torus.profile.section, torus.swept, 1e-8);
  require(tv.transversal && tv.intersection_samples > 0, "transversality");

  // re-slice: every swept sample inside the section must land on the
  // two-fold reflection orbit of the profile circle, and both copies
  // must actually be hit
  const Mat& basis = torus.profile.section.frame.basis;
  int in_section = 0;
  bool upper = false, lower = false;
  for (int i = 0; i < torus.swept.num_samples(); ++i) {
    Vec x = torus.swept.points.col(i);
    Vec c = basis.transpose() * x;
    if ((x - basis * c).norm() > 1e-8) continue;
    ++in_section;
    double dist = std::min(std::abs((c - Vec(Eigen::Vector2d(0, 3))).norm() - 1),
                           std::abs((c - Vec(Eigen::Vector2d(0, -3))).norm() - 1));
    require(dist < 1e-8, "re-sliced point off the profile orbit");
    (c[1] > 0 ? upper : lower) = true;
  }
  require(in_section > 0 && upper && lower,
          "re-slicing missed a reflected profile copy");
  report(5, true);
}

void criterion_structure_diagnostics() {
  RotationResult torus =
      rotation_hypersurface(1, 3, circle(0, 3, 1), 1, {48}, {true}, 1, 24);
  RotationStructureReport rot = rotation_structure_report(torus.action,
                                                          torus.swept);
  require(rot.orbits_umbilic && rot.umbilic_deviation < 1e-4,
          "rotation orbit umbilicity");
  require(rot.positive_curvature_orbit, "rotation orbit curvature sign");

  // torus-action counterpart: flat product-of-circles orbits
  auto ring = [](const Vec& t) {
    Vec x(2);
    x[0] = 1.0 + 0.2 * std::cos(2.0 * kPi * t[0]);
    x[1] = 1.0 + 0.2 * std::sin(2.0 * kPi * t[0]);
    return x;
  };
  RotationResult mr =
      multi_rotational({0, 2, 2}, {1.0, 3.0}, ring, 1, {48}, {true}, 1, 24);
  RotationStructureReport flat = rotation_structure_report(mr.action, mr.swept);
  require(!flat.orbits_umbilic && !flat.constant_curvature_orbit &&
              !flat.positive_curvature_orbit,
          "torus sweep wrongly passes the rotation conditions");
  PrincipalNormalDecomp d =
      principal_normals(orbit_second_ff(mr.action, point4(1, 0, 3, 0)));
  require(d.count() == 2 && d.multiplicities[0] == 1 &&
              d.multiplicities[1] == 1 &&
              std::abs(d.normals[0].dot(d.normals[1])) < 1e-8,
          "flat-orbit structure");
  report(6, true);
}

void criterion_warped_metric() {
  auto base = circle(0, 3, 1);
  WarpedProductSpec spec;
  spec.base_chart = base;
  spec.rho = [base](const Vec& t) { return base(t)[1]; };
  spec.base_dim = 1;
  spec.resolution = {48};
  spec.periodic = {true};
  spec.fiber_dim = 2;
  WarpedRealization real = warped_to_rotation(spec, 1, 24);
  require(real.metric_report.pass && real.metric_report.max_relative_error < 1e-3,
          "metric identity error " +
              std::to_string(real.metric_report.max_relative_error));

  WarpedProductSpec off = spec;
  off.rho = [base](const Vec& t) { return 1.1 * base(t)[1]; };
  bool rejected = false;
  try {
    warped_to_rotation(off, 1, 24);
  } catch (const realizability_error&) {
    rejected = true;
  }
  require(rejected, "perturbed warping function accepted");
  report(7, true);
}

void criterion_evenness_gate() {
  require(boundary_smoothness_check([](double x) { return 1.0 + x * x; }, 5).pass,
          "1 + x^2 rejected");
  require(boundary_smoothness_check([](double x) { return std::cos(x); }, 5).pass,
          "cos rejected");
  SmoothnessReport bad =
      boundary_smoothness_check([](double x) { return 1.0 + x * x * x; }, 5);
  require(!bad.pass && !bad.odd_derivatives[1].pass, "1 + x^3 accepted");

  bool blocked = false;
  try {
    rotation_hypersurface(
        1, 3,
        [](const Vec& t) {
          Vec x(2);
          x[0] = 1.0 + t[0] * t[0] * t[0];
          x[1] = t[0];
          return x;
        },
        1, {33}, {false}, 1, 4);
  } catch (const smoothness_error&) {
    blocked = true;
  }
  require(blocked, "uneven axis-touching profile synthesized");
  report(8, true);
}

void criterion_tangency_nullity() {
  Chart cone{[](const Vec& t) {
               Vec x(4);
               x << t[0], t[1], t[2], std::sqrt(t.squaredNorm());
               return x;
             },
             3};
  Chart sphere{[](const Vec& t) {
                 double r = 1.5;
                 Vec x(4);
                 x << r * std::cos(t[0]), r * std::sin(t[0]) * std::cos(t[1]),
                     r * std::sin(t[0]) * std::sin(t[1]) * std::cos(t[2]),
                     r * std::sin(t[0]) * std::sin(t[1]) * std::sin(t[2]);
                 return x;
               },
               3};
  std::vector<Vec> nodes;
  for (double a : {0.6, 1.0, 1.4})
    for (double b : {0.5, 0.9}) {
      Vec t(3);
      t << a, b, 0.7;
      nodes.push_back(t);
    }
  for (const Vec& t : nodes) {
    require(position_tangency(cone, t).tangent, "cone position not tangent");
    require(relative_nullity(fundamental_forms(cone, t)) >= 1,
            "cone nullity below 1");
    require(!position_tangency(sphere, t).tangent, "sphere position tangent");
    require(relative_nullity(fundamental_forms(sphere, t)) == 0,
            "sphere nullity nonzero");
  }
  report(9, true);
}

void criterion_negative_controls() {
  // asymmetric profile: deviation = twice the offset from the axis
  Mat basis = Mat::Zero(4, 2);
  basis(0, 0) = 1.0;
  basis(1, 1) = 1.0;
  SectionSubspace section{Frame{basis}, Vec::Zero(4)};
  double offset = 0.25;
  ProfileHypersurface off = make_circle_profile(
      section, Vec(Eigen::Vector2d(0, offset)), 1.0, 64);
  Mat refl = Mat::Identity(2, 2);
  refl(1, 1) = -1.0;
  WeylGroupRep W;
  W.section_frame = Frame{Mat::Identity(2, 2)};
  W.generators.push_back(AffineIsometry{refl, Vec::Zero(2)});
  W.elements.push_back(AffineIsometry{Mat::Identity(2, 2), Vec::Zero(2)});
  W.elements.push_back(W.generators.front());
  InvarianceReport inv = check_weyl_invariance(off, W, 1e-6);
  require(!inv.invariant && !inv.disjoint_orbit, "asymmetric profile accepted");
  require(std::abs(inv.max_deviation - 2.0 * offset) < 0.1 * 2.0 * offset,
          "deviation " + std::to_string(inv.max_deviation));

  // corrupted mesh: cmd_verify must exit with the equivariance code (4)
  fs::path dir = fs::temp_directory_path() / "polarsweep-acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream prof(dir / "circle.profile");
    prof << "kind circle\ncenter 0 3\nradius 1\nresolution 48\n";
  }
  auto cli = [&](const std::string& args) {
    std::string cmd = std::string(POLARSWEEP_CLI) + " " + args + " > " +
                      (dir / "cli.log").string() + " 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
  };
  require(cli("synth --profile " + (dir / "circle.profile").string() +
              " --mode rotation --k 1 --n 3 --resolution 24 --out " +
              dir.string()) == 0,
          "synth failed");
  MeshData mesh = read_mesh_file((dir / "synth.mesh").string());
  mesh.vertices(2, 5) += 25.0;
  write_mesh_file((dir / "synth.mesh").string(), mesh);
  int code = cli("verify --mesh " + (dir / "synth.mesh").string() + " --out " +
                 dir.string());
  require(code == 4, "verify exit code " + std::to_string(code));
  report(10, true);
}

}  // namespace

int main() {
  run(1, criterion_exponential);
  run(2, criterion_cohomogeneity);
  run(3, criterion_decomposition);
  run(4, criterion_weyl);
  run(5, criterion_round_trip);
  run(6, criterion_structure_diagnostics);
  run(7, criterion_warped_metric);
  run(8, criterion_evenness_gate);
  run(9, criterion_tangency_nullity);
  run(10, criterion_negative_controls);
  return g_failures == 0 ? 0 : 1;
}
