// polarsweep command line: analyze linear isometric actions, inspect
// orbits, synthesize invariant hypersurfaces, and re-verify exported
// meshes.
//
// Exit codes are stable per failure category:
//   0 success, 1 internal/other, 2 parse or configuration,
//   3 profile symmetry, 4 equivariance, 5 transversality,
//   6 boundary smoothness, 7 warped-product realizability, 8 polarity.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "polarsweep/analysis.hpp"
#include "polarsweep/io.hpp"
#include "polarsweep/isopar.hpp"
#include "polarsweep/synthesis.hpp"

using namespace polarsweep;

namespace {

struct RunConfig {
  std::string action_file;
  std::string profile_file;
  std::string mesh_file;
  std::string mode = "rotation";
  std::string point;
  std::string blocks = "2 2";
  std::string radii = "1 3";
  std::string out_dir;
  std::uint64_t seed = 1;
  double tol = 1e-10;
  double fd_step = 1e-4;
  int resolution = 64;
  int k = 1;
  int n = 3;
  double rho_scale = 1.0;
};

std::string output_dir(const RunConfig& cfg) {
  if (!cfg.out_dir.empty()) return cfg.out_dir;
  if (const char* env = std::getenv("POLARSWEEP_OUT")) return env;
  return ".";
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(output_dir(cfg));
  return (std::filesystem::path(output_dir(cfg)) / name).string();
}

Vec parse_vector(const std::string& text) {
  std::istringstream ss(text);
  std::vector<double> vals;
  double v;
  while (ss >> v) vals.push_back(v);
  if (vals.empty()) throw parse_error("expected numbers, got '" + text + "'");
  return Eigen::Map<Vec>(vals.data(), static_cast<int>(vals.size()));
}

std::vector<int> parse_ints(const std::string& text) {
  std::istringstream ss(text);
  std::vector<int> vals;
  int v;
  while (ss >> v) vals.push_back(v);
  if (vals.empty()) throw parse_error("expected integers, got '" + text + "'");
  return vals;
}

void emit(const RunConfig& cfg, const std::string& stem,
          const std::string& report, const KeyValueList& summary) {
  write_text_atomic(out_path(cfg, stem + ".txt"), report);
  write_metadata_file(out_path(cfg, stem + ".summary"), summary);
  std::cout << report;
}

std::function<Vec(const Vec&)> circle_chart(const Vec& center, double radius) {
  return [center, radius](const Vec& t) {
    Vec x(2);
    x[0] = center[0] + radius * std::cos(2.0 * std::numbers::pi * t[0]);
    x[1] = center[1] + radius * std::sin(2.0 * std::numbers::pi * t[0]);
    return x;
  };
}

int cmd_action_info(const RunConfig& cfg) {
  LinearAction action = load_action_file(cfg.action_file);
  Vec p = find_regular_point(action, cfg.seed);
  SectionSubspace section = section_at(action, p, cfg.seed);
  PolarCertificate cert = certify_polar(action, section, {cfg.seed}, cfg.tol);
  Frame axis = fixed_subspace(action);
  int coh = cohomogeneity(action, cfg.seed);

  std::ostringstream rep;
  rep.precision(12);
  rep << "action: " << (action.label().empty() ? cfg.action_file : action.label())
      << "\nambient dimension: " << action.ambient_dim()
      << "\nalgebra rank: " << action.algebra_basis().size()
      << "\ncohomogeneity: " << coh
      << "\nfixed subspace dimension: " << axis.rank()
      << "\nsection basepoint: " << section.basepoint.transpose()
      << "\npolar: " << (cert.polar ? "true" : "false")
      << "\npolar residual: " << cert.max_residual << "\n";
  KeyValueList summary{{"cohomogeneity", std::to_string(coh)},
                       {"fixed_dim", std::to_string(axis.rank())},
                       {"polar", cert.polar ? "true" : "false"},
                       {"polar_residual", std::to_string(cert.max_residual)}};
  emit(cfg, "action_info", rep.str(), summary);
  if (!cert.polar) throw polarity_error("action failed the polarity certificate");
  return 0;
}

int cmd_orbit(const RunConfig& cfg) {
  LinearAction action = load_action_file(cfg.action_file);
  Vec p = parse_vector(cfg.point);
  if (p.size() != action.ambient_dim())
    throw parse_error("--point has wrong dimension");
  OrbitClass cls = classify_orbit(action, p);
  std::ostringstream rep;
  rep.precision(12);
  const char* kind = cls.kind == OrbitKind::principal       ? "principal"
                     : cls.kind == OrbitKind::singular      ? "singular"
                                                            : "exceptional-suspect";
  rep << "point: " << p.transpose() << "\norbit dimension: " << cls.orbit_dim
      << "\nclassification: " << kind << "\n";
  KeyValueList summary{{"orbit_dim", std::to_string(cls.orbit_dim)},
                       {"classification", kind}};

  if (cls.kind != OrbitKind::singular && cls.orbit_dim > 0) {
    SecondFF ff = orbit_second_ff(action, p);
    PrincipalNormalDecomp d = principal_normals(ff);
    Mat K = gauss_curvature_table(d);
    rep << "principal normals: " << d.count() << "\n";
    for (int i = 0; i < d.count(); ++i)
      rep << "  |eta_" << i + 1 << "| = " << d.normals[i].norm()
          << "  multiplicity " << d.multiplicities[i] << "\n";
    rep << "curvature table:\n" << K << "\n";
    std::vector<int> skipped;
    auto planes = focal_hyperplanes(d, ff.normal, &skipped);
    WeylGroupRep W = weyl_group(planes, ff.normal, p);
    rep << "focal hyperplanes: " << planes.size() << " (" << skipped.size()
        << " at infinity)\nWeyl group order: " << W.order() << "\n";
    summary.emplace_back("principal_normal_count", std::to_string(d.count()));
    summary.emplace_back("weyl_order", std::to_string(W.order()));
  } else {
    rep << "no principal-normal decomposition (singular orbit)\n";
  }
  emit(cfg, "orbit", rep.str(), summary);
  return 0;
}

int cmd_synth(const RunConfig& cfg) {
  ProfileFileData profile = load_profile_file(cfg.profile_file);
  const int trials = 50;
  const std::uint64_t eq_seed = 99;

  RotationResult result = [&] {
    if (cfg.mode == "rotation" || cfg.mode == "sweep") {
      auto chart = circle_chart(profile.center, profile.radius);
      if (cfg.mode == "sweep") {
        // raw sweep: symmetry check only, no axis smoothness gate
        LinearAction action = actions::axis_block(cfg.n + 1, cfg.k);
        Mat basis = Mat::Zero(cfg.n + 1, cfg.k + 1);
        basis.topLeftCorner(cfg.k, cfg.k).setIdentity();
        basis(cfg.k, cfg.k) = 1.0;
        SectionSubspace section{Frame{basis}, Vec::Zero(cfg.n + 1)};
        ProfileHypersurface L = make_profile(section, chart, 1,
                                             {profile.resolution}, {true});
        Mat refl = Mat::Identity(cfg.k + 1, cfg.k + 1);
        refl(cfg.k, cfg.k) = -1.0;
        WeylGroupRep W;
        W.section_frame = Frame{Mat::Identity(cfg.k + 1, cfg.k + 1)};
        W.generators.push_back(AffineIsometry{refl, Vec::Zero(cfg.k + 1)});
        W.elements.push_back(AffineIsometry{
            Mat::Identity(cfg.k + 1, cfg.k + 1), Vec::Zero(cfg.k + 1)});
        W.elements.push_back(W.generators.front());
        InvarianceReport inv = check_weyl_invariance(L, W, 1e-6);
        double scale = std::max(1.0, L.samples.cwiseAbs().maxCoeff());
        bool in_chamber = L.samples.row(cfg.k).minCoeff() > -1e-6 * scale;
        if (!inv.invariant && !in_chamber)
          throw weyl_invariance_error(
              "profile is neither symmetric about the axis nor confined "
              "to one side of it (deviation " +
                  std::to_string(inv.max_deviation) + ")",
              inv.max_deviation);
        SweptHypersurface M = sweep(action, L, cfg.seed, cfg.resolution);
        return RotationResult{std::move(action), std::move(M), std::move(L)};
      }
      return rotation_hypersurface(cfg.k, cfg.n, chart, 1,
                                   {profile.resolution}, {true}, cfg.seed,
                                   cfg.resolution);
    }
    if (cfg.mode == "multirot") {
      auto blocks = parse_ints(cfg.blocks);
      Vec radii = parse_vector(cfg.radii);
      std::vector<int> block_dims{0};
      block_dims.insert(block_dims.end(), blocks.begin(), blocks.end());
      std::vector<double> r(radii.data(), radii.data() + radii.size());
      auto chart = circle_chart(profile.center, profile.radius);
      return multi_rotational(block_dims, r, chart, 1, {profile.resolution},
                              {true}, cfg.seed, cfg.resolution);
    }
    if (cfg.mode == "warped") {
      auto chart = circle_chart(profile.center, profile.radius);
      WarpedProductSpec spec;
      spec.base_chart = chart;
      spec.rho = [chart, scale = cfg.rho_scale](const Vec& t) {
        return scale * chart(t)[1];
      };
      spec.base_dim = cfg.k;
      spec.resolution = {profile.resolution};
      spec.periodic = {true};
      spec.fiber_dim = cfg.n - cfg.k;
      WarpedRealization real =
          warped_to_rotation(spec, cfg.seed, cfg.resolution, 1e-8, cfg.fd_step);
      std::cout.precision(12);
      std::cout << "warped metric max relative error: "
                << real.metric_report.max_relative_error << "\n";
      return std::move(real.rotation);
    }
    throw parse_error("unknown --mode '" + cfg.mode + "'");
  }();

  double residual = equivariance_check(result.swept, trials, eq_seed);
  double threshold = 2.0 * result.swept.resolution_estimate;
  TransversalityReport tv =
      transversality_check(result.profile.section, result.swept, 1e-8);

  MeshData mesh = mesh_from_swept(result.swept, result.profile.closed);
  std::string mesh_path = out_path(cfg, "synth.mesh");
  write_mesh_file(mesh_path, mesh);
  write_metadata_file(
      mesh_path + ".meta",
      metadata_for_synthesis(result.action, profile, cfg.mode, cfg.k, cfg.n,
                             result.swept, trials, eq_seed));

  std::ostringstream rep;
  rep.precision(12);
  rep << "mode: " << cfg.mode << "\nsamples: " << result.swept.num_samples()
      << "\nsampling resolution: " << result.swept.resolution_estimate
      << "\nequivariance residual: " << residual << " (threshold " << threshold
      << ")\ntransversal section intersections: " << tv.intersection_samples
      << " (margin " << tv.min_margin << ")\nmesh: " << mesh_path << "\n";
  KeyValueList summary{
      {"samples", std::to_string(result.swept.num_samples())},
      {"equivariance_residual", std::to_string(residual)},
      {"equivariance_threshold", std::to_string(threshold)},
      {"transversal", tv.transversal ? "true" : "false"}};
  emit(cfg, "synth", rep.str(), summary);

  if (residual > threshold)
    throw equivariance_error("equivariance residual above threshold");
  if (!tv.transversal)
    throw transversality_error("section fails to meet the sweep transversally");
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  MeshData mesh = read_mesh_file(cfg.mesh_file);
  KeyValueList meta = read_metadata_file(cfg.mesh_file + ".meta");
  LinearAction action = action_from_metadata(meta);
  if (mesh.dim != action.ambient_dim())
    throw parse_error("mesh dimension does not match metadata");

  SweptHypersurface loaded{action,
                           {},
                           {},
                           mesh.vertices,
                           std::stod(find_value(meta, "resolution_estimate")),
                           std::stoull(find_value(meta, "seed")),
                           std::stoi(find_value(meta, "profile_count"))};
  int trials = std::stoi(find_value(meta, "equivariance_trials"));
  std::uint64_t eq_seed = std::stoull(find_value(meta, "equivariance_seed"));
  double threshold = std::stod(find_value(meta, "equivariance_threshold"));
  double residual = equivariance_check(loaded, trials, eq_seed);

  std::ostringstream rep;
  rep.precision(12);
  rep << "mesh: " << cfg.mesh_file << "\nvertices: " << mesh.vertices.cols()
      << "\nequivariance residual: " << residual << " (threshold " << threshold
      << ")\n";

  KeyValueList summary{{"equivariance_residual", std::to_string(residual)},
                       {"equivariance_threshold", std::to_string(threshold)}};

  bool structural_ok = true;
  if (find_value(meta, "mode") == "rotation") {
    // rebuild the synthesis to recover frames for the structural checks
    ProfileFileData profile;
    profile.kind = find_value(meta, "profile_kind");
    profile.center = parse_vector(find_value(meta, "profile_center"));
    profile.radius = std::stod(find_value(meta, "profile_radius"));
    profile.resolution = std::stoi(find_value(meta, "profile_resolution"));
    int k = std::stoi(find_value(meta, "k"));
    int n = std::stoi(find_value(meta, "n"));
    RotationResult rebuilt = rotation_hypersurface(
        k, n, circle_chart(profile.center, profile.radius), 1,
        {profile.resolution}, {true}, loaded.seed,
        std::stoi(find_value(meta, "group_count")));
    TransversalityReport tv =
        transversality_check(rebuilt.profile.section, rebuilt.swept, 1e-8);
    RotationStructureReport rs =
        rotation_structure_report(action, rebuilt.swept);
    rep << "transversal: " << (tv.transversal ? "true" : "false")
        << "\norbit umbilicity deviation: " << rs.umbilic_deviation
        << "\nrotation structure conditions:"
        << " totally-geodesic-orbit=" << rs.totally_geodesic_orbit
        << " max-cohomogeneity=" << rs.max_cohomogeneity
        << " umbilic-orbits=" << rs.orbits_umbilic
        << " constant-curvature-orbit=" << rs.constant_curvature_orbit
        << " positive-curvature-orbit=" << rs.positive_curvature_orbit << "\n";
    summary.emplace_back("transversal", tv.transversal ? "true" : "false");
    summary.emplace_back("umbilic_orbits", rs.orbits_umbilic ? "true" : "false");
    structural_ok = tv.transversal;
  }
  emit(cfg, "verify", rep.str(), summary);

  if (residual > threshold)
    throw equivariance_error("equivariance residual above threshold");
  if (!structural_ok)
    throw transversality_error("section fails to meet the mesh transversally");
  return 0;
}

int cmd_export(const RunConfig& cfg) {
  MeshData mesh = read_mesh_file(cfg.mesh_file);
  if (mesh.dim < 3)
    throw validation_error("export: mesh dimension below 3");
  std::ostringstream out;
  out.precision(9);
  out << "# polarsweep export (first 3 of " << mesh.dim << " coordinates)\n";
  for (int i = 0; i < mesh.vertices.cols(); ++i)
    out << "v " << mesh.vertices(0, i) << " " << mesh.vertices(1, i) << " "
        << mesh.vertices(2, i) << "\n";
  for (const auto& line : mesh.lines) {
    out << "l";
    for (int idx : line) out << " " << idx;
    out << "\n";
  }
  write_text_atomic(out_path(cfg, "export.obj"), out.str());
  std::cout << "wrote " << out_path(cfg, "export.obj") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polar group actions: orbit analysis and invariant "
               "hypersurface synthesis"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", cfg.seed, "sampling seed");
    cmd->add_option("--tol", cfg.tol, "pass/fail tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--fd-step", cfg.fd_step, "finite-difference step")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--resolution", cfg.resolution, "group sample count");
    cmd->add_option("--out", cfg.out_dir,
                    "output directory (default $POLARSWEEP_OUT or .)");
  };

  auto* info = app.add_subcommand("action-info",
                                  "cohomogeneity, section, polarity");
  info->add_option("--action", cfg.action_file, "action file")
      ->required()
      ->check(CLI::ExistingFile);
  add_common(info);

  auto* orbit = app.add_subcommand("orbit", "orbit decomposition at a point");
  orbit->add_option("--action", cfg.action_file, "action file")
      ->required()
      ->check(CLI::ExistingFile);
  orbit->add_option("--point", cfg.point, "orbit point, space separated")
      ->required();
  add_common(orbit);

  auto* synth = app.add_subcommand("synth", "sweep a profile to a mesh");
  synth->add_option("--profile", cfg.profile_file, "profile file")
      ->required()
      ->check(CLI::ExistingFile);
  synth->add_option("--mode", cfg.mode, "sweep|rotation|multirot|warped");
  synth->add_option("--k", cfg.k, "axis dimension");
  synth->add_option("--n", cfg.n, "hypersurface dimension");
  synth->add_option("--blocks", cfg.blocks, "rotating block dimensions");
  synth->add_option("--radii", cfg.radii, "block radii");
  synth->add_option("--rho-scale", cfg.rho_scale,
                    "warping function scale (warped mode)");
  add_common(synth);

  auto* verify = app.add_subcommand("verify", "re-check an exported mesh");
  verify->add_option("--mesh", cfg.mesh_file, "mesh file")
      ->required()
      ->check(CLI::ExistingFile);
  add_common(verify);

  auto* exp = app.add_subcommand("export", "convert a mesh to wavefront obj");
  exp->add_option("--mesh", cfg.mesh_file, "mesh file")
      ->required()
      ->check(CLI::ExistingFile);
  add_common(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (info->parsed()) return cmd_action_info(cfg);
    if (orbit->parsed()) return cmd_orbit(cfg);
    if (synth->parsed()) return cmd_synth(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (exp->parsed()) return cmd_export(cfg);
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const weyl_invariance_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const equivariance_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const transversality_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const smoothness_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 6;
  } catch (const realizability_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 7;
  } catch (const polarity_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 8;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
