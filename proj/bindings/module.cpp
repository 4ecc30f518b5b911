#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polarsweep/analysis.hpp"
#include "polarsweep/isopar.hpp"
#include "polarsweep/synthesis.hpp"

namespace py = pybind11;
using namespace polarsweep;

PYBIND11_MODULE(_polarsweep, m) {
  m.doc() = "polar group actions: orbit analysis and invariant "
            "hypersurface synthesis";

  py::register_exception<validation_error>(m, "ValidationError");

  py::class_<Frame>(m, "Frame")
      .def_readonly("basis", &Frame::basis)
      .def("rank", &Frame::rank)
      .def("ambient_dim", &Frame::ambient_dim);

  m.def("exp_skew", &exp_skew, py::arg("a"), py::arg("t") = 1.0,
        py::arg("skew_tol") = 1e-12,
        "Orthogonal exponential exp(t*A) of a skew matrix");
  m.def("skew_defect", &skew_defect);
  m.def(
      "orthonormalize",
      [](const Mat& cols, double tol) { return orthonormalize(cols, tol); },
      py::arg("columns"), py::arg("tol") = 1e-8);
  m.def("complement", &complement);

  py::class_<LinearAction>(m, "LinearAction")
      .def(py::init<int, std::vector<Mat>, std::string>(),
           py::arg("ambient_dim"), py::arg("generators"),
           py::arg("label") = "")
      .def_property_readonly("ambient_dim", &LinearAction::ambient_dim)
      .def_property_readonly("label", &LinearAction::label)
      .def_property_readonly("generators", &LinearAction::generators)
      .def_property_readonly("algebra_basis", &LinearAction::algebra_basis)
      .def("killing_field", &LinearAction::killing_field);

  py::class_<SectionSubspace>(m, "SectionSubspace")
      .def_readonly("frame", &SectionSubspace::frame)
      .def_readonly("basepoint", &SectionSubspace::basepoint);

  py::class_<PolarCertificate>(m, "PolarCertificate")
      .def_readonly("max_residual", &PolarCertificate::max_residual)
      .def_readonly("polar", &PolarCertificate::polar);

  py::enum_<OrbitKind>(m, "OrbitKind")
      .value("principal", OrbitKind::principal)
      .value("exceptional_suspect", OrbitKind::exceptional_suspect)
      .value("singular", OrbitKind::singular);

  py::class_<OrbitClass>(m, "OrbitClass")
      .def_readonly("kind", &OrbitClass::kind)
      .def_readonly("orbit_dim", &OrbitClass::orbit_dim);

  m.def("orbit_tangent", &orbit_tangent, py::arg("action"), py::arg("p"),
        py::arg("tol") = 1e-8);
  m.def("orbit_dimension", &orbit_dimension, py::arg("action"), py::arg("p"),
        py::arg("tol") = 1e-8);
  m.def("cohomogeneity", &cohomogeneity, py::arg("action"),
        py::arg("sampler_seed") = 1, py::arg("samples") = 256);
  m.def("find_regular_point", &find_regular_point, py::arg("action"),
        py::arg("sampler_seed") = 1, py::arg("samples") = 256);
  m.def("section_at", &section_at, py::arg("action"), py::arg("p_regular"),
        py::arg("sampler_seed") = 1, py::arg("samples") = 256);
  m.def(
      "certify_polar",
      [](const LinearAction& a, const SectionSubspace& s, double tol) {
        return certify_polar(a, s, {}, tol);
      },
      py::arg("action"), py::arg("section"), py::arg("tol") = 1e-10);
  m.def("fixed_subspace", &fixed_subspace, py::arg("action"),
        py::arg("tol") = 1e-8);
  m.def("classify_orbit", &classify_orbit, py::arg("action"), py::arg("p"),
        py::arg("isotropy_samples") = 64, py::arg("seed") = 1);

  m.def("axis_block_action", &actions::axis_block, py::arg("d"),
        py::arg("axis_dim"));
  m.def("so_action", &actions::so, py::arg("d"));
  m.def("torus_action", &actions::torus, py::arg("blocks"));

  py::class_<SecondFF>(m, "SecondFF")
      .def_readonly("basepoint", &SecondFF::basepoint)
      .def_readonly("tangent", &SecondFF::tangent)
      .def_readonly("normal", &SecondFF::normal)
      .def_readonly("values", &SecondFF::values)
      .def("orbit_dim", &SecondFF::orbit_dim);

  py::class_<PrincipalNormalDecomp>(m, "PrincipalNormalDecomp")
      .def_readonly("normals", &PrincipalNormalDecomp::normals)
      .def_readonly("multiplicities", &PrincipalNormalDecomp::multiplicities)
      .def_readonly("reconstruction_residual",
                    &PrincipalNormalDecomp::reconstruction_residual)
      .def("count", &PrincipalNormalDecomp::count);

  py::class_<WeylGroupRep>(m, "WeylGroupRep")
      .def("order", &WeylGroupRep::order);

  m.def("orbit_second_ff", &orbit_second_ff);
  m.def("shape_operator", &shape_operator, py::arg("ff"), py::arg("xi"),
        py::arg("tol") = 1e-6);
  m.def("commutation_residual", &commutation_residual);
  m.def("principal_normals", &principal_normals, py::arg("ff"),
        py::arg("cluster_tol") = 1e-4, py::arg("seed") = 7);
  m.def("gauss_curvature_table", &gauss_curvature_table);
  m.def(
      "orbit_weyl_group",
      [](const LinearAction& action, const Vec& p) {
        SecondFF ff = orbit_second_ff(action, p);
        PrincipalNormalDecomp d = principal_normals(ff);
        auto planes = focal_hyperplanes(d, ff.normal);
        return weyl_group(planes, ff.normal, p);
      },
      py::arg("action"), py::arg("p"),
      "Weyl group generated by the focal-hyperplane reflections at p");

  py::class_<ProfileHypersurface>(m, "ProfileHypersurface")
      .def_readonly("samples", &ProfileHypersurface::samples)
      .def_readonly("closed", &ProfileHypersurface::closed)
      .def("num_samples", &ProfileHypersurface::num_samples);

  py::class_<SweptHypersurface>(m, "SweptHypersurface")
      .def_readonly("points", &SweptHypersurface::points)
      .def_readonly("resolution_estimate",
                    &SweptHypersurface::resolution_estimate)
      .def("num_samples", &SweptHypersurface::num_samples);

  py::class_<RotationResult>(m, "RotationResult")
      .def_readonly("action", &RotationResult::action)
      .def_readonly("swept", &RotationResult::swept)
      .def_readonly("profile", &RotationResult::profile);

  py::class_<SmoothnessReport>(m, "SmoothnessReport")
      .def_readonly("pass_", &SmoothnessReport::pass);

  m.def(
      "rotation_hypersurface",
      [](int k, int n, const std::function<Vec(const Vec&)>& profile,
         int param_dim, std::vector<int> resolution,
         std::vector<bool> periodic, std::uint64_t seed, int group_count) {
        return rotation_hypersurface(k, n, profile, param_dim,
                                     std::move(resolution),
                                     std::move(periodic), seed, group_count);
      },
      py::arg("k"), py::arg("n"), py::arg("profile"), py::arg("param_dim"),
      py::arg("resolution"), py::arg("periodic"), py::arg("seed") = 1,
      py::arg("group_count") = 64);
  m.def("equivariance_check", &equivariance_check, py::arg("m"),
        py::arg("trials") = 50, py::arg("seed") = 99);
  m.def("covering_resolution", &covering_resolution, py::arg("m"),
        py::arg("trials") = 50, py::arg("seed") = 12345);
  m.def("boundary_smoothness_check", &boundary_smoothness_check,
        py::arg("f"), py::arg("order"), py::arg("h") = 0.05,
        py::arg("tol") = 1e-5, py::arg("two_sided") = true);

  py::class_<CurvatureSample>(m, "CurvatureSample")
      .def_readonly("point", &CurvatureSample::point)
      .def_readonly("first_ff", &CurvatureSample::first_ff)
      .def_readonly("second_ff", &CurvatureSample::second_ff)
      .def_readonly("principal_curvatures",
                    &CurvatureSample::principal_curvatures);

  m.def(
      "fundamental_forms",
      [](const std::function<Vec(const Vec&)>& map, int param_dim,
         const Vec& node, double fd_step) {
        return fundamental_forms(Chart{map, param_dim}, node, fd_step);
      },
      py::arg("chart"), py::arg("param_dim"), py::arg("node"),
      py::arg("fd_step") = 1e-3);
  m.def("relative_nullity", &relative_nullity, py::arg("sample"),
        py::arg("eig_tol") = 1e-4);
  m.def(
      "position_tangency",
      [](const std::function<Vec(const Vec&)>& map, int param_dim,
         const Vec& node, double tol, double fd_step) {
        auto r = position_tangency(Chart{map, param_dim}, node, tol, fd_step);
        return py::make_tuple(r.tangent, r.normal_component);
      },
      py::arg("chart"), py::arg("param_dim"), py::arg("node"),
      py::arg("tol") = 1e-6, py::arg("fd_step") = 1e-3);
}
