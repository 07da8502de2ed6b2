#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "akm/verify.hpp"

namespace py = pybind11;
using namespace akm;

namespace {

// Structure handle with the catalog parameters kept alongside so the
// D-conformal change and report metadata stay available from python.
struct PyStructure {
  AcmStructure structure;
  std::optional<LieGroupModelParams> params;
  bool alpha_normalized = false;

  std::vector<ChartPoint> samples(int count, std::uint64_t seed) const {
    return sample_points(structure.chart, count, seed);
  }
};

PyStructure make_model(int n, double alpha, const std::vector<double>& lambdas) {
  CatalogModel m = build_model({n, alpha, lambdas});
  return PyStructure{std::move(m.structure), m.params, m.alpha_normalized};
}

ChartPoint to_point(const PyStructure& s, const Vec& coords) {
  if (coords.size() != s.structure.chart.dim())
    throw InvalidParams("point has wrong dimension");
  return ChartPoint{coords};
}

py::array_t<double> tensor3_to_array(const Tensor3& t) {
  const int d = t.dim();
  py::array_t<double> out({d, d, d});
  auto r = out.mutable_unchecked<3>();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) r(a, b, c) = t(a, b, c);
  return out;
}

py::array_t<double> tensor4_to_array(const Tensor4& t) {
  const int d = t.dim();
  py::array_t<double> out({d, d, d, d});
  auto r = out.mutable_unchecked<4>();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) r(a, b, c, e) = t(a, b, c, e);
  return out;
}

py::dict validity_dict(const ValidityReport& v) {
  py::dict d;
  d["pass"] = v.pass;
  d["phi_square"] = v.res_phi_square;
  d["eta_xi"] = v.res_eta_xi;
  d["phi_xi"] = v.res_phi_xi;
  d["eta_phi"] = v.res_eta_phi;
  d["compatibility"] = v.res_compat;
  d["min_metric_eigenvalue"] = v.min_metric_eigenvalue;
  return d;
}

} // namespace

PYBIND11_MODULE(akm, m) {
  m.doc() = "Numerical tensor calculus for almost alpha-Kenmotsu structures: "
            "model spaces, canonical connection, D-homothetic deformations, "
            "(kappa, mu)'-nullity analysis";

  py::register_exception<PointTooCloseToBoundary>(m, "PointTooCloseToBoundary");
  py::register_exception<SingularMetric>(m, "SingularMetric");
  py::register_exception<DegeneratePlane>(m, "DegeneratePlane");
  py::register_exception<OracleMismatch>(m, "OracleMismatch");
  py::register_exception<InvalidBeta>(m, "InvalidBeta");
  py::register_exception<InvalidParams>(m, "InvalidParams");
  py::register_exception<NotKmuModel>(m, "NotKmuModel");
  py::register_exception<NotKmuSpace>(m, "NotKmuSpace");
  py::register_exception<KappaOutOfRange>(m, "KappaOutOfRange");
  py::register_exception<PreconditionFailed>(m, "PreconditionFailed");

  py::class_<PyStructure>(m, "Structure")
      .def_property_readonly("dim", [](const PyStructure& s) { return s.structure.chart.dim(); })
      .def_property_readonly("alpha", [](const PyStructure& s) { return s.structure.alpha; })
      .def_property_readonly("alpha_normalized",
                             [](const PyStructure& s) { return s.alpha_normalized; })
      .def_property_readonly("coord_names",
                             [](const PyStructure& s) { return s.structure.chart.coord_names(); })
      .def("__repr__", [](const PyStructure& s) {
        return "<akm.Structure dim=" + std::to_string(s.structure.chart.dim()) +
               " alpha=" + std::to_string(s.structure.alpha) + ">";
      });

  m.def("build_model", &make_model, py::arg("n"), py::arg("alpha"), py::arg("lambdas"),
        "Lie-group model space on the chart (t, x_1..x_n, y_1..y_n)");

  m.def(
      "validate",
      [](const PyStructure& s, int samples, std::uint64_t seed) {
        return validity_dict(validate(s.structure, s.samples(samples, seed), {}, seed));
      },
      py::arg("structure"), py::arg("samples") = 20, py::arg("seed") = 42);

  m.def(
      "check_alpha_kenmotsu",
      [](const PyStructure& s, int samples, std::uint64_t seed) {
        const AlphaKenmotsuReport r =
            check_alpha_kenmotsu(s.structure, s.samples(samples, seed), {});
        py::dict d;
        d["pass"] = r.pass;
        d["max_d_eta"] = r.max_d_eta;
        d["max_d_phi_residual"] = r.max_d_phi_residual;
        d["alpha_hat"] = r.alpha_hat;
        d["cosymplectic"] = r.cosymplectic;
        return d;
      },
      py::arg("structure"), py::arg("samples") = 20, py::arg("seed") = 42);

  m.def(
      "h_prime",
      [](const PyStructure& s, int samples, std::uint64_t seed) {
        const HPrimeReport r = h_prime_report(s.structure, s.samples(samples, seed));
        py::dict d;
        d["eigenvalues"] = r.eigenvalues;
        d["multiplicities"] = r.multiplicities;
        d["spectrum_constant"] = r.spectrum_constant;
        d["spectrum_symmetric"] = r.spectrum_symmetric;
        d["matrix"] = r.matrix;
        return d;
      },
      py::arg("structure"), py::arg("samples") = 20, py::arg("seed") = 42);

  m.def(
      "h_prime_matrix",
      [](const PyStructure& s, const Vec& point) {
        return h_prime_matrix(s.structure, to_point(s, point));
      },
      py::arg("structure"), py::arg("point"));

  m.def(
      "metric",
      [](const PyStructure& s, const Vec& point) { return s.structure.g.value(to_point(s, point)); },
      py::arg("structure"), py::arg("point"));

  m.def(
      "christoffel",
      [](const PyStructure& s, const Vec& point) {
        return tensor3_to_array(
            christoffel(s.structure.g, s.structure.chart, to_point(s, point)).gamma);
      },
      py::arg("structure"), py::arg("point"),
      "Levi-Civita coefficients Gamma[k, i, j] = Gamma^k_ij");

  m.def(
      "riemann",
      [](const PyStructure& s, const Vec& point) {
        return tensor4_to_array(riemann(s.structure.g, s.structure.chart, to_point(s, point)).riem);
      },
      py::arg("structure"), py::arg("point"), "Curvature components R[l, k, i, j] = R^l_kij");

  m.def(
      "canonical_connection",
      [](const PyStructure& s, const Vec& point) {
        return tensor3_to_array(canonical_connection(s.structure, to_point(s, point)).gamma_tilde);
      },
      py::arg("structure"), py::arg("point"));

  m.def(
      "canonical_curvature",
      [](const PyStructure& s, const Vec& point) {
        return tensor4_to_array(canonical_curvature(s.structure, to_point(s, point), {}).riem);
      },
      py::arg("structure"), py::arg("point"),
      "Canonical curvature, cross-checked against the curvature-relation route");

  m.def(
      "sectional_curvature",
      [](const PyStructure& s, const Vec& point, const Vec& u, const Vec& v) {
        return sectional_curvature(s.structure.g, s.structure.chart, to_point(s, point), u, v);
      },
      py::arg("structure"), py::arg("point"), py::arg("u"), py::arg("v"));

  m.def(
      "fit_kmu",
      [](const PyStructure& s, int samples, std::uint64_t seed) {
        const NullityFit f = fit_kmu(s.structure, s.samples(samples, seed), {});
        py::dict d;
        d["kappa"] = f.kappa;
        d["mu"] = f.mu ? py::cast(*f.mu) : py::none();
        d["residual"] = f.residual;
        d["is_kmu"] = f.is_kmu;
        d["degenerate"] = f.degenerate;
        return d;
      },
      py::arg("structure"), py::arg("samples") = 20, py::arg("seed") = 42);

  m.def(
      "invariant",
      [](const PyStructure& s, int samples, std::uint64_t seed) {
        const ClassInvariant ci = invariant(s.structure, s.samples(samples, seed), {});
        py::dict d;
        d["invariant"] = ci.invariant;
        d["dim"] = ci.dim;
        d["spectrum"] = ci.spectrum;
        return d;
      },
      py::arg("structure"), py::arg("samples") = 20, py::arg("seed") = 42);

  m.def("lambda_from_kappa", &lambda_from_kappa, py::arg("kappa"), py::arg("alpha"));

  m.def(
      "deform",
      [](const PyStructure& s, double beta) {
        return PyStructure{deform(s.structure, DeformationParams{beta}), std::nullopt, false};
      },
      py::arg("structure"), py::arg("beta"));

  m.def("transform_kmu", &transform_kmu, py::arg("kappa"), py::arg("mu"), py::arg("beta"));

  m.def(
      "d_conformal_change",
      [](const PyStructure& s) {
        if (!s.params) throw NotKmuModel("D-conformal change requires a catalog model");
        CatalogModel m{s.structure, *s.params, s.alpha_normalized};
        return PyStructure{d_conformal_change(m), std::nullopt, false};
      },
      py::arg("structure"));

  m.def(
      "classify_pair",
      [](const PyStructure& a, const PyStructure& b, int samples, std::uint64_t seed) {
        const EquivalenceVerdict v = classify_pair(a.structure, b.structure, samples, seed, {});
        py::dict d;
        d["equivalent"] = v.equivalent;
        d["witness_beta"] = v.witness_beta;
        d["reason"] = v.reason;
        d["spectrum1"] = v.spectrum1;
        d["spectrum2"] = v.spectrum2;
        d["invariant1"] = v.invariant1 ? py::cast(*v.invariant1) : py::none();
        d["invariant2"] = v.invariant2 ? py::cast(*v.invariant2) : py::none();
        return d;
      },
      py::arg("structure1"), py::arg("structure2"), py::arg("samples") = 20, py::arg("seed") = 42);

  m.def(
      "canonical_checks",
      [](const PyStructure& s, int samples, std::uint64_t seed) {
        const auto pts = s.samples(samples, seed);
        const ParallelismReport pr = check_parallelism(s.structure, pts, {});
        const TorsionAxiomsReport ta = check_torsion_axioms(s.structure, pts, {});
        const CanonicalInvariantsReport ci = check_nabla_T_and_R(s.structure, pts, {}, false);
        py::dict d;
        d["parallelism_pass"] = pr.pass;
        d["max_nabla_g"] = pr.max_nabla_g;
        d["max_nabla_phi"] = pr.max_nabla_phi;
        d["max_nabla_eta"] = pr.max_nabla_eta;
        d["torsion_axioms_pass"] = ta.pass;
        d["max_r_tilde"] = ci.max_r_tilde;
        d["max_nabla_torsion"] = ci.max_nabla_torsion;
        d["cross_oracle_mismatch"] = ci.cross_oracle_mismatch;
        return d;
      },
      py::arg("structure"), py::arg("samples") = 20, py::arg("seed") = 42);

  m.attr("__version__") = "0.1.0";
}
