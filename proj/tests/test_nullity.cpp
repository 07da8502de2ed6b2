#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "akm/deformation.hpp"
#include "akm/nullity.hpp"
#include "test_helpers.hpp"

using namespace akm;

namespace {

std::vector<ChartPoint> samples_of(const AcmStructure& s, int count = 12, std::uint64_t seed = 42) {
  return sample_points(s.chart, count, seed);
}

} // namespace

TEST_CASE("fit_kmu: equal-lambda models give kappa = -a^2(1+l^2), mu = -2a^2") {
  const CatalogModel m = build_model({2, 1.0, {2.0, 2.0}});
  const NullityFit fit = fit_kmu(m.structure, samples_of(m.structure), {});
  CHECK(fit.is_kmu);
  CHECK_FALSE(fit.degenerate);
  CHECK(fit.kappa == doctest::Approx(-5.0).epsilon(1e-6));
  REQUIRE(fit.mu.has_value());
  CHECK(*fit.mu == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(fit.residual < 1e-4);
}

TEST_CASE("fit_kmu: mixed spectrum (1,2) is rejected with a large residual") {
  const CatalogModel m = build_model({2, 1.0, {1.0, 2.0}});
  const NullityFit fit = fit_kmu(m.structure, samples_of(m.structure), {});
  CHECK_FALSE(fit.is_kmu);
  CHECK(fit.residual > 0.1);
}

TEST_CASE("fit_kmu: lambda = 0 degenerates to a kappa-only fit") {
  const CatalogModel m = build_model({1, 1.0, {0.0}});
  const NullityFit fit = fit_kmu(m.structure, samples_of(m.structure), {});
  CHECK(fit.degenerate);
  CHECK_FALSE(fit.mu.has_value());
  CHECK(fit.kappa == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(fit.is_kmu);
}

TEST_CASE("fit_kmu: parameter sweep matches the closed forms") {
  for (double a : {0.5, 1.0, 2.0})
    for (double lam : {0.5, 1.0, 3.0}) {
      const CatalogModel m = build_model({1, a, {lam}});
      const NullityFit fit = fit_kmu(m.structure, samples_of(m.structure, 8), {});
      CHECK(fit.kappa == doctest::Approx(-a * a * (1.0 + lam * lam)).epsilon(1e-4));
      CHECK(*fit.mu == doctest::Approx(-2.0 * a * a).epsilon(1e-4));
      CHECK(fit.kappa <= -a * a + 1e-6);
    }
}

TEST_CASE("invariant: I = kappa / a^2 = -1 - lambda^2") {
  const CatalogModel m1 = build_model({1, 1.0, {2.0}});
  const ClassInvariant i1 = invariant(m1.structure, samples_of(m1.structure), {});
  CHECK(i1.invariant == doctest::Approx(-5.0).epsilon(1e-6));
  CHECK(i1.dim == 3);

  // same class under alpha rescaling: alpha = 2, lambda = 2 has kappa = -20
  const CatalogModel m2 = build_model({1, 2.0, {2.0}});
  const ClassInvariant i2 = invariant(m2.structure, samples_of(m2.structure), {});
  CHECK(i2.invariant == doctest::Approx(-5.0).epsilon(1e-6));

  // lambda = 1: the locally symmetric class I = -2
  const CatalogModel m3 = build_model({1, 1.0, {1.0}});
  const ClassInvariant i3 = invariant(m3.structure, samples_of(m3.structure), {});
  CHECK(i3.invariant == doctest::Approx(-2.0).epsilon(1e-6));
}

TEST_CASE("invariant: refuses non-nullity and degenerate structures") {
  const CatalogModel mixed = build_model({2, 1.0, {1.0, 2.0}});
  CHECK_THROWS_AS(invariant(mixed.structure, samples_of(mixed.structure), {}), NotKmuSpace);
  const CatalogModel flat = build_model({1, 1.0, {0.0}});
  CHECK_THROWS_AS(invariant(flat.structure, samples_of(flat.structure), {}), NotKmuSpace);
}

TEST_CASE("lambda_from_kappa: closed form and range check") {
  CHECK(lambda_from_kappa(-5.0, 1.0) == doctest::Approx(2.0));
  CHECK(lambda_from_kappa(-1.0, 1.0) == doctest::Approx(0.0));
  CHECK(lambda_from_kappa(-4.0, 2.0) == doctest::Approx(0.0));
  CHECK(lambda_from_kappa(-2.0, 1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(lambda_from_kappa(-0.5, 1.0), KappaOutOfRange);
}

TEST_CASE("verify_kmu_curvature_formula: closed-form law, flat canonical curvature, leaf planes") {
  const CatalogModel m = build_model({1, 1.0, {2.0}});
  const KmuCurvatureReport r =
      verify_kmu_curvature_formula(m.structure, samples_of(m.structure), {});
  CHECK(r.pass);
  CHECK(r.max_formula_residual < 1e-4);
  CHECK(r.max_r_tilde < 1e-4);
  // [xi]+[lambda] planes: K = kappa - 2 a^2 lambda = -9; [xi]+[-lambda]: -1
  CHECK(r.plus_plane_curvature == doctest::Approx(-9.0).epsilon(1e-4));
  CHECK(r.minus_plane_curvature == doctest::Approx(-1.0).epsilon(1e-4));
  CHECK(r.max_plus_plane_dev < 1e-5);
  CHECK(r.max_minus_plane_dev < 1e-5);
}

TEST_CASE("verify_kmu_curvature_formula: lambda = 1 minus-planes are flat") {
  const CatalogModel m = build_model({2, 1.0, {1.0, 1.0}});
  const KmuCurvatureReport r =
      verify_kmu_curvature_formula(m.structure, samples_of(m.structure, 8), {});
  CHECK(r.minus_plane_curvature == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(r.max_minus_plane_dev < 1e-5);
}

TEST_CASE("classify_pair: alpha-rescaled models are equivalent") {
  const CatalogModel a = build_model({1, 1.0, {2.0}});
  const CatalogModel b = build_model({1, 3.0, {2.0}});
  const AcmStructure bd = deform(b.structure, DeformationParams{3.0});
  const EquivalenceVerdict v = classify_pair(a.structure, bd, 10, 42, {});
  CHECK(v.equivalent);
  CHECK(v.witness_beta == doctest::Approx(1.0));
  REQUIRE(v.invariant1.has_value());
  REQUIRE(v.invariant2.has_value());
  CHECK(*v.invariant1 == doctest::Approx(*v.invariant2).epsilon(1e-6));

  // undeformed: same class, witness beta = alpha1/alpha2 = 1/3
  const EquivalenceVerdict v2 = classify_pair(a.structure, b.structure, 10, 42, {});
  CHECK(v2.equivalent);
  CHECK(v2.witness_beta == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("classify_pair: distinct spectra and distinct dimensions") {
  const CatalogModel a = build_model({2, 1.0, {1.0, 2.0}});
  const CatalogModel b = build_model({2, 1.0, {2.0, 2.0}});
  const EquivalenceVerdict v = classify_pair(a.structure, b.structure, 10, 42, {});
  CHECK_FALSE(v.equivalent);

  const CatalogModel c = build_model({3, 1.0, {2.0, 2.0, 2.0}});
  const EquivalenceVerdict v2 = classify_pair(b.structure, c.structure, 10, 42, {});
  CHECK_FALSE(v2.equivalent);
  CHECK(v2.reason == "dimensions differ");
}

TEST_CASE("classify_pair: verdict stable under deformation of either input") {
  const CatalogModel a = build_model({1, 1.0, {2.0}});
  const CatalogModel b = build_model({1, 2.0, {2.0}});
  const EquivalenceVerdict base = classify_pair(a.structure, b.structure, 8, 42, {});
  for (double beta : {0.5, 2.0, 5.0}) {
    const EquivalenceVerdict v =
        classify_pair(deform(a.structure, DeformationParams{beta}), b.structure, 8, 42, {});
    CHECK(v.equivalent == base.equivalent);
  }
}

TEST_CASE("classify_pair: gates on the canonical-connection preconditions") {
  const CatalogModel good = build_model({1, 1.0, {1.0}});
  const AcmStructure bad = testing_helpers::perturbed_phi_model();
  CHECK_THROWS_AS(classify_pair(good.structure, bad, 8, 42, {}), PreconditionFailed);
}

TEST_CASE("local symmetry co-occurs with spectrum {0,1,-1}") {
  // Corollary-level dichotomy at grid resolution: nabla R ~ 0 iff lambda = 1
  // (and trivially for lambda = 0, the constant-curvature case).
  const Tolerances tol;
  for (double lam : {0.0, 1.0, 2.0}) {
    const CatalogModel m = build_model({1, 1.0, {lam}});
    double nr = 0.0;
    for (const ChartPoint& p : samples_of(m.structure, 5)) {
      nr = std::max(nr,
                    curvature_covariant_derivative(m.structure.g, m.structure.chart, p).max_abs());
    }
    if (lam == 2.0)
      CHECK(nr > 1e-3);
    else
      CHECK(nr < tol.tol_nabla_r);
  }
}
