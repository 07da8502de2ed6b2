#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "akm/deformation.hpp"
#include "akm/nullity.hpp"

using namespace akm;

namespace {

std::vector<ChartPoint> samples_of(const AcmStructure& s, int count = 12, std::uint64_t seed = 42) {
  return sample_points(s.chart, count, seed);
}

} // namespace

TEST_CASE("deform: beta = 1 is the identity, inverse composes to the identity") {
  const CatalogModel m = build_model({1, 1.0, {2.0}});
  const AcmStructure id = deform(m.structure, DeformationParams{1.0});
  const AcmStructure back = deform(deform(m.structure, DeformationParams{2.5}),
                                   DeformationParams{1.0 / 2.5});
  for (const ChartPoint& p : samples_of(m.structure, 8)) {
    CHECK((id.g.value(p) - m.structure.g.value(p)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((back.g.value(p) - m.structure.g.value(p)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((back.xi.value(p) - m.structure.xi.value(p)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((back.eta.value(p) - m.structure.eta.value(p)).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK(back.alpha == doctest::Approx(m.structure.alpha));
}

TEST_CASE("deform: rejects nonpositive beta") {
  const CatalogModel m = build_model({1, 1.0, {1.0}});
  CHECK_THROWS_AS(deform(m.structure, DeformationParams{0.0}), InvalidBeta);
  CHECK_THROWS_AS(deform(m.structure, DeformationParams{-2.0}), InvalidBeta);
  CHECK_THROWS_AS(transform_kmu(1.0, 1.0, 0.0), InvalidBeta);
}

TEST_CASE("deform: output validates and is alpha/beta-Kenmotsu") {
  for (const LieGroupModelParams params :
       {LieGroupModelParams{1, 1.0, {0.0}}, LieGroupModelParams{2, 2.0, {1.0, 2.0}},
        LieGroupModelParams{2, 0.5, {3.0, 3.0}}}) {
    const CatalogModel m = build_model(params);
    for (double beta : {0.3, 0.5, 1.0, 2.0, 5.0}) {
      const AcmStructure sd = deform(m.structure, DeformationParams{beta});
      const auto pts = samples_of(sd);
      CHECK(validate(sd, pts, {}, 42).pass);
      const AlphaKenmotsuReport ak = check_alpha_kenmotsu(sd, pts, {});
      CHECK(ak.pass);
      CHECK(ak.alpha_hat == doctest::Approx(params.alpha / beta).epsilon(1e-8));
    }
  }
}

TEST_CASE("deform: h' and its eta-parallelism survive the deformation") {
  const CatalogModel m = build_model({2, 1.0, {1.0, 2.0}});
  const AcmStructure sd = deform(m.structure, DeformationParams{3.0});
  const auto pts = samples_of(m.structure);
  for (const ChartPoint& p : pts) {
    const Mat dh = h_prime_matrix(sd, p) - h_prime_matrix(m.structure, p);
    CHECK(dh.cwiseAbs().maxCoeff() < 1e-9);
  }
  const EtaParallelReport ep = check_eta_parallel_h(sd, pts, {});
  CHECK(ep.pass_eta_parallel);
  CHECK(ep.pass_nabla_xi);
}

TEST_CASE("verify_lc_relation: Levi-Civita transformation law") {
  const CatalogModel m = build_model({2, 1.0, {1.0, 2.0}});
  for (double beta : {0.5, 2.0, 3.0}) {
    const LcRelationReport r = verify_lc_relation(m.structure, beta, samples_of(m.structure), {});
    CHECK(r.pass);
  }
  // beta = 1: the difference is identically zero
  const LcRelationReport r1 = verify_lc_relation(m.structure, 1.0, samples_of(m.structure, 4), {});
  CHECK(r1.max_connection_residual < 1e-12);
}

TEST_CASE("verify_curvature_relation: curvature law and R xi invariance") {
  const CatalogModel m = build_model({1, 1.0, {2.0}});
  for (double beta : {0.5, 3.0}) {
    const CurvatureRelationReport r =
        verify_curvature_relation(m.structure, beta, samples_of(m.structure, 8), {});
    CHECK(r.pass);
    CHECK(r.max_r_xi_residual < 1e-6);
  }
  // beta = 1: both sides equal exactly
  const CurvatureRelationReport r1 =
      verify_curvature_relation(m.structure, 1.0, samples_of(m.structure, 4), {});
  CHECK(r1.max_curvature_residual == 0.0);
  CHECK(r1.max_r_xi_residual == 0.0);
}

TEST_CASE("transform_kmu: scaling law and the fitted pair") {
  const auto [k, mu] = transform_kmu(-5.0, -2.0, 2.0);
  CHECK(k == doctest::Approx(-1.25));
  CHECK(mu == doctest::Approx(-0.5));
  const auto [k1, m1] = transform_kmu(-7.0, -3.0, 1.0);
  CHECK(k1 == doctest::Approx(-7.0));
  CHECK(m1 == doctest::Approx(-3.0));

  const CatalogModel m = build_model({1, 1.0, {2.0}});
  const auto pts = samples_of(m.structure);
  const NullityFit before = fit_kmu(m.structure, pts, {});
  const AcmStructure sd = deform(m.structure, DeformationParams{2.0});
  const NullityFit after = fit_kmu(sd, pts, {});
  const auto [kb, mb] = transform_kmu(before.kappa, *before.mu, 2.0);
  CHECK(after.kappa == doctest::Approx(kb).epsilon(1e-4));
  CHECK(*after.mu == doctest::Approx(mb).epsilon(1e-4));
}

TEST_CASE("d_conformal_change: almost cosymplectic output with kappa_c = kappa + a^2") {
  const CatalogModel m = build_model({1, 1.0, {2.0}}); // kappa = -5
  const AcmStructure cs = d_conformal_change(m);
  CHECK(cs.alpha == 0.0);
  const auto pts = samples_of(cs);
  CHECK(validate(cs, pts, {}, 42).pass);

  const AlphaKenmotsuReport ak = check_alpha_kenmotsu(cs, pts, {});
  CHECK(ak.max_d_eta < 1e-6);
  CHECK(ak.max_d_phi_residual < 1e-6); // dPhi' = 0 with alpha = 0
  CHECK(ak.cosymplectic);

  const NullityFit fit = fit_kmu(cs, pts, {});
  CHECK(fit.degenerate); // kappa-only fit
  CHECK(fit.kappa == doctest::Approx(-4.0).epsilon(1e-6));
  CHECK(fit.residual < 1e-4);

  // metric has the stated diagonal form
  const ChartPoint p{(Vec(3) << 0.4, 0.1, -0.2).finished()};
  const Mat g = cs.g.value(p);
  CHECK(g(0, 0) == doctest::Approx(1.0));
  CHECK(g(1, 1) == doctest::Approx(std::exp(2.0 * 1.0 * 2.0 * 0.4)));
  CHECK(g(2, 2) == doctest::Approx(std::exp(-2.0 * 1.0 * 2.0 * 0.4)));
  CHECK(std::abs(g(0, 1)) + std::abs(g(0, 2)) + std::abs(g(1, 2)) < 1e-15);
}

TEST_CASE("d_conformal_change: kappa_c < 0 across the lambda grid") {
  for (double lam : {0.5, 1.0, 2.0, 3.0}) {
    const CatalogModel m = build_model({1, 1.0, {lam}});
    const AcmStructure cs = d_conformal_change(m);
    const NullityFit fit = fit_kmu(cs, samples_of(cs, 8), {});
    CHECK(fit.kappa == doctest::Approx(-lam * lam).epsilon(1e-5));
    CHECK(fit.kappa < 0.0);
  }
}

TEST_CASE("d_conformal_change: rejects non-nullity models") {
  CHECK_THROWS_AS(d_conformal_change(build_model({2, 1.0, {1.0, 2.0}})), NotKmuModel);
  CHECK_THROWS_AS(d_conformal_change(build_model({1, 1.0, {0.0}})), NotKmuModel);
}
