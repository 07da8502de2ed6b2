#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "akm/canonical.hpp"
#include "akm/deformation.hpp"
#include "test_helpers.hpp"

using namespace akm;

namespace {

std::vector<ChartPoint> samples_of(const AcmStructure& s, int count = 12, std::uint64_t seed = 42) {
  return sample_points(s.chart, count, seed);
}

} // namespace

TEST_CASE("canonical connection: correction term is exact by construction") {
  // includes the h' = 0 specialization, where the correction reduces to
  // a (g_ij - eta_i eta_j) xi^k - a eta_j delta^k_i
  for (const LieGroupModelParams params :
       {LieGroupModelParams{2, 1.0, {1.0, 2.0}}, LieGroupModelParams{1, 1.5, {0.0}}}) {
    const CatalogModel m = build_model(params);
    const AcmStructure& s = m.structure;
    const int d = s.chart.dim();
    for (const ChartPoint& p : samples_of(s, 6)) {
      const CanonicalConnectionAtPoint c = canonical_connection(s, p);
      const Mat g = s.g.value(p);
      const Mat h = h_prime_matrix(s, p);
      const Vec xi = s.xi.value(p);
      const Vec eta = s.eta.value(p);
      const Mat pl = Mat::Identity(d, d) + h;
      const Mat b = pl.transpose() * g;
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            const double corr = s.alpha * b(i, j) * xi[k] - s.alpha * eta[j] * pl(k, i);
            CHECK(c.gamma_tilde(k, i, j) - c.gamma(k, i, j) ==
                  doctest::Approx(corr).epsilon(1e-14));
          }
    }
  }
}

TEST_CASE("canonical connection: frozen coefficient for alpha=1, lambda=1") {
  // Gamma~^t_{x1 x1} = Gamma^t_{x1 x1} + a(1+lambda) g_{x1 x1} = -2 + 2 = 0 at t=0
  const CatalogModel m = build_model({1, 1.0, {1.0}});
  const ChartPoint p{(Vec(3) << 0.0, 0.0, 0.0).finished()};
  const CanonicalConnectionAtPoint c = canonical_connection(m.structure, p);
  CHECK(c.gamma(0, 1, 1) == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(c.gamma_tilde(0, 1, 1) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("canonical connection: nabla~ xi = 0 at all samples") {
  const CatalogModel m = build_model({2, 2.0, {0.5, 3.0}});
  const AcmStructure& s = m.structure;
  for (const ChartPoint& p : samples_of(s, 8)) {
    const ConnectionAtPoint conn{canonical_connection(s, p).gamma_tilde};
    const Mat dxi = cov_deriv_vector(conn, s.xi, s.chart, p, s.diff);
    CHECK(dxi.cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("check_parallelism: phi, g, eta parallel on catalog models") {
  for (const LieGroupModelParams params :
       {LieGroupModelParams{1, 1.0, {0.0}}, LieGroupModelParams{2, 1.0, {1.0, 2.0}},
        LieGroupModelParams{2, 2.0, {2.0, 2.0}}}) {
    const CatalogModel m = build_model(params);
    const ParallelismReport r = check_parallelism(m.structure, samples_of(m.structure), {});
    CHECK(r.pass);
    CHECK(r.max_nabla_g < r.threshold);
    CHECK(r.max_nabla_phi < r.threshold);
    CHECK(r.max_nabla_eta < r.threshold);
    CHECK(r.max_nabla_xi < r.threshold);
  }
}

TEST_CASE("check_parallelism: fails on the non-CR perturbed model") {
  const AcmStructure s = testing_helpers::perturbed_phi_model();
  const ParallelismReport r = check_parallelism(s, samples_of(s, 8), {});
  CHECK_FALSE(r.pass);
  CHECK(r.max_nabla_phi > r.threshold);
}

TEST_CASE("check_parallelism: invariant under D-homothetic deformation") {
  const CatalogModel m = build_model({1, 1.0, {2.0}});
  for (double beta : {0.5, 2.0, 3.0}) {
    const AcmStructure sd = deform(m.structure, DeformationParams{beta});
    const auto pts = samples_of(m.structure, 8);
    for (const ChartPoint& p : pts) {
      const Tensor3 a = canonical_connection(m.structure, p).gamma_tilde;
      const Tensor3 b = canonical_connection(sd, p).gamma_tilde;
      double dev = 0.0;
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) dev = std::max(dev, std::abs(a(k, i, j) - b(k, i, j)));
      CHECK(dev < 1e-7);
    }
  }
}

TEST_CASE("torsion: antisymmetry exact, axioms a-c") {
  const CatalogModel m = build_model({2, 1.0, {1.0, 2.0}});
  const AcmStructure& s = m.structure;
  for (const ChartPoint& p : samples_of(s, 6)) {
    const Tensor3 t = torsion(s, p).t;
    const int d = s.chart.dim();
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) CHECK(t(k, i, j) == -t(k, j, i));
  }
  const TorsionAxiomsReport r = check_torsion_axioms(s, samples_of(s), {});
  CHECK(r.pass);
}

TEST_CASE("torsion: 2T(xi, dx1) = 3 dx1 for alpha=1, lambda=2") {
  const CatalogModel m = build_model({1, 1.0, {2.0}});
  const ChartPoint p{(Vec(3) << 0.1, -0.2, 0.3).finished()};
  const Tensor3 t = torsion(m.structure, p).t;
  // T(k, i, j) contracted with xi = dt in slot i and dx1 in slot j
  CHECK(2.0 * t(1, 0, 1) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(std::abs(t(0, 0, 1)) < 1e-12);
  CHECK(std::abs(t(2, 0, 1)) < 1e-12);
}

TEST_CASE("canonical curvature: vanishes on catalog models, both routes agree") {
  for (const LieGroupModelParams params :
       {LieGroupModelParams{1, 1.0, {0.0}}, LieGroupModelParams{2, 1.0, {1.0, 2.0}},
        LieGroupModelParams{1, 2.0, {3.0}}}) {
    const CatalogModel m = build_model(params);
    const AcmStructure& s = m.structure;
    for (const ChartPoint& p : samples_of(s, 5)) {
      const CanonicalCurvature cc = canonical_curvature_both(s, p, {});
      const FrameAtPoint fr = orthonormal_frame(s, p);
      CHECK(frame_max_1_3(cc.direct.riem, fr) < 1e-4);
      CHECK(cc.mismatch < 1e-5);
    }
  }
}

TEST_CASE("canonical curvature: algebraic reduction when nabla h' vanishes") {
  // On the catalog models h' is coordinate-constant and eta-parallel with
  // nabla_xi h' = 0, so the route-(ii) formula must reduce to
  // R + a^2 (g(Y+h'Y,Z)(X+h'X) - g(X+h'X,Z)(Y+h'Y)) plus the w-terms, and the
  // w-terms only contribute xi/eta components.
  const CatalogModel m = build_model({1, 1.0, {2.0}});
  const AcmStructure& s = m.structure;
  const ChartPoint p{(Vec(3) << 0.2, 0.1, -0.1).finished()};
  const CanonicalCurvature cc = canonical_curvature_both(s, p, {});
  const Tensor4 riem = riemann(s.g, s.chart, p).riem;
  const Mat g = s.g.value(p);
  const Mat h = h_prime_matrix(s, p);
  const Mat pl = Mat::Identity(3, 3) + h;
  const Mat b = pl.transpose() * g;
  // D-only components (k,i,j,l in {1,2}) where eta/xi terms drop out:
  for (int l = 1; l < 3; ++l)
    for (int k = 1; k < 3; ++k)
      for (int i = 1; i < 3; ++i)
        for (int j = 1; j < 3; ++j) {
          const double want = riem(l, k, i, j) + (b(j, k) * pl(l, i) - b(i, k) * pl(l, j));
          CHECK(cc.from_riemann.riem(l, k, i, j) == doctest::Approx(want).epsilon(1e-9));
        }
}

TEST_CASE("canonical curvature: eta-parallel closed form reproduces the direct route") {
  // With h' eta-parallel and nabla_xi h' = 0, R~ has the closed form in
  // R, h', h'^2, g, eta; check it termwise against the direct computation.
  for (const LieGroupModelParams params :
       {LieGroupModelParams{1, 1.0, {2.0}}, LieGroupModelParams{2, 2.0, {1.0, 2.0}}}) {
    const CatalogModel m = build_model(params);
    const AcmStructure& s = m.structure;
    const int d = s.chart.dim();
    for (const ChartPoint& p : samples_of(s, 5)) {
      const Tensor4 direct = canonical_curvature(s, p, {}).riem;
      const Tensor4 riem = riemann(s.g, s.chart, p).riem;
      const Mat g = s.g.value(p);
      const Mat h = h_prime_matrix(s, p);
      const Vec xi = s.xi.value(p);
      const Vec eta = s.eta.value(p);
      const Mat pl = Mat::Identity(d, d) + h;
      const Mat q = h + h * h;
      const Mat bp = pl.transpose() * g; // g(P d_i, d_j)
      const Mat bq = q.transpose() * g;  // g(Q d_i, d_j)
      Tensor4 res(d);
      for (int l = 0; l < d; ++l)
        for (int k = 0; k < d; ++k)
          for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
              const double a2 = s.alpha * s.alpha;
              const double want =
                  riem(l, k, i, j) - a2 * (eta[j] * bq(i, k) - eta[i] * bq(j, k)) * xi[l] +
                  a2 * eta[k] * (eta[j] * q(l, i) - eta[i] * q(l, j)) +
                  a2 * (bp(j, k) * pl(l, i) - bp(i, k) * pl(l, j));
              res(l, k, i, j) = direct(l, k, i, j) - want;
            }
      const FrameAtPoint fr = orthonormal_frame(s, p);
      CHECK(frame_max_1_3(res, fr) < 1e-5);
    }
  }
}

TEST_CASE("canonical curvature: the cross-oracle guard trips on absurd tolerances") {
  const CatalogModel m = build_model({1, 2.0, {3.0}});
  Tolerances impossible;
  impossible.tol_curv_analytic = 1e-30;
  const ChartPoint p{(Vec(3) << 0.2, 0.1, -0.1).finished()};
  CHECK_THROWS_AS(canonical_curvature_both(m.structure, p, impossible), OracleMismatch);
}

TEST_CASE("check_nabla_T_and_R: parallel torsion and flat canonical curvature") {
  const CatalogModel m = build_model({2, 1.0, {1.0, 2.0}});
  const CanonicalInvariantsReport r =
      check_nabla_T_and_R(m.structure, samples_of(m.structure, 6), {});
  CHECK(r.pass_r_tilde);
  CHECK(r.pass_nabla_torsion);
  CHECK(r.pass_nabla_h);
  CHECK(r.pass_nabla_r_tilde);
  CHECK(r.cross_oracle_mismatch < 1e-5);
  CHECK(r.lemma_equivalences_consistent);
  CHECK(r.curvature_equivalence_consistent);
}

TEST_CASE("check_nabla_T_and_R: lambda = 0 constant-curvature case") {
  const CatalogModel m = build_model({1, 1.0, {0.0}});
  const CanonicalInvariantsReport r =
      check_nabla_T_and_R(m.structure, samples_of(m.structure, 6), {});
  CHECK(r.max_r_tilde < 1e-4);
  CHECK(r.max_nabla_torsion < 1e-4);
}
