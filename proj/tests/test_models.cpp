#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "akm/models.hpp"
#include "akm/structure.hpp"
#include "akm/diff_ops.hpp"

using namespace akm;

TEST_CASE("build_model: metric values at t = 0 and t = 1") {
  const CatalogModel m = build_model({1, 1.0, {1.0}});
  const Mat g0 = m.structure.g.value(ChartPoint{(Vec(3) << 0.0, 0.0, 0.0).finished()});
  CHECK((g0 - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);
  const Mat g1 = m.structure.g.value(ChartPoint{(Vec(3) << 1.0, 0.0, 0.0).finished()});
  CHECK(g1(0, 0) == doctest::Approx(1.0));
  CHECK(g1(1, 1) == doctest::Approx(std::exp(4.0)));
  CHECK(g1(2, 2) == doctest::Approx(1.0));
}

TEST_CASE("build_model: parameter validation") {
  CHECK_THROWS_AS(build_model({0, 1.0, {}}), InvalidParams);
  CHECK_THROWS_AS(build_model({1, 0.0, {1.0}}), InvalidParams);
  CHECK_THROWS_AS(build_model({2, 1.0, {1.0}}), InvalidParams);
  CHECK_THROWS_AS(build_model({1, 1.0, {-0.5}}), InvalidParams);
}

TEST_CASE("build_model: negative alpha normalizes through the sign flip") {
  const CatalogModel m = build_model({1, -1.0, {2.0}});
  CHECK(m.alpha_normalized);
  CHECK(m.structure.alpha == doctest::Approx(1.0));
  const auto pts = sample_points(m.structure.chart, 20, 42);
  CHECK(validate(m.structure, pts, {}, 42).pass);
  const AlphaKenmotsuReport ak = check_alpha_kenmotsu(m.structure, pts, {});
  CHECK(ak.pass);
  CHECK(ak.alpha_hat == doctest::Approx(1.0).epsilon(1e-8));
  const HPrimeReport hp = h_prime_report(m.structure, pts);
  CHECK(hp.eigenvalues.front() == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(hp.eigenvalues.back() == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("frame_fields: g-orthonormal, h'-eigen, phi swaps the pairs") {
  const LieGroupModelParams params{2, 1.0, {1.0, 2.0}};
  const CatalogModel m = build_model(params);
  const std::vector<VectorField> frame = frame_fields(params);
  REQUIRE(frame.size() == 5);
  for (const ChartPoint& p : sample_points(m.structure.chart, 20, 42)) {
    const Mat g = m.structure.g.value(p);
    const Mat h = h_prime_matrix(m.structure, p);
    const Mat f = m.structure.phi.value(p);
    for (std::size_t a = 0; a < frame.size(); ++a) {
      const Vec ea = frame[a].value(p);
      for (std::size_t b = 0; b < frame.size(); ++b) {
        const Vec eb = frame[b].value(p);
        CHECK(std::abs(ea.dot(g * eb) - (a == b ? 1.0 : 0.0)) < 1e-14);
      }
    }
    // h' X_i = lam_i X_i, h' Y_i = -lam_i Y_i
    CHECK((h * frame[1].value(p) - 1.0 * frame[1].value(p)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((h * frame[2].value(p) - 2.0 * frame[2].value(p)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((h * frame[3].value(p) + 1.0 * frame[3].value(p)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((h * frame[4].value(p) + 2.0 * frame[4].value(p)).cwiseAbs().maxCoeff() < 1e-12);
    // phi X_i = Y_i, phi Y_i = -X_i
    CHECK((f * frame[1].value(p) - frame[3].value(p)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((f * frame[3].value(p) + frame[1].value(p)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("lie algebra: brackets, Jacobi, solvable non-nilpotent") {
  const LieGroupModelParams params{2, 1.0, {1.0, 2.0}};
  const LieAlgebraModel alg = build_lie_algebra(params);
  CHECK(alg.dim == 5);
  CHECK(alg.jacobi_residual() == 0.0);
  CHECK(alg.solvable);
  CHECK_FALSE(alg.nilpotent);

  // [xi, X_i] = -a(1+lam_i) X_i; [xi, Y_i] = -a(1-lam_i) Y_i; rest zero
  CHECK(alg.bracket[0][1][1] == doctest::Approx(-2.0));
  CHECK(alg.bracket[0][2][2] == doctest::Approx(-3.0));
  CHECK(alg.bracket[0][3][3] == doctest::Approx(0.0));
  CHECK(alg.bracket[0][4][4] == doctest::Approx(1.0));
  CHECK(alg.bracket[1][2].cwiseAbs().maxCoeff() == 0.0);
  CHECK(alg.bracket[1][3].cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lie algebra: left-invariant torsion satisfies the connection axioms") {
  const LieGroupModelParams params{2, 1.5, {1.0, 2.0}};
  const LieAlgebraModel alg = build_lie_algebra(params);
  const Tensor3 t = alg.left_invariant_torsion();
  const int d = alg.dim;

  // axiom a: T(X, Y) = 0 for X, Y in D (indices >= 1)
  for (int k = 0; k < d; ++k)
    for (int i = 1; i < d; ++i)
      for (int j = 1; j < d; ++j) CHECK(t(k, i, j) == 0.0);

  // axiom b: 2 T(xi, E) = a (E + h'E)
  for (int e = 1; e < d; ++e) {
    Vec lhs = Vec::Zero(d), rhs = Vec::Zero(d);
    for (int k = 0; k < d; ++k) lhs[k] = 2.0 * t(k, 0, e);
    rhs[e] = alg.alpha * (1.0 + alg.h_prime(e, e));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
  }

  // axiom c: T_xi selfadjoint w.r.t. the identity inner product
  for (int i = 1; i < d; ++i)
    for (int j = 1; j < d; ++j) CHECK(t(i, 0, j) == doctest::Approx(t(j, 0, i)));

  // antisymmetry
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) CHECK(t(k, i, j) == -t(k, j, i));
}

TEST_CASE("chart: invariants enforced") {
  CHECK_THROWS_AS(ChartSpec({"t", "x"}, {Interval{-1, 1}, Interval{-1, 1}}), InvalidParams);
  CHECK_THROWS_AS(ChartSpec({"t", "x", "y"}, {Interval{-1, 1}, Interval{1, -1}, Interval{-1, 1}}),
                  InvalidParams);
  const ChartSpec c({"t", "x", "y"},
                    {Interval{-1, 1}, Interval{-1, 1}, Interval{-1, 1}});
  CHECK(c.dim() == 3);
  CHECK(c.contains((Vec(3) << 0.0, 0.5, -0.5).finished()));
  CHECK_FALSE(c.contains((Vec(3) << 0.0, 1.5, 0.0).finished()));
}

TEST_CASE("sampling: deterministic, inside the shrunk box") {
  const CatalogModel m = build_model({1, 1.0, {1.0}});
  const auto a = sample_points(m.structure.chart, 20, 42);
  const auto b = sample_points(m.structure.chart, 20, 42);
  REQUIRE(a.size() == 20);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK((a[i].coords - b[i].coords).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a[i].coords.cwiseAbs().maxCoeff() <= 0.9);
  }
  const auto c = sample_points(m.structure.chart, 20, 43);
  CHECK((a[0].coords - c[0].coords).cwiseAbs().maxCoeff() > 0.0);
}
