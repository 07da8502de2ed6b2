#include "akm/deformation.hpp"

#include <cmath>

namespace akm {

AcmStructure deform(const AcmStructure& s, const DeformationParams& d) {
  if (!(d.beta > 0.0) || !std::isfinite(d.beta))
    throw InvalidBeta("beta must be a positive real, got " + std::to_string(d.beta));
  const double beta = d.beta;

  AcmStructure out;
  out.chart = s.chart;
  out.diff = s.diff;
  out.alpha = s.alpha / beta;
  out.phi = s.phi;

  out.xi.value = [xi = s.xi, beta](const ChartPoint& p) { return Vec(xi.value(p) / beta); };
  if (s.xi.has_analytic_partials())
    out.xi.partial = [xi = s.xi, beta](const ChartPoint& p, int dir) {
      return Vec(xi.partial(p, dir) / beta);
    };

  out.eta.value = [eta = s.eta, beta](const ChartPoint& p) { return Vec(beta * eta.value(p)); };
  if (s.eta.has_analytic_partials())
    out.eta.partial = [eta = s.eta, beta](const ChartPoint& p, int dir) {
      return Vec(beta * eta.partial(p, dir));
    };

  out.g.value = [g = s.g, eta = s.eta, beta](const ChartPoint& p) {
    const Vec e = eta.value(p);
    return Mat(beta * g.value(p) + beta * (beta - 1.0) * e * e.transpose());
  };
  if (s.g.has_analytic_partials() && s.eta.has_analytic_partials())
    out.g.partial = [g = s.g, eta = s.eta, beta](const ChartPoint& p, int dir) {
      const Vec e = eta.value(p);
      const Vec de = eta.partial(p, dir);
      return Mat(beta * g.partial(p, dir) +
                 beta * (beta - 1.0) * (de * e.transpose() + e * de.transpose()));
    };
  return out;
}

LcRelationReport verify_lc_relation(const AcmStructure& s, double beta,
                                    std::span<const ChartPoint> samples, const Tolerances& tol) {
  LcRelationReport r;
  r.threshold = tol.nested_threshold(s.analytic());
  const AcmStructure sd = deform(s, DeformationParams{beta});
  const int d = s.chart.dim();
  const double c = s.alpha * (beta - 1.0) / beta;

  for (const ChartPoint& p : samples) {
    const Tensor3 gamma = christoffel(s.g, s.chart, p, s.diff).gamma;
    const Tensor3 gamma_d = christoffel(sd.g, s.chart, p, s.diff).gamma;
    const Mat g = s.g.value(p);
    const Mat h = h_prime_matrix(s, p);
    const Vec xi = s.xi.value(p);
    const Vec eta = s.eta.value(p);
    const Mat pl = Mat::Identity(d, d) + h;
    const Mat b = pl.transpose() * g; // g(P d_i, d_j)
    const FrameAtPoint fr = orthonormal_frame(s, p);

    Tensor3 res(d);
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          res(k, i, j) =
              gamma_d(k, i, j) - gamma(k, i, j) - c * (b(i, j) - eta[i] * eta[j]) * xi[k];
    r.max_connection_residual = std::max(r.max_connection_residual,
                                         frame_components_1_2(res, fr).max_abs());

    // (nabla__X phi)Y = (nabla_X phi)Y + c g(X+h'X, phi Y) xi
    const ConnectionAtPoint lc{gamma};
    const ConnectionAtPoint lcd{gamma_d};
    const Tensor3 dphi = cov_deriv_endo(lc, s.phi, s.chart, p, s.diff);
    const Tensor3 dphi_d = cov_deriv_endo(lcd, s.phi, s.chart, p, s.diff);
    const Mat f = s.phi.value(p);
    const Mat bphi = b * f; // g(P d_i, phi d_j)
    Tensor3 resphi(d);
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i)
          resphi(k, j, i) = dphi_d(k, j, i) - dphi(k, j, i) - c * bphi(i, j) * xi[k];
    r.max_phi_residual = std::max(r.max_phi_residual, frame_components_1_2(resphi, fr).max_abs());

    // (nabla__X h')Y = (nabla_X h')Y + c g(X+h'X, h'Y) xi; h' is shared
    const int order = s.diff.nested_order(s.analytic());
    const DiffConfig nested = [&] {
      DiffConfig cc = s.diff;
      cc.h1 = cc.h2;
      cc.order_user = order;
      return cc;
    }();
    const EndoField hf = h_prime_field(s);
    const Tensor3 dh = cov_deriv_endo(lc, hf, s.chart, p, nested);
    const Tensor3 dh_d = cov_deriv_endo(lcd, hf, s.chart, p, nested);
    const Mat bh = b * h;
    Tensor3 resh(d);
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i)
          resh(k, j, i) = dh_d(k, j, i) - dh(k, j, i) - c * bh(i, j) * xi[k];
    r.max_h_residual = std::max(r.max_h_residual, frame_components_1_2(resh, fr).max_abs());
  }
  r.pass = r.max_connection_residual < r.threshold && r.max_phi_residual < r.threshold &&
           r.max_h_residual < r.threshold;
  return r;
}

CurvatureRelationReport verify_curvature_relation(const AcmStructure& s, double beta,
                                                  std::span<const ChartPoint> samples,
                                                  const Tolerances& tol) {
  CurvatureRelationReport r;
  r.threshold = tol.nested_threshold(s.analytic());
  const AcmStructure sd = deform(s, DeformationParams{beta});
  const int d = s.chart.dim();
  const double a = s.alpha;
  const double c = (beta - 1.0) / beta;
  const int order = s.diff.nested_order(s.analytic());
  const DiffConfig nested = [&] {
    DiffConfig cc = s.diff;
    cc.h1 = cc.h2;
    cc.order_user = order;
    return cc;
  }();

  for (const ChartPoint& p : samples) {
    const Tensor4 riem = riemann(s.g, s.chart, p, s.diff).riem;
    const Tensor4 riem_d = riemann(sd.g, s.chart, p, s.diff).riem;
    const Mat g = s.g.value(p);
    const Mat h = h_prime_matrix(s, p);
    const Vec xi = s.xi.value(p);
    const Vec eta = s.eta.value(p);
    const Mat pl = Mat::Identity(d, d) + h;
    const Mat b = pl.transpose() * g;
    const FrameAtPoint fr = orthonormal_frame(s, p);

    const ConnectionAtPoint lc = christoffel(s.g, s.chart, p, s.diff);
    const Tensor3 dh = cov_deriv_endo(lc, h_prime_field(s), s.chart, p, nested);

    Tensor4 res(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Vec w(d);
        for (int m = 0; m < d; ++m) w[m] = dh(m, j, i) - dh(m, i, j);
        const Vec gw = g * w;
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            const double expected =
                riem(l, k, i, j) + a * c * gw[k] * xi[l] +
                a * a * c *
                    ((b(j, k) - eta[j] * eta[k]) * pl(l, i) -
                     (b(i, k) - eta[i] * eta[k]) * pl(l, j));
            res(l, k, i, j) = riem_d(l, k, i, j) - expected;
          }
      }
    r.max_curvature_residual = std::max(r.max_curvature_residual, frame_max_1_3(res, fr));

    // R_ xi = R xi invariance
    for (int a1 = 0; a1 < d; ++a1)
      for (int b1 = 0; b1 < d; ++b1) {
        const Vec x = fr.e.col(a1), y = fr.e.col(b1);
        Vec rxy = Vec::Zero(d), rxy_d = Vec::Zero(d);
        for (int l = 0; l < d; ++l) {
          double s1 = 0.0, s2 = 0.0;
          for (int k = 0; k < d; ++k) {
            if (xi[k] == 0.0) continue;
            for (int i = 0; i < d; ++i)
              for (int j = 0; j < d; ++j) {
                s1 += riem(l, k, i, j) * x[i] * y[j] * xi[k];
                s2 += riem_d(l, k, i, j) * x[i] * y[j] * xi[k];
              }
          }
          rxy[l] = s1;
          rxy_d[l] = s2;
        }
        r.max_r_xi_residual =
            std::max(r.max_r_xi_residual, (fr.e_dual * (rxy_d - rxy)).cwiseAbs().maxCoeff());
      }
  }
  r.pass = r.max_curvature_residual < r.threshold && r.max_r_xi_residual < r.threshold;
  return r;
}

std::pair<double, double> transform_kmu(double kappa, double mu, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw InvalidBeta("beta must be a positive real, got " + std::to_string(beta));
  return {kappa / (beta * beta), mu / (beta * beta)};
}

AcmStructure d_conformal_change(const CatalogModel& m) {
  const auto& lam = m.params.lambdas;
  if (lam.empty()) throw NotKmuModel("model has no lambdas");
  for (double l : lam)
    if (std::abs(l - lam[0]) > 1e-12)
      throw NotKmuModel("D-conformal change requires all lambdas equal");
  if (!(lam[0] > 0.0)) throw NotKmuModel("D-conformal change requires h' != 0 (lambda > 0)");

  const AcmStructure& s = m.structure;
  const double a = s.alpha;                              // normalized, > 0
  const double sign = m.alpha_normalized ? -1.0 : 1.0;   // xi = sign * d/dt
  auto tcoord = [sign](const ChartPoint& p) { return sign * p.coords[0]; };

  AcmStructure out;
  out.chart = s.chart;
  out.diff = s.diff;
  out.alpha = 0.0; // almost cosymplectic
  out.phi = s.phi;
  out.xi = s.xi;
  out.eta = s.eta;

  out.g.value = [g = s.g, eta = s.eta, a, tcoord](const ChartPoint& p) {
    const double w = std::exp(-2.0 * a * tcoord(p));
    const Vec e = eta.value(p);
    return Mat(w * g.value(p) + (1.0 - w) * e * e.transpose());
  };
  if (s.g.has_analytic_partials() && s.eta.has_analytic_partials()) {
    out.g.partial = [g = s.g, eta = s.eta, a, tcoord, sign](const ChartPoint& p, int dir) {
      const double w = std::exp(-2.0 * a * tcoord(p));
      const Vec e = eta.value(p);
      const Vec de = eta.partial(p, dir);
      Mat dg = w * g.partial(p, dir) + (1.0 - w) * (de * e.transpose() + e * de.transpose());
      if (dir == 0) {
        const double dw = -2.0 * a * sign * w;
        dg += dw * g.value(p) - dw * e * e.transpose();
      }
      return dg;
    };
  }
  return out;
}

} // namespace akm
