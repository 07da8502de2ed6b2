#include "akm/curvature.hpp"

namespace akm {

CurvatureAtPoint curvature_of_connection(const ConnectionField& conn, const ChartSpec& chart,
                                         const ChartPoint& p, double h, int order) {
  const int d = chart.dim();
  const Tensor3 gamma = conn(p).gamma;
  std::vector<Tensor3> dgamma;
  dgamma.reserve(static_cast<std::size_t>(d));
  auto eval = [&conn](const ChartPoint& q) { return conn(q).gamma; };
  for (int m = 0; m < d; ++m)
    dgamma.push_back(central_difference(eval, chart, p, m, h, order));

  // A(l,k,i,j) = d_i Gamma^l_jk + Gamma^l_im Gamma^m_jk; R = A - A.swap(i,j)
  Tensor4 a(d);
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double s = dgamma[static_cast<std::size_t>(i)](l, j, k);
          for (int m = 0; m < d; ++m) s += gamma(l, i, m) * gamma(m, j, k);
          a(l, k, i, j) = s;
        }
  CurvatureAtPoint out{Tensor4(d)};
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          out.riem(l, k, i, j) = a(l, k, i, j) - a(l, k, j, i);
  return out;
}

CurvatureAtPoint riemann(const MetricField& g, const ChartSpec& chart, const ChartPoint& p,
                         const DiffConfig& cfg) {
  const int order = cfg.nested_order(g.has_analytic_partials());
  return curvature_of_connection(levi_civita(g, chart, cfg), chart, p, cfg.h2, order);
}

Tensor5 curvature_covariant_derivative(const MetricField& g, const ChartSpec& chart,
                                       const ChartPoint& p, const DiffConfig& cfg) {
  const int d = chart.dim();
  const int order = cfg.nested_order(g.has_analytic_partials());
  const Tensor3 gamma = christoffel(g, chart, p, cfg).gamma;
  const Tensor4 r = riemann(g, chart, p, cfg).riem;

  auto eval = [&](const ChartPoint& q) { return riemann(g, chart, q, cfg).riem; };
  Tensor5 out(d);
  for (int m = 0; m < d; ++m) {
    const Tensor4 dr = central_difference(eval, chart, p, m, cfg.h2, order);
    for (int l = 0; l < d; ++l)
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            double s = dr(l, k, i, j);
            for (int q = 0; q < d; ++q)
              s += gamma(l, m, q) * r(q, k, i, j) - gamma(q, m, k) * r(l, q, i, j) -
                   gamma(q, m, i) * r(l, k, q, j) - gamma(q, m, j) * r(l, k, i, q);
            out(l, k, i, j, m) = s;
          }
  }
  return out;
}

Vec curvature_apply(const CurvatureAtPoint& r, const Vec& x, const Vec& y, const Vec& z) {
  const int d = r.riem.dim();
  Vec out = Vec::Zero(d);
  for (int l = 0; l < d; ++l) {
    double s = 0.0;
    for (int k = 0; k < d; ++k) {
      if (z[k] == 0.0) continue;
      for (int i = 0; i < d; ++i) {
        if (x[i] == 0.0) continue;
        for (int j = 0; j < d; ++j) s += r.riem(l, k, i, j) * x[i] * y[j] * z[k];
      }
    }
    out[l] = s;
  }
  return out;
}

double sectional_curvature(const CurvatureAtPoint& r, const Mat& g, const Vec& u, const Vec& v) {
  const double den = (u.dot(g * u)) * (v.dot(g * v)) - std::pow(u.dot(g * v), 2);
  if (den < 1e-12) throw DegeneratePlane("plane spanned by (u, v) is degenerate");
  const Vec ruvv = curvature_apply(r, u, v, v);
  return u.dot(g * ruvv) / den;
}

double sectional_curvature(const MetricField& g, const ChartSpec& chart, const ChartPoint& p,
                           const Vec& u, const Vec& v, const DiffConfig& cfg) {
  return sectional_curvature(riemann(g, chart, p, cfg), g.value(p), u, v);
}

} // namespace akm
