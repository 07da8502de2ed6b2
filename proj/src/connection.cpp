#include "akm/connection.hpp"
#include <algorithm>
#include <cmath>

namespace akm {

Mat inverse_metric(const Mat& g) {
  Eigen::LDLT<Mat> ldlt(g);
  const Vec d = ldlt.vectorD();
  const double dmax = d.maxCoeff();
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      !(d.minCoeff() > 1e-14 * std::max(dmax, 1e-300)))
    throw SingularMetric("metric is not positive definite at the evaluation point");
  return ldlt.solve(Mat::Identity(g.rows(), g.cols()));
}

ConnectionAtPoint christoffel(const MetricField& g, const ChartSpec& chart, const ChartPoint& p,
                              const DiffConfig& cfg) {
  const int d = chart.dim();
  const Mat ginv = inverse_metric(g.value(p));
  std::vector<Mat> dg(static_cast<std::size_t>(d));
  for (int m = 0; m < d; ++m) dg[static_cast<std::size_t>(m)] = partial(g, chart, p, m, cfg);

  ConnectionAtPoint out{Tensor3(d)};
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        double s = 0.0;
        for (int l = 0; l < d; ++l)
          s += ginv(k, l) * (dg[static_cast<std::size_t>(i)](j, l) +
                             dg[static_cast<std::size_t>(j)](i, l) -
                             dg[static_cast<std::size_t>(l)](i, j));
        out.gamma(k, i, j) = 0.5 * s;
        out.gamma(k, j, i) = out.gamma(k, i, j);
      }
    }
  return out;
}

ConnectionField levi_civita(const MetricField& g, const ChartSpec& chart, const DiffConfig& cfg) {
  return [g, chart, cfg](const ChartPoint& p) { return christoffel(g, chart, p, cfg); };
}

Mat cov_deriv_vector(const ConnectionAtPoint& conn, const VectorField& v, const ChartSpec& chart,
                     const ChartPoint& p, const DiffConfig& cfg) {
  const int d = chart.dim();
  const Vec val = v.value(p);
  Mat out(d, d);
  for (int i = 0; i < d; ++i) {
    const Vec dv = partial(v, chart, p, i, cfg);
    for (int k = 0; k < d; ++k) {
      double s = dv[k];
      for (int l = 0; l < d; ++l) s += conn.gamma(k, i, l) * val[l];
      out(k, i) = s;
    }
  }
  return out;
}

Mat cov_deriv_oneform(const ConnectionAtPoint& conn, const OneFormField& w, const ChartSpec& chart,
                      const ChartPoint& p, const DiffConfig& cfg) {
  const int d = chart.dim();
  const Vec val = w.value(p);
  Mat out(d, d);
  for (int i = 0; i < d; ++i) {
    const Vec dw = partial(w, chart, p, i, cfg);
    for (int j = 0; j < d; ++j) {
      double s = dw[j];
      for (int l = 0; l < d; ++l) s -= conn.gamma(l, i, j) * val[l];
      out(j, i) = s;
    }
  }
  return out;
}

Tensor3 cov_deriv_endo(const ConnectionAtPoint& conn, const EndoField& a, const ChartSpec& chart,
                       const ChartPoint& p, const DiffConfig& cfg) {
  const int d = chart.dim();
  const Mat val = a.value(p);
  Tensor3 out(d);
  for (int i = 0; i < d; ++i) {
    const Mat da = partial(a, chart, p, i, cfg);
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) {
        double s = da(k, j);
        for (int l = 0; l < d; ++l)
          s += conn.gamma(k, i, l) * val(l, j) - conn.gamma(l, i, j) * val(k, l);
        out(k, j, i) = s;
      }
  }
  return out;
}

Tensor3 cov_deriv_bilinear(const ConnectionAtPoint& conn, const MetricField& b,
                           const ChartSpec& chart, const ChartPoint& p, const DiffConfig& cfg) {
  const int d = chart.dim();
  const Mat val = b.value(p);
  Tensor3 out(d);
  for (int i = 0; i < d; ++i) {
    const Mat db = partial(b, chart, p, i, cfg);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        double s = db(j, k);
        for (int l = 0; l < d; ++l)
          s -= conn.gamma(l, i, j) * val(l, k) + conn.gamma(l, i, k) * val(j, l);
        out(j, k, i) = s;
      }
  }
  return out;
}

double cov_deriv_scalar_along(const ScalarField& f, const ChartSpec& chart, const ChartPoint& p,
                              const Vec& x, const DiffConfig& cfg) {
  double s = 0.0;
  for (int i = 0; i < chart.dim(); ++i)
    if (x[i] != 0.0) s += x[i] * partial(f, chart, p, i, cfg);
  return s;
}

Vec cov_deriv_vector_along(const ConnectionAtPoint& conn, const VectorField& v,
                           const ChartSpec& chart, const ChartPoint& p, const Vec& x,
                           const DiffConfig& cfg) {
  const Mat full = cov_deriv_vector(conn, v, chart, p, cfg);
  return full * x;
}

Vec cov_deriv_oneform_along(const ConnectionAtPoint& conn, const OneFormField& w,
                            const ChartSpec& chart, const ChartPoint& p, const Vec& x,
                            const DiffConfig& cfg) {
  const Mat full = cov_deriv_oneform(conn, w, chart, p, cfg);
  return full * x;
}

Mat cov_deriv_endo_along(const ConnectionAtPoint& conn, const EndoField& a, const ChartSpec& chart,
                         const ChartPoint& p, const Vec& x, const DiffConfig& cfg) {
  const int d = chart.dim();
  const Tensor3 full = cov_deriv_endo(conn, a, chart, p, cfg);
  Mat out = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += full(k, j, i) * x[i];
      out(k, j) = s;
    }
  return out;
}

Mat cov_deriv_bilinear_along(const ConnectionAtPoint& conn, const MetricField& b,
                             const ChartSpec& chart, const ChartPoint& p, const Vec& x,
                             const DiffConfig& cfg) {
  const int d = chart.dim();
  const Tensor3 full = cov_deriv_bilinear(conn, b, chart, p, cfg);
  Mat out = Mat::Zero(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += full(j, k, i) * x[i];
      out(j, k) = s;
    }
  return out;
}

} // namespace akm
