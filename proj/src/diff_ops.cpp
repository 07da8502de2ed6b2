#include "akm/diff_ops.hpp"

namespace akm {

Mat exterior_derivative(const OneFormField& w, const ChartSpec& chart, const ChartPoint& p,
                        const DiffConfig& cfg) {
  const int d = chart.dim();
  Mat dw(d, d);
  std::vector<Vec> dpart(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) dpart[static_cast<std::size_t>(i)] = partial(w, chart, p, i, cfg);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      dw(i, j) = dpart[static_cast<std::size_t>(i)][j] - dpart[static_cast<std::size_t>(j)][i];
  return dw;
}

Tensor3 exterior_derivative(const TwoFormField& w, const ChartSpec& chart, const ChartPoint& p,
                            const DiffConfig& cfg) {
  const int d = chart.dim();
  std::vector<Mat> dpart(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) dpart[static_cast<std::size_t>(i)] = partial(w, chart, p, i, cfg);
  Tensor3 out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        out(i, j, k) = dpart[static_cast<std::size_t>(i)](j, k) +
                       dpart[static_cast<std::size_t>(j)](k, i) +
                       dpart[static_cast<std::size_t>(k)](i, j);
  return out;
}

Tensor3 wedge_1_2(const Vec& eta, const Mat& w) {
  const int d = static_cast<int>(eta.size());
  Tensor3 out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        out(i, j, k) = eta[i] * w(j, k) + eta[j] * w(k, i) + eta[k] * w(i, j);
  return out;
}

Mat lie_derivative_endo(const VectorField& x, const EndoField& a, const ChartSpec& chart,
                        const ChartPoint& p, const DiffConfig& cfg) {
  const int d = chart.dim();
  const Vec xv = x.value(p);
  const Mat av = a.value(p);
  std::vector<Mat> da(static_cast<std::size_t>(d));
  std::vector<Vec> dx(static_cast<std::size_t>(d));
  for (int m = 0; m < d; ++m) {
    da[static_cast<std::size_t>(m)] = partial(a, chart, p, m, cfg);
    dx[static_cast<std::size_t>(m)] = partial(x, chart, p, m, cfg);
  }
  Mat out(d, d);
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int m = 0; m < d; ++m)
        s += xv[m] * da[static_cast<std::size_t>(m)](k, j) -
             av(m, j) * dx[static_cast<std::size_t>(m)][k] +
             av(k, m) * dx[static_cast<std::size_t>(j)][m];
      out(k, j) = s;
    }
  return out;
}

Vec lie_bracket(const VectorField& x, const VectorField& y, const ChartSpec& chart,
                const ChartPoint& p, const DiffConfig& cfg) {
  const int d = chart.dim();
  const Vec xv = x.value(p);
  const Vec yv = y.value(p);
  Vec out = Vec::Zero(d);
  for (int m = 0; m < d; ++m) {
    if (xv[m] != 0.0) out += xv[m] * partial(y, chart, p, m, cfg);
    if (yv[m] != 0.0) out -= yv[m] * partial(x, chart, p, m, cfg);
  }
  return out;
}

} // namespace akm
