#pragma once

#include <cmath>
#include <utility>

#include "akm/errors.hpp"
#include "akm/fields.hpp"

namespace akm {

/// Finite-difference configuration.
///   h1: first derivatives of user-supplied fields (scaled by max(1,|coord|))
///   h2: derivatives of derived quantities (connection coefficients, curvature,
///       torsion, h'), where the evaluand is itself assembled from first
///       derivatives. 6th-order stencils are used on top of analytic partials,
///       4th-order on the numeric fallback where h2 is noise-limited.
struct DiffConfig {
  double h1 = 1e-3;
  double h2 = 3e-3;
  int order_user = 4;
  int order_nested_analytic = 6;
  int order_nested_numeric = 4;

  int nested_order(bool analytic) const {
    return analytic ? order_nested_analytic : order_nested_numeric;
  }
};

void require_margin(const ChartSpec& chart, const ChartPoint& p, int dir, double radius);

/// Central difference of order 4 or 6 in direction `dir`.
/// F: const ChartPoint& -> T where T supports +, -, double*.
template <class F>
auto central_difference(F&& eval, const ChartSpec& chart, const ChartPoint& p, int dir,
                        double h, int order) -> std::decay_t<decltype(eval(p))> {
  using T = std::decay_t<decltype(eval(p))>;
  if (order != 4 && order != 6) throw InvalidParams("stencil order must be 4 or 6");
  require_margin(chart, p, dir, (order / 2) * h);
  auto at = [&](double delta) -> T {
    ChartPoint q = p;
    q.coords[dir] += delta;
    return eval(q);
  };
  if (order == 4) {
    T f1 = at(h), f2 = at(2 * h), fm1 = at(-h), fm2 = at(-2 * h);
    return (fm2 - f2) * (1.0 / (12.0 * h)) + (f1 - fm1) * (8.0 / (12.0 * h));
  }
  // order 6
  T f1 = at(h), f2 = at(2 * h), f3 = at(3 * h);
  T fm1 = at(-h), fm2 = at(-2 * h), fm3 = at(-3 * h);
  return (f1 - fm1) * (45.0 / (60.0 * h)) + (fm2 - f2) * (9.0 / (60.0 * h)) +
         (f3 - fm3) * (1.0 / (60.0 * h));
}

/// Step for first derivatives of user fields at p in direction dir.
inline double user_step(const DiffConfig& cfg, const ChartPoint& p, int dir) {
  return cfg.h1 * std::max(1.0, std::abs(p.coords[dir]));
}

/// partial(): analytic partial if supplied, else 4th-order central difference.
double partial(const ScalarField& f, const ChartSpec& chart, const ChartPoint& p, int dir,
               const DiffConfig& cfg = {});
Vec partial(const VectorField& f, const ChartSpec& chart, const ChartPoint& p, int dir,
            const DiffConfig& cfg = {});
Vec partial(const OneFormField& f, const ChartSpec& chart, const ChartPoint& p, int dir,
            const DiffConfig& cfg = {});
Mat partial(const EndoField& f, const ChartSpec& chart, const ChartPoint& p, int dir,
            const DiffConfig& cfg = {});
Mat partial(const MetricField& f, const ChartSpec& chart, const ChartPoint& p, int dir,
            const DiffConfig& cfg = {});
Mat partial(const TwoFormField& f, const ChartSpec& chart, const ChartPoint& p, int dir,
            const DiffConfig& cfg = {});

} // namespace akm
