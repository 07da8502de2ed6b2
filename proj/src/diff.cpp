#include "akm/diff.hpp"

#include <string>

namespace akm {

void require_margin(const ChartSpec& chart, const ChartPoint& p, int dir, double radius) {
  if (chart.margin(p.coords, dir) < radius)
    throw PointTooCloseToBoundary("stencil of radius " + std::to_string(radius) +
                                  " leaves the domain box in coordinate " +
                                  chart.coord_names()[static_cast<std::size_t>(dir)]);
}

namespace {

template <class FieldT>
auto partial_impl(const FieldT& f, const ChartSpec& chart, const ChartPoint& p, int dir,
                  const DiffConfig& cfg) -> decltype(f.value(p)) {
  if (f.partial) return f.partial(p, dir);
  const double h = user_step(cfg, p, dir);
  return central_difference(f.value, chart, p, dir, h, cfg.order_user);
}

} // namespace

double partial(const ScalarField& f, const ChartSpec& chart, const ChartPoint& p, int dir,
               const DiffConfig& cfg) {
  return partial_impl(f, chart, p, dir, cfg);
}
Vec partial(const VectorField& f, const ChartSpec& chart, const ChartPoint& p, int dir,
            const DiffConfig& cfg) {
  return partial_impl(f, chart, p, dir, cfg);
}
Vec partial(const OneFormField& f, const ChartSpec& chart, const ChartPoint& p, int dir,
            const DiffConfig& cfg) {
  return partial_impl(f, chart, p, dir, cfg);
}
Mat partial(const EndoField& f, const ChartSpec& chart, const ChartPoint& p, int dir,
            const DiffConfig& cfg) {
  return partial_impl(f, chart, p, dir, cfg);
}
Mat partial(const MetricField& f, const ChartSpec& chart, const ChartPoint& p, int dir,
            const DiffConfig& cfg) {
  return partial_impl(f, chart, p, dir, cfg);
}
Mat partial(const TwoFormField& f, const ChartSpec& chart, const ChartPoint& p, int dir,
            const DiffConfig& cfg) {
  return partial_impl(f, chart, p, dir, cfg);
}

} // namespace akm
