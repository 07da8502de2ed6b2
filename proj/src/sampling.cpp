#include "akm/sampling.hpp"

#include <random>

namespace akm {

std::vector<ChartPoint> sample_points(const ChartSpec& chart, int count, std::uint64_t seed,
                                      double shrink) {
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() {
    // 53-bit mantissa mapping, identical across platforms
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  std::vector<ChartPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    Vec c(chart.dim());
    for (int i = 0; i < chart.dim(); ++i) {
      const Interval& iv = chart.interval(i);
      const double mid = 0.5 * (iv.lo + iv.hi);
      const double half = 0.5 * iv.length() * shrink;
      c[i] = mid + (2.0 * unit() - 1.0) * half;
    }
    out.push_back(ChartPoint{std::move(c)});
  }
  return out;
}

} // namespace akm
