#pragma once

#include <cstdint>
#include <vector>

#include "akm/chart.hpp"

namespace akm {

/// Uniform sample points in the domain box shrunk by the given factor about
/// its center (default 0.9, i.e. 10% shrink). The PRNG mapping is fixed so a
/// seed produces identical points on every platform.
std::vector<ChartPoint> sample_points(const ChartSpec& chart, int count, std::uint64_t seed,
                                      double shrink = 0.9);

} // namespace akm
