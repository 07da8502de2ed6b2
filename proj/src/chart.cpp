#include "akm/chart.hpp"

#include <algorithm>

namespace akm {

ChartSpec::ChartSpec(std::vector<std::string> coord_names, std::vector<Interval> domain_box)
    : coord_names_(std::move(coord_names)), domain_box_(std::move(domain_box)) {
  const int d = dim();
  if (d < 3 || d % 2 == 0)
    throw InvalidParams("chart dimension must be an odd integer >= 3, got " + std::to_string(d));
  if (domain_box_.size() != coord_names_.size())
    throw InvalidParams("domain box size does not match coordinate count");
  for (const auto& iv : domain_box_)
    if (!(iv.lo <= iv.hi))
      throw InvalidParams("empty domain interval");
}

bool ChartSpec::contains(const Vec& coords) const {
  if (coords.size() != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    const auto& iv = interval(i);
    if (coords[i] < iv.lo || coords[i] > iv.hi) return false;
  }
  return true;
}

double ChartSpec::margin(const Vec& coords, int dir) const {
  const auto& iv = interval(dir);
  return std::min(coords[dir] - iv.lo, iv.hi - coords[dir]);
}

} // namespace akm
