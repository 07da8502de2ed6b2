#pragma once

#include <string>
#include <vector>

#include "akm/errors.hpp"
#include "akm/types.hpp"

namespace akm {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// A single global coordinate chart (t, x_1..x_n, y_1..y_n) with a domain box.
class ChartSpec {
public:
  ChartSpec() = default;
  ChartSpec(std::vector<std::string> coord_names, std::vector<Interval> domain_box);

  int dim() const { return static_cast<int>(coord_names_.size()); }
  const std::vector<std::string>& coord_names() const { return coord_names_; }
  const std::vector<Interval>& domain_box() const { return domain_box_; }
  const Interval& interval(int i) const { return domain_box_[static_cast<std::size_t>(i)]; }

  bool contains(const Vec& coords) const;

  /// Distance from coords[dir] to the nearer end of the domain interval.
  double margin(const Vec& coords, int dir) const;

private:
  std::vector<std::string> coord_names_;
  std::vector<Interval> domain_box_;
};

struct ChartPoint {
  Vec coords;
};

} // namespace akm
