#pragma once

#include <optional>
#include <string>

#include "akm/models.hpp"
#include "akm/report.hpp"
#include "akm/tolerances.hpp"

namespace akm {

/// Run configuration shared by the CLI commands. Parsed from a JSON document:
/// {
///   "model":  {"n": 1, "alpha": 1.0, "lambdas": [2.0]},
///   "model2": {...},              // compare only
///   "sample_count": 20,
///   "seed": 42,
///   "beta": 2.0,                  // deform only
///   "d_conformal": false,
///   "tighten": 1.0,               // selftest threshold tightening factor
///   "tolerances": {"tol_curv_analytic": 1e-7, ...},
///   "output_path": "report.json"
/// }
struct RunConfig {
  std::optional<LieGroupModelParams> model;
  std::optional<LieGroupModelParams> model2;
  int sample_count = 20;
  std::uint64_t seed = 42;
  std::optional<double> beta;
  bool d_conformal = false;
  double tighten = 1.0;
  Tolerances tolerances;
  std::string output_path;
  std::string csv_path;

  static RunConfig from_json(const ordered_json& j);
  static RunConfig from_file(const std::string& path);
  ordered_json echo() const;
};

} // namespace akm
