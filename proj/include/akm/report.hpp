#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace akm {

using ordered_json = nlohmann::ordered_json;

struct CheckRow {
  std::string name;
  double max_residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// A run report. The `stable` section (command, config echo, checks, derived
/// quantities, notes) is byte-stable for a fixed config and seed; wall time
/// lives outside it.
struct Report {
  std::string command;
  ordered_json config_echo;
  std::vector<CheckRow> checks;
  ordered_json derived = ordered_json::object();
  std::vector<std::string> notes;
  double wall_time_ms = 0.0;

  void add(std::string name, double residual, double threshold);
  bool all_pass() const;
  ordered_json stable_json() const;
  ordered_json to_json() const;
};

/// Serialize with every float printed at 17 significant digits.
std::string dump_json(const ordered_json& j, int indent = 2);

} // namespace akm
