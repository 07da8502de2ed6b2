#include "akm/report.hpp"

#include <cmath>
#include <cstdio>

namespace akm {

void Report::add(std::string name, double residual, double threshold) {
  checks.push_back(CheckRow{std::move(name), residual, threshold, residual < threshold});
}

bool Report::all_pass() const {
  for (const CheckRow& c : checks)
    if (!c.pass) return false;
  return true;
}

ordered_json Report::stable_json() const {
  ordered_json j;
  j["command"] = command;
  j["config"] = config_echo;
  ordered_json rows = ordered_json::array();
  for (const CheckRow& c : checks) {
    ordered_json row;
    row["name"] = c.name;
    row["max_residual"] = c.max_residual;
    row["threshold"] = c.threshold;
    row["pass"] = c.pass;
    rows.push_back(std::move(row));
  }
  j["checks"] = std::move(rows);
  j["derived"] = derived;
  j["notes"] = notes;
  j["pass"] = all_pass();
  return j;
}

ordered_json Report::to_json() const {
  ordered_json j;
  j["stable"] = stable_json();
  j["wall_time_ms"] = wall_time_ms;
  return j;
}

namespace {

void append_escaped(const std::string& s, std::string& out) {
  out.push_back('"');
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out.push_back(ch);
        }
    }
  }
  out.push_back('"');
}

void append_float(double v, std::string& out) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
  // bare integers like "1" stay valid json floats; no suffix needed
}

void dump_rec(const ordered_json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * depth), ' ');
  const std::string pad_in(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        append_escaped(it.key(), out);
        out += ": ";
        dump_rec(it.value(), out, indent, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_rec(v, out, indent, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case nlohmann::json::value_t::string:
      append_escaped(j.get_ref<const std::string&>(), out);
      return;
    case nlohmann::json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case nlohmann::json::value_t::number_float:
      append_float(j.get<double>(), out);
      return;
    case nlohmann::json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      return;
    case nlohmann::json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      return;
    default:
      out += "null";
      return;
  }
}

} // namespace

std::string dump_json(const ordered_json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  out += "\n";
  return out;
}

} // namespace akm
