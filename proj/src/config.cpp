#include "akm/config.hpp"

#include <fstream>

namespace akm {

namespace {

LieGroupModelParams parse_model(const ordered_json& j) {
  if (!j.is_object()) throw ConfigParseError("model must be an object");
  LieGroupModelParams p;
  try {
    p.n = j.at("n").get<int>();
    p.alpha = j.at("alpha").get<double>();
    p.lambdas = j.at("lambdas").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigParseError(std::string("bad model params: ") + e.what());
  }
  if (p.n < 1) throw ConfigParseError("model.n must be >= 1");
  if (p.alpha == 0.0) throw ConfigParseError("model.alpha must be nonzero");
  if (static_cast<int>(p.lambdas.size()) != p.n)
    throw ConfigParseError("model.lambdas must have length n");
  for (double l : p.lambdas)
    if (l < 0.0) throw ConfigParseError("model.lambdas must be nonnegative");
  return p;
}

void apply_tolerances(Tolerances& t, const ordered_json& j) {
  if (!j.is_object()) throw ConfigParseError("tolerances must be an object");
  auto set = [&](const char* key, double& field) {
    if (j.contains(key)) {
      field = j.at(key).get<double>();
      if (!(field > 0.0)) throw ConfigParseError(std::string("tolerance ") + key + " must be > 0");
    }
  };
  set("tol_struct", t.tol_struct);
  set("tol_deriv", t.tol_deriv);
  set("tol_curv_analytic", t.tol_curv_analytic);
  set("tol_curv_numeric", t.tol_curv_numeric);
  set("tol_nabla_r", t.tol_nabla_r);
  set("kmu_fit_analytic", t.kmu_fit_analytic);
  set("kmu_fit_numeric", t.kmu_fit_numeric);
  set("spectrum_gap", t.spectrum_gap);
  set("check_scale", t.check_scale);
}

} // namespace

RunConfig RunConfig::from_json(const ordered_json& j) {
  if (!j.is_object()) throw ConfigParseError("config must be a JSON object");
  RunConfig c;
  if (j.contains("model")) c.model = parse_model(j.at("model"));
  if (j.contains("model2")) c.model2 = parse_model(j.at("model2"));
  try {
    if (j.contains("sample_count")) c.sample_count = j.at("sample_count").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("beta")) c.beta = j.at("beta").get<double>();
    if (j.contains("d_conformal")) c.d_conformal = j.at("d_conformal").get<bool>();
    if (j.contains("tighten")) c.tighten = j.at("tighten").get<double>();
    if (j.contains("output_path")) c.output_path = j.at("output_path").get<std::string>();
    if (j.contains("csv_path")) c.csv_path = j.at("csv_path").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigParseError(std::string("bad config value: ") + e.what());
  }
  if (j.contains("tolerances")) apply_tolerances(c.tolerances, j.at("tolerances"));
  if (c.sample_count < 4) throw ConfigParseError("sample_count must be >= 4");
  if (!(c.tighten > 0.0)) throw ConfigParseError("tighten must be > 0");
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError("cannot open config file: " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigParseError(std::string("config is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

ordered_json RunConfig::echo() const {
  ordered_json j;
  auto model_json = [](const LieGroupModelParams& m) {
    ordered_json o;
    o["n"] = m.n;
    o["alpha"] = m.alpha;
    o["lambdas"] = m.lambdas;
    return o;
  };
  if (model) j["model"] = model_json(*model);
  if (model2) j["model2"] = model_json(*model2);
  j["sample_count"] = sample_count;
  j["seed"] = seed;
  if (beta) j["beta"] = *beta;
  if (d_conformal) j["d_conformal"] = true;
  if (tighten != 1.0) j["tighten"] = tighten;
  ordered_json t;
  t["tol_struct"] = tolerances.tol_struct;
  t["tol_deriv"] = tolerances.tol_deriv;
  t["tol_curv_analytic"] = tolerances.tol_curv_analytic;
  t["tol_curv_numeric"] = tolerances.tol_curv_numeric;
  t["tol_nabla_r"] = tolerances.tol_nabla_r;
  t["kmu_fit_analytic"] = tolerances.kmu_fit_analytic;
  t["kmu_fit_numeric"] = tolerances.kmu_fit_numeric;
  t["spectrum_gap"] = tolerances.spectrum_gap;
  t["check_scale"] = tolerances.check_scale;
  j["tolerances"] = std::move(t);
  return j;
}

} // namespace akm
