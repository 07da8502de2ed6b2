#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "akm/verify.hpp"

namespace {

// exit codes: 0 pass, 1 usage error, 2 check failure, 3 internal error
constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;
constexpr int kExitInternal = 3;

struct CliOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::string out_path;
  std::optional<double> beta;
  bool d_conformal = false;
  std::string csv_path;
  std::optional<double> tighten;
};

akm::RunConfig load_config(const CliOptions& opt, bool config_required) {
  akm::RunConfig cfg;
  if (!opt.config_path.empty()) {
    cfg = akm::RunConfig::from_file(opt.config_path);
  } else if (config_required) {
    throw akm::ConfigParseError("--config is required for this command");
  }
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.samples) {
    cfg.sample_count = *opt.samples;
    if (cfg.sample_count < 4) throw akm::ConfigParseError("sample_count must be >= 4");
  }
  if (!opt.out_path.empty()) cfg.output_path = opt.out_path;
  if (opt.beta) cfg.beta = *opt.beta;
  if (opt.d_conformal) cfg.d_conformal = true;
  if (!opt.csv_path.empty()) cfg.csv_path = opt.csv_path;
  if (opt.tighten) {
    cfg.tighten = *opt.tighten;
    if (!(cfg.tighten > 0.0)) throw akm::ConfigParseError("tighten must be > 0");
  }
  return cfg;
}

int emit(const akm::Report& rep, const akm::RunConfig& cfg) {
  const std::string doc = akm::dump_json(rep.to_json());
  if (!cfg.output_path.empty()) {
    std::ofstream out(cfg.output_path);
    if (!out) {
      std::cerr << "error: cannot write " << cfg.output_path << "\n";
      return kExitInternal;
    }
    out << doc;
    for (const akm::CheckRow& c : rep.checks)
      std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  residual=" << c.max_residual
                << " threshold=" << c.threshold << "\n";
    std::cout << (rep.all_pass() ? "PASS" : "FAIL") << " (" << rep.checks.size()
              << " checks, report: " << cfg.output_path << ")\n";
  } else {
    std::cout << doc;
  }
  return rep.all_pass() ? kExitPass : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verifier for almost alpha-Kenmotsu structures: model spaces, "
               "canonical connection, D-homothetic deformations and nullity analysis"};
  app.require_subcommand(1);

  CliOptions opt;
  std::string command;
  for (const auto& name : {"validate", "analyze", "deform", "compare", "selftest"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", opt.config_path, "JSON config path");
    sub->add_option("--seed", opt.seed, "sample PRNG seed");
    sub->add_option("--samples", opt.samples, "sample count (>= 4)");
    sub->add_option("--out", opt.out_path, "report output path");
    if (std::string(name) == "deform") {
      sub->add_option("--beta", opt.beta, "deformation constant (> 0)");
      sub->add_flag("--d-conformal", opt.d_conformal, "also apply the D-conformal change");
    }
    if (std::string(name) == "analyze")
      sub->add_option("--csv", opt.csv_path, "write per-plane sectional curvatures as CSV");
    if (std::string(name) == "selftest")
      sub->add_option("--tighten", opt.tighten, "divide all thresholds by this factor");
    sub->callback([&command, name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    akm::RunConfig cfg = load_config(opt, command != "selftest");
    akm::Report rep;
    if (command == "validate") {
      rep = akm::run_validate(cfg);
    } else if (command == "analyze") {
      rep = akm::run_analyze(cfg);
      if (!cfg.csv_path.empty()) {
        std::ofstream csv(cfg.csv_path);
        csv << akm::sectional_curvature_csv(akm::build_model(*cfg.model), cfg);
      }
    } else if (command == "deform") {
      rep = akm::run_deform(cfg);
    } else if (command == "compare") {
      rep = akm::run_compare(cfg);
      if (rep.derived.contains("equivalent")) {
        std::cerr << (rep.derived["equivalent"].get<bool>()
                          ? "equivalent up to D-homothetic deformation (beta = " +
                                std::to_string(rep.derived["witness_beta"].get<double>()) + ")"
                          : "not equivalent: " + rep.derived["reason"].get<std::string>())
                  << "\n";
      }
    } else {
      rep = akm::run_selftest(cfg);
    }
    rep.wall_time_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    return emit(rep, cfg);
  } catch (const akm::ConfigParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const akm::InvalidBeta& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const akm::PreconditionFailed& e) {
    std::cerr << "check failure: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const akm::Error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
