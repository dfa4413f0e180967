// Command-line front end: `simulate`, `analyze` and `montecarlo` subcommands.
// Exit codes: 0 success, 2 configuration error, 3 data error, 4 numeric
// failure; the failing stage is named on stderr.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracoint/analysis.hpp"
#include "fracoint/csv_io.hpp"
#include "fracoint/errors.hpp"
#include "fracoint/kv_config.hpp"
#include "fracoint/model_sim.hpp"
#include "fracoint/montecarlo.hpp"

namespace {

using namespace fracoint;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw data_error("write", "cannot open '" + out_path + "'");
  out << text;
  if (!out) throw data_error("write", "failed writing '" + out_path + "'");
}

std::string opt_str(CLI::App* cmd, const char* flag) {
  const auto* opt = cmd->get_option(flag);
  return opt->count() > 0 ? opt->as<std::string>() : std::string{};
}

int run_simulate(CLI::App* cmd) {
  const std::string spec_path = opt_str(cmd, "--spec");
  KvConfig kv;
  if (!spec_path.empty()) kv = KvConfig::parse_file(spec_path, "simulate");

  // CLI flags override config-file keys.
  const auto override_if = [&](const char* flag, const char* key) {
    const auto* opt = cmd->get_option(flag);
    if (opt->count() > 0) kv.set(key, opt->as<std::string>());
  };
  override_if("--q", "q");
  override_if("--n", "n");
  override_if("--p", "p");
  override_if("--seed", "seed");
  override_if("--partition", "partition");
  override_if("--d", "d");
  override_if("--burn-in", "burn_in");
  override_if("--mixing", "mixing");
  override_if("--mixing-cond-cap", "mixing_cond_cap");
  override_if("--sigma", "sigma");
  if (cmd->get_option("--emit-levels")->count() > 0) kv.set("emit_levels", "true");

  SimSpec spec = sim_spec_from_kv(kv);
  spec.validate();
  SimulationOutput out = simulate_model(spec);

  const std::string out_path = opt_str(cmd, "--out");
  std::vector<std::string> header;
  for (std::size_t c = 0; c < out.series.q(); ++c)
    header.push_back("y" + std::to_string(c + 1));
  if (out_path.empty()) {
    std::string text;
    for (std::size_t c = 0; c < header.size(); ++c)
      text += (c ? "," : "") + header[c];
    text += "\n";
    char buf[40];
    for (std::size_t t = 0; t < out.series.n(); ++t) {
      for (std::size_t c = 0; c < out.series.q(); ++c) {
        std::snprintf(buf, sizeof(buf), "%.17g", out.series.at(t, c));
        text += (c ? "," : "") + std::string(buf);
      }
      text += "\n";
    }
    std::cout << text;
  } else {
    write_csv(out_path, out.series, header);
  }
  return 0;
}

int run_analyze(CLI::App* cmd) {
  KvConfig kv;
  const std::string cfg_path = opt_str(cmd, "--config");
  if (!cfg_path.empty()) kv = KvConfig::parse_file(cfg_path, "analyze");

  const auto pick_str = [&](const char* flag, const char* key,
                            const std::string& fallback) {
    const auto* opt = cmd->get_option(flag);
    if (opt->count() > 0) return opt->as<std::string>();
    return kv.get_string(key, fallback);
  };
  const auto pick_double = [&](const char* flag, const char* key, double fallback) {
    const auto* opt = cmd->get_option(flag);
    if (opt->count() > 0) return opt->as<double>();
    return kv.get_double(key, fallback);
  };
  const auto pick_long = [&](const char* flag, const char* key, long fallback) {
    const auto* opt = cmd->get_option(flag);
    if (opt->count() > 0) return opt->as<long>();
    return kv.get_long(key, fallback);
  };

  const std::string input = pick_str("--input", "input", "");
  if (input.empty()) throw config_error("analyze", "--input is required");
  const std::string kind = pick_str("--kind", "kind", "stationary");

  AnalysisConfig cfg;
  if (kind == "levels")
    cfg.kind = AnalysisConfig::InputKind::levels;
  else if (kind == "stationary")
    cfg.kind = AnalysisConfig::InputKind::stationary;
  else
    throw config_error("analyze", "--kind must be 'levels' or 'stationary'");
  cfg.p = static_cast<int>(pick_long("--p", "p", 2));
  cfg.m = static_cast<std::size_t>(pick_long("--m", "m", 0));
  cfg.m_n = static_cast<std::size_t>(pick_long("--mn", "mn", 0));
  cfg.delta1 = pick_double("--delta1", "delta1", AnalysisConfig::kAuto);
  cfg.delta2 = pick_double("--delta2", "delta2", AnalysisConfig::kAuto);
  cfg.alpha = pick_double("--alpha", "alpha", 0.05);
  cfg.rule.C = pick_double("--C", "C", 2.0);
  cfg.rule.epsilon = pick_double("--epsilon", "epsilon", 0.1);
  cfg.omit_low = kv.get_bool("omit_low", true);
  if (cmd->get_option("--no-omit-low")->count() > 0) cfg.omit_low = false;
  cfg.allow_small_m = kv.get_bool("allow_small_m", false);
  cfg.gse_only = kv.get_bool("gse_only", false);
  if (cmd->get_option("--gse-only")->count() > 0) cfg.gse_only = true;
  const std::string part = pick_str("--partition", "partition", "");
  if (!part.empty()) cfg.partition_override = parse_size_list(part, "analyze");

  const CsvData data = ingest_csv(input);
  const CointegrationReport report = run_analysis(cfg, data.values, input);

  const std::string out_path = opt_str(cmd, "--out");
  if (out_path.empty())
    std::cout << report_to_json(report);
  else
    write_report(report, out_path);
  return 0;
}

int run_montecarlo(CLI::App* cmd) {
  const std::string spec_path = opt_str(cmd, "--spec");
  if (spec_path.empty()) throw config_error("montecarlo", "--spec is required");
  KvConfig kv = KvConfig::parse_file(spec_path, "montecarlo");

  const auto override_if = [&](const char* flag, const char* key) {
    const auto* opt = cmd->get_option(flag);
    if (opt->count() > 0) kv.set(key, opt->as<std::string>());
  };
  override_if("--reps", "reps");
  override_if("--seed", "master_seed");
  override_if("--workers", "workers");

  McSpec mc = mc_spec_from_kv(kv);
  const McSummary summary = run_monte_carlo(mc);
  emit(summary_to_json(summary), opt_str(cmd, "--out"));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semiparametric fractional cointegration toolkit"};
  app.require_subcommand(1);

  CLI::App* sim = app.add_subcommand("simulate",
                                     "draw from the fractional common-components model");
  sim->add_option("--spec", "key=value spec file");
  sim->add_option("--q", "dimension");
  sim->add_option("--n", "sample length");
  sim->add_option("--p", "taper/differencing order");
  sim->add_option("--seed", "64-bit seed");
  sim->add_option("--partition", "true group sizes a0,a1,...");
  sim->add_option("--d", "memory parameters d0,d1,...");
  sim->add_option("--burn-in", "warm-up length (default 10n)");
  sim->add_option("--mixing", "'random' or rows r11,r12;r21,r22");
  sim->add_option("--mixing-cond-cap", "condition cap for random mixing");
  sim->add_option("--sigma", "innovation covariance rows, or 'identity'");
  sim->add_flag("--emit-levels", "emit the (p-1)-fold cumulative sum");
  sim->add_option("--out", "output CSV path (stdout when omitted)");

  CLI::App* ana = app.add_subcommand("analyze", "full cointegration analysis");
  ana->add_option("--input", "input CSV path");
  ana->add_option("--kind", "levels|stationary");
  ana->add_option("--p", "taper/differencing order");
  ana->add_option("--m", "averaged-periodogram bandwidth (default q+4)");
  ana->add_option("--mn", "GSE bandwidth (default floor(n^0.6))");
  ana->add_option("--delta1", "lower optimization bound");
  ana->add_option("--delta2", "upper optimization bound");
  ana->add_option("--alpha", "test level");
  ana->add_option("--C", "identification constant");
  ana->add_option("--epsilon", "identification exponent");
  ana->add_flag("--no-omit-low", "use the lowest frequencies in the GSE too");
  ana->add_flag("--gse-only", "memory estimates only (required for q = 1)");
  ana->add_option("--partition", "explicit partition a0,a1,... (skips identification)");
  ana->add_option("--config", "key=value config file (flags take precedence)");
  ana->add_option("--out", "report path: *.json file or output directory");

  CLI::App* mc = app.add_subcommand("montecarlo", "replicated simulation study");
  mc->add_option("--spec", "key=value experiment spec file");
  mc->add_option("--reps", "replication count");
  mc->add_option("--seed", "master seed");
  mc->add_option("--workers", "worker threads (0 = all)");
  mc->add_option("--out", "summary JSON path (stdout when omitted)");

  try {
    app.parse(argc, argv);
    if (sim->parsed()) return run_simulate(sim);
    if (ana->parsed()) return run_analyze(ana);
    if (mc->parsed()) return run_montecarlo(mc);
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error [stage cli]: " << e.what() << "\n";
    return 2;
  } catch (const fracoint::error& e) {
    std::cerr << "error [stage " << e.stage() << "]: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error [stage internal]: " << e.what() << "\n";
    return 4;
  }
}
