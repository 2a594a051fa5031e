// fptk command line: exposes the test-law solvers, the closed-form
// densities, the trading-threshold solvers and the Monte Carlo oracles with
// deterministic, manifest-stamped outputs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fptk/distributions.hpp"
#include "fptk/errors.hpp"
#include "fptk/optimal_sell.hpp"
#include "fptk/optimal_trading.hpp"
#include "fptk/run_manifest.hpp"
#include "fptk/special_functions.hpp"
#include "fptk/stochastic_sim.hpp"
#include "fptk/version.hpp"
#include "fptk/weighted_ks.hpp"

namespace {

using fptk::cli::format_double;
using fptk::cli::RunManifest;
using nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 24301;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitNoConvergence = 4;

struct GlobalOpts {
  std::uint64_t seed = kDefaultSeed;
  int workers = 2;
  bool json = false;
  std::string output;
  int rerun_depth = 0;
};

// Rounds through the 12-significant-digit text form so JSON artifacts carry
// exactly the printed precision.
ordered_json json_num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_double(v));
}

class ManifestBuilder {
 public:
  // argv_prefix: the subcommand path tokens; defaults to the command name.
  ManifestBuilder(std::string command, const GlobalOpts& g,
                  std::vector<std::string> argv_prefix = {})
      : global_(g) {
    m_.command = std::move(command);
    m_.seed = g.seed;
    m_.toolkit_version = fptk::kVersion;
    if (argv_prefix.empty()) argv_prefix.push_back(m_.command);
    m_.argv = std::move(argv_prefix);
  }

  void arg(const std::string& key, const std::string& value) {
    m_.parameters.emplace_back(key, value);
    m_.argv.push_back("--" + key);
    m_.argv.push_back(value);
  }
  void arg(const std::string& key, double v) { arg(key, format_double(v)); }
  void arg(const std::string& key, std::int64_t v) {
    arg(key, std::to_string(v));
  }
  void flag(const std::string& key, bool set) {
    if (!set) return;
    m_.parameters.emplace_back(key, "true");
    m_.argv.push_back("--" + key);
  }

  RunManifest finish() {
    m_.argv.push_back("--seed");
    m_.argv.push_back(std::to_string(m_.seed));
    if (global_.json) m_.argv.push_back("--json");
    return m_;
  }

 private:
  RunManifest m_;
  GlobalOpts global_;
};

std::string tsv_header(const RunManifest& m,
                       const std::vector<std::string>& columns) {
  std::ostringstream out;
  out << "# fptk " << m.command << "\n";
  out << "# manifest: " << fptk::cli::to_json_string(m) << "\n";
  out << "# columns:";
  for (const auto& c : columns) out << ' ' << c;
  out << "\n";
  return out.str();
}

void append_row(std::ostringstream& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << '\t';
    out << format_double(values[i]);
  }
  out << '\n';
}

ordered_json manifest_json(const RunManifest& m) {
  return ordered_json::parse(fptk::cli::to_json_string(m));
}

void write_artifact(const std::string& contents, const GlobalOpts& g) {
  if (g.output.empty()) {
    std::cout << contents;
    return;
  }
  std::ofstream out(g.output, std::ios::binary);
  if (!out) throw fptk::DomainError("cannot open output file " + g.output);
  out << contents;
}

// ---------------------------------------------------------------------------
// trading model options shared by threshold / pnl / simulate exit
// ---------------------------------------------------------------------------

struct TradingOpts {
  double rho = std::numeric_limits<double>::quiet_NaN();
  double epsilon = std::numeric_limits<double>::quiet_NaN();
  double beta = 0.0;
  double gamma = 1.0;
  double m_cap = 1.0;

  void add_to(CLI::App* cmd, bool gamma_required) {
    auto* rho_opt = cmd->add_option("--rho", rho, "AR(1) autocorrelation in [0,1)");
    auto* eps_opt =
        cmd->add_option("--epsilon", epsilon, "1 - rho (alternative to --rho)");
    rho_opt->excludes(eps_opt);
    cmd->add_option("--beta", beta, "innovation scale")->required();
    auto* g = cmd->add_option("--gamma", gamma, "linear cost per unit traded");
    if (gamma_required) g->required();
    cmd->add_option("--m-cap", m_cap, "position cap");
  }

  fptk::trading::PredictorModel resolve() const {
    double r = rho;
    if (std::isnan(r)) {
      if (std::isnan(epsilon)) {
        throw fptk::DomainError("model: provide --rho or --epsilon");
      }
      r = 1.0 - epsilon;
    }
    fptk::trading::PredictorModel model{r, beta, gamma, m_cap};
    model.validate();
    return model;
  }

  void stamp(ManifestBuilder& mb) const {
    const auto model = resolve();
    mb.arg("rho", model.rho);
    mb.arg("beta", model.beta);
    mb.arg("gamma", model.gamma);
    mb.arg("m-cap", model.m_cap);
  }
};

// ---------------------------------------------------------------------------
// command implementations
// ---------------------------------------------------------------------------

void cmd_ks_law(const GlobalOpts& g, std::int64_t n, double k_min,
                double k_max, std::int64_t points, bool classical) {
  if (points < 1) throw fptk::DomainError("ks-law: points must be >= 1");
  if (!(k_min > 0.0) || k_max < k_min) {
    throw fptk::DomainError("ks-law: need 0 < k-min <= k-max");
  }
  ManifestBuilder mb("ks-law", g);
  mb.arg("n", n);
  mb.arg("k-min", k_min);
  mb.arg("k-max", k_max);
  mb.arg("points", points);
  mb.flag("classical", classical);
  const RunManifest manifest = mb.finish();

  const double log_n = std::log(static_cast<double>(n));
  const auto small_k_asym = [&](double k) {
    const double theta = std::numbers::pi * std::numbers::pi / (4.0 * k * k) - 0.5;
    const double amp = 16.0 * k /
                       (std::numbers::pi * std::numbers::pi *
                        std::sqrt(2.0 * std::numbers::pi));
    return std::clamp(amp * std::exp(-theta * log_n), 0.0, 1.0);
  };
  const auto large_k_asym = [&](double k) {
    const double theta =
        std::sqrt(2.0 / std::numbers::pi) * k * std::exp(-0.5 * k * k);
    const double e = fptk::special::erf(k / std::sqrt(2.0));
    return std::clamp(e * e * std::exp(-theta * log_n), 0.0, 1.0);
  };

  std::vector<std::vector<double>> rows;
  for (std::int64_t i = 0; i < points; ++i) {
    const double k =
        (points == 1)
            ? k_min
            : k_min + (k_max - k_min) * static_cast<double>(i) /
                          static_cast<double>(points - 1);
    if (classical) {
      rows.push_back({k, fptk::gof::ks_classical_cdf(k)});
    } else {
      rows.push_back({k, fptk::gof::test_law_S(n, k), small_k_asym(k),
                      large_k_asym(k)});
    }
  }
  const std::vector<std::string> columns =
      classical ? std::vector<std::string>{"k", "P"}
                : std::vector<std::string>{"k", "S", "asym_small_k",
                                           "asym_large_k"};
  if (g.json) {
    ordered_json doc;
    doc["manifest"] = manifest_json(manifest);
    ordered_json curve = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json point;
      for (std::size_t c = 0; c < columns.size(); ++c) {
        point[columns[c]] = json_num(row[c]);
      }
      curve.push_back(point);
    }
    doc["curve"] = curve;
    write_artifact(doc.dump(2) + "\n", g);
    return;
  }
  std::ostringstream out;
  out << tsv_header(manifest, columns);
  for (const auto& row : rows) append_row(out, row);
  write_artifact(out.str(), g);
}

void cmd_ks_test(const GlobalOpts& g, const std::string& data_path,
                 const std::string& null_spec) {
  ManifestBuilder mb("ks-test", g);
  mb.arg("data", data_path);
  mb.arg("null", null_spec);
  const RunManifest manifest = mb.finish();

  const auto null_dist = fptk::gof::parse_distribution_spec(null_spec);
  auto values = fptk::gof::read_sample_file(data_path);
  const auto sample =
      fptk::gof::SampleSeries::make(std::move(values), null_dist.cdf);
  const auto result = fptk::gof::gof_test(sample);

  ordered_json doc;
  doc["manifest"] = manifest_json(manifest);
  doc["n"] = result.n;
  doc["null"] = null_dist.name;
  doc["statistic_k"] = json_num(result.statistic_k);
  doc["p_value"] = json_num(result.p_value);
  doc["critical_95"] = json_num(result.critical_95);
  doc["reject_at_95"] = result.reject_at_95;
  write_artifact(doc.dump(2) + "\n", g);
}

void cmd_sell(const GlobalOpts& g, double mu, double sigma, double horizon,
              std::int64_t tau_points, bool with_mc, std::int64_t paths,
              std::int64_t steps) {
  const fptk::sell::SellModel model{mu, sigma, horizon};
  model.validate();
  if (tau_points < 3) throw fptk::DomainError("sell: tau-points must be >= 3");
  ManifestBuilder mb("sell", g);
  mb.arg("mu", mu);
  mb.arg("sigma", sigma);
  mb.arg("horizon", horizon);
  mb.arg("tau-points", tau_points);
  mb.flag("mc", with_mc);
  if (with_mc) {
    mb.arg("paths", paths);
    mb.arg("steps", steps);
  }
  const RunManifest manifest = mb.finish();

  const auto tau_star = fptk::sell::optimal_tau(model, 11);
  const auto tau_m = fptk::sell::occurrence_argmax(model);
  const fptk::sell::OccurrenceDensity occurrence(model);

  std::vector<std::string> columns{"tau", "expected_spread",
                                   "occurrence_density"};
  if (with_mc) {
    columns.push_back("mc_spread");
    columns.push_back("mc_spread_se");
  }
  std::vector<std::vector<double>> rows;
  for (std::int64_t i = 0; i < tau_points; ++i) {
    const double tau = horizon * static_cast<double>(i) /
                       static_cast<double>(tau_points - 1);
    std::vector<double> row{tau, fptk::sell::expected_spread(model, tau),
                            occurrence(tau)};
    if (with_mc) {
      const fptk::sim::McConfig cfg{paths, steps, g.seed, g.workers};
      const auto mc = fptk::sim::mc_gbm_spread(model, tau, cfg);
      row.push_back(mc.expected_spread.mean);
      row.push_back(mc.expected_spread.std_error);
    }
    rows.push_back(std::move(row));
  }

  ordered_json summary;
  summary["tau_star"] = json_num(tau_star.tau);
  summary["tau_m"] = json_num(tau_m.tau);
  summary["mu_degenerate"] = tau_star.degenerate_mu0;

  if (g.json) {
    ordered_json doc;
    doc["manifest"] = manifest_json(manifest);
    doc["summary"] = summary;
    ordered_json curve = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json point;
      for (std::size_t c = 0; c < columns.size(); ++c) {
        point[columns[c]] = json_num(row[c]);
      }
      curve.push_back(point);
    }
    doc["curve"] = curve;
    write_artifact(doc.dump(2) + "\n", g);
    return;
  }
  std::ostringstream out;
  out << tsv_header(manifest, columns);
  out << "# summary: " << summary.dump() << "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << '\t';
      out << (std::isfinite(row[c]) ? format_double(row[c]) : "inf");
    }
    out << '\n';
  }
  write_artifact(out.str(), g);
}

void cmd_threshold(const GlobalOpts& g, const TradingOpts& opts,
                   const std::string& method, double grid_extent,
                   double grid_spacing) {
  const auto model = opts.resolve();
  ManifestBuilder mb("threshold", g);
  opts.stamp(mb);
  mb.arg("method", method);
  if (grid_extent > 0.0) mb.arg("grid-extent", grid_extent);
  if (grid_spacing > 0.0) mb.arg("grid-spacing", grid_spacing);
  const RunManifest manifest = mb.finish();

  std::string choice = method;
  std::string reason;
  if (method == "auto") {
    if (model.rho == 0.0) {
      choice = "discrete";
      reason = "rho = 0: white-noise predictor, q* = gamma exactly";
    } else if (model.beta >= 10.0 * model.gamma) {
      choice = "discrete";
      reason = "beta/gamma = " + format_double(model.beta / model.gamma) +
               " >> 1: one-step exits dominate";
    } else if (model.beta <= 0.1 * model.gamma) {
      choice = "continuous";
      reason = "beta/gamma = " + format_double(model.beta / model.gamma) +
               " << 1: continuum limit applies";
    } else {
      choice = "grid";
      reason = "beta/gamma = " + format_double(model.beta / model.gamma) +
               " is O(1): no limit applies, solving the stationary grid";
    }
  }

  fptk::trading::ThresholdSolution sol;
  if (choice == "discrete") {
    sol = fptk::trading::threshold_discrete(model);
  } else if (choice == "continuous") {
    if (model.rho == 0.0) {
      // White noise: the self-consistent equation collapses to g(p) = p.
      sol = fptk::trading::threshold_discrete(model);
    } else {
      sol = fptk::trading::threshold_continuous(model);
    }
  } else if (choice == "grid") {
    fptk::trading::GridSpec spec;
    spec.extent = grid_extent;
    spec.spacing = grid_spacing;
    sol = fptk::trading::stationary_g_solve(model, spec).solution;
  } else {
    throw fptk::DomainError("threshold: unknown method '" + choice + "'");
  }

  ordered_json doc;
  doc["manifest"] = manifest_json(manifest);
  doc["method"] = method;
  doc["method_resolved"] = choice;
  if (!reason.empty()) doc["method_reason"] = reason;
  doc["q_star"] = json_num(sol.q_star);
  doc["regime"] = fptk::trading::to_string(sol.regime);
  doc["eta"] = json_num(sol.eta);
  doc["q_naive"] = json_num(fptk::trading::naive_threshold(model).q_star);
  doc["diagnostics"] = {{"iterations", sol.iterations},
                        {"residual", json_num(sol.residual)}};
  write_artifact(doc.dump(2) + "\n", g);
}

void cmd_pnl(const GlobalOpts& g, const TradingOpts& opts,
             const std::vector<double>& q_list, std::int64_t paths,
             std::int64_t steps) {
  const auto model = opts.resolve();
  if (q_list.empty()) throw fptk::DomainError("pnl: q list must not be empty");
  ManifestBuilder mb("pnl", g);
  opts.stamp(mb);
  {
    std::string qs;
    for (std::size_t i = 0; i < q_list.size(); ++i) {
      if (i) qs += ',';
      qs += format_double(q_list[i]);
    }
    mb.arg("q", qs);
  }
  mb.arg("paths", paths);
  mb.arg("steps", steps);
  const RunManifest manifest = mb.finish();

  const fptk::sim::McConfig cfg{paths, steps, g.seed, g.workers};
  const auto gains = fptk::trading::pnl_simulate_many(model, q_list, cfg);

  const std::vector<std::string> columns{"q", "gain_per_step", "std_error"};
  if (g.json) {
    ordered_json doc;
    doc["manifest"] = manifest_json(manifest);
    doc["return_model"] = "conditional mean (noise omitted: variance reduction)";
    ordered_json table = ordered_json::array();
    for (std::size_t i = 0; i < q_list.size(); ++i) {
      table.push_back({{"q", json_num(q_list[i])},
                       {"gain_per_step", json_num(gains[i].mean)},
                       {"std_error", json_num(gains[i].std_error)}});
    }
    doc["table"] = table;
    write_artifact(doc.dump(2) + "\n", g);
    return;
  }
  std::ostringstream out;
  out << tsv_header(manifest, columns);
  out << "# return_model: conditional mean (noise omitted: variance reduction)\n";
  for (std::size_t i = 0; i < q_list.size(); ++i) {
    append_row(out, {q_list[i], gains[i].mean, gains[i].std_error});
  }
  write_artifact(out.str(), g);
}

void cmd_simulate_ks(const GlobalOpts& g, std::int64_t n, double k_min,
                     double k_max, std::int64_t points, std::int64_t paths) {
  if (points < 1) throw fptk::DomainError("simulate ks: points must be >= 1");
  ManifestBuilder mb("simulate-ks", g, {"simulate", "ks"});
  mb.arg("n", n);
  mb.arg("k-min", k_min);
  mb.arg("k-max", k_max);
  mb.arg("points", points);
  mb.arg("paths", paths);
  const RunManifest manifest = mb.finish();

  std::vector<double> grid;
  for (std::int64_t i = 0; i < points; ++i) {
    grid.push_back((points == 1)
                       ? k_min
                       : k_min + (k_max - k_min) * static_cast<double>(i) /
                                     static_cast<double>(points - 1));
  }
  const fptk::sim::McConfig cfg{paths, 1, g.seed, g.workers};
  const auto cdf = fptk::sim::mc_weighted_ks_statistic_cdf(n, grid, cfg);

  std::ostringstream out;
  out << tsv_header(manifest, {"k", "cdf", "std_error", "law_S"});
  for (const auto& point : cdf) {
    append_row(out, {point.k, point.probability, point.std_error,
                     fptk::gof::test_law_S(n, point.k)});
  }
  write_artifact(out.str(), g);
}

void cmd_simulate_spread(const GlobalOpts& g, double mu, double sigma,
                         double horizon, double tau, std::int64_t paths,
                         std::int64_t steps) {
  const fptk::sell::SellModel model{mu, sigma, horizon};
  ManifestBuilder mb("simulate-spread", g, {"simulate", "spread"});
  mb.arg("mu", mu);
  mb.arg("sigma", sigma);
  mb.arg("horizon", horizon);
  mb.arg("tau", tau);
  mb.arg("paths", paths);
  mb.arg("steps", steps);
  const RunManifest manifest = mb.finish();

  const fptk::sim::McConfig cfg{paths, steps, g.seed, g.workers};
  const auto mc = fptk::sim::mc_gbm_spread(model, tau, cfg);

  std::ostringstream out;
  out << tsv_header(manifest, {"s", "density", "std_error"});
  out << "# expected_spread: " << format_double(mc.expected_spread.mean)
      << "\t" << format_double(mc.expected_spread.std_error) << "\n";
  for (std::size_t i = 0; i < mc.histogram.counts.size(); ++i) {
    append_row(out, {mc.histogram.bin_center(i), mc.histogram.density(i),
                     mc.histogram.density_std_error(i)});
  }
  write_artifact(out.str(), g);
}

void cmd_simulate_argmax(const GlobalOpts& g, double mu, double sigma,
                         double horizon, std::int64_t paths,
                         std::int64_t steps) {
  const fptk::sell::SellModel model{mu, sigma, horizon};
  ManifestBuilder mb("simulate-argmax", g, {"simulate", "argmax"});
  mb.arg("mu", mu);
  mb.arg("sigma", sigma);
  mb.arg("horizon", horizon);
  mb.arg("paths", paths);
  mb.arg("steps", steps);
  const RunManifest manifest = mb.finish();

  const fptk::sim::McConfig cfg{paths, steps, g.seed, g.workers};
  const auto hist = fptk::sim::mc_argmax_time_density(model, cfg);

  std::ostringstream out;
  out << tsv_header(manifest, {"tau", "density", "std_error"});
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    append_row(out,
               {hist.bin_center(i), hist.density(i), hist.density_std_error(i)});
  }
  write_artifact(out.str(), g);
}

void cmd_simulate_exit(const GlobalOpts& g, const TradingOpts& opts, double p0,
                       double q, std::int64_t paths, std::int64_t steps) {
  const auto model = opts.resolve();
  // Default cap: one hundred autocorrelation times.
  const std::int64_t resolved_steps =
      (steps > 0) ? steps
                  : static_cast<std::int64_t>(
                        std::ceil(100.0 / model.epsilon()));
  ManifestBuilder mb("simulate-exit", g, {"simulate", "exit"});
  opts.stamp(mb);
  mb.arg("p0", p0);
  mb.arg("q", q);
  mb.arg("paths", paths);
  mb.arg("steps", resolved_steps);
  const RunManifest manifest = mb.finish();

  const fptk::sim::McConfig cfg{paths, resolved_steps, g.seed, g.workers};
  const auto summary = fptk::sim::mc_predictor_exit(model, p0, q, cfg);

  ordered_json doc;
  doc["manifest"] = manifest_json(manifest);
  doc["survival_fraction"] = json_num(summary.survival_fraction);
  doc["exit_above_fraction"] = json_num(summary.exit_above_fraction);
  doc["exit_below_fraction"] = json_num(summary.exit_below_fraction);
  doc["exit_above_std_error"] = json_num(summary.exit_above_std_error);
  doc["exit_below_std_error"] = json_num(summary.exit_below_std_error);
  doc["mean_accumulated"] = json_num(summary.mean_accumulated);
  doc["mean_accumulated_std_error"] =
      json_num(summary.mean_accumulated_std_error);
  doc["cap_warning"] = summary.cap_warning;
  write_artifact(doc.dump(2) + "\n", g);
}

int run(std::vector<std::string> args, int rerun_depth);

void cmd_rerun(const GlobalOpts& g, const std::string& artifact_path) {
  if (g.rerun_depth > 0) {
    throw fptk::DomainError("rerun: refusing to rerun a rerun");
  }
  std::ifstream in(artifact_path, std::ios::binary);
  if (!in) throw fptk::DomainError("rerun: cannot open " + artifact_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const RunManifest manifest =
      fptk::cli::manifest_from_artifact(buffer.str());
  std::vector<std::string> args = manifest.argv;
  if (!g.output.empty()) {
    args.push_back("--output");
    args.push_back(g.output);
  }
  args.push_back("--workers");
  args.push_back(std::to_string(g.workers));
  const int rc = run(std::move(args), g.rerun_depth + 1);
  if (rc != 0) throw fptk::Error("rerun: replay failed");
}

// ---------------------------------------------------------------------------
// config file preprocessing: flat key=value lines become trailing --key value
// arguments unless the flag is already present on the command line.
// ---------------------------------------------------------------------------

std::vector<std::string> apply_config_file(std::vector<std::string> args) {
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (config_path.empty()) return args;
  std::ifstream in(config_path);
  if (!in) throw fptk::DomainError("config: cannot open " + config_path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      const auto b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    const std::string flag = "--" + key;
    bool present = false;
    for (const auto& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) {
        present = true;
        break;
      }
    }
    if (!present) {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

int run(std::vector<std::string> args, int rerun_depth) {
  GlobalOpts global;
  global.rerun_depth = rerun_depth;

  CLI::App app{"first-passage toolkit: weighted KS testing, optimal selling, "
               "optimal trading thresholds"};
  app.set_version_flag("--version", fptk::kVersion);
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--seed", global.seed, "Monte Carlo seed")
      ->capture_default_str();
  app.add_option("--workers", global.workers, "worker threads")
      ->capture_default_str();
  app.add_flag("--json", global.json, "JSON output where supported");
  app.add_option("--output", global.output, "write the artifact to a file");

  // ks-law
  auto* ks_law = app.add_subcommand("ks-law", "test-law curve S(N;k)");
  std::int64_t kl_n = 1000, kl_points = 200;
  double kl_min = 0.5, kl_max = 5.0;
  bool kl_classical = false;
  ks_law->add_option("--n", kl_n, "sample size");
  ks_law->add_option("--k-min", kl_min, "lowest k");
  ks_law->add_option("--k-max", kl_max, "highest k");
  ks_law->add_option("--points", kl_points, "grid points");
  ks_law->add_flag("--classical", kl_classical,
                   "classical Kolmogorov-Smirnov law instead");

  // ks-test
  auto* ks_test = app.add_subcommand("ks-test", "weighted GoF test on data");
  std::string kt_data, kt_null = "uniform";
  ks_test->add_option("--data", kt_data, "one-column sample file")->required();
  ks_test->add_option("--null", kt_null,
                      "null CDF: uniform|normal(mu=,sigma=)|"
                      "exponential(lambda=)|@quantile_table");

  // sell
  auto* sell = app.add_subcommand("sell", "optimal selling-time curves");
  double sl_mu = 0.0, sl_sigma = 1.0, sl_T = 1.0;
  std::int64_t sl_points = 21, sl_paths = 20000, sl_steps = 5000;
  bool sl_mc = false;
  sell->add_option("--mu", sl_mu, "log-price drift");
  sell->add_option("--sigma", sl_sigma, "volatility");
  sell->add_option("--horizon", sl_T, "deadline T");
  sell->add_option("--tau-points", sl_points, "tau grid points");
  sell->add_flag("--mc", sl_mc, "append Monte Carlo columns");
  sell->add_option("--paths", sl_paths, "MC paths (with --mc)");
  sell->add_option("--steps", sl_steps, "MC time steps (with --mc)");

  // threshold
  auto* threshold =
      app.add_subcommand("threshold", "optimal trading threshold q*");
  TradingOpts th_opts;
  th_opts.add_to(threshold, /*gamma_required=*/true);
  std::string th_method = "auto";
  double th_extent = 0.0, th_spacing = 0.0;
  threshold->add_option("--method", th_method, "auto|discrete|continuous|grid")
      ->check(CLI::IsMember({"auto", "discrete", "continuous", "grid"}));
  threshold->add_option("--grid-extent", th_extent, "grid half-width");
  threshold->add_option("--grid-spacing", th_spacing, "grid cell size");

  // pnl
  auto* pnl = app.add_subcommand("pnl", "per-threshold simulated gain");
  TradingOpts pn_opts;
  pn_opts.add_to(pnl, /*gamma_required=*/true);
  std::vector<double> pn_q;
  std::int64_t pn_paths = 1000, pn_steps = 10000;
  pnl->add_option("--q", pn_q, "thresholds to compare")
      ->required()
      ->delimiter(',');
  pnl->add_option("--paths", pn_paths, "paths");
  pnl->add_option("--steps", pn_steps, "steps per path");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "raw Monte Carlo oracles");
  simulate->require_subcommand(1);
  simulate->fallthrough();

  auto* sim_ks = simulate->add_subcommand("ks", "weighted statistic CDF");
  std::int64_t sk_n = 1000, sk_points = 8, sk_paths = 2000;
  double sk_min = 2.0, sk_max = 4.0;
  sim_ks->add_option("--n", sk_n, "sample size per trial");
  sim_ks->add_option("--k-min", sk_min, "lowest k");
  sim_ks->add_option("--k-max", sk_max, "highest k");
  sim_ks->add_option("--points", sk_points, "k grid points");
  sim_ks->add_option("--paths", sk_paths, "trials");

  auto* sim_spread = simulate->add_subcommand("spread", "spread histogram");
  double sp_mu = 0.0, sp_sigma = 1.0, sp_T = 1.0, sp_tau = 0.5;
  std::int64_t sp_paths = 20000, sp_steps = 5000;
  sim_spread->add_option("--mu", sp_mu, "drift");
  sim_spread->add_option("--sigma", sp_sigma, "volatility");
  sim_spread->add_option("--horizon", sp_T, "deadline T");
  sim_spread->add_option("--tau", sp_tau, "selling time");
  sim_spread->add_option("--paths", sp_paths, "paths");
  sim_spread->add_option("--steps", sp_steps, "time steps");

  auto* sim_argmax =
      simulate->add_subcommand("argmax", "argmax-time histogram");
  double am_mu = 0.0, am_sigma = 1.0, am_T = 1.0;
  std::int64_t am_paths = 20000, am_steps = 5000;
  sim_argmax->add_option("--mu", am_mu, "drift");
  sim_argmax->add_option("--sigma", am_sigma, "volatility");
  sim_argmax->add_option("--horizon", am_T, "deadline T");
  sim_argmax->add_option("--paths", am_paths, "paths");
  sim_argmax->add_option("--steps", am_steps, "time steps");

  auto* sim_exit = simulate->add_subcommand("exit", "predictor exit stats");
  TradingOpts ex_opts;
  ex_opts.add_to(sim_exit, /*gamma_required=*/false);
  double ex_p0 = 0.0, ex_q = 1.0;
  std::int64_t ex_paths = 100000, ex_steps = 0;
  sim_exit->add_option("--p0", ex_p0, "start value, |p0| <= q");
  sim_exit->add_option("--q", ex_q, "exit threshold")->required();
  sim_exit->add_option("--paths", ex_paths, "paths");
  sim_exit->add_option("--steps", ex_steps, "cap (0: 100/epsilon)");

  // rerun
  auto* rerun = app.add_subcommand("rerun", "replay an artifact's manifest");
  std::string rr_file;
  rerun->add_option("file", rr_file, "artifact or manifest file")->required();

  try {
    args = apply_config_file(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    std::cerr << "fptk: " << e.what() << "\n";
    return kExitInput;
  } catch (const fptk::DomainError& e) {
    std::cerr << "fptk: " << e.what() << "\n";
    return kExitInput;
  }

  const auto started = std::chrono::steady_clock::now();
  int rc = kExitOk;
  try {
    if (ks_law->parsed()) {
      cmd_ks_law(global, kl_n, kl_min, kl_max, kl_points, kl_classical);
    } else if (ks_test->parsed()) {
      cmd_ks_test(global, kt_data, kt_null);
    } else if (sell->parsed()) {
      cmd_sell(global, sl_mu, sl_sigma, sl_T, sl_points, sl_mc, sl_paths,
               sl_steps);
    } else if (threshold->parsed()) {
      cmd_threshold(global, th_opts, th_method, th_extent, th_spacing);
    } else if (pnl->parsed()) {
      cmd_pnl(global, pn_opts, pn_q, pn_paths, pn_steps);
    } else if (simulate->parsed()) {
      if (sim_ks->parsed()) {
        cmd_simulate_ks(global, sk_n, sk_min, sk_max, sk_points, sk_paths);
      } else if (sim_spread->parsed()) {
        cmd_simulate_spread(global, sp_mu, sp_sigma, sp_T, sp_tau, sp_paths,
                            sp_steps);
      } else if (sim_argmax->parsed()) {
        cmd_simulate_argmax(global, am_mu, am_sigma, am_T, am_paths, am_steps);
      } else if (sim_exit->parsed()) {
        cmd_simulate_exit(global, ex_opts, ex_p0, ex_q, ex_paths, ex_steps);
      }
    } else if (rerun->parsed()) {
      cmd_rerun(global, rr_file);
    }
  } catch (const fptk::DegenerateSample& e) {
    std::cerr << "fptk: degenerate sample: " << e.what() << "\n";
    rc = kExitDegenerate;
  } catch (const fptk::NonConvergence& e) {
    std::cerr << "fptk: no convergence: " << e.what() << "\n";
    rc = kExitNoConvergence;
  } catch (const fptk::GridTooNarrow& e) {
    std::cerr << "fptk: grid too narrow: " << e.what() << "\n";
    rc = kExitNoConvergence;
  } catch (const fptk::NonMonotone& e) {
    std::cerr << "fptk: non-monotone: " << e.what() << "\n";
    rc = kExitNoConvergence;
  } catch (const fptk::Error& e) {
    std::cerr << "fptk: " << e.what() << "\n";
    rc = kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "fptk: " << e.what() << "\n";
    rc = kExitInput;
  }
  const auto elapsed = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - started)
                           .count();
  std::cerr << "# wall_time_s: " << format_double(elapsed) << "\n";
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(std::move(args), 0);
}
