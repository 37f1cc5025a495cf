// qcmi: command-line front end.
//
// Exit status: 0 success, 1 a verification check failed, 2 usage or parse
// error, 3 invalid input state.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcmi/discord.hpp"
#include "qcmi/dynamics.hpp"
#include "qcmi/error.hpp"
#include "qcmi/extension.hpp"
#include "qcmi/info.hpp"
#include "qcmi/io.hpp"
#include "qcmi/suites.hpp"

namespace {

using namespace qcmi;

struct RunConfig {
  std::string state_path;
  std::vector<std::string> x{"A"}, y, given{"S"};
  std::size_t restarts = 32, max_evals = 2000, ext_dim = 2;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::string output;
  std::string format = "json";
  std::size_t threads = 1;
};

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kInvalidState = 3 };

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

OptimizerConfig optimizer(const RunConfig& cfg) {
  OptimizerConfig o;
  o.restarts = cfg.restarts;
  o.max_evals = cfg.max_evals;
  o.obj_tol = cfg.tol;
  o.seed = cfg.seed;
  o.threads = cfg.threads;
  return o;
}

Json header(const RunConfig& cfg, const std::string& command) {
  return Json{{"tool", "qcmi"},
              {"version", QCMI_VERSION},
              {"command", command},
              {"seed", cfg.seed},
              {"optimizer", {{"restarts", cfg.restarts}, {"max_evals", cfg.max_evals}, {"tol", cfg.tol}}},
              {"ext_dim", cfg.ext_dim}};
}

/// Environment labels default to everything outside x and the conditioning set.
LabelSet resolve_y(const RunConfig& cfg, const LabeledState& s) {
  if (!cfg.y.empty()) return cfg.y;
  LabelSet used = cfg.x;
  used.insert(used.end(), cfg.given.begin(), cfg.given.end());
  LabelSet rest = s.layout().complement(used);
  if (rest.empty()) throw UsageError("no labels left for --y");
  return rest;
}

LabeledState load(const RunConfig& cfg) {
  if (cfg.state_path.empty()) throw UsageError("--state is required");
  return load_state(cfg.state_path);
}

void emit(const RunConfig& cfg, const Json& report, const std::string& csv) {
  std::string text;
  if (cfg.format == "json") {
    text = report.dump(2) + "\n";
  } else {
    text = csv;
  }
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    write_text_file(cfg.output, text);
  }
}

std::string key_value_csv(const std::vector<std::pair<std::string, double>>& rows) {
  std::string out = "quantity,value\n";
  for (const auto& [k, v] : rows) out += k + "," + fmt12(v) + "\n";
  return out;
}

int cmd_info(const RunConfig& cfg) {
  const LabeledState s = load(cfg);
  const LabelSet x = cfg.x, z = cfg.given, y = resolve_y(cfg, s);
  const LabelSet xz = join_labels(x, z), yz = join_labels(y, z), xyz = join_labels(x, y, z);
  const std::vector<std::pair<std::string, double>> rows{
      {"s_x", marginal_entropy(s, x)},
      {"s_y", marginal_entropy(s, y)},
      {"s_z", marginal_entropy(s, z)},
      {"s_xz", marginal_entropy(s, xz)},
      {"s_yz", marginal_entropy(s, yz)},
      {"s_xyz", marginal_entropy(s, xyz)},
      {"i_xz", mutual_information(s, x, z)},
      {"i_cmi", cmi(s, x, y, z)},
      {"i_x_zy", mutual_information(s, x, yz)},
  };
  const SettingParties parties{x, z, y};
  const auto dec = decomposition_identity(s, parties);
  const auto cap = capacity_identity(s, parties);

  Json report = header(cfg, "info");
  report["labels"] = {{"x", x}, {"y", y}, {"given", z}};
  for (const auto& [k, v] : rows) report[k] = v;
  report["decomposition_residual"] = dec.residual;
  report["capacity_residual"] = cap.residual;
  auto all = rows;
  all.emplace_back("decomposition_residual", dec.residual);
  all.emplace_back("capacity_residual", cap.residual);
  emit(cfg, report, key_value_csv(all));
  return kOk;
}

int cmd_discord(const RunConfig& cfg) {
  const LabeledState s = load(cfg);
  const LabelSet y = resolve_y(cfg, s);
  const QuantumPart r = big_r(s, cfg.x, y, cfg.given, optimizer(cfg));
  const Povm argmax = r.classical.argmax();
  const double j = j_conditional(s, argmax, cfg.x, cfg.given);

  Json report = header(cfg, "discord");
  report["labels"] = {{"x", cfg.x}, {"y", y}, {"given", cfg.given}};
  report["i_cmi"] = r.cmi;
  report["j_at_argmax"] = j;
  report["c"] = {{"value", r.classical.value}, {"lower_bound", true}};
  report["r"] = {{"value", r.value}, {"upper_bound", true}};
  report["budget_exhausted"] = r.classical.budget_exhausted;
  report["evaluations"] = r.classical.evaluations;
  report["argmax_povm"] = povm_to_json(argmax);
  emit(cfg, report, key_value_csv({{"i_cmi", r.cmi}, {"j_at_argmax", j}, {"c", r.classical.value}, {"r", r.value}}));
  return kOk;
}

int cmd_rex(const RunConfig& cfg) {
  const LabeledState s = load(cfg);
  const LabelSet y = resolve_y(cfg, s);
  ExtensionConfig ec;
  ec.search = optimizer(cfg);
  ec.ext_dim = cfg.ext_dim;
  const ExtensionResult res = r_ex(s, cfg.x, y, cfg.given, ec);

  Json report = header(cfg, "rex");
  report["labels"] = {{"x", cfg.x}, {"y", y}, {"given", cfg.given}};
  report["r_ex"] = {{"value", res.value}, {"upper_bound", true}};
  report["baseline"] = res.baseline;
  report["search_value"] = res.search_value;
  report["from_search"] = res.from_search;
  report["garbage_dim"] = res.garbage_dim;
  report["budget_exhausted"] = res.budget_exhausted;
  report["evaluations"] = res.evaluations;
  emit(cfg, report,
       key_value_csv({{"r_ex", res.value}, {"baseline", res.baseline}, {"search_value", res.search_value}}));
  return kOk;
}

Scenario named_or_file_scenario(const std::string& spec) {
  if (spec == "partial_swap" || spec == "dephasing" || spec == "paper_example")
    return scenario_from_json(Json{{"family", spec}});
  return scenario_from_json(read_json_file(spec));
}

struct ScanConfig {
  std::string param = "u";
  double from = 0.0, to = 1.0;
  std::size_t steps = 11;
  std::string scenario;
  bool with_discord = false;
};

std::vector<double> grid(const ScanConfig& sc) {
  if (sc.steps == 0) throw UsageError("empty grid: --steps must be at least 1");
  if (sc.steps == 1) return {sc.from};
  std::vector<double> g(sc.steps);
  for (std::size_t i = 0; i < sc.steps; ++i)
    g[i] = sc.from + (sc.to - sc.from) * static_cast<double>(i) / static_cast<double>(sc.steps - 1);
  return g;
}

std::string table_csv(const std::vector<std::string>& cols, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t c = 0; c < cols.size(); ++c) out += (c ? "," : "") + cols[c];
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) out += (c ? "," : "") + fmt12(r[c]);
    out += "\n";
  }
  return out;
}

Json table_json(const std::vector<std::string>& cols, const std::vector<std::vector<double>>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json row;
    for (std::size_t c = 0; c < cols.size(); ++c) row[cols[c]] = r[c];
    out.push_back(std::move(row));
  }
  return out;
}

int cmd_scan(const RunConfig& cfg, const ScanConfig& sc) {
  const std::vector<double> points = grid(sc);
  std::vector<std::string> cols;
  std::vector<std::vector<double>> rows;
  Json report = header(cfg, "scan");

  if (sc.param == "u") {
    if (!sc.scenario.empty()) throw UsageError("--scenario applies to time scans (--param t)");
    cols = {"u", "i_a_e1e2_s", "i_a_e1_s", "i_a_s"};
    if (sc.with_discord) cols.insert(cols.end(), {"c_a_e1_s", "r_a_e1_s"});
    bool monotone = true;
    for (std::size_t k = 0; k < points.size(); ++k) {
      const LabeledState s = paper_example(points[k]);
      std::vector<double> row{points[k], cmi(s, {"A"}, {"E1", "E2"}, {"S"}), cmi(s, {"A"}, {"E1"}, {"S"}),
                              mutual_information(s, {"A"}, {"S"})};
      if (sc.with_discord) {
        OptimizerConfig o = optimizer(cfg);
        o.seed = substream_seed(cfg.seed, k);
        const QuantumPart r = big_r(s, {"A"}, {"E1"}, {"S"}, o);
        row.push_back(r.classical.value);
        row.push_back(r.value);
      }
      if (k > 0 && row[1] < rows.back()[1] - 1e-12) monotone = false;
      rows.push_back(std::move(row));
    }
    report["monotone_i_a_e1e2_s"] = monotone;
    report["bound_flags"] = {{"c_a_e1_s", "lower_bound"}, {"r_a_e1_s", "upper_bound"}};
  } else if (sc.param == "t") {
    if (sc.scenario.empty()) throw UsageError("--scenario is required for time scans");
    const Scenario scen = named_or_file_scenario(sc.scenario);
    const TrajectoryReport tr = trajectory(scen, points, cfg.threads);
    cols = {"t", "i_as", "i_ae_given_s", "i_a_se", "decomposition_residual", "capacity_residual", "backflow"};
    for (std::size_t k = 0; k < points.size(); ++k)
      rows.push_back({points[k], tr.i_as[k], tr.i_ae_given_s[k], tr.i_a_se[k], tr.decomposition_residuals[k],
                      tr.capacity_residuals[k], k > 0 && tr.backflow[k - 1] ? 1.0 : 0.0});
    Json intervals = Json::array();
    for (std::size_t k = 0; k + 1 < points.size(); ++k)
      if (tr.backflow[k]) intervals.push_back({points[k], points[k + 1]});
    report["scenario"] = scen.family_name;
    report["backflow_intervals"] = intervals;
    report["bound_holds"] = tr.bound_holds();
  } else {
    throw UsageError("--param must be u or t");
  }
  report["rows"] = table_json(cols, rows);
  emit(cfg, report, table_csv(cols, rows));
  return kOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, std::size_t trials) {
  using Runner = SuiteReport (*)(const SuiteOptions&);
  const std::vector<std::pair<std::string, std::vector<Runner>>> known{
      {"example", {example_suite, example_discord_suite}},
      {"identities", {identity_suite}},
      {"properties", {property_suite}},
      {"broadcast", {broadcast_suite}},
      {"recovery", {recovery_suite}},
      {"monogamy", {koashi_winter_suite, generalized_monogamy_suite}},
      {"discord-oracle", {discord_oracle_suite}},
      {"rex", {rex_suite}},
  };
  std::vector<Runner> chosen;
  for (const auto& [name, runners] : known)
    if (suite == "all" || suite == name) chosen.insert(chosen.end(), runners.begin(), runners.end());
  if (chosen.empty()) throw UsageError("unknown suite '" + suite + "'");

  SuiteOptions opts;
  opts.trials = trials;
  opts.seed = cfg.seed;
  opts.optimizer = optimizer(cfg);

  Json report = header(cfg, "verify");
  report["suite"] = suite;
  report["trials"] = trials;
  Json checks = Json::array();
  std::string csv = "suite,check,passed,measured,tolerance\n";
  bool ok = true;
  for (const Runner run : chosen) {
    const SuiteReport rep = run(opts);
    for (const auto& c : rep.checks) {
      ok = ok && c.passed;
      std::cerr << (c.passed ? "PASS " : "FAIL ") << rep.suite << ": " << c.name << "  measured " << fmt12(c.measured)
                << " tol " << fmt12(c.tolerance) << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
      checks.push_back({{"suite", rep.suite}, {"check", c.name}, {"passed", c.passed}, {"measured", c.measured},
                        {"tolerance", c.tolerance}, {"detail", c.detail}});
      csv += rep.suite + ",\"" + c.name + "\"," + (c.passed ? "1" : "0") + "," + fmt12(c.measured) + "," +
             fmt12(c.tolerance) + "\n";
    }
  }
  report["checks"] = checks;
  report["passed"] = ok;
  emit(cfg, report, csv);
  return ok ? kOk : kFailed;
}

int cmd_example(const RunConfig& cfg, const std::string& which, double u, const std::string& path) {
  if (which != "paper") throw UsageError("unknown example '" + which + "' (expected 'paper')");
  const Json state = state_to_json(paper_example(u));
  if (path.empty()) {
    RunConfig c = cfg;
    c.format = "json";
    emit(c, state, "");
  } else {
    write_text_file(path, state.dump(2) + "\n");
  }
  return kOk;
}

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::NotDensityMatrix:
    case ErrorKind::NotHermitian:
    case ErrorKind::BadProbabilities:
      return kInvalidState;
    default:
      return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional mutual information and its classical, classical-quantum and quantum parts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(QCMI_VERSION));

  RunConfig cfg;
  auto common = [&](CLI::App* sub, bool state) {
    if (state) sub->add_option("--state", cfg.state_path, "state JSON file");
    sub->add_option("--x", cfg.x, "labels of the first party")->delimiter(',');
    sub->add_option("--y", cfg.y, "labels of the second party (default: the rest)")->delimiter(',');
    sub->add_option("--given", cfg.given, "conditioning labels")->delimiter(',');
    sub->add_option("--restarts", cfg.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
    sub->add_option("--max-evals", cfg.max_evals, "evaluations per restart")->check(CLI::PositiveNumber);
    sub->add_option("--tol", cfg.tol, "simplex convergence tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--ext-dim", cfg.ext_dim, "extension dimension for rex")->check(CLI::Range(1, 4));
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--output", cfg.output, "write the report here instead of stdout");
    sub->add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* info = app.add_subcommand("info", "entropies, I(x:z), I(x:y|z) and the identity residuals");
  common(info, true);
  auto* disc = app.add_subcommand("discord", "C(x;y|z) and R(x;y|z) with the optimal measurement");
  common(disc, true);
  auto* rex = app.add_subcommand("rex", "R_ex(x;y|z) by extension search");
  common(rex, true);

  ScanConfig sc;
  auto* scan = app.add_subcommand("scan", "sweep the worked example over u or a scenario over time");
  common(scan, false);
  scan->add_option("--param", sc.param, "u (worked example) or t (scenario time)")->check(CLI::IsMember({"u", "t"}));
  scan->add_option("--from", sc.from, "grid start");
  scan->add_option("--to", sc.to, "grid end");
  scan->add_option("--steps", sc.steps, "number of grid points");
  scan->add_option("--scenario", sc.scenario, "scenario JSON file or partial_swap|dephasing|paper_example");
  scan->add_flag("--discord", sc.with_discord, "add C and R for E1 to u scans");

  std::string suite;
  std::size_t trials = 0;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  common(verify, false);
  verify->add_option("suite", suite, "example|identities|properties|broadcast|recovery|monogamy|discord-oracle|rex|all")
      ->required();
  verify->add_option("--trials", trials, "trials per family (0: suite default)");

  std::string which, emit_path;
  double u = 1.0;
  auto* example = app.add_subcommand("example", "write a worked-example state");
  common(example, false);
  example->add_option("name", which, "example name (paper)")->required();
  example->add_option("--u", u, "mixing parameter in [0, 1]");
  example->add_option("--emit", emit_path, "state file to write (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*info) return cmd_info(cfg);
    if (*disc) return cmd_discord(cfg);
    if (*rex) return cmd_rex(cfg);
    if (*scan) return cmd_scan(cfg, sc);
    if (*verify) return cmd_verify(cfg, suite, trials);
    if (*example) return cmd_example(cfg, which, u, emit_path);
  } catch (const UsageError& e) {
    std::cerr << "qcmi: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "qcmi: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "qcmi: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
