// Copyright 2026 The uwjam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: PER sweeps, offline solving, analytic evaluation,
// Monte Carlo simulation, sensitivity and model-mismatch experiments.

#include <CLI11.hpp>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "uwjam/channel_model.hpp"
#include "uwjam/errors.hpp"
#include "uwjam/game_solver.hpp"
#include "uwjam/performance_analysis.hpp"
#include "uwjam/scenario.hpp"
#include "uwjam/strategy_io.hpp"

namespace {

using nlohmann::json;
using namespace uwjam;

constexpr std::uint64_t kDefaultSeed = 20191017;

enum ExitCode { kOk = 0, kConfigError = 2, kIoError = 3, kConsistencyError = 4 };

struct Options {
  std::string config_path;
  std::string out_path;
  std::string table_path;
  std::string per_mode;
  std::optional<double> distance;
  std::optional<std::uint64_t> seed;
  int runs = 10000;
  std::vector<double> sigmas{0.0, 0.05, 0.1};
  std::string solve_model;
  std::string true_model;
  bool dummy_jammer = false;
  bool with_horizons = false;
};

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string GammaLabel(const std::optional<int>& horizon) {
  return horizon ? std::to_string(*horizon) : "inf";
}

ScenarioConfig LoadConfig(const Options& o) {
  ScenarioConfig c = o.config_path.empty() ? ScenarioConfig{} : load_scenario(o.config_path);
  if (!o.per_mode.empty()) c.per_mode = per_mode_from_string(o.per_mode);
  if (o.distance) c.distance_m = *o.distance;
  c.validate();
  return c;
}

std::uint64_t Seed(const Options& o) {
  if (o.seed) return *o.seed;
  std::cerr << "no --seed given; using " << kDefaultSeed << "\n";
  return kDefaultSeed;
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::trunc);
      if (!*file_) throw IoError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close() {
    stream().flush();
    if (!stream()) throw IoError("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void WriteMetadata(std::ostream& out, const std::string& command, const ScenarioConfig& c,
                   const std::vector<std::string>& extra = {}) {
  out << "# uwjam " << command << "\n";
  for (const std::string& line : extra) out << "# " << line << "\n";
  out << "# config: " << to_json(c).dump() << "\n";
}

const char* kReportHeader =
    "distance_m,alpha,gamma,lifetime,lifetime_ci,psucc,psucc_ci,sigma,solve_model,true_model,"
    "psucc_subgame,pooled_rate,pooled_rate_ci,packets_per_subgame\n";

struct ReportRow {
  double distance = 0.0;
  double alpha = 0.0;
  std::string gamma;
  double lifetime = 0.0;
  double lifetime_ci = 0.0;
  double psucc = 0.0;
  double psucc_ci = 0.0;
  double sigma = 0.0;
  std::string solve_model;
  std::string true_model;
  double psucc_subgame = 0.0;
  double pooled_rate = 0.0;
  double pooled_rate_ci = 0.0;
  double packets_per_subgame = 0.0;
};

void WriteRow(std::ostream& out, const ReportRow& r) {
  out << Num(r.distance) << ',' << Num(r.alpha) << ',' << r.gamma << ',' << Num(r.lifetime) << ','
      << Num(r.lifetime_ci) << ',' << Num(r.psucc) << ',' << Num(r.psucc_ci) << ',' << Num(r.sigma)
      << ',' << r.solve_model << ',' << r.true_model << ',' << Num(r.psucc_subgame) << ','
      << Num(r.pooled_rate) << ',' << Num(r.pooled_rate_ci) << ',' << Num(r.packets_per_subgame)
      << '\n';
}

ReportRow AnalyticRow(double distance, const ScenarioConfig& c, const AnalysisReport& report,
                      const std::string& solve_model, const std::string& true_model) {
  ReportRow row;
  row.distance = distance;
  row.alpha = c.alpha;
  row.gamma = GammaLabel(c.horizon);
  row.lifetime = report.lifetime;
  row.psucc = report.success_prob;
  row.solve_model = solve_model;
  row.true_model = true_model;
  row.psucc_subgame = report.subgame_success;
  row.pooled_rate = report.pooled_success_rate;
  row.packets_per_subgame = report.packets_per_subgame;
  return row;
}

ReportRow SimulatedRow(double distance, const ScenarioConfig& c, const StrategyTable& table,
                       const SimulationResult& sim) {
  const AnalysisReport report = analyze(table);
  ReportRow row = AnalyticRow(distance, c, report, to_string(c.per_mode), to_string(c.per_mode));
  row.lifetime = sim.mean_lifetime;
  row.lifetime_ci = sim.lifetime_ci;
  row.psucc = sim.success_prob;
  row.psucc_ci = sim.success_prob_ci;
  row.sigma = sim.sigma;
  row.pooled_rate = sim.success_rate;
  row.pooled_rate_ci = sim.success_ci;
  return row;
}

StrategyTable SolveAt(const ScenarioConfig& c, const ErrorModelProvider& provider,
                      double distance) {
  return solve_full_game(c.game_config(provider.at(distance)));
}

json ScenarioEcho(ScenarioConfig c, double distance) {
  c.distance_m = distance;
  c.sweep_m = {distance};
  return to_json(c);
}

// Refuses tables whose embedded scenario differs from the effective config.
void CheckTableMatches(const TableDocument& doc, const ScenarioConfig& c) {
  if (doc.scenario.is_null()) {
    throw ConsistencyError(
        "strategy table carries no scenario echo; cannot verify it against the config");
  }
  const double distance = doc.scenario.at("distance_m").get<double>();
  const json expected = ScenarioEcho(c, distance).flatten();
  const json stored = doc.scenario.flatten();
  std::ostringstream diff;
  int differences = 0;
  for (const auto& [key, value] : expected.items()) {
    const auto it = stored.find(key);
    if (it == stored.end() || *it != value) {
      diff << "\n  " << key << ": table=" << (it == stored.end() ? "<missing>" : it->dump())
           << " config=" << value.dump();
      ++differences;
    }
  }
  const GameConfig game = c.game_config(c.error_model_provider().at(distance));
  if (differences == 0 && !(game == doc.table.config())) {
    diff << "\n  game config: table=" << to_json(doc.table.config()).dump()
         << " config=" << to_json(game).dump();
    ++differences;
  }
  if (differences > 0) {
    throw ConsistencyError("strategy table does not match the config (" +
                           std::to_string(differences) + " difference(s)):" + diff.str());
  }
}

struct TableAtDistance {
  double distance;
  StrategyTable table;
};

// The loaded table (after a consistency check) or one fresh solve per
// sweep distance. With a table, `c` is narrowed to the table's distance so
// the echoed config is the one actually evaluated.
std::vector<TableAtDistance> TablesFor(const Options& o, ScenarioConfig& c) {
  std::vector<TableAtDistance> out;
  if (!o.table_path.empty()) {
    TableDocument doc = load_table(o.table_path);
    CheckTableMatches(doc, c);
    const double distance = doc.scenario.at("distance_m").get<double>();
    c.distance_m = distance;
    c.sweep_m = {distance};
    out.push_back({distance, std::move(doc.table)});
    return out;
  }
  const ErrorModelProvider provider = c.error_model_provider();
  for (double d : c.sweep_m) out.push_back({d, SolveAt(c, provider, d)});
  return out;
}

int CmdPerSweep(const Options& o) {
  const ScenarioConfig c = LoadConfig(o);
  const ErrorModelProvider provider = c.error_model_provider();
  Output out(o.out_path);
  WriteMetadata(out.stream(), "per-sweep", c, {"per_mode: " + to_string(c.per_mode)});
  out.stream() << "distance_m,p_clear,p_blocked\n";
  for (double d : c.sweep_m) {
    const ErrorModel em = provider.at(d);
    out.stream() << Num(d) << ',' << Num(em.p_clear) << ',' << Num(em.p_blocked) << '\n';
  }
  out.close();
  return kOk;
}

int CmdSolve(const Options& o) {
  if (o.out_path.empty()) throw ConfigError("solve needs --out");
  const ScenarioConfig c = LoadConfig(o);
  const ErrorModelProvider provider = c.error_model_provider();
  const auto start = std::chrono::steady_clock::now();
  const StrategyTable table = SolveAt(c, provider, c.distance_m);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ExportOptions options;
  options.horizon_values = o.with_horizons;
  options.scenario = ScenarioEcho(c, c.distance_m);
  export_table(table, o.out_path, options);
  const GameState init{c.b_t0, c.b_j0};
  std::cout << "states: " << table.state_count() << "\n"
            << "wall_time_s: " << Num(seconds) << "\n"
            << "initial_value: "
            << (table.contains(init) ? Num(table.at(init).value_t) : std::string("0")) << "\n"
            << "table: " << o.out_path << "\n";
  return kOk;
}

int CmdEvaluate(const Options& o) {
  ScenarioConfig c = LoadConfig(o);
  const std::vector<TableAtDistance> tables = TablesFor(o, c);
  Output out(o.out_path);
  WriteMetadata(out.stream(), "evaluate", c);
  out.stream() << kReportHeader;
  for (const auto& [distance, table] : tables) {
    WriteRow(out.stream(), AnalyticRow(distance, c, analyze(table), to_string(c.per_mode),
                                       to_string(c.per_mode)));
  }
  out.close();
  return kOk;
}

int CmdSimulate(const Options& o) {
  ScenarioConfig c = LoadConfig(o);
  const std::uint64_t seed = Seed(o);
  const std::vector<TableAtDistance> tables = TablesFor(o, c);
  Output out(o.out_path);
  WriteMetadata(out.stream(), "simulate", c,
                {"seed: " + std::to_string(seed), "runs: " + std::to_string(o.runs)});
  out.stream() << kReportHeader;
  for (const auto& [distance, table] : tables) {
    SimulationOptions options;
    options.runs = o.runs;
    options.seed = seed;
    WriteRow(out.stream(), SimulatedRow(distance, c, table, simulate(table, options)));
  }
  out.close();
  return kOk;
}

int CmdSensitivity(const Options& o) {
  ScenarioConfig c = LoadConfig(o);
  const std::uint64_t seed = Seed(o);
  for (double s : o.sigmas) {
    if (!(s >= 0.0)) throw ConfigError("--sigma values must be non-negative");
  }
  const std::vector<TableAtDistance> tables = TablesFor(o, c);
  Output out(o.out_path);
  WriteMetadata(out.stream(), "sensitivity", c,
                {"seed: " + std::to_string(seed), "runs: " + std::to_string(o.runs)});
  out.stream() << kReportHeader;
  for (const auto& [distance, table] : tables) {
    for (double sigma : o.sigmas) {
      const SimulationResult sim = sensitivity_sweep(table, {sigma, o.runs}, seed);
      WriteRow(out.stream(), SimulatedRow(distance, c, table, sim));
    }
  }
  out.close();
  return kOk;
}

int CmdMismatch(const Options& o) {
  const ScenarioConfig c = LoadConfig(o);
  const PerMode solve_mode =
      o.solve_model.empty() ? c.per_mode : per_mode_from_string(o.solve_model);
  const PerMode true_mode = o.true_model.empty() ? c.per_mode : per_mode_from_string(o.true_model);
  const ErrorModelProvider solve_provider = c.error_model_provider(solve_mode);
  const ErrorModelProvider true_provider = c.error_model_provider(true_mode);
  std::optional<int> dummy;
  if (o.dummy_jammer) dummy = c.k_info + 1;

  Output out(o.out_path);
  WriteMetadata(out.stream(), "mismatch", c,
                {"solve_model: " + to_string(solve_mode), "true_model: " + to_string(true_mode),
                 dummy ? "jammer_policy: dummy n_j=" + std::to_string(*dummy)
                       : std::string("jammer_policy: equilibrium")});
  out.stream() << kReportHeader;
  const std::string solve_label = to_string(solve_mode) + (dummy ? "+dummy" : "");
  for (double d : c.sweep_m) {
    const AnalysisReport report =
        mismatch_evaluation(c.game_config({}), solve_provider.at(d), true_provider.at(d), dummy);
    WriteRow(out.stream(), AnalyticRow(d, c, report, solve_label, to_string(true_mode)));
  }
  out.close();
  return kOk;
}

int CmdInspectTable(const Options& o) {
  if (o.table_path.empty()) throw ConfigError("inspect-table needs --table");
  const TableDocument doc = load_table(o.table_path);
  const StrategyTable& table = doc.table;
  const GameConfig& c = table.config();
  json summary;
  summary["config"] = to_json(c);
  summary["scenario"] = doc.scenario;
  summary["state_count"] = table.state_count();
  summary["checksum_ok"] = true;
  summary["has_horizon_values"] = table.has_horizon_values();
  const GameState init{c.b_t0, c.b_j0};
  if (const StateEntry* e = table.find(init)) {
    summary["initial_state"] = {{"b_t", init.b_t},
                                {"b_j", init.b_j},
                                {"value_t", e->value_t},
                                {"strat_t", e->strategy_t.probs},
                                {"strat_j", e->strategy_j.probs},
                                {"first_n_t", e->strategy_t.first_action},
                                {"first_n_j", e->strategy_j.first_action}};
    const AnalysisReport report = analyze(table);
    summary["lifetime"] = report.lifetime;
    summary["psucc"] = report.success_prob;
  }
  Output out(o.out_path);
  out.stream() << summary.dump(2) << "\n";
  out.close();
  return kOk;
}

// Flat CSV lookup table for deployment on a node.
int CmdExportTable(const Options& o) {
  if (o.table_path.empty()) throw ConfigError("export-table needs --table");
  const TableDocument doc = load_table(o.table_path);
  const GameConfig& c = doc.table.config();
  Output out(o.out_path);
  out.stream() << "# uwjam export-table\n# config: " << to_json(c).dump() << "\n";
  out.stream() << "b_t,b_j,value_t";
  for (int n = c.k_info; n <= 2 * c.k_info; ++n) out.stream() << ",p_t" << n;
  for (int n = 0; n <= 2 * c.k_info - 1; ++n) out.stream() << ",p_j" << n;
  out.stream() << '\n';
  char buf[64];
  auto full = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  doc.table.for_each_state([&](GameState s, const StateEntry& e) {
    out.stream() << s.b_t << ',' << s.b_j << ',' << full(e.value_t);
    for (int n = c.k_info; n <= 2 * c.k_info; ++n)
      out.stream() << ',' << full(e.strategy_t.prob(n));
    for (int n = 0; n <= 2 * c.k_info - 1; ++n) out.stream() << ',' << full(e.strategy_j.prob(n));
    out.stream() << '\n';
  });
  out.close();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Equilibrium strategies and performance of energy-depleting underwater jamming games"};
  app.require_subcommand(1);
  Options o;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path,
                    "Scenario JSON (defaults to the model-based scenario)");
    sub->add_option("--per-mode", o.per_mode, "PER model: uncoded, coded or empirical");
    sub->add_option("--distance", o.distance,
                    "Jammer-receiver distance in m for single-table commands");
    sub->add_option("--out", o.out_path, "Output file (stdout when omitted)");
  };
  auto add_table = [&](CLI::App* sub) {
    sub->add_option("--table", o.table_path, "Strategy table produced by 'solve'");
  };
  auto add_sim = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--runs", o.runs, "Monte Carlo runs per row")->check(CLI::PositiveNumber);
  };

  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> commands;
  auto* per_sweep =
      app.add_subcommand("per-sweep", "Packet error probabilities over the distance sweep");
  add_config(per_sweep);
  commands.emplace_back(per_sweep, CmdPerSweep);

  auto* solve =
      app.add_subcommand("solve", "Solve the game at --distance and write the strategy table");
  add_config(solve);
  solve->add_flag("--with-horizons", o.with_horizons,
                  "Also store every intermediate horizon value");
  commands.emplace_back(solve, CmdSolve);

  auto* evaluate = app.add_subcommand("evaluate", "Analytic lifetime and success probability");
  add_config(evaluate);
  add_table(evaluate);
  commands.emplace_back(evaluate, CmdEvaluate);

  auto* sim = app.add_subcommand("simulate", "Monte Carlo games under the stored strategies");
  add_config(sim);
  add_table(sim);
  add_sim(sim);
  commands.emplace_back(sim, CmdSimulate);

  auto* sens =
      app.add_subcommand("sensitivity", "Simulation with Gaussian-perturbed error probabilities");
  add_config(sens);
  add_table(sens);
  add_sim(sens);
  sens->add_option("--sigma", o.sigmas, "Perturbation standard deviations")->delimiter(',');
  commands.emplace_back(sens, CmdSensitivity);

  auto* mismatch =
      app.add_subcommand("mismatch", "Solve with one PER model, evaluate with another");
  add_config(mismatch);
  mismatch->add_option("--solve-model", o.solve_model, "PER model the players solve with");
  mismatch->add_option("--true-model", o.true_model, "PER model used for evaluation");
  mismatch->add_flag("--dummy-jammer", o.dummy_jammer, "Jammer always jams K+1 slots");
  commands.emplace_back(mismatch, CmdMismatch);

  auto* inspect =
      app.add_subcommand("inspect-table", "Validate a strategy table and print a summary");
  add_table(inspect);
  inspect->add_option("--out", o.out_path, "Output file (stdout when omitted)");
  commands.emplace_back(inspect, CmdInspectTable);

  auto* exporter =
      app.add_subcommand("export-table", "Write a strategy table as a flat CSV lookup table");
  add_table(exporter);
  exporter->add_option("--out", o.out_path, "Output file (stdout when omitted)");
  commands.emplace_back(exporter, CmdExportTable);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    for (const auto& [sub, fn] : commands) {
      if (sub->parsed()) return fn(o);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency error: " << e.what() << "\n";
    return kConsistencyError;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  return kOk;
}
