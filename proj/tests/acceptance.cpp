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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "uwjam/channel_model.hpp"
#include "uwjam/game_solver.hpp"
#include "uwjam/matrix_game.hpp"
#include "uwjam/performance_analysis.hpp"
#include "uwjam/scenario.hpp"
#include "uwjam/strategy_io.hpp"
#include "uwjam/subgame.hpp"

using namespace uwjam;

namespace {

constexpr std::uint64_t kSeed = 20191017;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

// Solved tables shared between criteria, keyed by (distance, alpha).
class Tables {
 public:
  const StrategyTable& get(double distance, double alpha) {
    const auto key = std::make_pair(distance, alpha);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      ScenarioConfig c = scenario_;
      c.alpha = alpha;
      it = cache_.emplace(key, solve_full_game(c.game_config(provider_.at(distance)))).first;
    }
    return it->second;
  }
  const ScenarioConfig& scenario() const { return scenario_; }
  const ErrorModelProvider& provider() const { return provider_; }

 private:
  ScenarioConfig scenario_{};
  ErrorModelProvider provider_ = scenario_.error_model_provider();
  std::map<std::pair<double, double>, StrategyTable> cache_;
};

StrategyTable ForcedTable(const GameConfig& c, int n_t) {
  StrategyTable t(c);
  for (int b_t = c.k_info; b_t <= c.b_t0; ++b_t) {
    for (int b_j = 0; b_j <= c.b_j0; ++b_j) {
      StateEntry& e = t.at({b_t, b_j});
      e.strategy_t = MixedStrategy{std::min(n_t, b_t), {1.0}};
      e.strategy_j = MixedStrategy{0, {1.0}};
    }
  }
  return t;
}

Outcome LifetimeBounds(Tables& tables) {
  Outcome out;
  double lo = 1e9, hi = -1e9;
  int checked = 0;
  for (double alpha : {0.2, 0.4, 0.8}) {
    for (double d : tables.scenario().sweep_m) {
      const StrategyTable& t = tables.get(d, alpha);
      const double l = expected_lifetime(t, {t.config().b_t0, t.config().b_j0});
      lo = std::min(lo, l);
      hi = std::max(hi, l);
      ++checked;
      if (!(l >= 25.0 && l <= 50.0)) {
        out.pass = false;
        out.detail += Fmt(" out-of-bounds d=%g alpha=%g L=%.6f;", d, alpha, l);
      }
    }
  }
  GameConfig c = tables.get(50.0, 0.4).config();
  const double l_k = expected_lifetime(ForcedTable(c, c.k_info), {c.b_t0, c.b_j0});
  const double l_2k = expected_lifetime(ForcedTable(c, 2 * c.k_info), {c.b_t0, c.b_j0});
  if (l_k != 50.0 || l_2k != 25.0) out.pass = false;
  out.detail = Fmt("%d solves, lifetime in [%.4f, %.4f]; forced n_t=K -> %g, n_t=2K -> %g", checked,
                   lo, hi, l_k, l_2k) +
               out.detail;
  return out;
}

Outcome ThreeRegions(Tables& tables) {
  Outcome out;
  const ErrorModelProvider& p = tables.provider();
  double prev = 2.0;
  double crossing = -1.0;
  for (double d = 20.0; d <= 180.0; d += 0.5) {
    const double pb = p.at(d).p_blocked;
    if (pb > prev) {
      out.pass = false;
      out.detail += Fmt(" increase at %g m;", d);
    }
    if (crossing < 0 && prev >= 0.5 && pb < 0.5) crossing = d;
    prev = pb;
  }
  const double at20 = p.at(20.0).p_blocked, at120 = p.at(120.0).p_blocked;
  out.pass = out.pass && at20 >= 0.9 && at120 <= 0.1 && crossing > 30.0 && crossing < 100.0;
  out.detail =
      Fmt("p_eB(20 m)=%.6f, p_eB(120 m)=%.3g, 0.5 crossed near %.1f m, monotone on 0.5 m grid",
          at20, at120, crossing) +
      out.detail;
  return out;
}

Outcome FarJammer(Tables& tables) {
  const StrategyTable& t = tables.get(150.0, 0.4);
  const GameState init{t.config().b_t0, t.config().b_j0};
  const double mass_k = t.at(init).strategy_t.prob(t.config().k_info);
  const PerformanceEvaluator eval(t);
  const double ps = eval.success_probability(init), l = eval.expected_lifetime(init);
  return {mass_k >= 0.99 && ps >= 0.98 && l >= 49.0,
          Fmt("P(n_t=K)=%.6f, P_S=%.6f, lifetime=%.4f", mass_k, ps, l)};
}

Outcome NearJammer(Tables& tables) {
  const StrategyTable& t = tables.get(20.0, 0.4);
  const ErrorModel& m = t.config().error_model;
  const double ps = success_probability(t, {t.config().b_t0, t.config().b_j0});
  return {m.p_clear == 0.0 && ps < 0.10,
          Fmt("p_eC=%g, p_eB=%.6f, P_S=%.6f", m.p_clear, m.p_blocked, ps)};
}

Outcome EquilibriumCheck(Tables& tables) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  double worst_gap = 0.0, worst_value = 0.0;
  std::size_t states = 0;
  for (double d : {20.0, 50.0, 70.0}) {
    ScenarioConfig sc = tables.scenario();
    sc.k_info = 2;
    sc.b_t0 = 20;
    sc.b_j0 = 20;
    sc.horizon = 5;
    const GameConfig c = sc.game_config(tables.provider().at(d));
    const StrategyTable t = solve_full_game(c);
    const SubgameTable sub(c.subgame_params());
    auto payoff = [&](int n_t, int n_j) { return sub.payoff(n_t, n_j); };
    const auto v = oracle::horizon_values(c.k_info, c.b_t0, c.b_j0, 5, c.discount, payoff);
    t.for_each_state([&](GameState s, const StateEntry& e) {
      const auto rows = oracle::stage_matrix(c.k_info, s.b_t, s.b_j, 5, c.discount, payoff, v);
      PayoffMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
      for (int r = 0; r < m.rows(); ++r) {
        for (int col = 0; col < m.cols(); ++col) m(r, col) = rows[r][col];
      }
      worst_gap = std::max(worst_gap, best_response_gap(m, e.strategy_t.probs, e.strategy_j.probs));
      worst_value = std::max(worst_value, std::abs(e.value_t - v[5][s.b_t][s.b_j]));
      ++states;
    });
  }
  const double secs = Seconds(start);
  out.pass = worst_gap <= 1e-6 && worst_value < 1e-8 && secs < 60.0;
  out.detail =
      Fmt("%zu states over 3 distances, max deviation gain %.2e, max |value - oracle| %.2e, %.1f s",
          states, worst_gap, worst_value, secs);
  return out;
}

Outcome SimulationAgreement(Tables& tables) {
  Outcome out;
  for (double d : {20.0, 50.0, 60.0, 70.0, 150.0}) {
    const StrategyTable& t = tables.get(d, 0.4);
    const PerformanceEvaluator eval(t);
    const GameState init{t.config().b_t0, t.config().b_j0};
    SimulationOptions o;
    o.runs = 10000;
    o.seed = kSeed;
    const SimulationResult r = simulate(t, o);
    // The 95 % half-width is z standard errors; 3 sigma is 3 of them.
    const double l_tol = 3.0 * r.lifetime_ci / o.confidence_z;
    const double p_tol = 3.0 * r.success_prob_ci / o.confidence_z;
    const double l = eval.expected_lifetime(init), p = eval.success_probability(init);
    const bool ok = std::abs(r.mean_lifetime - l) <= l_tol && std::abs(r.success_prob - p) <= p_tol;
    out.pass = out.pass && ok;
    out.detail += Fmt(" d=%g: L %.4f vs %.4f+-%.4f, P_S %.5f vs %.5f+-%.5f%s;", d, l,
                      r.mean_lifetime, l_tol, p, r.success_prob, p_tol, ok ? "" : " MISMATCH");
  }
  out.detail = "10^4 runs, seed " + std::to_string(kSeed) + "," + out.detail;
  return out;
}

Outcome Combinatorics() {
  double worst = 0.0;
  int pairs = 0;
  for (int k = 2; k <= 4; ++k) {
    for (int n_t = k; n_t <= 2 * k; ++n_t) {
      for (int n_j = 0; n_j <= 2 * k - 1; ++n_j) {
        const auto got = blocked_count_distribution(n_t, n_j, k);
        const auto want = oracle::blocked_count_enumeration(n_t, n_j, k);
        for (std::size_t i = 0; i < std::max(got.size(), want.size()); ++i) {
          const double g = i < got.size() ? got[i] : 0.0;
          const double w = i < want.size() ? want[i] : 0.0;
          worst = std::max(worst, std::abs(g - w));
        }
        ++pairs;
      }
    }
  }
  return {worst < 1e-12, Fmt("%d (n_t, n_j) pairs at K=2..4, max deviation %.2e", pairs, worst)};
}

bool SameRecords(const SimulationResult& a, const SimulationResult& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    if (a.records[i].lifetime != b.records[i].lifetime ||
        a.records[i].successes != b.records[i].successes ||
        a.records[i].weighted_success != b.records[i].weighted_success) {
      return false;
    }
  }
  return a.mean_lifetime == b.mean_lifetime && a.lifetime_ci == b.lifetime_ci &&
         a.success_prob == b.success_prob && a.success_prob_ci == b.success_prob_ci &&
         a.success_rate == b.success_rate && a.success_ci == b.success_ci;
}

Outcome Sensitivity(Tables& tables) {
  Outcome out;
  for (double d : {20.0, 50.0, 60.0, 70.0, 150.0}) {
    const StrategyTable& t = tables.get(d, 0.4);
    SimulationOptions o;
    o.runs = 10000;
    o.seed = kSeed;
    const SimulationResult baseline = simulate(t, o);
    const SimulationResult s0 = sensitivity_sweep(t, {0.0, o.runs}, kSeed);
    bool ok = SameRecords(baseline, s0);
    std::string lifetimes = Fmt("%.4f", s0.mean_lifetime);
    for (double sigma : {0.05, 0.1}) {
      const SimulationResult s = sensitivity_sweep(t, {sigma, o.runs}, kSeed);
      ok = ok && s.mean_lifetime == s0.mean_lifetime;
      for (std::size_t i = 0; ok && i < s.records.size(); ++i) {
        ok = s.records[i].lifetime == s0.records[i].lifetime;
      }
      lifetimes += Fmt("/%.4f", s.mean_lifetime);
    }
    out.pass = out.pass && ok;
    out.detail += Fmt(" d=%g L=%s%s;", d, lifetimes.c_str(), ok ? "" : " DIFFER");
  }
  out.detail = "sigma 0/0.05/0.1, sigma=0 bit-identical to baseline:" + out.detail;
  return out;
}

Outcome SolverScale(Tables& tables) {
  const GameConfig c = tables.scenario().game_config(tables.provider().at(50.0));
  auto start = std::chrono::steady_clock::now();
  const StrategyTable a = solve_full_game(c);
  const double first = Seconds(start);
  start = std::chrono::steady_clock::now();
  const StrategyTable b = solve_full_game(c);
  const double second = Seconds(start);

  const auto dir = std::filesystem::temp_directory_path();
  const std::string pa = (dir / "uwjam_acceptance_a.json").string();
  const std::string pb = (dir / "uwjam_acceptance_b.json").string();
  export_table(a, pa);
  export_table(b, pb);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const std::string bytes_a = slurp(pa), bytes_b = slurp(pb);
  std::filesystem::remove(pa);
  std::filesystem::remove(pb);
  const bool same = !bytes_a.empty() && bytes_a == bytes_b;
  return {same && first < 600.0 && second < 600.0,
          Fmt("%zu states, %.2f s and %.2f s, %zu-byte tables %s", a.state_count(), first, second,
              bytes_a.size(), same ? "identical" : "DIFFER")};
}

}  // namespace

int main() {
  Tables tables;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"lifetime bounds", [&] { return LifetimeBounds(tables); }},
      {"three-region PER structure", [&] { return ThreeRegions(tables); }},
      {"far-jammer equilibrium", [&] { return FarJammer(tables); }},
      {"near-jammer suppression", [&] { return NearJammer(tables); }},
      {"equilibrium verification", [&] { return EquilibriumCheck(tables); }},
      {"analytic/simulation agreement", [&] { return SimulationAgreement(tables); }},
      {"combinatorics oracle", [] { return Combinatorics(); }},
      {"sensitivity regression", [&] { return Sensitivity(tables); }},
      {"solver scale", [&] { return SolverScale(tables); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("criterion %zu %s: %s  (%s)\n", i + 1, criteria[i].first.c_str(),
                o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
