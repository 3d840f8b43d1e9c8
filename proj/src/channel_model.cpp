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

#include "uwjam/channel_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "uwjam/errors.hpp"
#include "uwjam/special_functions.hpp"

namespace uwjam {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double DbToLinear(double db) { return std::pow(10.0, 0.1 * db); }

double LogAddExp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double ParseDouble(std::string_view field, int line) {
  field = Trim(field);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ConfigError("PER table line " + std::to_string(line) + ": cannot parse '" +
                      std::string(field) + "' as a number");
  }
  return value;
}

}  // namespace

void AcousticEnvironment::validate() const {
  if (!(carrier_khz > 0.0)) throw std::domain_error("carrier frequency must be positive");
  if (!(bandwidth_hz > 0.0)) throw std::domain_error("bandwidth must be positive");
  if (!(spreading_exp >= 1.0 && spreading_exp <= 2.0)) {
    throw std::domain_error("spreading exponent must lie in [1, 2]");
  }
  if (!(shipping >= 0.0 && shipping <= 1.0)) {
    throw std::domain_error("shipping factor must lie in [0, 1]");
  }
  if (!(wind_speed >= 0.0)) throw std::domain_error("wind speed must be non-negative");
}

void RsCode::validate() const {
  if (sym_bits < 1 || sym_bits > 16) throw std::domain_error("RS symbol size must be 1..16 bits");
  if (k < 1 || n <= k) throw std::domain_error("RS code needs 1 <= k < n");
  if (n >= (1 << sym_bits)) throw std::domain_error("RS length must be below 2^sym_bits");
}

double LinkBudget::sinr(double bandwidth_hz) const {
  return eb * packet_bits / slot_duration_s / ((n0 + j0) * bandwidth_hz);
}

double absorption_db_per_km(double freq_khz) {
  if (!(freq_khz > 0.0)) throw std::domain_error("absorption: frequency must be positive");
  const double f2 = freq_khz * freq_khz;
  return 0.11 * f2 / (1.0 + f2) + 44.0 * f2 / (4100.0 + f2) + 2.75e-4 * f2 + 0.003;
}

double path_loss_db(double distance_m, const AcousticEnvironment& env) {
  if (!(distance_m > 0.0)) throw std::domain_error("path loss: distance must be positive");
  return 10.0 * env.spreading_exp * std::log10(distance_m) +
         distance_m / 1000.0 * absorption_db_per_km(env.carrier_khz);
}

double channel_gain(double distance_m, const AcousticEnvironment& env) {
  return DbToLinear(-path_loss_db(distance_m, env));
}

double noise_psd(const AcousticEnvironment& env) {
  env.validate();
  const double f = env.carrier_khz;
  const double log_f = std::log10(f);
  const double turbulence = 17.0 - 30.0 * log_f;
  const double shipping =
      40.0 + 20.0 * (env.shipping - 0.5) + 26.0 * log_f - 60.0 * std::log10(f + 0.03);
  const double wind =
      50.0 + 7.5 * std::sqrt(env.wind_speed) + 20.0 * log_f - 40.0 * std::log10(f + 0.4);
  const double thermal = -15.0 + 20.0 * log_f;
  return DbToLinear(turbulence) + DbToLinear(shipping) + DbToLinear(wind) + DbToLinear(thermal);
}

double noise_psd_db(const AcousticEnvironment& env) { return 10.0 * std::log10(noise_psd(env)); }

double css_bit_error(double ebn0, double j0n0) {
  if (!(ebn0 >= 0.0) || !(j0n0 >= 0.0)) {
    throw std::domain_error("css_bit_error: ratios must be non-negative");
  }
  const double gamma = ebn0 / (1.0 + j0n0);
  if (gamma == 0.0) return 0.5;
  const double root_half = std::sqrt(0.5);
  const double a = std::sqrt(2.0 * gamma * (1.0 - root_half));
  const double b = std::sqrt(2.0 * gamma * (1.0 + root_half));
  // Both terms carry a factor exp(-(b - a)^2 / 2); beyond this the result
  // is below the smallest subnormal.
  const double log_envelope = -0.5 * (b - a) * (b - a);
  if (log_envelope < -760.0) return 0.0;
  // exp(-(a^2 + b^2)/2) I_0(ab) == exp(-(b - a)^2 / 2) * I0e(ab)
  const double p = marcum_q1(a, b) - 0.5 * std::exp(log_envelope) * bessel_i0e(a * b);
  return std::clamp(p, 0.0, 0.5);
}

double per_uncoded(double p_bit, int packet_bits) {
  if (!(p_bit >= 0.0 && p_bit <= 1.0)) throw std::domain_error("per_uncoded: p_bit outside [0, 1]");
  if (packet_bits < 1) throw std::domain_error("per_uncoded: packet_bits must be >= 1");
  if (p_bit == 1.0) return 1.0;
  return -std::expm1(packet_bits * std::log1p(-p_bit));
}

double per_coded(double p_bit, const RsCode& code) {
  if (!(p_bit >= 0.0 && p_bit <= 1.0)) throw std::domain_error("per_coded: p_bit outside [0, 1]");
  code.validate();
  if (p_bit == 0.0) return 0.0;
  if (p_bit == 1.0) return 1.0;
  const double p_sym = -std::expm1(code.sym_bits * std::log1p(-p_bit));
  if (p_sym >= 1.0) return 1.0;
  const double log_p = std::log(p_sym);
  const double log_q = std::log1p(-p_sym);
  double log_sum = kNegInf;
  for (int i = code.t_corr() + 1; i <= code.n; ++i) {
    log_sum = LogAddExp(log_sum, log_binomial(code.n, i) + i * log_p + (code.n - i) * log_q);
  }
  return std::clamp(std::exp(log_sum), 0.0, 1.0);
}

double per_coded_direct(double p_bit, const RsCode& code) {
  code.validate();
  const double p_sym = 1.0 - std::pow(1.0 - p_bit, code.sym_bits);
  double sum = 0.0;
  double binom = 1.0;  // C(n, i), built incrementally
  for (int i = 0; i <= code.n; ++i) {
    if (i > 0) binom = binom * (code.n - i + 1) / i;
    if (i > code.t_corr()) {
      sum += binom * std::pow(p_sym, i) * std::pow(1.0 - p_sym, code.n - i);
    }
  }
  return sum;
}

void EmpiricalPerTable::validate() const {
  if (rows.empty()) throw ConfigError("empirical PER table is empty");
  if (!(per_clear >= 0.0 && per_clear <= 1.0)) {
    throw ConfigError("empirical per_clear must lie in [0, 1]");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!(rows[i].per_blocked >= 0.0 && rows[i].per_blocked <= 1.0)) {
      throw ConfigError("empirical PER table row " + std::to_string(i + 1) +
                        ": probability outside [0, 1]");
    }
    if (i > 0 && !(rows[i].distance_m > rows[i - 1].distance_m)) {
      throw ConfigError("empirical PER table row " + std::to_string(i + 1) +
                        ": distances must be strictly increasing");
    }
  }
}

double EmpiricalPerTable::per_blocked_at(double distance_m) const {
  if (rows.empty()) throw ConfigError("empirical PER table is empty");
  if (distance_m <= rows.front().distance_m) return rows.front().per_blocked;
  if (distance_m >= rows.back().distance_m) return rows.back().per_blocked;
  const auto upper = std::upper_bound(rows.begin(), rows.end(), distance_m,
                                      [](double d, const Row& row) { return d < row.distance_m; });
  const Row& hi = *upper;
  const Row& lo = *(upper - 1);
  if (distance_m == lo.distance_m) return lo.per_blocked;
  const double w = (distance_m - lo.distance_m) / (hi.distance_m - lo.distance_m);
  return lo.per_blocked + w * (hi.per_blocked - lo.per_blocked);
}

EmpiricalPerTable EmpiricalPerTable::from_csv(std::string_view text, double per_clear) {
  EmpiricalPerTable table;
  table.per_clear = per_clear;
  bool header_seen = false;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw ConfigError("PER table line " + std::to_string(line_no) +
                        ": expected exactly two comma-separated fields");
    }
    if (!header_seen) {
      if (Trim(line.substr(0, comma)) != "distance_m" ||
          Trim(line.substr(comma + 1)) != "per_blocked") {
        throw ConfigError("PER table line " + std::to_string(line_no) +
                          ": header must be 'distance_m,per_blocked'");
      }
      header_seen = true;
      continue;
    }
    table.rows.push_back({ParseDouble(line.substr(0, comma), line_no),
                          ParseDouble(line.substr(comma + 1), line_no)});
  }
  table.validate();
  return table;
}

EmpiricalPerTable EmpiricalPerTable::load_csv(const std::string& path, double per_clear) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open PER table '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_csv(buffer.str(), per_clear);
}

std::string to_string(PerMode mode) {
  switch (mode) {
    case PerMode::kUncoded:
      return "uncoded";
    case PerMode::kCoded:
      return "coded";
    case PerMode::kEmpirical:
      return "empirical";
  }
  return "unknown";
}

PerMode per_mode_from_string(std::string_view name) {
  if (name == "uncoded") return PerMode::kUncoded;
  if (name == "coded") return PerMode::kCoded;
  if (name == "empirical") return PerMode::kEmpirical;
  throw ConfigError("unknown PER mode '" + std::string(name) +
                    "' (expected uncoded, coded or empirical)");
}

void LinkSettings::validate() const {
  if (!(d_tr_m > 0.0)) throw ConfigError("d_tr must be positive");
  if (!(bitrate_bps > 0.0)) throw ConfigError("bitrate must be positive");
  if (packet_bits < 1) throw ConfigError("packet_bits must be >= 1");
  if (!std::isfinite(tx_power_db) || !std::isfinite(jam_power_db)) {
    throw ConfigError("transmit powers must be finite");
  }
  rs.validate();
}

LinkBudget link_budget(std::optional<double> d_jr_m, const LinkSettings& link,
                       const AcousticEnvironment& env) {
  env.validate();
  LinkBudget budget;
  budget.tx_power_db = link.tx_power_db;
  budget.distance_m = link.d_tr_m;
  budget.gain = channel_gain(link.d_tr_m, env);
  budget.packet_bits = link.packet_bits;
  budget.slot_duration_s = link.packet_bits / link.bitrate_bps;
  budget.eb =
      budget.slot_duration_s / link.packet_bits * DbToLinear(link.tx_power_db) * budget.gain;
  budget.n0 = noise_psd(env);
  if (d_jr_m) {
    if (!(*d_jr_m > 0.0)) throw std::domain_error("jammer distance must be positive");
    budget.j0 = DbToLinear(link.jam_power_db) * channel_gain(*d_jr_m, env) / env.bandwidth_hz;
  }
  return budget;
}

ErrorModelProvider::ErrorModelProvider(AcousticEnvironment env, LinkSettings link, PerMode mode,
                                       std::optional<EmpiricalPerTable> table)
    : env_(env), link_(link), mode_(mode), table_(std::move(table)) {
  env_.validate();
  link_.validate();
  if (mode_ == PerMode::kEmpirical) {
    if (!table_) throw ConfigError("empirical PER mode requires a PER table");
    table_->validate();
  }
}

double ErrorModelProvider::packet_error(double p_bit) const {
  return mode_ == PerMode::kCoded ? per_coded(p_bit, link_.rs)
                                  : per_uncoded(p_bit, link_.packet_bits);
}

ErrorModel ErrorModelProvider::at(double d_jr_m) const {
  if (!(d_jr_m > 0.0)) throw std::domain_error("jammer distance must be positive");
  if (mode_ == PerMode::kEmpirical) {
    return {table_->per_clear, table_->per_blocked_at(d_jr_m)};
  }
  const LinkBudget clear = link_budget(std::nullopt, link_, env_);
  const LinkBudget jammed = link_budget(d_jr_m, link_, env_);
  return {packet_error(css_bit_error(clear.ebn0(), 0.0)),
          packet_error(css_bit_error(jammed.ebn0(), jammed.j0n0()))};
}

}  // namespace uwjam
