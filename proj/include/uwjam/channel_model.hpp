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

#ifndef UWJAM_CHANNEL_MODEL_HPP_
#define UWJAM_CHANNEL_MODEL_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uwjam {

// Propagation and ambient-noise parameters. Frequencies in kHz for the
// empirical formulas, bandwidth in Hz.
struct AcousticEnvironment {
  double carrier_khz = 26.0;
  double bandwidth_hz = 16000.0;
  double spreading_exp = 1.75;
  double shipping = 1.0;    // s in [0, 1]
  double wind_speed = 3.0;  // m/s

  // Throws std::domain_error if any field is out of range.
  void validate() const;
  bool operator==(const AcousticEnvironment&) const = default;
};

// Reed-Solomon code over GF(2^sym_bits); corrects t_corr() symbol errors.
struct RsCode {
  int n = 127;
  int k = 78;
  int sym_bits = 7;

  int t_corr() const { return (n - k) / 2; }
  void validate() const;
  bool operator==(const RsCode&) const = default;
};

// Link-level quantities on one transmitter -> receiver path, in linear
// units: powers as intensity relative to 1 uPa^2 at 1 m, PSDs per Hz.
struct LinkBudget {
  double tx_power_db = 180.0;  // source level, dB re 1 uPa @ 1 m
  double distance_m = 0.0;
  double gain = 0.0;  // linear, (0, 1]
  int packet_bits = 512;
  double slot_duration_s = 0.512;
  double eb = 0.0;  // received energy per bit
  double n0 = 0.0;  // ambient noise PSD
  double j0 = 0.0;  // jammer PSD at the receiver

  double ebn0() const { return eb / n0; }
  double j0n0() const { return j0 / n0; }
  // E_b L / tau over (N_0 + J_0) B.
  double sinr(double bandwidth_hz) const;
};

// Thorp absorption in dB/km; freq_khz must be positive.
double absorption_db_per_km(double freq_khz);

// Path loss 10 k log10(d) + (d / 1000) a(f), in dB, with a 1 m reference.
double path_loss_db(double distance_m, const AcousticEnvironment& env);

// Linear power gain 1 / A(d, f). Strictly decreasing in distance.
double channel_gain(double distance_m, const AcousticEnvironment& env);

// Ambient noise PSD at the carrier (turbulence + shipping + wind + thermal),
// linear, uPa^2 / Hz.
double noise_psd(const AcousticEnvironment& env);
double noise_psd_db(const AcousticEnvironment& env);

// Bit error probability of CSS with DQPSK under Gaussian noise plus a
// jammer of PSD J_0. Depends on the two ratios only through
// ebn0 / (1 + j0n0). Clamped to [0, 0.5].
double css_bit_error(double ebn0, double j0n0);

// 1 - (1 - p_bit)^packet_bits.
double per_uncoded(double p_bit, int packet_bits);

// Probability that more than t_corr of the code's symbols are in error,
// with symbol error probability 1 - (1 - p_bit)^sym_bits.
double per_coded(double p_bit, const RsCode& code);

// Same tail, summed term by term in linear arithmetic. Only meaningful for
// short codes; kept as a cross-check of the log-domain path.
double per_coded_direct(double p_bit, const RsCode& code);

// Measured PER-vs-jammer-distance curve.
struct EmpiricalPerTable {
  struct Row {
    double distance_m;
    double per_blocked;
  };
  std::vector<Row> rows;
  double per_clear = 0.0;

  // Throws ConfigError on empty tables, non-increasing distances or
  // probabilities outside [0, 1].
  void validate() const;

  // Piecewise-linear in distance, clamped to the end rows.
  double per_blocked_at(double distance_m) const;

  // CSV with header `distance_m,per_blocked`.
  static EmpiricalPerTable from_csv(std::string_view text, double per_clear);
  static EmpiricalPerTable load_csv(const std::string& path, double per_clear);
};

enum class PerMode { kUncoded, kCoded, kEmpirical };

std::string to_string(PerMode mode);
PerMode per_mode_from_string(std::string_view name);

// Packet error probabilities in clear and jammed slots.
struct ErrorModel {
  double p_clear = 0.0;
  double p_blocked = 0.0;

  bool operator==(const ErrorModel&) const = default;
};

// Geometry and radio settings shared by transmitter and jammer.
struct LinkSettings {
  double d_tr_m = 78.0;
  double tx_power_db = 180.0;
  double jam_power_db = 180.0;
  double bitrate_bps = 1000.0;
  int packet_bits = 512;
  RsCode rs{};

  void validate() const;
  bool operator==(const LinkSettings&) const = default;
};

// Link budget for the T -> R path with the jammer at d_jr_m. Passing
// std::nullopt for d_jr_m leaves the jammer silent (J_0 = 0).
LinkBudget link_budget(std::optional<double> d_jr_m, const LinkSettings& link,
                       const AcousticEnvironment& env);

// Resolves (p_eC, p_eB) at a jammer distance for one PER mode. Model modes
// evaluate the clear slot with J_0 = 0; the empirical mode reads the table.
class ErrorModelProvider {
 public:
  ErrorModelProvider(AcousticEnvironment env, LinkSettings link, PerMode mode,
                     std::optional<EmpiricalPerTable> table = std::nullopt);

  ErrorModel at(double d_jr_m) const;

  PerMode mode() const { return mode_; }
  const AcousticEnvironment& environment() const { return env_; }
  const LinkSettings& link() const { return link_; }

 private:
  double packet_error(double p_bit) const;

  AcousticEnvironment env_;
  LinkSettings link_;
  PerMode mode_;
  std::optional<EmpiricalPerTable> table_;
};

}  // namespace uwjam

#endif  // UWJAM_CHANNEL_MODEL_HPP_
