// Copyright 2026 The subpulse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "subpulse/cost_analyzer.hpp"
#include "subpulse/fh_encoding.hpp"

namespace subpulse {

// ---- syndrome map ----

/// Syndrome bits packed 64 per word.
using Syndrome = std::vector<std::uint64_t>;

/// Which check operators each single-qubit Pauli flips.  The checks are a
/// GF(2) basis of every Pauli string commuting with all Hamiltonian terms:
/// the loop stabilizers around empty plaquettes plus one parity per spin.
struct SyndromeMap {
  std::size_t n_qubits = 0;
  int n_checks = 0;
  std::vector<QubitClass> qubit_class;
  std::vector<Syndrome> flip_x, flip_z;  // per qubit; Y flips x ^ z
  std::vector<std::array<bool, 3>> phase_noise;  // per qubit, X/Y/Z
  std::vector<PauliString> checks;

  Syndrome syndrome(int qubit, Pauli p) const;
  bool is_phase_noise(int qubit, Pauli p) const;
};

/// Derive checks from the encoded terms; the phase-noise flag is set for Z on
/// vertex qubits when that error flips no check.
SyndromeMap build_syndrome_map(const EncodedHamiltonian& h);
/// GF(2) basis of the Pauli strings commuting with every term (phases dropped).
std::vector<PauliString> commutant_basis(const std::vector<PauliTerm>& terms, std::size_t n_qubits);

/// Entries {qubit, qubit_class, pauli, syndrome_bits, phase_noise}.
nlohmann::json to_json(const SyndromeMap& m);
SyndromeMap syndrome_map_from_json(const nlohmann::json& j);

// ---- trivial bound ----

/// 1 - (1 - q)^V
double trivial_epsilon(double volume, double q);
/// 1 - (1 - eps)^{1/V}; V = 0 gives 1
double trivial_q_max(double volume, double eps_target);

// ---- schedules ----

struct NoiseLocation {
  bool boundary = false;  // first location of a Trotter-layer application
  double duration = 0.0;  // pulse time of the pulse layer it precedes
};

struct NoiseSchedule {
  Encoding encoding = Encoding::compact;
  std::size_t n_qubits = 0;
  Strategy strategy = Strategy::subcircuit;
  ErrorModel model = ErrorModel::per_gate;
  int p = 1;
  double delta0 = 0.0;
  long long steps = 0;
  std::vector<NoiseLocation> locations;
  double cost = 0.0;  // depth or summed pulse time of the schedule
};

/// Location stream of ceil(T / delta0) steps of the p-th order formula.  Noise
/// precedes every pulse layer; within a Trotter layer the slowest group sets
/// the pulse layers.
NoiseSchedule build_noise_schedule(const EncodedHamiltonian& h, Strategy strategy, ErrorModel model, int p,
                                   double delta0, double T);

// ---- Monte Carlo ----

enum class NoiseBin { clean, detectable, undetectable_phase, undetectable_nonphase, intra_decomposition };
std::string to_string(NoiseBin b);

struct NoiseModel {
  double q = 0.0;
  ErrorModel mode = ErrorModel::per_gate;  // per_time: min(1, q * duration)
  void validate() const;
};

struct NoiseEvent {
  std::size_t location = 0;
  int qubit = 0;
  Pauli pauli = Pauli::X;
};

struct NoiseRunRecord {
  std::uint64_t trial = 0;
  std::vector<NoiseEvent> events;
  int violations = 0;   // events after which the running syndrome was nonzero
  bool commuted = false;
  NoiseBin bin = NoiseBin::clean;
};
nlohmann::json to_json(const NoiseRunRecord& r);

struct MonteCarloOptions {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  std::vector<NoiseEvent> injected;  // added to every trial
  std::size_t keep_records = 0;      // first n trial records returned
};

struct BinStat {
  std::uint64_t count = 0;
  double fraction = 0.0;
  double lo = 0.0, hi = 0.0;  // 95% Wilson interval
};

struct NoiseSummary {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double q = 0.0;
  BinStat clean, detectable, undetectable_phase, undetectable_nonphase, intra_decomposition;
  std::uint64_t commuted = 0;  // trials with an intra error commuted to a boundary
  double volume = 0.0;         // sum over locations and qubits of q_loc / q
  double clean_expected = 1.0; // prod (1 - q_loc)^n
  double accept_rate = 1.0;    // 1 - detectable
  double post_selection_overhead = 1.0;
  double eps_s = 0.0;          // bad accepted runs / accepted runs
  double eps_s_upper = 0.0;    // one-sided 95% bound
  double eps_c = 0.0;          // commuted fraction * sqrt(delta0)
  std::vector<NoiseRunRecord> records;
};
nlohmann::json to_json(const NoiseSummary& s);

BinStat wilson(std::uint64_t k, std::uint64_t n, double z = 1.959963984540054);

NoiseSummary run_monte_carlo(const NoiseSchedule& schedule, const SyndromeMap& map, const NoiseModel& model,
                             const MonteCarloOptions& opt);

struct MaxQResult {
  double q_max = 0.0;
  bool at_floor = false;
  bool at_ceiling = false;
  double eps_s = 0.0;
  double combined = 0.0;  // sqrt(eps_t^2 + eps_s^2)
  std::vector<std::pair<double, double>> probes;  // (q, eps_s_upper)
};

/// Largest q on a log grid (factor sqrt(10), refined by 10^{1/8}) whose
/// one-sided upper bound on eps_s stays below eps_target.
MaxQResult max_q_search(const NoiseSchedule& schedule, const SyndromeMap& map, double eps_target,
                        std::uint64_t trials, std::uint64_t seed = 1, double eps_t = 0.0,
                        double q_floor = 1e-9, double q_ceiling = 1.0);

// ---- feasible simulation time ----

struct FeasibleTimeRow {
  Encoding encoding = Encoding::compact;
  Strategy strategy = Strategy::subcircuit;
  bool mitigation = false;
  double q = 0.0;
  bool supported = true;
  double T_tar = 0.0;
  double delta0 = 0.0;
  long long steps = 0;
  double cost = 0.0;
  double eps_t = 0.0, eps_s = 0.0, eps_c = 0.0;
  double overhead = 1.0;
};

struct FeasibleTimeConfig {
  FermiHubbardSpec spec;
  ErrorModel model = ErrorModel::per_time;
  double eps_target = 0.1;
  std::vector<Encoding> encodings{Encoding::compact};
  std::vector<Strategy> strategies{Strategy::standard, Strategy::subcircuit};
  std::vector<bool> mitigation{false};
  std::vector<double> qs{1e-4};
  int p = 2;
  double T_max = 64.0;
  double overhead_cap = 1e4;
  std::uint64_t trials = 2000;
  std::uint64_t seed = 1;
};

/// Largest T with sqrt(eps_t^2 + eps_s^2 (+ eps_c^2)) <= eps_target, the budget
/// split evenly between eps_t and eps_s.  Without mitigation eps_s is the trivial
/// bound on the volume cost * L^2; with mitigation it is sampled.
std::vector<FeasibleTimeRow> feasible_time_table(const FeasibleTimeConfig& config);
std::string feasible_time_csv(const std::vector<FeasibleTimeRow>& rows);

}  // namespace subpulse
