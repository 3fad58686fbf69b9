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

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "subpulse/pauli.hpp"

namespace subpulse {

// The two-argument arctangent tan^-1(x, y) is the angle of the point (x, y),
// i.e. atan2(y, x).  Pinned by the dense verification tests.
inline double arctan2_xy(double x, double y) { return std::atan2(y, x); }

// Clifford basis changes plus Z rotations; all free in both cost models.
enum class Gate1 : std::uint8_t { H, S, Sdg, SH, HSdg, X, Y, Z, RZ };

std::string to_string(Gate1 g);
Gate1 gate1_from_string(const std::string& s);

struct SingleQubitGate {
  int qubit = 0;
  Gate1 gate = Gate1::H;
  double angle = 0.0;  // RZ only: exp(i angle Z)
};

/// exp(i time Z_a Z_b)
struct ZZPulse {
  int a = 0, b = 1;
  double time = 0.0;
};

struct PulseLayer {
  bool two_qubit = false;
  std::vector<SingleQubitGate> rotations;
  std::vector<ZZPulse> pulses;
};

/// Layers are stored in time order (layer 0 acts first).
struct PulseSequence {
  std::size_t n_qubits = 0;
  std::vector<PulseLayer> layers;

  void add_rotation(const SingleQubitGate& g);  // merges into a trailing rotation layer
  void add_pulse(int a, int b, double time);    // one pulse per new layer
  void append(const PulseSequence& other);

  int depth() const;       // number of two-qubit pulse layers
  double runtime() const;  // sum over pulse layers of the longest |time|
  bool empty_pulses() const { return depth() == 0; }
  void validate() const;   // disjoint layer supports, finite |t| <= 2 pi
};

Matrix gate1_matrix(const SingleQubitGate& g);
Matrix to_unitary(const PulseSequence& seq);

nlohmann::json to_json(const PulseSequence& seq);
PulseSequence pulse_sequence_from_json(const nlohmann::json& j);

enum class SynthesisMethod { none, conjugation, depth3, depth4, depth5, recursive };
std::string to_string(SynthesisMethod m);

struct SynthesisReport {
  PulseSequence sequence;
  SynthesisMethod method = SynthesisMethod::none;
  double runtime_cost = 0.0;  // per-time model
  int depth_cost = 0;         // per-gate model
  double verification_error = 0.0;
  bool fallback = false;  // subcircuit requested but outside validity
  std::vector<double> pulse_times;  // method parameters, e.g. {t1, t2} or {t1, t2, phi}
  int short_pulses = 0;   // pulses below the configured t_min floor
};

nlohmann::json to_json(const SynthesisReport& r);

struct SynthesisOptions {
  bool verify = true;
  double t_min = 0.0;  // pulses shorter than this are counted, never clamped
};

/// Reduce exp(i delta P) to a single 2-local pulse of time delta, wrapped
/// in 2(k-2) pulses of time pi/4.  With base_weight = 1 the recursion goes
/// down to a (free) single-qubit rotation, which is the CNOT-only circuit.
SynthesisReport conjugation_decompose(const PauliTerm& target, double delta,
                                      const SynthesisOptions& opt = {}, int base_weight = 2);

/// exp(i t H), H = (1/2i)[h1, h2], from four pulses.
SynthesisReport depth4_decompose(const PauliTerm& h1, const PauliTerm& h2, double t,
                                 const SynthesisOptions& opt = {});

/// phi = nullopt selects phi = (c t)^{1/3}.
SynthesisReport depth5_decompose(const PauliTerm& h1, const PauliTerm& h2, double t,
                                 std::optional<double> phi = std::nullopt,
                                 const SynthesisOptions& opt = {});

/// exp(i t (cos theta h1 + sin theta h2)), three pulses.
SynthesisReport depth3_decompose(const PauliTerm& h1, const PauliTerm& h2, double theta, double t,
                                 const SynthesisOptions& opt = {});

enum class Strategy { standard, subcircuit, automatic };
std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

SynthesisReport synthesize(const PauliTerm& target, double delta, Strategy strategy,
                           const SynthesisOptions& opt = {});

// ---- closed-form pulse parameters ----

struct Depth4Times {
  double t1 = 0, t2 = 0;
  bool second_form = false;  // U = e^{i t1 h1} e^{i t2 h2} e^{-i t2 h1} e^{-i t1 h2}
};
Depth4Times depth4_times(double t);  // t normalized to [0, 2 pi)

struct Depth5Times {
  double t1 = 0, t2 = 0, phi = 0;
};
Depth5Times depth5_times(double t, std::optional<double> phi = std::nullopt);

struct Depth3Times {
  double t1 = 0, t2 = 0;
};
Depth3Times depth3_times(double theta, double t);

inline constexpr double kDepth5C = 1.4571067811865475;  // (3 + 2 sqrt 2) / 4
double depth5_t_critical();                             // (pi/4)^3 / c

/// Pulse-time cost of the fully lowered weight-3 gate (2|t1| + 2|t2|).
double depth4_cost(double t);
/// Weight-4 gate: depth-5 outer with depth-4 inner gates.
double depth5_cost(double t);
/// (k - 2) pi/2 + |delta|; with base_weight 1: (k - 1) pi/2.
double conjugation_cost(int k, double delta, int base_weight = 2);
int conjugation_depth(int k, int base_weight = 2);

/// Largest delta in (0, cap] below which the sub-circuit lowering of a weight-k
/// term is cheaper than conjugation (k = 3 or 4).
double subcircuit_crossover(int k);

// ---- optimality search ----

struct TwoLocalGate {
  int a = 0, b = 1;
  Pauli pa = Pauli::Z, pb = Pauli::Z;
};

struct ParetoPoint {
  double cost = 0.0;
  double epsilon = 0.0;
  std::vector<TwoLocalGate> skeleton;
  std::vector<double> times;
};

struct ParetoFront {
  std::vector<ParetoPoint> points;  // increasing cost, decreasing epsilon
  std::size_t skeletons = 0;        // after symmetry reduction
  std::size_t evaluations = 0;
  bool partial = false;             // budget ran out
  double zero_error_cost(double tol = 1e-6) const;  // +inf if none
};

struct OptimalitySearchOptions {
  std::size_t budget = 2'000'000;  // unitary evaluations
  std::uint64_t seed = 1;
  int samples_per_skeleton = 24;
  int refine_top = 64;  // minimum refined skeletons; more if the budget allows
  double bin_width = 0.02;
};

/// Enumerate width-k, length-n skeletons of 2-local Pauli gates (modulo qubit
/// permutation and reversal) and search pulse times for exp(i T Z^{(x)k}).
ParetoFront optimality_search(int k, int n, double T, const OptimalitySearchOptions& opt = {});

/// Skeleton count after symmetry reduction (no search).
std::size_t count_skeletons(int k, int n);

}  // namespace subpulse
