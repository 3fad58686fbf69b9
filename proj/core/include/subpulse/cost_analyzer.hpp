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

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "subpulse/fh_encoding.hpp"
#include "subpulse/pulse_synthesis.hpp"
#include "subpulse/trotter.hpp"

namespace subpulse {

enum class ErrorModel { per_gate, per_time };
std::string to_string(ErrorModel m);
ErrorModel error_model_from_string(const std::string& s);

/// Cost of the heaviest local interaction exp(i tau/2 (P1 + P2)), tau = delta B_p r.
struct MaxInteractionCost {
  double bound = 0.0;     // closed form
  double measured = 0.0;  // summed pulse times of the synthesized circuit
  int depth = 0;
};
MaxInteractionCost max_interaction_cost(Encoding encoding, Strategy strategy, double tau);

/// Cost of one Pauli exponential exp(i angle P) of weight k under a cost model.
/// "standard" is the CNOT ladder (single-qubit rotations free); "subcircuit"
/// uses ZZ pulses: conjugation around one pulse for depth, the sub-circuit
/// lowering for pulse time.
struct TermCost {
  double time = 0.0;
  int depth = 0;
};
TermCost term_cost(const PauliTerm& term, double angle, Strategy strategy, ErrorModel model);
/// The circuit behind term_cost (unverified; empty for weight <= 1).
SynthesisReport term_circuit(const PauliTerm& term, double angle, Strategy strategy, ErrorModel model);

struct CostQuery {
  FermiHubbardSpec spec;
  Encoding encoding = Encoding::compact;
  int p = 0;  // 0 = minimise over p_candidates
  std::vector<int> p_candidates{1, 2, 4};
  Strategy strategy = Strategy::subcircuit;
  ErrorModel model = ErrorModel::per_time;
  double T = 1.0;
  double eps_target = 0.1;
  double Lambda = 0.0;  // 0 = derive from the layers
  std::optional<BoundFamily> family;  // nullopt = tightest available
  int q_order = 0;

  void validate() const;
};

struct LayerBreakdown {
  std::string label;
  double time = 0.0;  // per step, summed over stages
  int depth = 0;
};

struct CostReport {
  Encoding encoding = Encoding::compact;
  int p = 1;
  Strategy strategy = Strategy::subcircuit;
  ErrorModel model = ErrorModel::per_time;
  bool feasible = true;
  double delta0 = 0.0;
  long long steps = 0;
  int stages = 1;
  double cost = 0.0;
  double bound_estimate = 0.0;  // steps * M * stage factor * max-interaction bound
  BoundFamily family = BoundFamily::basic;
  double Lambda = 0.0;
  std::vector<LayerBreakdown> breakdown;
  nlohmann::json candidates = nlohmann::json::array();  // one entry per p tried
};
nlohmann::json to_json(const CostReport& r);

CostReport simulation_cost(const CostQuery& q);

/// Closed-form leading-order run-time for delta0 saturating the basic bound.
double asymptotic_prefactor(Encoding encoding, Strategy strategy, int p);
double asymptotic_cost(Encoding encoding, Strategy strategy, int p, int M, double Lambda, double T,
                       double eps_target, double r = 1.0);

struct TableCell {
  Encoding encoding = Encoding::compact;
  std::string bounds = "analytic";  // "analytic" computed; anything else taken from `value`
  Strategy strategy = Strategy::standard;
  ErrorModel model = ErrorModel::per_gate;
  std::optional<double> value;   // external input for non-analytic rows
  std::optional<double> target;  // reference value to compare against
};

struct TableConfig {
  int L = 5;
  double T = 7.0;
  double eps_target = 0.1;
  int fermions = 5;
  double r = 1.0;
  std::vector<TableCell> cells;
};

struct TableRow {
  TableCell cell;
  CostReport report;
  double value = 0.0;
  double rel_error = 0.0;  // vs target, 0 if none
};

/// The 2 x 2 x 2 analytic grid with the reference targets filled in.
TableConfig default_table_config();
std::vector<TableRow> table_benchmark(const TableConfig& config);
std::string table_csv(const std::vector<TableRow>& rows);

}  // namespace subpulse
