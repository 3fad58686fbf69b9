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

#include "subpulse/cost_analyzer.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <tbb/parallel_for.h>

namespace subpulse {

std::string to_string(ErrorModel m) { return m == ErrorModel::per_gate ? "per_gate" : "per_time"; }

ErrorModel error_model_from_string(const std::string& s) {
  if (s == "per_gate" || s == "gate") return ErrorModel::per_gate;
  if (s == "per_time" || s == "time") return ErrorModel::per_time;
  throw std::invalid_argument("unknown error model: " + s);
}

namespace {

PauliTerm z_string(int k) {
  PauliString s(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) s.set(i, Pauli::Z);
  return {s, 1.0};
}

PauliTerm make_term(const char* letters, double coeff) { return {PauliString::parse(letters), coeff}; }

}  // namespace

SynthesisReport term_circuit(const PauliTerm& term, double angle, Strategy strategy, ErrorModel model) {
  const int k = static_cast<int>(term.string.weight());
  if (k <= 1 || angle * term.coeff == 0.0) return {};  // single-qubit rotations are free
  SynthesisOptions opt;
  opt.verify = false;
  // letters only add free basis changes, so cost depends on (k, angle) alone
  const PauliTerm z = z_string(k);
  const double a = angle * term.coeff;
  if (strategy == Strategy::standard) return conjugation_decompose(z, a, opt, 1);
  if (model == ErrorModel::per_gate) return conjugation_decompose(z, a, opt, 2);
  return synthesize(z, a, strategy, opt);
}

TermCost term_cost(const PauliTerm& term, double angle, Strategy strategy, ErrorModel model) {
  const SynthesisReport r = term_circuit(term, angle, strategy, model);
  return {r.runtime_cost, r.depth_cost};
}

MaxInteractionCost max_interaction_cost(Encoding encoding, Strategy strategy, double tau) {
  if (tau < 0) throw std::invalid_argument("tau must be nonnegative");
  MaxInteractionCost out;
  const bool compact = encoding == Encoding::compact;
  if (strategy == Strategy::standard)
    out.bound = compact ? 2 * std::numbers::pi : 3 * std::numbers::pi;
  else
    out.bound = compact ? 4 * std::sqrt(tau) : 12 * std::cbrt(tau);
  // worst hopping term: two commuting strings at coefficient r/2, run back to back
  const PauliTerm t1 = compact ? make_term("XXY", 0.5) : make_term("XZZX", 0.5);
  const PauliTerm t2 = compact ? make_term("YYY", 0.5) : make_term("YZZY", 0.5);
  for (const auto& t : {t1, t2}) {
    const TermCost c = term_cost(t, tau, strategy, ErrorModel::per_time);
    out.measured += c.time;
    out.depth += c.depth;
  }
  if (strategy == Strategy::automatic) out.bound = std::min(out.bound, compact ? 2 * std::numbers::pi : 3 * std::numbers::pi);
  return out;
}

void CostQuery::validate() const {
  spec.validate();
  if (!(T >= 0) || !std::isfinite(T)) throw std::invalid_argument("T must be >= 0");
  if (!(eps_target > 0)) throw std::invalid_argument("eps_target must be > 0");
  if (p == 0 && p_candidates.empty()) throw std::invalid_argument("no product-formula orders to try");
  if (Lambda < 0) throw std::invalid_argument("Lambda must be >= 0");
}

namespace {

struct Schedule {
  std::vector<InteractionLayer> layers;
  double Lambda = 0;
  LayerStructure structure;
};

using CostKey = std::tuple<int, Strategy, ErrorModel, double>;

CostReport cost_for_order(const CostQuery& q, const Schedule& sch, int p, std::map<CostKey, TermCost>& cache) {
  const int M = static_cast<int>(sch.layers.size());
  const ProductFormula f = build_formula(p, M);
  CostReport r;
  r.encoding = q.encoding;
  r.p = p;
  r.strategy = q.strategy;
  r.model = q.model;
  r.stages = f.S;
  r.Lambda = sch.Lambda;
  for (const auto& l : sch.layers) r.breakdown.push_back({l.label, 0.0, 0});
  if (q.T == 0.0) return r;

  BoundQuery bq;
  bq.p = p;
  bq.M = M;
  bq.Lambda = sch.Lambda;
  bq.T = q.T;
  bq.N = sch.structure.N;
  bq.n_tilde = sch.structure.n_tilde;
  bq.q_order = q.q_order;
  const InversionResult inv =
      q.family ? invert_for_delta(*q.family, bq, q.eps_target) : invert_tightest(bq, q.eps_target);
  r.family = inv.family;
  r.delta0 = inv.delta0;
  if (!inv.feasible || !(inv.delta0 > 0)) {
    r.feasible = false;
    r.cost = std::numeric_limits<double>::infinity();
    return r;
  }
  r.steps = static_cast<long long>(std::ceil(q.T / inv.delta0 - 1e-12));

  auto cost_of = [&](const PauliTerm& t, double tau) {
    const int k = static_cast<int>(t.string.weight());
    const CostKey key{k, q.strategy, q.model, std::abs(tau * t.coeff)};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, term_cost(z_string(k), std::abs(tau * t.coeff), q.strategy, q.model)).first;
    return it->second;
  };

  double per_step = 0.0;
  long long per_step_depth = 0;
  for (int j = 0; j < f.S; ++j)
    for (int i = 0; i < M; ++i) {
      const double tau = f.tcoeff(j, i) * inv.delta0;
      if (tau == 0.0) continue;
      const auto& layer = sch.layers[i];
      // groups act on disjoint qubits and run in parallel; terms inside a group run in sequence
      std::map<int, std::pair<double, int>> groups;
      for (std::size_t k = 0; k < layer.terms.size(); ++k) {
        const TermCost c = cost_of(layer.terms[k], tau);
        auto& g = groups[layer.group[k]];
        g.first += c.time;
        g.second += c.depth;
      }
      double t = 0.0;
      int d = 0;
      for (auto& [_, g] : groups) {
        t = std::max(t, g.first);
        d = std::max(d, g.second);
      }
      r.breakdown[i].time += t;
      r.breakdown[i].depth += d;
      per_step += t;
      per_step_depth += d;
    }
  r.cost = q.model == ErrorModel::per_gate ? static_cast<double>(per_step_depth * r.steps)
                                           : per_step * static_cast<double>(r.steps);

  const double tau_max = inv.delta0 * f.B * q.spec.r;
  const MaxInteractionCost mic = max_interaction_cost(q.encoding, q.strategy, tau_max);
  const double unit = q.model == ErrorModel::per_gate ? mic.depth : mic.bound;
  r.bound_estimate = static_cast<double>(r.steps) * M * f.S * unit;
  return r;
}

}  // namespace

CostReport simulation_cost(const CostQuery& q) {
  q.validate();
  Schedule sch;
  const EncodedHamiltonian h = encode(q.spec, q.encoding);
  sch.layers = h.layers;
  sch.Lambda = q.Lambda > 0 ? q.Lambda : lambda_bound(q.spec, sch.layers);
  sch.structure = layer_structure(sch.layers);

  std::map<CostKey, TermCost> cache;
  const std::vector<int> ps = q.p == 0 ? q.p_candidates : std::vector<int>{q.p};
  CostReport best;
  bool have = false;
  nlohmann::json cands = nlohmann::json::array();
  for (int p : ps) {
    CostReport r = cost_for_order(q, sch, p, cache);
    cands.push_back({{"p", p}, {"feasible", r.feasible}, {"delta0", r.delta0}, {"steps", r.steps},
                     {"cost", r.feasible ? nlohmann::json(r.cost) : nlohmann::json(nullptr)},
                     {"bound_family", to_string(r.family)}});
    if (!have || (r.feasible && (!best.feasible || r.cost < best.cost))) {
      best = std::move(r);
      have = true;
    }
  }
  best.candidates = std::move(cands);
  return best;
}

nlohmann::json to_json(const CostReport& r) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& b : r.breakdown) layers.push_back({{"label", b.label}, {"time_per_step", b.time}, {"depth_per_step", b.depth}});
  nlohmann::json j{{"encoding", to_string(r.encoding)},
                   {"p", r.p},
                   {"strategy", to_string(r.strategy)},
                   {"error_model", to_string(r.model)},
                   {"feasible", r.feasible},
                   {"delta0", r.delta0},
                   {"steps", r.steps},
                   {"stages", r.stages},
                   {"bound_family", to_string(r.family)},
                   {"Lambda", r.Lambda},
                   {"bound_estimate", r.bound_estimate},
                   {"breakdown", layers},
                   {"candidates", r.candidates}};
  if (!r.feasible)
    j["cost"] = nullptr;
  else if (r.model == ErrorModel::per_gate)
    j["cost"] = static_cast<long long>(std::llround(r.cost));
  else
    j["cost"] = r.cost;
  return j;
}

// ---- asymptotics ----

double asymptotic_prefactor(Encoding encoding, Strategy strategy, int p) {
  if (p < 1 || (p > 1 && p % 2)) throw std::invalid_argument("order p must be 1 or even");
  const bool vc = encoding == Encoding::vc;
  const double P = p;
  const double fact = std::tgamma(P + 2.0);
  if (strategy == Strategy::subcircuit) {
    if (vc) {
      if (p == 1) return 12.0;
      return 12.0 * std::pow(2.0, P / 2) * std::pow(3.0, (-3 * P + 4 / P + 4) / 6) *
             std::pow(5.0, (5 * P - 4 / P - 8) / 6) * std::pow(fact, -2.0 / (3 * P));
    }
    if (p == 1) return 4.0;
    return 4.0 * std::pow(2.0, P / 2 - 0.25) * std::pow(3.0, (-2 * P + 2 / P + 3) / 4) *
           std::pow(5.0, (3 * P - 2 / P - 5) / 4) * std::pow(fact, -1.0 / (2 * P));
  }
  const double base = vc ? 3 * std::numbers::pi : 2 * std::numbers::pi;
  if (p == 1) return base;
  return base * std::pow(2.0, (P + 1) / 2) * std::pow(3.0, -P / 2 + 1 / P + 0.5) *
         std::pow(5.0, P - 1 / P - 1.5) * std::pow(fact, -1.0 / P);
}

double asymptotic_cost(Encoding encoding, Strategy strategy, int p, int M, double Lambda, double T,
                       double eps_target, double r) {
  const double c = asymptotic_prefactor(encoding, strategy, p);
  const double P = p;
  if (strategy != Strategy::subcircuit) {
    const double e = 1 + 1 / P;
    return c * std::pow(M, 1 + e) * std::pow(Lambda, e) * std::pow(T, e) * std::pow(eps_target, -1 / P);
  }
  if (encoding == Encoding::vc) {
    const double x = 2 / (3 * P);
    return c * std::cbrt(r) * std::pow(M, 5.0 / 3 + x) * std::pow(Lambda, 2.0 / 3 + x) * std::pow(T, 1 + x) *
           std::pow(eps_target, -x);
  }
  const double x = 1 / (2 * P);
  return c * std::sqrt(r) * std::pow(M, 1.5 + x) * std::pow(Lambda, 0.5 + x) * std::pow(T, 1 + x) *
         std::pow(eps_target, -x);
}

// ---- benchmark tables ----

TableConfig default_table_config() {
  TableConfig c;
  struct Ref {
    Encoding e;
    Strategy s;
    ErrorModel m;
    double target;
  };
  const Ref refs[] = {
      {Encoding::vc, Strategy::standard, ErrorModel::per_gate, 121478},
      {Encoding::vc, Strategy::subcircuit, ErrorModel::per_gate, 95447},
      {Encoding::compact, Strategy::standard, ErrorModel::per_gate, 98339},
      {Encoding::compact, Strategy::subcircuit, ErrorModel::per_gate, 72308},
      {Encoding::vc, Strategy::standard, ErrorModel::per_time, 95409},
      {Encoding::vc, Strategy::subcircuit, ErrorModel::per_time, 17100},
      {Encoding::compact, Strategy::standard, ErrorModel::per_time, 77236},
      {Encoding::compact, Strategy::subcircuit, ErrorModel::per_time, 1686},
  };
  for (const auto& r : refs) c.cells.push_back({r.e, "analytic", r.s, r.m, std::nullopt, r.target});
  return c;
}

std::vector<TableRow> table_benchmark(const TableConfig& config) {
  std::vector<TableRow> rows(config.cells.size());
  tbb::parallel_for(std::size_t{0}, config.cells.size(), [&](std::size_t i) {
    const TableCell& cell = config.cells[i];
    TableRow row;
    row.cell = cell;
    if (cell.bounds == "analytic") {
      CostQuery q;
      q.spec.L = config.L;
      q.spec.u = config.r;
      q.spec.t_hop = config.r;
      q.spec.r = config.r;
      q.spec.fermion_count = config.fermions;
      q.encoding = cell.encoding;
      q.strategy = cell.strategy;
      q.model = cell.model;
      q.T = config.T;
      q.eps_target = config.eps_target;
      row.report = simulation_cost(q);
      row.value = row.report.cost;
    } else {
      if (!cell.value) throw std::invalid_argument("non-analytic table cell needs an external value");
      row.value = *cell.value;
    }
    if (cell.target && *cell.target != 0) row.rel_error = (row.value - *cell.target) / *cell.target;
    rows[i] = std::move(row);
  });
  return rows;
}

std::string table_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os.precision(10);
  os << "# schema=1\n";
  os << "encoding,bounds,strategy,error_model,p,delta0,steps,cost,target,rel_error\n";
  for (const auto& r : rows) {
    const bool computed = r.cell.bounds == "analytic";
    os << to_string(r.cell.encoding) << ',' << r.cell.bounds << ',' << to_string(r.cell.strategy) << ','
       << to_string(r.cell.model) << ',';
    if (computed)
      os << r.report.p << ',' << r.report.delta0 << ',' << r.report.steps << ',';
    else
      os << ",,,";
    os << r.value << ',';
    if (r.cell.target)
      os << *r.cell.target << ',' << r.rel_error;
    else
      os << ',';
    os << '\n';
  }
  return os.str();
}

}  // namespace subpulse
