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

#include <cmath>
#include <map>
#include <numbers>

#include <gtest/gtest.h>

#include "subpulse/cost_analyzer.hpp"

using namespace subpulse;
using std::numbers::pi;

namespace {

CostQuery query(int L, Encoding e, Strategy s, ErrorModel m, int p = 0) {
  CostQuery q;
  q.spec.L = L;
  q.spec.fermion_count = L;
  q.encoding = e;
  q.strategy = s;
  q.model = m;
  q.p = p;
  q.T = 2.0;
  q.eps_target = 0.1;
  return q;
}

}  // namespace

TEST(Cost, MaxInteraction) {
  EXPECT_DOUBLE_EQ(max_interaction_cost(Encoding::compact, Strategy::standard, 0.3).bound, 2 * pi);
  EXPECT_DOUBLE_EQ(max_interaction_cost(Encoding::vc, Strategy::standard, 0.3).bound, 3 * pi);
  EXPECT_DOUBLE_EQ(max_interaction_cost(Encoding::compact, Strategy::subcircuit, 0.0).bound, 0.0);
  EXPECT_DOUBLE_EQ(max_interaction_cost(Encoding::compact, Strategy::subcircuit, 0.0).measured, 0.0);
  const auto c = max_interaction_cost(Encoding::compact, Strategy::subcircuit, 0.005);
  EXPECT_NEAR(c.bound, 4 * std::sqrt(0.005), 1e-15);
  EXPECT_NEAR(c.bound, 0.2828, 1e-4);
  EXPECT_LE(c.measured, c.bound);
  const auto v = max_interaction_cost(Encoding::vc, Strategy::subcircuit, 0.005);
  EXPECT_NEAR(v.bound, 12 * std::cbrt(0.005), 1e-14);
  EXPECT_LE(v.measured, v.bound);
  // standard: two CNOT-ladder exponentials per interaction
  EXPECT_NEAR(max_interaction_cost(Encoding::compact, Strategy::standard, 0.3).measured, 2 * pi, 1e-12);
  EXPECT_NEAR(max_interaction_cost(Encoding::vc, Strategy::standard, 0.3).measured, 3 * pi, 1e-12);
}

TEST(Cost, TermCostModels) {
  const PauliTerm t{PauliString::parse("XZY"), 0.5};
  EXPECT_EQ(term_cost(t, 0.1, Strategy::standard, ErrorModel::per_gate).depth, 4);
  EXPECT_NEAR(term_cost(t, 0.1, Strategy::standard, ErrorModel::per_time).time, pi, 1e-12);
  EXPECT_EQ(term_cost(t, 0.1, Strategy::subcircuit, ErrorModel::per_gate).depth, 3);
  EXPECT_LE(term_cost(t, 0.1, Strategy::subcircuit, ErrorModel::per_time).time, 2 * std::sqrt(0.1));
  const PauliTerm z{PauliString::parse("IZI"), 1.0};
  EXPECT_EQ(term_cost(z, 0.1, Strategy::standard, ErrorModel::per_gate).depth, 0);
  // the circuit behind the cost is a faithful exp(i angle P) up to basis changes
  const auto circ = term_circuit(PauliTerm{PauliString::parse("ZZZZ"), 1.0}, 0.02, Strategy::subcircuit, ErrorModel::per_time);
  EXPECT_NEAR(circ.sequence.runtime(), circ.runtime_cost, 1e-12);
}

TEST(Cost, PerGateRecount) {
  // rebuild every layer's depth from emitted circuits, independent of the analyzer's cache
  for (auto enc : {Encoding::compact, Encoding::vc})
    for (auto s : {Strategy::standard, Strategy::subcircuit}) {
      const CostQuery q = query(3, enc, s, ErrorModel::per_gate, 2);
      const CostReport r = simulation_cost(q);
      ASSERT_TRUE(r.feasible);
      const auto h = encode(q.spec, enc);
      const auto f = build_formula(2, 5);
      long long per_step = 0;
      for (int j = 0; j < f.S; ++j)
        for (int i = 0; i < 5; ++i) {
          std::map<int, int> g;
          const auto& l = h.layers[i];
          for (std::size_t k = 0; k < l.terms.size(); ++k)
            g[l.group[k]] += term_circuit(l.terms[k], f.tcoeff(j, i) * r.delta0, s, ErrorModel::per_gate).sequence.depth();
          int d = 0;
          for (auto [_, v] : g) d = std::max(d, v);
          per_step += d;
        }
      EXPECT_EQ(static_cast<long long>(r.cost), per_step * r.steps);
      EXPECT_EQ(r.cost, std::floor(r.cost));
      EXPECT_EQ(r.steps, static_cast<long long>(std::ceil(q.T / r.delta0)));
    }
}

TEST(Cost, ZeroTimeIsFree) {
  CostQuery q = query(3, Encoding::compact, Strategy::subcircuit, ErrorModel::per_time);
  q.T = 0.0;
  const auto r = simulation_cost(q);
  EXPECT_EQ(r.cost, 0.0);
  EXPECT_EQ(r.steps, 0);
}

TEST(Cost, Monotone) {
  for (auto m : {ErrorModel::per_gate, ErrorModel::per_time}) {
    CostQuery q = query(3, Encoding::compact, Strategy::subcircuit, m, 2);
    double prev = 0;
    for (double T : {0.5, 1.0, 2.0, 4.0}) {
      q.T = T;
      const double c = simulation_cost(q).cost;
      EXPECT_GE(c, prev);
      prev = c;
    }
    q.T = 2.0;
    prev = std::numeric_limits<double>::infinity();
    for (double e : {0.01, 0.03, 0.1, 0.3}) {
      q.eps_target = e;
      const double c = simulation_cost(q).cost;
      EXPECT_LE(c, prev);
      prev = c;
    }
  }
}

TEST(Cost, SubcircuitCheaperBelowCrossover) {
  for (auto enc : {Encoding::compact, Encoding::vc}) {
    const auto a = simulation_cost(query(3, enc, Strategy::subcircuit, ErrorModel::per_time, 2));
    const auto b = simulation_cost(query(3, enc, Strategy::standard, ErrorModel::per_time, 2));
    ASSERT_LT(a.delta0 * 0.5, subcircuit_crossover(3));
    EXPECT_LT(a.cost, b.cost);
  }
}

TEST(Cost, AutoOrderIsArgmin) {
  const CostQuery q = query(3, Encoding::compact, Strategy::subcircuit, ErrorModel::per_time);
  const auto best = simulation_cost(q);
  for (int p : {1, 2, 4}) {
    CostQuery qp = q;
    qp.p = p;
    EXPECT_LE(best.cost, simulation_cost(qp).cost);
  }
  EXPECT_EQ(best.candidates.size(), 3u);
}

TEST(Cost, Asymptotics) {
  EXPECT_DOUBLE_EQ(asymptotic_prefactor(Encoding::compact, Strategy::subcircuit, 1), 4.0);
  EXPECT_DOUBLE_EQ(asymptotic_prefactor(Encoding::vc, Strategy::standard, 1), 3 * pi);
  // standard, p = 1: cost * eps / T^2 is T-independent
  const double a = asymptotic_cost(Encoding::vc, Strategy::standard, 1, 5, 5, 2, 0.1);
  const double b = asymptotic_cost(Encoding::vc, Strategy::standard, 1, 5, 5, 4, 0.1);
  EXPECT_NEAR(b / a, 4.0, 1e-12);
  // sanity envelope against the concrete pipeline
  for (double T : {1.0, 2.0, 4.0, 8.0}) {
    CostQuery q = query(5, Encoding::compact, Strategy::standard, ErrorModel::per_time, 2);
    q.T = T;
    const double ratio = asymptotic_cost(Encoding::compact, Strategy::standard, 2, 5, 5, T, 0.1) / simulation_cost(q).cost;
    EXPECT_GT(ratio, 0.1);
    EXPECT_LT(ratio, 1e3);
  }
}

TEST(Cost, JsonAndCsv) {
  const auto r = simulation_cost(query(2, Encoding::compact, Strategy::standard, ErrorModel::per_gate, 1));
  const auto j = to_json(r);
  EXPECT_TRUE(j["cost"].is_number_integer());
  EXPECT_EQ(j["breakdown"].size(), 5u);
  TableConfig tc;
  tc.L = 2;
  tc.fermions = 2;
  tc.T = 1;
  tc.cells.push_back({Encoding::compact, "analytic", Strategy::standard, ErrorModel::per_gate, {}, 100.0});
  tc.cells.push_back({Encoding::compact, "numeric", Strategy::standard, ErrorModel::per_gate, 259.0, {}});
  const auto rows = table_benchmark(tc);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].value, 259.0);
  const auto csv = table_csv(rows);
  EXPECT_EQ(csv.rfind("# schema=1\nencoding,bounds,strategy,error_model,p,delta0,steps,cost,target,rel_error\n", 0), 0u);
}

TEST(Cost, Validation) {
  CostQuery q = query(2, Encoding::compact, Strategy::standard, ErrorModel::per_gate);
  q.eps_target = 0;
  EXPECT_THROW(simulation_cost(q), std::invalid_argument);
  EXPECT_THROW(error_model_from_string("bogus"), std::invalid_argument);
}
