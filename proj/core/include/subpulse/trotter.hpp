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
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace subpulse {

/// Suzuki-Trotter product formula of order p over M layers, fully expanded.
struct ProductFormula {
  int p = 1;
  int M = 2;
  int S = 1;
  // factors in application order: (layer, coefficient); stage j holds
  // factors [j*M, (j+1)*M)
  std::vector<std::pair<int, double>> factors;
  Eigen::MatrixXd tcoeff;  // S x M, tcoeff(j, i)
  std::vector<double> a;   // a_k for k = 2 .. p/2
  double B = 1.0;
  double H = 1.0;
  double G = 1.0;
};

double suzuki_a(int k);  // 1 / (4 - 4^{1/(2k-1)})
double formula_B(int p);
double formula_H(int p);
double formula_G(int p);
int formula_stages(int p);

ProductFormula build_formula(int p, int M);
nlohmann::json to_json(const ProductFormula& f);

enum class BoundFamily { basic, explicit_sum, commutator, taylor_of_taylor };
std::string to_string(BoundFamily f);
BoundFamily bound_family_from_string(const std::string& s);
inline constexpr BoundFamily kAllFamilies[] = {BoundFamily::basic, BoundFamily::explicit_sum,
                                               BoundFamily::commutator, BoundFamily::taylor_of_taylor};

struct BoundQuery {
  int p = 2;
  int M = 5;
  double Lambda = 1.0;
  double T = 1.0;
  double delta = 0.1;
  int N = 0;        // Pauli summands per layer; 0 = unknown (commutator family unavailable)
  int n_tilde = 0;  // non-commuting partners
  int q_order = 0;  // Taylor-of-Taylor truncation; 0 = default budget rule

  void validate() const;
};

struct BoundResult {
  BoundFamily family = BoundFamily::basic;
  double epsilon = 0.0;
  bool available = true;
  nlohmann::json details;
};

BoundResult bound_basic(const BoundQuery& q);
BoundResult bound_explicit_sum(const BoundQuery& q);
/// Generalized explicit sum with the q-th derivative of a p-th order formula.
double explicit_sum_pq(int p, int q, int M, double Lambda, double T, double delta);

struct CommutatorConstants {
  double C1 = 0, C2 = 0;
};
CommutatorConstants commutator_constants(int p, int q, int M, double Lambda, int N, int n_tilde);
/// int_0^delta q int_0^1 (1-x)^{q-1} x tau^{q+1}/q! e^{x tau a} dx dtau
double commutator_integral_series(int q, double a, double delta);
double commutator_integral_quadrature(int q, double a, double delta);
double commutator_pq(int p, int q, int M, double Lambda, int N, int n_tilde, double T, double delta,
                     bool quadrature = false);
BoundResult bound_commutator(const BoundQuery& q);

/// f(p, M, l) by word expansion; throws std::length_error beyond the budget.
double taylor_coefficient(int p, int M, int l);
inline constexpr std::size_t kMaxTaylorWords = std::size_t{1} << 20;
/// Largest q >= p with M^{q+1} <= kMaxTaylorWords.
int default_taylor_order(int p, int M);

BoundResult bound_taylor_of_taylor(const BoundQuery& q);

BoundResult evaluate_bound(BoundFamily f, const BoundQuery& q);
/// Minimum over available families; ties keep the earlier family.
BoundResult tightest_bound(const BoundQuery& q);

struct InversionResult {
  double delta0 = 0.0;
  bool feasible = true;
  BoundFamily family = BoundFamily::basic;
  std::string method;  // "closed_form" or "bisection"
};

inline constexpr double kDeltaCap = 3.141592653589793;

/// Largest delta in (0, pi] with the family's bound <= eps_target.
InversionResult invert_for_delta(BoundFamily f, BoundQuery q, double eps_target, bool force_bisection = false);
/// Best (largest) delta over all available families.
InversionResult invert_tightest(BoundQuery q, double eps_target);

/// CSV rows "p,family,delta,epsilon" (with "# schema=1" header).
std::string bound_sweep_csv(const BoundQuery& base, const std::vector<int>& ps,
                            const std::vector<BoundFamily>& families, const std::vector<double>& deltas);

}  // namespace subpulse
