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
#include <random>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "subpulse/exact_sim.hpp"

using namespace subpulse;

namespace {

PauliTerm term(const char* s, double c) { return {PauliString::parse(s), c}; }

InteractionLayer layer(std::vector<PauliTerm> terms) {
  InteractionLayer l;
  l.terms = std::move(terms);
  for (std::size_t i = 0; i < l.terms.size(); ++i) l.group.push_back(static_cast<int>(i)), l.part.push_back(-1);
  l.n_groups = static_cast<int>(l.terms.size());
  return l;
}

// 4-qubit toy: two non-commuting layers
std::vector<InteractionLayer> toy4() {
  return {layer({term("XXII", 0.7), term("IIYY", -0.4)}), layer({term("ZIZI", 0.5), term("IZIZ", 0.9)}),
          layer({term("IXZI", 0.3)})};
}

Matrix oracle_exp(const std::vector<InteractionLayer>& ls, std::size_t n, double T) {
  return (cplx(0, -T) * dense_hamiltonian(ls, n)).exp();
}

}  // namespace

TEST(ExactSim, DenseEvolutionMatchesExpm) {
  const std::vector<InteractionLayer> xz{layer({term("XX", 1.0)}), layer({term("ZI", 0.6)})};
  EXPECT_LT((exact_evolution(xz, 2, 0.8) - oracle_exp(xz, 2, 0.8)).norm(), 1e-12);
  EXPECT_LT((exact_evolution(xz, 2, 0.0) - Matrix::Identity(4, 4)).norm(), 1e-12);
}

TEST(ExactSim, KrylovMatchesDense) {
  const auto ls = toy4();
  Vector psi = Vector::Random(16);
  psi.normalize();
  for (double T : {0.0, 0.3, 2.5, -1.0}) {
    Vector v = psi;
    exact_evolution_apply(ls, T, v);
    EXPECT_LT((v - oracle_exp(ls, 4, T) * psi).norm(), 1e-9) << T;
    EXPECT_NEAR(v.norm(), 1.0, 1e-10);
  }
}

TEST(ExactSim, SingleLayerIsExact) {
  const std::vector<InteractionLayer> one{layer({term("XXI", 0.4), term("ZZI", 0.2), term("IIZ", -0.1)})};
  // every term commutes with every other: the formula has no error
  for (int p : {1, 2}) {
    const std::vector<InteractionLayer> two{one[0], layer({term("ZZZ", 0.3)})};
    const auto f = build_formula(p, 2);
    EXPECT_LT(distance_up_to_phase(trotter_evolution(f, two, 3, 0.3, 0.9), oracle_exp(two, 3, 0.9)), 1e-12);
  }
}

TEST(ExactSim, TrotterMatchesDenseProduct) {
  const auto ls = toy4();
  const auto f = build_formula(2, 3);
  // independent product of layer exponentials
  Matrix step = Matrix::Identity(16, 16);
  for (auto [i, c] : f.factors) step = (cplx(0, -c * 0.2) * dense_layer(ls[i], 4)).exp() * step;
  EXPECT_LT((trotter_step(f, ls, 4, 0.2) - step).norm(), 1e-12);
  // T = 1 with delta = 0.3: three full steps plus a 0.1 remainder
  Matrix rem = Matrix::Identity(16, 16);
  for (auto [i, c] : f.factors) rem = (cplx(0, -c * 0.1) * dense_layer(ls[i], 4)).exp() * rem;
  const Matrix s3 = trotter_step(f, ls, 4, 0.3);
  const Matrix want = rem * s3 * s3 * s3;
  EXPECT_LT((trotter_evolution(f, ls, 4, 0.3, 1.0) - want).norm(), 1e-11);
  // matrix-free path and its adjoint
  Vector psi = Vector::Random(16);
  Vector a = psi;
  trotter_evolution_apply(f, ls, 0.3, 1.0, a);
  EXPECT_LT((a - want * psi).norm(), 1e-11);
  trotter_evolution_apply(f, ls, 0.3, 1.0, a, true);
  EXPECT_LT((a - psi).norm(), 1e-11);
}

TEST(ExactSim, SecondOrderPalindrome) {
  const auto ls = toy4();
  const auto f = build_formula(2, 3);
  // P2(delta) P2(-delta) = I
  EXPECT_LT((trotter_step(f, ls, 4, 0.2) * trotter_step(f, ls, 4, -0.2) - Matrix::Identity(16, 16)).norm(), 1e-12);
}

TEST(ExactSim, PowerIterationMatchesDense) {
  const auto ls = toy4();
  NormOptions o;
  o.force_power_iteration = true;
  o.rel_tol = 1e-9;
  for (int p : {1, 2}) {
    const auto d = numeric_epsilon(ls, 4, p, 1.0, 0.1);
    const auto w = numeric_epsilon(ls, 4, p, 1.0, 0.1, o);
    EXPECT_EQ(d.method, NormMethod::dense_svd);
    EXPECT_EQ(w.method, NormMethod::power_iteration);
    EXPECT_TRUE(w.converged);
    EXPECT_NEAR(w.epsilon / d.epsilon, 1.0, 1e-5);
    // spectral norm oracle on the explicit difference
    const auto f = build_formula(p, 3);
    const double want = spectral_norm(oracle_exp(ls, 4, 1.0) - trotter_evolution(f, ls, 4, 0.1, 1.0));
    EXPECT_NEAR(d.epsilon, want, 1e-10);
  }
}

TEST(ExactSim, EpsilonProperties) {
  const auto ls = toy4();
  double prev = 0;
  for (double d : {0.02, 0.05, 0.1, 0.2}) {
    const double e = numeric_epsilon(ls, 4, 2, 1.0, d).epsilon;
    EXPECT_GT(e, prev);
    EXPECT_LE(e, 2.0);
    prev = e;
  }
  // per-step slope p + 1 on the toy
  for (int p : {1, 2, 4}) {
    const double e1 = numeric_epsilon(ls, 4, p, 0.01, 0.01).epsilon;
    const double e2 = numeric_epsilon(ls, 4, p, 0.02, 0.02).epsilon;
    EXPECT_NEAR(std::log2(e2 / e1), p + 1, 0.05) << p;
  }
}

TEST(ExactSim, Capacity) {
  std::vector<InteractionLayer> big{layer({term(std::string(16, 'Z').c_str(), 1.0)})};
  EXPECT_THROW(exact_evolution(big, 16, 1.0), std::length_error);
}

TEST(ExactSim, Delta0Bisection) {
  FermiHubbardSpec s;
  s.L = 2;
  s.fermion_count = 2;
  const double d0 = numeric_delta0(s, Encoding::compact, 2, 0.2, 1e-3, 1e-3);
  ASSERT_GT(d0, 0.0);
  const double at = numeric_epsilon(s, Encoding::compact, 2, 0.2, d0).epsilon;
  EXPECT_LE(at, 1e-3 * (1 + 1e-9));
}

TEST(Fit, SyntheticRecovery) {
  for (int p : {1, 2, 4}) {
    std::vector<FitPoint> pts;
    for (double T : {1.0, 2.0, 4.0, 8.0})
      for (double L : {2.0, 3.0, 5.0}) pts.push_back({T, L, fit_model(p, 0.3, 0.2, 2.0, 0.7, T, L)});
    const auto f = fit_extrapolation(p, pts);
    // gauge a1 = 1 rescales (a0, b0) by 2 and b1 by 1/2
    EXPECT_NEAR(f.a0, 0.6, 1e-6);
    EXPECT_NEAR(f.b0, 0.4, 1e-6);
    EXPECT_NEAR(f.b1, 0.35, 1e-6);
    EXPECT_LT(f.rms_residual, 1e-9);
    EXPECT_NEAR(f.predict(10, 7), fit_model(p, 0.3, 0.2, 2.0, 0.7, 10, 7), 1e-8);
    EXPECT_GE(f.predict(2, 5), f.predict(4, 5));
  }
}

TEST(Fit, Errors) {
  std::vector<FitPoint> few(5, {1, 1, 0.1});
  EXPECT_THROW(fit_extrapolation(2, few), std::invalid_argument);
  std::vector<FitPoint> flat;
  for (int i = 0; i < 10; ++i) flat.push_back({2.0, 3.0, 0.1});  // single (T, Lambda): rank deficient
  EXPECT_THROW(fit_extrapolation(2, flat), std::runtime_error);
}
