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

#include "subpulse/trotter.hpp"
#include "subpulse/pauli.hpp"

using namespace subpulse;

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// Dense product of a formula's factors, H_i the given layer matrices.
Matrix product(const ProductFormula& f, const std::vector<Matrix>& h, double delta) {
  Matrix u = Matrix::Identity(h[0].rows(), h[0].cols());
  for (auto [i, c] : f.factors) u = (cplx(0, -c * delta) * h[i]).exp() * u;
  return u;
}

}  // namespace

TEST(Formula, Structure) {
  const auto f1 = build_formula(1, 5);
  EXPECT_EQ(f1.S, 1);
  EXPECT_TRUE((f1.tcoeff.array() == 1.0).all());
  const auto f2 = build_formula(2, 3);
  EXPECT_EQ(f2.S, 2);
  EXPECT_TRUE((f2.tcoeff.array() == 0.5).all());
  EXPECT_DOUBLE_EQ(f2.H, 1.0);
  EXPECT_THROW(build_formula(3, 2), std::invalid_argument);
  EXPECT_THROW(build_formula(2, 1), std::invalid_argument);
}

TEST(Formula, ClosedForms) {
  const double c = std::cbrt(4.0);
  EXPECT_NEAR(suzuki_a(2), 1.0 / (4.0 - c), 1e-15);
  EXPECT_NEAR(suzuki_a(2), 0.41449, 1e-5);
  EXPECT_NEAR(formula_H(4), (4 + c) / std::abs(4 - c), 1e-12);
  EXPECT_NEAR(formula_H(4), 2.31593, 1e-5);
  EXPECT_DOUBLE_EQ(formula_G(1), 1.0);
  EXPECT_NEAR(formula_G(2), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(formula_G(4), 2.0 / 120.0 * std::pow(10.0 / 3.0, 5.0), 1e-12);
}

TEST(Formula, CoefficientIdentities) {
  for (int p : {1, 2, 4, 6})
    for (int M : {2, 3, 5}) {
      const auto f = build_formula(p, M);
      EXPECT_LE(f.S, p == 1 ? 1 : 2 * static_cast<int>(std::pow(5, p / 2 - 1)));
      for (int i = 0; i < M; ++i) EXPECT_NEAR(f.tcoeff.col(i).sum(), 1.0, 1e-12);
      EXPECT_NEAR(f.tcoeff.cwiseAbs().sum(), M * f.H, 1e-12);
      if (p > 1) {
        EXPECT_LE(f.tcoeff.cwiseAbs().maxCoeff(), f.B + 1e-15);
        EXPECT_LE(f.B, 0.5 * std::pow(2.0 / 3.0, p / 2 - 1) + 1e-15);
      }
      EXPECT_EQ(static_cast<int>(f.factors.size()), f.S * M);
    }
}

TEST(Formula, OrderCondition) {
  std::mt19937_64 rng(11);
  std::vector<Matrix> h;
  for (int k = 0; k < 2; ++k) {
    Matrix a = Matrix::Random(4, 4);
    Matrix s = 0.5 * (a + a.adjoint());
    h.push_back(s / spectral_norm(s));
  }
  const Matrix H = h[0] + h[1];
  for (int p : {1, 2, 4}) {
    const auto f = build_formula(p, 2);
    std::vector<double> r;
    for (double d : {0.04, 0.02}) r.push_back(spectral_norm(product(f, h, d) - (cplx(0, -d) * H).exp()) / std::pow(d, p));
    EXPECT_LT(r[1], 0.6 * r[0]) << p;  // R_p / delta^p shrinks like delta
  }
}

TEST(Bounds, Basic) {
  BoundQuery q;
  q.p = 1;
  q.M = 2;
  q.Lambda = 1;
  q.T = 0.1;
  q.delta = 0.1;
  EXPECT_NEAR(bound_basic(q).epsilon, 0.2 * 0.2, 1e-15);  // (T/delta) (delta M Lambda)^2 G_1
  q.p = 4;
  q.M = 5;
  q.Lambda = 5;
  q.T = 7;
  q.delta = 0.01;
  EXPECT_NEAR(bound_basic(q).epsilon, 7 / 0.01 * std::pow(0.01 * 25, 5) * formula_G(4), 1e-9);
  q.delta = 0.0;
  EXPECT_EQ(bound_basic(q).epsilon, 0.0);
}

TEST(Bounds, ExplicitSum) {
  BoundQuery q;
  q.p = 2;
  q.M = 5;
  q.Lambda = 5;
  q.T = 7;
  q.delta = 0.01;
  EXPECT_NEAR(bound_explicit_sum(q).epsilon, 2 * 7 * 1e-4 * 125.0 * 125.0 / 6, 1e-9);
  q.p = 4;
  const double H = formula_H(4);
  const double want = 2 * 7 * std::pow(0.01, 4) * std::pow(5.0, 5) * std::pow(5.0, 5) * std::pow(H, 5) / factorial(5);
  EXPECT_NEAR(bound_explicit_sum(q).epsilon / want, 1.0, 1e-12);
  q.p = 1;
  EXPECT_DOUBLE_EQ(bound_explicit_sum(q).epsilon, bound_basic(q).epsilon);
}

TEST(Bounds, CommutatorIntegral) {
  for (int qq : {2, 3, 5})
    for (double a : {0.5, 3.0, 40.0})
      for (double d : {1e-3, 0.05, 0.3}) {
        const double s = commutator_integral_series(qq, a, d), g = commutator_integral_quadrature(qq, a, d);
        EXPECT_NEAR(s / g, 1.0, 1e-9) << qq << " " << a << " " << d;
      }
}

TEST(Bounds, CommutatorProperties) {
  BoundQuery q;
  q.p = 2;
  q.M = 5;
  q.Lambda = 1;
  q.N = 1;
  q.n_tilde = 0;
  q.T = q.delta = 0.1;
  EXPECT_EQ(bound_commutator(q).epsilon, 0.0);
  q.n_tilde = 1;
  double prev = 0;
  for (double d = 0.01; d <= 0.3; d += 0.01) {
    q.T = q.delta = d;
    const double e = bound_commutator(q).epsilon;
    EXPECT_GT(e, prev);
    prev = e;
  }
  q.N = 0;
  EXPECT_FALSE(bound_commutator(q).available);
}

TEST(Bounds, TaylorCoefficientTable) {
  // printed table: rows M, columns l = p .. p+5
  const double p1[4][6] = {{2, 6, 14, 30, 62, 126},
                           {6, 26, 90, 290, 906, 2786},
                           {12, 68, 312, 1340, 5592, 22988},
                           {20, 140, 800, 4292, 22400, 115220}};
  for (int M = 2; M <= 5; ++M)
    for (int j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(taylor_coefficient(1, M, 1 + j), p1[M - 2][j]) << M << " " << j;
  EXPECT_NEAR(taylor_coefficient(2, 2, 2), 3, 5e-3);
  EXPECT_NEAR(taylor_coefficient(2, 2, 4), 22.75, 5e-3);
  EXPECT_NEAR(taylor_coefficient(2, 3, 2), 13, 5e-3);
  EXPECT_NEAR(taylor_coefficient(2, 3, 4), 213.25, 5e-3);
  EXPECT_NEAR(taylor_coefficient(4, 2, 4), 4.89745, 5e-5);
  EXPECT_NEAR(taylor_coefficient(4, 3, 4), 43.6604, 5e-4);
  EXPECT_NEAR(taylor_coefficient(2, 2, 1), 0.0, 1e-12);  // order condition
  EXPECT_THROW(taylor_coefficient(2, 2, -1), std::invalid_argument);
}

TEST(Bounds, TaylorCoefficientUpperBoundsRemainder) {
  // f(p, 2, p) bounds ||R^{(p+1)}(0)|| / (p+1)! delta^{p+1} for Lambda = 1 layers
  std::mt19937_64 rng(4);
  for (int p : {1, 2}) {
    const auto f = build_formula(p, 2);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<Matrix> h;
      for (int k = 0; k < 2; ++k) {
        Matrix a = Matrix::Random(4, 4);
        Matrix s = 0.5 * (a + a.adjoint());
        h.push_back(s / spectral_norm(s));
      }
      const double d = 1e-2;
      const Matrix exact = (cplx(0, -d) * (h[0] + h[1])).exp();
      const double measured = spectral_norm(product(f, h, d) - exact) / std::pow(d, p + 1);
      EXPECT_LE(measured, taylor_coefficient(p, 2, p) / factorial(p + 1) * 1.05);
    }
  }
}

TEST(Bounds, TaylorOfTaylorTighterAndScaling) {
  BoundQuery q;
  q.p = 2;
  q.M = 5;
  q.Lambda = 5;
  for (double d : {0.001, 0.01, 0.05, 0.1}) {
    q.T = q.delta = d;
    EXPECT_LT(bound_taylor_of_taylor(q).epsilon, bound_explicit_sum(q).epsilon) << d;
  }
  for (int p : {1, 2}) {
    q.p = p;
    q.Lambda = 1;
    q.M = 3;
    std::vector<double> lx, ly;
    for (double d = 1e-3; d <= 0.1 + 1e-12; d *= std::sqrt(10.0)) {
      q.T = q.delta = d;
      lx.push_back(std::log(d));
      ly.push_back(std::log(bound_taylor_of_taylor(q).epsilon));
    }
    const double n = lx.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) sx += lx[i], sy += ly[i], sxx += lx[i] * lx[i], sxy += lx[i] * ly[i];
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    EXPECT_NEAR(slope, p + 1, 0.05) << p;
  }
}

TEST(Bounds, TightestIsMinimum) {
  BoundQuery q;
  q.p = 2;
  q.M = 5;
  q.Lambda = 5;
  q.T = 7;
  q.N = 40;
  q.n_tilde = 8;
  for (double d : {1e-4, 1e-3, 1e-2}) {
    q.delta = d;
    const auto t = tightest_bound(q);
    for (auto f : kAllFamilies) {
      const auto r = evaluate_bound(f, q);
      if (r.available) EXPECT_LE(t.epsilon, r.epsilon);
    }
    EXPECT_LE(t.epsilon, bound_basic(q).epsilon);
  }
  // p = 1: basic and explicit_sum coincide; the earlier family wins ties
  q.p = 1;
  q.N = 0;
  q.delta = 1e-6;
  const auto t = tightest_bound(q);
  if (t.family != BoundFamily::taylor_of_taylor) EXPECT_EQ(t.family, BoundFamily::basic);
}

TEST(Bounds, Inversion) {
  BoundQuery q;
  q.p = 1;
  q.M = 5;
  q.Lambda = 5;
  q.T = 7;
  auto r = invert_for_delta(BoundFamily::basic, q, 0.1);
  EXPECT_NEAR(r.delta0, 0.1 / (7 * 25 * 25), 1e-15);
  EXPECT_EQ(r.method, "closed_form");
  q.p = 2;
  const auto a = invert_for_delta(BoundFamily::explicit_sum, q, 0.1);
  const auto b = invert_for_delta(BoundFamily::explicit_sum, q, 0.1, true);
  EXPECT_NEAR(a.delta0 / b.delta0, 1.0, 1e-9);
  for (auto f : {BoundFamily::basic, BoundFamily::explicit_sum, BoundFamily::taylor_of_taylor}) {
    const auto s = invert_for_delta(f, q, 0.1, true);
    q.delta = s.delta0;
    const double e = evaluate_bound(f, q).epsilon;
    EXPECT_LE(e, 0.1 * (1 + 1e-12));
    EXPECT_GE(e, 0.1 * (1 - 1e-6));
  }
  // reference calibration
  q.p = 4;
  EXPECT_NEAR(invert_tightest(q, 0.1).delta0, 0.025020, 1e-6);
  q.p = 2;
  EXPECT_NEAR(invert_tightest(q, 0.1).delta0, 0.0030860, 1e-7);
}

TEST(Bounds, SweepCsv) {
  BoundQuery q;
  const auto csv = bound_sweep_csv(q, {1, 2}, {BoundFamily::basic}, {0.1, 0.2});
  EXPECT_EQ(csv.rfind("# schema=1\np,family,delta,epsilon\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2 + 4);
}

TEST(Bounds, FormulaJson) {
  const auto j = to_json(build_formula(4, 2));
  EXPECT_EQ(j["p"], 4);
  EXPECT_EQ(j["stages"], 10);
}
