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

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "subpulse/fh_encoding.hpp"
#include "subpulse/pauli.hpp"
#include "subpulse/trotter.hpp"

namespace subpulse {

inline constexpr std::size_t kMaxMatrixFreeQubits = 22;
inline constexpr std::size_t kMaxDenseNormQubits = 10;  // dense spectral norm at or below this

// ---- propagators ----

/// e^{-i H T} with H the sum of all layers (dense, <= kMaxDenseQubits).
Matrix exact_evolution(const std::vector<InteractionLayer>& layers, std::size_t n_qubits, double T);

/// psi <- e^{-i H T} psi by Lanczos propagation with adaptive sub-steps.
struct KrylovOptions {
  int dimension = 30;
  double tol = 1e-10;  // per application
};
void exact_evolution_apply(const std::vector<InteractionLayer>& layers, double T, Vector& psi,
                           const KrylovOptions& opt = {});

/// P(delta)^n P(r) with n = floor(T / delta) and remainder r = T - n delta, each
/// layer exponential applied exactly as a product of its (commuting) terms.
Matrix trotter_evolution(const ProductFormula& f, const std::vector<InteractionLayer>& layers, std::size_t n_qubits,
                         double delta, double T);
void trotter_evolution_apply(const ProductFormula& f, const std::vector<InteractionLayer>& layers, double delta,
                             double T, Vector& psi, bool adjoint = false);
/// One step P(delta) as a dense matrix.
Matrix trotter_step(const ProductFormula& f, const std::vector<InteractionLayer>& layers, std::size_t n_qubits,
                    double delta);

// ---- numeric Trotter error ----

enum class NormMethod { dense_svd, power_iteration };
std::string to_string(NormMethod m);

struct NumericErrorPoint {
  int L = 2;
  Encoding encoding = Encoding::compact;
  int p = 1;
  double T = 1.0;
  double delta = 0.1;
  double epsilon = 0.0;
  NormMethod method = NormMethod::dense_svd;
  bool converged = true;
  double ritz_residual = 0.0;
};
nlohmann::json to_json(const NumericErrorPoint& e);
std::string numeric_error_csv(const std::vector<NumericErrorPoint>& pts);

struct NormOptions {
  int restarts = 3;
  int max_iterations = 500;
  double rel_tol = 1e-6;
  std::uint64_t seed = 1;
  bool force_power_iteration = false;
};

/// ||e^{-iHT} - P(delta)^{T/delta}|| for explicit layers.
NumericErrorPoint numeric_epsilon(const std::vector<InteractionLayer>& layers, std::size_t n_qubits, int p, double T,
                                  double delta, const NormOptions& opt = {});
NumericErrorPoint numeric_epsilon(const FermiHubbardSpec& spec, Encoding encoding, int p, double T, double delta,
                                  const NormOptions& opt = {});

/// Largest delta with numeric_epsilon <= eps_target (bisection, relative tol).
double numeric_delta0(const FermiHubbardSpec& spec, Encoding encoding, int p, double T, double eps_target,
                      double rel_tol = 1e-4, const NormOptions& opt = {});

// ---- delta0 extrapolation fit ----

/// delta0 = (a0 + b0 / T^{1/p}) (a1 + b1 / Lambda^{(p+1)/p})
struct FitPoint {
  double T = 1.0;
  double Lambda = 1.0;
  double delta0 = 0.0;
};

struct FitResult {
  int p = 1;
  double a0 = 0, b0 = 0, a1 = 1, b1 = 0;  // gauge a1 = 1
  double rms_residual = 0.0;
  std::vector<double> residuals;
  int iterations = 0;

  double predict(double T, double Lambda) const;
};
nlohmann::json to_json(const FitResult& f);

double fit_model(int p, double a0, double b0, double a1, double b1, double T, double Lambda);
FitResult fit_extrapolation(int p, const std::vector<FitPoint>& points);

}  // namespace subpulse
