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

#include "subpulse/exact_sim.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>

#include <tbb/parallel_for.h>

namespace subpulse {

std::string to_string(NormMethod m) { return m == NormMethod::dense_svd ? "dense_svd" : "power_iteration"; }

namespace {

std::size_t qubits_of(const std::vector<InteractionLayer>& layers) {
  for (const auto& l : layers)
    if (!l.terms.empty()) return l.terms.front().string.size();
  throw std::invalid_argument("Hamiltonian has no terms");
}

void check_capacity(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) throw std::length_error(std::string(what) + ": " + std::to_string(n) + " qubits exceed the limit of " + std::to_string(cap));
}

void apply_h(const std::vector<InteractionLayer>& layers, const Vector& in, Vector& out) {
  out.setZero(in.size());
  for (const auto& l : layers)
    for (const auto& t : l.terms) accumulate_pauli(t, in, out);
}

// exp(-i tau H_layer): the layer's terms commute, so the product is exact
template <class Target>
void apply_layer(const InteractionLayer& l, double tau, Target& x) {
  for (const auto& t : l.terms) apply_pauli_exponential(t, -tau, x);
}

template <class Target>
void apply_step(const ProductFormula& f, const std::vector<InteractionLayer>& layers, double delta, Target& x,
                bool adjoint) {
  if (!adjoint) {
    for (auto [i, c] : f.factors) apply_layer(layers[i], c * delta, x);
  } else {
    for (auto it = f.factors.rbegin(); it != f.factors.rend(); ++it) apply_layer(layers[it->first], -it->second * delta, x);
  }
}

void split_time(double T, double delta, long long& n, double& rem) {
  if (!(delta > 0) || T < 0) throw std::invalid_argument("need delta > 0 and T >= 0");
  n = static_cast<long long>(std::floor(T / delta + 1e-9));
  rem = T - static_cast<double>(n) * delta;
  if (std::abs(rem) < 1e-12 * std::max(1.0, T)) rem = 0.0;
}

double dense_norm(const Matrix& d) {
  const Matrix g = d.adjoint() * d;
  Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

// One-slot cache: delta sweeps reuse the exact propagator.
Matrix cached_exact(const std::vector<InteractionLayer>& layers, std::size_t n, double T);

}  // namespace

Matrix exact_evolution(const std::vector<InteractionLayer>& layers, std::size_t n, double T) {
  check_capacity(n, kMaxDenseQubits, "dense evolution");
  const Matrix h = dense_hamiltonian(layers, n);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXcd ph = (es.eigenvalues().cast<cplx>() * cplx(0, -T)).array().exp();
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

void exact_evolution_apply(const std::vector<InteractionLayer>& layers, double T, Vector& psi,
                           const KrylovOptions& opt) {
  const std::size_t n = qubits_of(layers);
  check_capacity(n, kMaxMatrixFreeQubits, "matrix-free evolution");
  if (static_cast<std::size_t>(psi.size()) != (std::size_t{1} << n)) throw std::invalid_argument("state dimension mismatch");
  if (T == 0.0) return;
  const int mmax = std::max(2, opt.dimension);
  double done = 0.0, dt = T;
  std::vector<Vector> V;
  Vector w;
  while (std::abs(T - done) > 1e-15 * std::abs(T)) {
    const double beta0 = psi.norm();
    if (beta0 == 0.0) return;
    V.assign(1, psi / beta0);
    std::vector<double> alpha, beta;
    bool happy = false;
    for (int j = 0; j < mmax; ++j) {
      apply_h(layers, V[j], w);
      const double a = V[j].dot(w).real();
      alpha.push_back(a);
      // full reorthogonalisation keeps the small basis clean
      for (const auto& v : V) w -= v.dot(w) * v;
      const double b = w.norm();
      beta.push_back(b);
      if (b < 1e-12 * std::max(1.0, std::abs(a))) {
        happy = true;
        break;
      }
      if (j + 1 < mmax) V.push_back(w / b);
    }
    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd Tm = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) {
      Tm(j, j) = alpha[j];
      if (j + 1 < m) Tm(j, j + 1) = Tm(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Tm);
    const Eigen::MatrixXd& Q = es.eigenvectors();
    double step = std::abs(dt) < std::abs(T - done) ? dt : T - done;
    Eigen::VectorXcd c;
    for (;;) {
      Eigen::VectorXcd ph(m);
      for (int k = 0; k < m; ++k) ph[k] = std::exp(cplx(0, -step * es.eigenvalues()[k])) * Q(0, k);
      c = Q.cast<cplx>() * ph;
      const double err = happy ? 0.0 : beta0 * beta.back() * std::abs(c[m - 1]);
      if (err <= opt.tol || std::abs(step) < 1e-12) break;
      step *= 0.5;
    }
    Vector next = Vector::Zero(psi.size());
    for (int k = 0; k < m && k < static_cast<int>(V.size()); ++k) next += (beta0 * c[k]) * V[k];
    psi = std::move(next);
    done += step;
    dt = step * 1.5;
  }
}

Matrix trotter_step(const ProductFormula& f, const std::vector<InteractionLayer>& layers, std::size_t n,
                    double delta) {
  check_capacity(n, kMaxDenseQubits, "dense Trotter step");
  Matrix P = Matrix::Identity(std::size_t{1} << n, std::size_t{1} << n);
  apply_step(f, layers, delta, P, false);
  return P;
}

Matrix trotter_evolution(const ProductFormula& f, const std::vector<InteractionLayer>& layers, std::size_t n,
                         double delta, double T) {
  long long steps = 0;
  double rem = 0.0;
  split_time(T, delta, steps, rem);
  const Matrix step = trotter_step(f, layers, n, delta);
  Matrix acc = Matrix::Identity(step.rows(), step.cols()), base = step;
  for (long long e = steps; e > 0; e >>= 1) {
    if (e & 1) acc = base * acc;
    if (e > 1) base = base * base;
  }
  if (rem > 0) apply_step(f, layers, rem, acc, false);
  return acc;
}

void trotter_evolution_apply(const ProductFormula& f, const std::vector<InteractionLayer>& layers, double delta,
                             double T, Vector& psi, bool adjoint) {
  check_capacity(qubits_of(layers), kMaxMatrixFreeQubits, "matrix-free Trotter evolution");
  long long steps = 0;
  double rem = 0.0;
  split_time(T, delta, steps, rem);
  if (!adjoint) {
    for (long long s = 0; s < steps; ++s) apply_step(f, layers, delta, psi, false);
    if (rem > 0) apply_step(f, layers, rem, psi, false);
  } else {
    if (rem > 0) apply_step(f, layers, rem, psi, true);
    for (long long s = 0; s < steps; ++s) apply_step(f, layers, delta, psi, true);
  }
}

namespace {

Matrix cached_exact(const std::vector<InteractionLayer>& layers, std::size_t n, double T) {
  static std::mutex mu;
  static std::string key;
  static Matrix value;
  std::ostringstream os;
  os.precision(17);
  os << n << ' ' << T;
  for (const auto& l : layers)
    for (const auto& t : l.terms) os << ' ' << t.string.str() << ':' << t.coeff;
  {
    std::lock_guard lock(mu);
    if (os.str() == key) return value;
  }
  Matrix u = exact_evolution(layers, n, T);
  std::lock_guard lock(mu);
  key = os.str();
  value = u;
  return u;
}

}  // namespace

NumericErrorPoint numeric_epsilon(const std::vector<InteractionLayer>& layers, std::size_t n, int p, double T,
                                  double delta, const NormOptions& opt) {
  const ProductFormula f = build_formula(p, static_cast<int>(layers.size()));
  NumericErrorPoint pt;
  pt.p = p;
  pt.T = T;
  pt.delta = delta;
  if (n <= kMaxDenseNormQubits && !opt.force_power_iteration) {
    pt.method = NormMethod::dense_svd;
    pt.epsilon = dense_norm(cached_exact(layers, n, T) - trotter_evolution(f, layers, n, delta, T));
    return pt;
  }
  check_capacity(n, kMaxMatrixFreeQubits, "numeric epsilon");
  pt.method = NormMethod::power_iteration;
  const std::size_t dim = std::size_t{1} << n;
  auto apply_d = [&](const Vector& v, bool adj) {
    Vector a = v, b = v;
    exact_evolution_apply(layers, adj ? -T : T, a);
    trotter_evolution_apply(f, layers, delta, T, b, adj);
    return Vector(a - b);
  };
  std::vector<double> lam(opt.restarts, 0.0), res(opt.restarts, 0.0);
  std::vector<char> conv(opt.restarts, 0);
  tbb::parallel_for(0, opt.restarts, [&](int r) {
    std::mt19937_64 g(opt.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(r));
    std::normal_distribution<double> nd;
    Vector x(dim);
    for (std::size_t i = 0; i < dim; ++i) x[i] = cplx(nd(g), nd(g));
    x.normalize();
    double prev = -1.0;
    for (int it = 0; it < opt.max_iterations; ++it) {
      const Vector y = apply_d(apply_d(x, false), true);
      const double l = x.dot(y).real();
      res[r] = (y - l * x).norm();
      lam[r] = l;
      const double ny = y.norm();
      if (ny == 0.0) {
        conv[r] = 1;
        break;
      }
      if (res[r] <= opt.rel_tol * std::max(l, 1e-300) ||
          (prev > 0 && std::abs(l - prev) <= 1e-3 * opt.rel_tol * l)) {
        conv[r] = 1;
        break;
      }
      prev = l;
      x = y / ny;
    }
  });
  const int best = static_cast<int>(std::max_element(lam.begin(), lam.end()) - lam.begin());
  pt.epsilon = std::sqrt(std::max(0.0, lam[best]));
  pt.converged = conv[best] != 0;
  pt.ritz_residual = res[best];
  return pt;
}

NumericErrorPoint numeric_epsilon(const FermiHubbardSpec& spec, Encoding encoding, int p, double T, double delta,
                                  const NormOptions& opt) {
  const EncodedHamiltonian h = encode(spec, encoding);
  NumericErrorPoint pt = numeric_epsilon(h.layers, h.n_qubits(), p, T, delta, opt);
  pt.L = spec.L;
  pt.encoding = encoding;
  return pt;
}

double numeric_delta0(const FermiHubbardSpec& spec, Encoding encoding, int p, double T, double eps_target,
                      double rel_tol, const NormOptions& opt) {
  if (!(T > 0) || !(eps_target > 0)) throw std::invalid_argument("need T > 0 and eps_target > 0");
  const EncodedHamiltonian h = encode(spec, encoding);
  auto eps = [&](double d) { return numeric_epsilon(h.layers, h.n_qubits(), p, T, d, opt).epsilon; };
  double hi = T;
  if (eps(hi) <= eps_target) return hi;
  double lo = hi;
  while (lo > 1e-9 * T) {
    lo *= 0.5;
    if (eps(lo) <= eps_target) break;
    hi = lo;
  }
  while ((hi - lo) > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (eps(mid) <= eps_target ? lo : hi) = mid;
  }
  return lo;
}

nlohmann::json to_json(const NumericErrorPoint& e) {
  return {{"L", e.L},       {"encoding", to_string(e.encoding)}, {"p", e.p},
          {"T", e.T},       {"delta", e.delta},                  {"epsilon", e.epsilon},
          {"norm_method", to_string(e.method)}, {"converged", e.converged}, {"ritz_residual", e.ritz_residual}};
}

std::string numeric_error_csv(const std::vector<NumericErrorPoint>& pts) {
  std::ostringstream os;
  os.precision(12);
  os << "# schema=1\nL,encoding,p,T,delta,epsilon,norm_method,converged\n";
  for (const auto& e : pts)
    os << e.L << ',' << to_string(e.encoding) << ',' << e.p << ',' << e.T << ',' << e.delta << ',' << e.epsilon << ','
       << to_string(e.method) << ',' << (e.converged ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace subpulse
