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

// Exhaustive skeleton search for short pulse sequences.
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>
#include <tbb/parallel_for.h>

#include "subpulse/pulse_synthesis.hpp"

namespace subpulse {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<TwoLocalGate> gate_alphabet(int k) {
  std::vector<TwoLocalGate> g;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      for (Pauli pa : {Pauli::X, Pauli::Y, Pauli::Z})
        for (Pauli pb : {Pauli::X, Pauli::Y, Pauli::Z}) g.push_back({a, b, pa, pb});
  return g;
}

int gate_id(const std::vector<TwoLocalGate>& alpha, TwoLocalGate g) {
  if (g.a > g.b) std::swap(g.a, g.b), std::swap(g.pa, g.pb);
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i].a == g.a && alpha[i].b == g.b && alpha[i].pa == g.pa && alpha[i].pb == g.pb)
      return static_cast<int>(i);
  return -1;
}

// Canonical skeletons: lexicographically smallest image under qubit
// permutations and sequence reversal.  Adjacent repeats merge into one gate
// and are skipped, as are skeletons that leave a qubit untouched.
std::vector<std::vector<int>> enumerate_skeletons(int k, int n) {
  const auto alpha = gate_alphabet(k);
  const int A = static_cast<int>(alpha.size());
  std::vector<std::vector<int>> perm_map;  // perm -> gate id map
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  do {
    std::vector<int> m(A);
    for (int g = 0; g < A; ++g) {
      TwoLocalGate t = alpha[g];
      t.a = perm[t.a];
      t.b = perm[t.b];
      m[g] = gate_id(alpha, t);
    }
    perm_map.push_back(std::move(m));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<std::vector<int>> out;
  std::vector<int> s(n, 0), img(n);
  const std::uint64_t total = static_cast<std::uint64_t>(std::pow(A, n));
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = n - 1; i >= 0; --i) s[i] = static_cast<int>(c % A), c /= A;
    bool ok = true;
    for (int i = 1; i < n && ok; ++i) ok = s[i] != s[i - 1];
    if (!ok) continue;
    int cover = 0;
    for (int g : s) cover |= (1 << alpha[g].a) | (1 << alpha[g].b);
    if (cover != (1 << k) - 1) continue;
    bool canonical = true;
    for (const auto& m : perm_map) {
      for (int rev = 0; rev < 2 && canonical; ++rev) {
        for (int i = 0; i < n; ++i) img[i] = m[s[rev ? n - 1 - i : i]];
        if (std::lexicographical_compare(img.begin(), img.end(), s.begin(), s.end())) canonical = false;
      }
      if (!canonical) break;
    }
    if (canonical) out.push_back(s);
  }
  return out;
}

struct Evaluator {
  int k;
  std::vector<PauliTerm> gates;
  Matrix target;

  Matrix unitary(const double* t) const {
    const auto d = Eigen::Index{1} << k;
    Matrix u = Matrix::Identity(d, d);
    for (std::size_t i = 0; i < gates.size(); ++i) apply_pauli_exponential(gates[i], t[i], u);
    return u;
  }
  // phase-optimized Frobenius distance, an upper bound on the spectral one
  double frobenius(const double* t) const {
    const Matrix u = unitary(t);
    const double d = static_cast<double>(u.rows());
    const double tr = std::abs((target.adjoint() * u).trace());
    return std::sqrt(std::max(0.0, 2 * d - 2 * tr));
  }
};

// Exact phase-optimized spectral distance between unitaries: half the
// smallest arc covering the eigenphases of v^dag u, as a chord.
double spectral_phase_distance(const Matrix& u, const Matrix& v) {
  Eigen::ComplexEigenSolver<Matrix> es(v.adjoint() * u, false);
  std::vector<double> ang;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ang.push_back(std::arg(es.eigenvalues()[i]));
  std::sort(ang.begin(), ang.end());
  double gap = ang.front() + 2 * kPi - ang.back();
  for (std::size_t i = 1; i < ang.size(); ++i) gap = std::max(gap, ang[i] - ang[i - 1]);
  const double arc = 2 * kPi - gap;
  return 2 * std::sin(arc / 4);
}

struct Residual {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const Evaluator* ev;
  double lambda;
  std::size_t* counter;
  int n_in, n_out;
  Residual(const Evaluator* e, int n, double lam, std::size_t* cnt)
      : ev(e), lambda(lam), counter(cnt), n_in(n + 1), n_out(2 * (1 << (2 * e->k)) + n) {}
  int inputs() const { return n_in; }
  int values() const { return n_out; }
  int operator()(const InputType& x, ValueType& f) const {
    ++*counter;
    const int n = static_cast<int>(ev->gates.size());
    const Matrix u = ev->unitary(x.data());
    const Matrix r = u - std::polar(1.0, x[n]) * ev->target;
    const Eigen::Index m = r.size();
    for (Eigen::Index i = 0; i < m; ++i) {
      f[2 * i] = r.data()[i].real();
      f[2 * i + 1] = r.data()[i].imag();
    }
    for (int i = 0; i < n; ++i) f[2 * m + i] = std::sqrt(lambda) * x[i];
    return 0;
  }
};

struct Candidate {
  double cost, eps;
  std::vector<double> times;
};

}  // namespace

std::size_t count_skeletons(int k, int n) { return enumerate_skeletons(k, n).size(); }

double ParetoFront::zero_error_cost(double tol) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points)
    if (p.epsilon <= tol) best = std::min(best, p.cost);
  return best;
}

ParetoFront optimality_search(int k, int n, double T, const OptimalitySearchOptions& opt) {
  if (k < 2 || k > 3 || n < 1 || n > 5) throw std::invalid_argument("optimality search supports k in {2,3}, n <= 5");
  const auto alpha = gate_alphabet(k);
  const auto skels = enumerate_skeletons(k, n);
  ParetoFront front;
  front.skeletons = skels.size();

  PauliString zk(k);
  for (int q = 0; q < k; ++q) zk.set(q, Pauli::Z);
  const Matrix target = pauli_exponential({zk, 1.0}, T);

  auto evaluator = [&](const std::vector<int>& s) {
    Evaluator ev{k, {}, target};
    for (int g : s) {
      const auto& a = alpha[g];
      ev.gates.push_back({PauliString::sparse(k, {{a.a, a.pa}, {a.b, a.pb}}), 1.0});
    }
    return ev;
  };

  // Stage 1: random sampling, binned per skeleton.
  const std::size_t per = static_cast<std::size_t>(std::max(1, opt.samples_per_skeleton));
  std::size_t n_sk = skels.size();
  if (n_sk * per > opt.budget) {
    n_sk = opt.budget / per;
    front.partial = true;
  }
  std::vector<std::map<long, Candidate>> bins(n_sk);
  std::vector<double> score(n_sk, std::numeric_limits<double>::infinity());
  std::vector<std::vector<double>> best_t(n_sk);
  tbb::parallel_for(std::size_t{0}, n_sk, [&](std::size_t i) {
    const auto ev = evaluator(skels[i]);
    std::mt19937_64 rng(splitmix(opt.seed ^ splitmix(i)));
    std::uniform_real_distribution<double> U(-kPi / 2, kPi / 2);
    std::vector<double> t(n);
    for (std::size_t s = 0; s < per; ++s) {
      double cost = 0;
      for (auto& x : t) x = U(rng), cost += std::abs(x);
      const double e = ev.frobenius(t.data());
      auto& b = bins[i][std::lround(std::floor(cost / opt.bin_width))];
      if (b.times.empty() || e < b.eps) b = {cost, e, t};
      if (e < score[i]) score[i] = e, best_t[i] = t;
    }
  });
  front.evaluations = n_sk * per;

  // Stage 2: local refinement of the most promising skeletons.
  std::vector<std::size_t> order(n_sk);
  for (std::size_t i = 0; i < n_sk; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return score[a] < score[b]; });
  // Sampled scores rank skeletons poorly (all sit near the identity at small
  // times), so the leftover budget decides how many get refined.
  constexpr std::size_t kRefineCost = 600;
  const std::size_t left = opt.budget > front.evaluations ? opt.budget - front.evaluations : 0;
  const std::size_t n_ref = std::min<std::size_t>(
      order.size(), std::max<std::size_t>(static_cast<std::size_t>(std::max(0, opt.refine_top)), left / kRefineCost));
  std::vector<std::vector<Candidate>> refined(n_ref);
  std::vector<std::size_t> used(n_ref, 0);
  const std::size_t cap = n_ref ? left / n_ref : 0;
  tbb::parallel_for(std::size_t{0}, n_ref, [&](std::size_t r) {
    const std::size_t i = order[r];
    const auto ev = evaluator(skels[i]);
    std::mt19937_64 rng(splitmix(opt.seed + 0x51ed270b27u * (i + 1)));
    std::uniform_real_distribution<double> U(-kPi / 2, kPi / 2);
    constexpr int kStarts = 6;
    for (int st = 0; st < kStarts && used[r] < cap; ++st) {
      Eigen::VectorXd x(n + 1);
      for (int j = 0; j < n; ++j) x[j] = st == 0 ? best_t[i][j] : U(rng);
      const Matrix u0 = ev.unitary(x.data());
      x[n] = std::arg((ev.target.adjoint() * u0).trace());
      for (double lam : {1e-3, 0.0}) {
        Residual f(&ev, n, lam, &used[r]);
        Eigen::NumericalDiff<Residual> nd(f);
        Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Residual>> lm(nd);
        lm.parameters.maxfev = static_cast<int>(std::min<std::size_t>(4000, cap));
        lm.parameters.xtol = 1e-14;
        lm.parameters.ftol = 1e-14;
        lm.minimize(x);
      }
      std::vector<double> t(x.data(), x.data() + n);
      for (auto& v : t) v = std::remainder(v, 2 * kPi);
      double cost = 0;
      for (double v : t) cost += std::abs(v);
      refined[r].push_back({cost, spectral_phase_distance(ev.unitary(t.data()), ev.target), t});
    }
  });
  for (auto u : used) front.evaluations += u;
  if (n_ref && std::any_of(used.begin(), used.end(), [&](auto u) { return u >= cap; })) front.partial = true;

  // Merge: per cost bin keep the smallest error, then keep the Pareto set.
  std::map<long, ParetoPoint> merged;
  auto offer = [&](std::size_t i, const Candidate& c, bool exact) {
    const long key = std::lround(std::floor(c.cost / opt.bin_width));
    auto it = merged.find(key);
    const double eps = exact ? c.eps : spectral_phase_distance(evaluator(skels[i]).unitary(c.times.data()), target);
    if (it == merged.end() || eps < it->second.epsilon) {
      ParetoPoint p{c.cost, eps, {}, c.times};
      for (int g : skels[i]) p.skeleton.push_back(alpha[g]);
      merged[key] = std::move(p);
    }
  };
  for (std::size_t r = 0; r < n_ref; ++r)
    for (const auto& c : refined[r]) offer(order[r], c, true);
  // best sampled candidate of each bin across skeletons
  std::map<long, std::pair<std::size_t, Candidate>> sampled;
  for (std::size_t i = 0; i < n_sk; ++i)
    for (auto& [key, c] : bins[i]) {
      auto it = sampled.find(key);
      if (it == sampled.end() || c.eps < it->second.second.eps) sampled[key] = {i, c};
    }
  for (auto& [key, ic] : sampled) offer(ic.first, ic.second, false);

  double best = std::numeric_limits<double>::infinity();
  for (auto& [key, p] : merged) {
    if (p.epsilon < best) {
      best = p.epsilon;
      front.points.push_back(p);
    }
  }
  return front;
}

}  // namespace subpulse
