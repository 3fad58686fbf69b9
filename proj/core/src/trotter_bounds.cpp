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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "subpulse/trotter.hpp"

namespace subpulse {

std::string to_string(BoundFamily f) {
  switch (f) {
    case BoundFamily::basic: return "basic";
    case BoundFamily::explicit_sum: return "explicit_sum";
    case BoundFamily::commutator: return "commutator";
    case BoundFamily::taylor_of_taylor: return "taylor_of_taylor";
  }
  return "basic";
}

BoundFamily bound_family_from_string(const std::string& s) {
  for (auto f : kAllFamilies)
    if (to_string(f) == s) return f;
  throw std::invalid_argument("unknown bound family '" + s + "'");
}

void BoundQuery::validate() const {
  if (p < 1 || (p > 1 && p % 2)) throw std::invalid_argument("order p must be 1 or even");
  if (M < 2) throw std::invalid_argument("M must be >= 2");
  if (!(Lambda >= 0) || !(T >= 0) || !(delta >= 0)) throw std::invalid_argument("Lambda, T, delta must be >= 0");
  if (N < 0 || n_tilde < 0) throw std::invalid_argument("N and n_tilde must be >= 0");
  if (q_order != 0 && q_order < p) throw std::invalid_argument("q_order must be >= p");
}

namespace {

double fact(int n) { return std::tgamma(n + 1.0); }

BoundResult zero_result(BoundFamily f) { return {f, 0.0, true, nlohmann::json::object()}; }

}  // namespace

// ------------------------------------------------------------------ basic

BoundResult bound_basic(const BoundQuery& q) {
  q.validate();
  if (q.delta == 0.0 || q.T == 0.0) return zero_result(BoundFamily::basic);
  const double G = formula_G(q.p);
  const double eps = q.T / q.delta * std::pow(q.delta * q.M * q.Lambda, q.p + 1) * G;
  return {BoundFamily::basic, eps, true, {{"G_p", G}}};
}

double explicit_sum_pq(int p, int qd, int M, double Lambda, double T, double delta) {
  if (delta == 0.0 || T == 0.0) return 0.0;
  const double H = formula_H(p);
  return 2.0 * T * std::pow(delta, qd) * std::pow(M * Lambda * H, qd + 1) / fact(qd + 1);
}

BoundResult bound_explicit_sum(const BoundQuery& q) {
  q.validate();
  if (q.p == 1) {
    auto r = bound_basic(q);
    r.family = BoundFamily::explicit_sum;
    r.details["delegated"] = "basic";
    return r;
  }
  return {BoundFamily::explicit_sum, explicit_sum_pq(q.p, q.p, q.M, q.Lambda, q.T, q.delta), true,
          {{"H_p", formula_H(q.p)}}};
}

// ------------------------------------------------------------- commutator

CommutatorConstants commutator_constants(int p, int qd, int M, double Lambda, int N, int n_tilde) {
  const double B = formula_B(p), H = formula_H(p);
  const double SM = static_cast<double>(formula_stages(p)) * M;
  const double pairs = SM * SM - SM;
  CommutatorConstants c;
  // Lambda^{q-1} (M H - B + B N / Lambda)^{q-1} = (Lambda (M H - B) + B N)^{q-1}
  c.C1 = n_tilde * qd * B * B * N * std::pow(Lambda * (M * H - B) + B * N, qd - 1) * pairs;
  c.C2 = n_tilde * B * B * std::pow(M * H * Lambda, qd) * N * pairs;
  return c;
}

// Expanding the exponential: sum_m (m+1) a^m delta^{q+m+2} / (q+m+2)!
double commutator_integral_series(int qd, double a, double delta) {
  if (delta == 0.0) return 0.0;
  double sum = 0.0;
  double term = std::pow(delta, qd + 2) / fact(qd + 2);  // m = 0, without (m+1)
  for (int m = 0; m < 10000; ++m) {
    const double add = (m + 1) * term;
    sum += add;
    if (m > 2 && add <= 1e-17 * sum) break;
    term *= a * delta / (qd + m + 3);
  }
  return sum;
}

double commutator_integral_quadrature(int qd, double a, double delta) {
  if (delta == 0.0) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  const double qf = fact(qd);
  auto inner = [&](double tau) {
    auto f = [&](double x) { return qd * std::pow(1 - x, qd - 1) * x * std::pow(tau, qd + 1) / qf * std::exp(x * tau * a); };
    return gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 15, 1e-13);
  };
  double err = 0.0;
  const double v = gauss_kronrod<double, 31>::integrate(inner, 0.0, delta, 15, 1e-12, &err);
  if (!(std::abs(err) <= 1e-10 * std::abs(v) + 1e-300))
    throw std::runtime_error("commutator quadrature did not converge (error estimate " + std::to_string(err) + ")");
  return v;
}

double commutator_pq(int p, int qd, int M, double Lambda, int N, int n_tilde, double T, double delta,
                     bool quadrature) {
  if (delta == 0.0 || T == 0.0 || n_tilde == 0 || N == 0) return 0.0;
  const auto c = commutator_constants(p, qd, M, Lambda, N, n_tilde);
  const double a = N * formula_B(p);
  const double I = quadrature ? commutator_integral_quadrature(qd, a, delta) : commutator_integral_series(qd, a, delta);
  return c.C1 * T * std::pow(delta, qd) / fact(qd + 1) + c.C2 * T / delta * I;
}

BoundResult bound_commutator(const BoundQuery& q) {
  q.validate();
  if (q.N == 0) return {BoundFamily::commutator, std::numeric_limits<double>::infinity(), false,
                        {{"reason", "layer structure (N, n_tilde) not provided"}}};
  const auto c = commutator_constants(q.p, q.p, q.M, q.Lambda, q.N, q.n_tilde);
  const double eps = commutator_pq(q.p, q.p, q.M, q.Lambda, q.N, q.n_tilde, q.T, q.delta);
  return {BoundFamily::commutator, eps, true, {{"C1", c.C1}, {"C2", c.C2}, {"N", q.N}, {"n_tilde", q.n_tilde}}};
}

// -------------------------------------------------------- Taylor of Taylor

namespace {

struct TaylorCache {
  std::shared_mutex mu;
  std::map<std::pair<int, int>, std::vector<double>> f;  // (p, M) -> f(l) for l = 0..
};
TaylorCache& taylor_cache() {
  static TaylorCache c;
  return c;
}

// Expand the product formula as a polynomial in tau over words in the layer
// alphabet; Q[d] holds the degree-d coefficients (P = sum (-i)^d Q_d).
std::vector<double> expand_coefficients(int p, int M, int lmax) {
  const int D = lmax + 1;
  std::vector<std::size_t> pw(D + 1, 1);
  for (int d = 1; d <= D; ++d) pw[d] = pw[d - 1] * M;
  if (pw[D] > kMaxTaylorWords)
    throw std::length_error("taylor coefficient word expansion exceeds budget (M^(l+1) = " + std::to_string(pw[D]) + ")");
  const auto formula = build_formula(p, M);
  std::vector<std::vector<long double>> Q(D + 1);
  for (int d = 0; d <= D; ++d) Q[d].assign(pw[d], 0.0L);
  Q[0][0] = 1.0L;
  std::vector<long double> ck(D + 1);
  for (auto [i, c] : formula.factors) {
    ck[0] = 1.0L;
    for (int k = 1; k <= D; ++k) ck[k] = ck[k - 1] * static_cast<long double>(c) / k;
    for (int e = D; e >= 1; --e) {
      for (int k = 1; k <= e; ++k) {
        // prefix of k copies of letter i
        const std::size_t prefix = static_cast<std::size_t>(i) * ((pw[k] - 1) / (M - 1)) * pw[e - k];
        const auto& src = Q[e - k];
        auto& dst = Q[e];
        const long double w = ck[k];
        for (std::size_t x = 0; x < src.size(); ++x) dst[prefix + x] += w * src[x];
      }
    }
  }
  std::vector<double> f(lmax + 1, 0.0);
  for (int l = 0; l <= lmax; ++l) {
    const long double a = std::tgamma(static_cast<long double>(l + 2));
    const long double b = std::tgamma(static_cast<long double>(l + 1));
    long double s = 0;
    for (std::size_t x = 0; x < pw[l + 1]; ++x) s += std::abs(a * Q[l + 1][x] - b * Q[l][x % pw[l]]);
    f[l] = static_cast<double>(s);
  }
  return f;
}

}  // namespace

double taylor_coefficient(int p, int M, int l) {
  if (l < 0) throw std::invalid_argument("l must be >= 0");
  auto& cache = taylor_cache();
  {
    std::shared_lock lk(cache.mu);
    auto it = cache.f.find({p, M});
    if (it != cache.f.end() && static_cast<int>(it->second.size()) > l) return it->second[l];
  }
  auto f = expand_coefficients(p, M, l);
  std::unique_lock lk(cache.mu);
  auto& slot = cache.f[{p, M}];
  if (slot.size() < f.size()) slot = std::move(f);
  return slot[l];
}

int default_taylor_order(int p, int M) {
  int q = p;
  std::size_t words = 1;
  for (int i = 0; i < q + 1; ++i) words *= M;
  while (q < 20 && words * M <= kMaxTaylorWords) ++q, words *= M;
  return q;
}

BoundResult bound_taylor_of_taylor(const BoundQuery& q) {
  q.validate();
  const int qd = q.q_order ? q.q_order : default_taylor_order(q.p, q.M);
  if (q.delta == 0.0 || q.T == 0.0) {
    auto r = zero_result(BoundFamily::taylor_of_taylor);
    r.details["q"] = qd;
    return r;
  }
  taylor_coefficient(q.p, q.M, qd);  // fill cache once up to qd
  double series = 0.0;
  nlohmann::json terms = nlohmann::json::array();
  for (int l = q.p; l <= qd; ++l) {
    const double t = std::pow(q.delta * q.Lambda, l + 1) / fact(l + 1) * taylor_coefficient(q.p, q.M, l);
    series += t;
    terms.push_back(t);
  }
  series *= q.T / q.delta;
  const double rem_explicit = explicit_sum_pq(q.p, qd + 1, q.M, q.Lambda, q.T, q.delta);
  double rem_comm = std::numeric_limits<double>::infinity();
  if (q.N > 0) rem_comm = commutator_pq(q.p, qd + 1, q.M, q.Lambda, q.N, q.n_tilde, q.T, q.delta);
  const bool use_comm = rem_comm < rem_explicit;
  const double rem = use_comm ? rem_comm : rem_explicit;
  return {BoundFamily::taylor_of_taylor, series + rem, true,
          {{"q", qd},
           {"series", series},
           {"series_terms_per_step", terms},
           {"remainder", rem},
           {"remainder_family", use_comm ? "commutator" : "explicit_sum"}}};
}

BoundResult evaluate_bound(BoundFamily f, const BoundQuery& q) {
  switch (f) {
    case BoundFamily::basic: return bound_basic(q);
    case BoundFamily::explicit_sum: return bound_explicit_sum(q);
    case BoundFamily::commutator: return bound_commutator(q);
    case BoundFamily::taylor_of_taylor:
      try {
        return bound_taylor_of_taylor(q);
      } catch (const std::length_error& e) {
        return {f, std::numeric_limits<double>::infinity(), false, {{"reason", e.what()}}};
      }
  }
  return bound_basic(q);
}

BoundResult tightest_bound(const BoundQuery& q) {
  BoundResult best = bound_basic(q);
  for (auto f : kAllFamilies) {
    if (f == BoundFamily::basic) continue;
    auto r = evaluate_bound(f, q);
    if (r.available && r.epsilon < best.epsilon) best = r;
  }
  return best;
}

// -------------------------------------------------------------- inversion

InversionResult invert_for_delta(BoundFamily f, BoundQuery q, double eps_target, bool force_bisection) {
  if (!(eps_target > 0)) throw std::invalid_argument("epsilon target must be positive");
  q.validate();
  InversionResult r;
  r.family = f;
  if (q.T == 0.0 || q.Lambda == 0.0) {
    r.delta0 = kDeltaCap;
    r.method = "trivial";
    return r;
  }
  const bool closed = !force_bisection &&
                      (f == BoundFamily::basic || (f == BoundFamily::explicit_sum));
  if (closed) {
    // eps = T delta^p K  =>  delta = (eps / (T K))^{1/p}
    double K;
    if (f == BoundFamily::basic || q.p == 1) K = std::pow(q.M * q.Lambda, q.p + 1) * formula_G(q.p);
    else K = 2.0 * std::pow(q.M * q.Lambda * formula_H(q.p), q.p + 1) / fact(q.p + 1);
    r.delta0 = std::min(kDeltaCap, std::pow(eps_target / (q.T * K), 1.0 / q.p));
    r.method = "closed_form";
    return r;
  }
  auto eps = [&](double d) {
    q.delta = d;
    return evaluate_bound(f, q);
  };
  const auto at_cap = eps(kDeltaCap);
  if (!at_cap.available) {
    r.feasible = false;
    r.method = "unavailable";
    return r;
  }
  r.method = "bisection";
  if (at_cap.epsilon <= eps_target) {
    r.delta0 = kDeltaCap;
    return r;
  }
  double lo = 0.0, hi = kDeltaCap;
  // bracket from below geometrically so tiny steps are resolved
  double probe = kDeltaCap;
  while (probe > 1e-300 && eps(probe).epsilon > eps_target) hi = probe, probe *= 0.5;
  if (probe <= 1e-300) {
    r.feasible = false;
    r.delta0 = 0.0;
    return r;
  }
  lo = probe;
  while ((hi - lo) > 1e-13 * hi) {
    const double mid = 0.5 * (lo + hi);
    (eps(mid).epsilon <= eps_target ? lo : hi) = mid;
  }
  r.delta0 = lo;
  return r;
}

InversionResult invert_tightest(BoundQuery q, double eps_target) {
  InversionResult best = invert_for_delta(BoundFamily::basic, q, eps_target);
  for (auto f : kAllFamilies) {
    if (f == BoundFamily::basic) continue;
    auto r = invert_for_delta(f, q, eps_target);
    if (r.feasible && r.method != "unavailable" && r.delta0 > best.delta0) best = r;
  }
  return best;
}

std::string bound_sweep_csv(const BoundQuery& base, const std::vector<int>& ps,
                            const std::vector<BoundFamily>& families, const std::vector<double>& deltas) {
  std::ostringstream os;
  os.precision(17);
  os << "# schema=1\np,family,delta,epsilon\n";
  for (int p : ps)
    for (auto f : families)
      for (double d : deltas) {
        BoundQuery q = base;
        q.p = p;
        q.delta = d;
        if (q.q_order && q.q_order < p) q.q_order = 0;
        const auto r = evaluate_bound(f, q);
        os << p << ',' << to_string(f) << ',' << d << ',';
        if (r.available) os << r.epsilon;
        else os << "nan";
        os << '\n';
      }
  return os.str();
}

}  // namespace subpulse
