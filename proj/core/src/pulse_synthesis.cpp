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

#include "subpulse/pulse_synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

namespace subpulse {

namespace {

constexpr double kPi = std::numbers::pi;

const char* kGateNames[] = {"H", "S", "Sdg", "SH", "HSdg", "X", "Y", "Z", "RZ"};

}  // namespace

std::string to_string(Gate1 g) { return kGateNames[static_cast<int>(g)]; }

Gate1 gate1_from_string(const std::string& s) {
  for (int i = 0; i < 9; ++i)
    if (s == kGateNames[i]) return static_cast<Gate1>(i);
  throw std::invalid_argument("unknown single-qubit gate '" + s + "'");
}

std::string to_string(SynthesisMethod m) {
  switch (m) {
    case SynthesisMethod::none: return "none";
    case SynthesisMethod::conjugation: return "conjugation";
    case SynthesisMethod::depth3: return "depth3";
    case SynthesisMethod::depth4: return "depth4";
    case SynthesisMethod::depth5: return "depth5";
    case SynthesisMethod::recursive: return "recursive";
  }
  return "none";
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::standard: return "standard";
    case Strategy::subcircuit: return "subcircuit";
    case Strategy::automatic: return "auto";
  }
  return "auto";
}

Strategy strategy_from_string(const std::string& s) {
  if (s == "standard") return Strategy::standard;
  if (s == "subcircuit") return Strategy::subcircuit;
  if (s == "auto") return Strategy::automatic;
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

// ---------------------------------------------------------------- sequence

void PulseSequence::add_rotation(const SingleQubitGate& g) {
  if (!layers.empty() && !layers.back().two_qubit) {
    auto& rot = layers.back().rotations;
    const bool clash = std::any_of(rot.begin(), rot.end(),
                                   [&](const SingleQubitGate& o) { return o.qubit == g.qubit; });
    if (!clash) {
      rot.push_back(g);
      return;
    }
  }
  PulseLayer l;
  l.rotations.push_back(g);
  layers.push_back(std::move(l));
}

void PulseSequence::add_pulse(int a, int b, double time) {
  PulseLayer l;
  l.two_qubit = true;
  l.pulses.push_back({a, b, time});
  layers.push_back(std::move(l));
}

void PulseSequence::append(const PulseSequence& other) {
  for (const auto& l : other.layers) layers.push_back(l);
}

int PulseSequence::depth() const {
  int d = 0;
  for (const auto& l : layers) d += l.two_qubit && !l.pulses.empty();
  return d;
}

double PulseSequence::runtime() const {
  double c = 0.0;
  for (const auto& l : layers) {
    double m = 0.0;
    for (const auto& p : l.pulses) m = std::max(m, std::abs(p.time));
    c += m;
  }
  return c;
}

void PulseSequence::validate() const {
  for (const auto& l : layers) {
    std::set<int> used;
    auto claim = [&](int q) {
      if (q < 0 || static_cast<std::size_t>(q) >= n_qubits)
        throw std::invalid_argument("qubit index out of range in pulse sequence");
      if (!used.insert(q).second) throw std::invalid_argument("overlapping gates within a layer");
    };
    for (const auto& p : l.pulses) {
      if (!std::isfinite(p.time) || std::abs(p.time) > 2 * kPi + 1e-12)
        throw std::invalid_argument("pulse time not finite or above 2 pi");
      claim(p.a);
      claim(p.b);
    }
    for (const auto& g : l.rotations) claim(g.qubit);
  }
}

Matrix gate1_matrix(const SingleQubitGate& g) {
  const double r = 1.0 / std::sqrt(2.0);
  const cplx i(0, 1);
  Matrix h(2, 2), s(2, 2);
  h << r, r, r, -r;
  s << 1, 0, 0, i;
  Matrix m(2, 2);
  switch (g.gate) {
    case Gate1::H: return h;
    case Gate1::S: return s;
    case Gate1::Sdg: return s.adjoint();
    case Gate1::SH: return s * h;
    case Gate1::HSdg: return h * s.adjoint();
    case Gate1::X: m << 0, 1, 1, 0; return m;
    case Gate1::Y: m << 0, -i, i, 0; return m;
    case Gate1::Z: m << 1, 0, 0, -1; return m;
    case Gate1::RZ: m << std::polar(1.0, g.angle), 0, 0, std::polar(1.0, -g.angle); return m;
  }
  return Matrix::Identity(2, 2);
}

namespace {

void apply_1q(Matrix& u, std::size_t n, int q, const Matrix& g) {
  const Eigen::Index bit = Eigen::Index{1} << (n - 1 - q);
  for (Eigen::Index x = 0; x < u.rows(); ++x) {
    if (x & bit) continue;
    const Eigen::RowVectorXcd a = u.row(x), b = u.row(x | bit);
    u.row(x) = g(0, 0) * a + g(0, 1) * b;
    u.row(x | bit) = g(1, 0) * a + g(1, 1) * b;
  }
}

}  // namespace

Matrix to_unitary(const PulseSequence& seq) {
  if (seq.n_qubits > kMaxDenseQubits) throw std::length_error("pulse sequence too wide for dense evaluation");
  const auto dim = Eigen::Index{1} << seq.n_qubits;
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& l : seq.layers) {
    for (const auto& g : l.rotations) apply_1q(u, seq.n_qubits, g.qubit, gate1_matrix(g));
    for (const auto& p : l.pulses) {
      PauliTerm zz{PauliString::sparse(seq.n_qubits, {{p.a, Pauli::Z}, {p.b, Pauli::Z}}), 1.0};
      apply_pauli_exponential(zz, p.time, u);
    }
  }
  return u;
}

nlohmann::json to_json(const PulseSequence& seq) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : seq.layers) {
    if (l.two_qubit) {
      nlohmann::json ps = nlohmann::json::array();
      for (const auto& p : l.pulses)
        ps.push_back({{"pair", {p.a, p.b}}, {"time", p.time}, {"generator", "ZZ"}});
      layers.push_back({{"type", "pulse"}, {"pulses", ps}});
    } else {
      nlohmann::json gs = nlohmann::json::array();
      for (const auto& g : l.rotations) {
        nlohmann::json jg = {{"qubit", g.qubit}, {"gate", to_string(g.gate)}};
        if (g.gate == Gate1::RZ) jg["angle"] = g.angle;
        gs.push_back(jg);
      }
      layers.push_back({{"type", "rotation"}, {"gates", gs}});
    }
  }
  return {{"n_qubits", seq.n_qubits}, {"layers", layers}};
}

PulseSequence pulse_sequence_from_json(const nlohmann::json& j) {
  PulseSequence seq;
  seq.n_qubits = j.at("n_qubits").get<std::size_t>();
  for (const auto& jl : j.at("layers")) {
    PulseLayer l;
    l.two_qubit = jl.at("type").get<std::string>() == "pulse";
    if (l.two_qubit) {
      for (const auto& p : jl.at("pulses")) {
        if (p.value("generator", "ZZ") != "ZZ") throw std::invalid_argument("only ZZ pulses supported");
        l.pulses.push_back({p.at("pair")[0].get<int>(), p.at("pair")[1].get<int>(), p.at("time").get<double>()});
      }
    } else {
      for (const auto& g : jl.at("gates"))
        l.rotations.push_back({g.at("qubit").get<int>(), gate1_from_string(g.at("gate").get<std::string>()),
                               g.value("angle", 0.0)});
    }
    seq.layers.push_back(std::move(l));
  }
  seq.validate();
  return seq;
}

nlohmann::json to_json(const SynthesisReport& r) {
  return {{"method", to_string(r.method)},
          {"runtime_cost", r.runtime_cost},
          {"depth_cost", r.depth_cost},
          {"verification_error", r.verification_error},
          {"fallback", r.fallback},
          {"pulse_times", r.pulse_times},
          {"short_pulses", r.short_pulses},
          {"sequence", to_json(r.sequence)}};
}

// ------------------------------------------------------- closed-form times

Depth4Times depth4_times(double t) {
  t = std::fmod(t, 2 * kPi);
  if (t < 0) t += 2 * kPi;
  const double s = std::sin(t), c = std::cos(t);
  const double sgn = -1.0;  // branch with t1 <= 0, t2 >= 0 on [0, pi/2]
  Depth4Times r;
  const bool first = (t <= kPi / 2) || (t >= kPi && t <= 1.5 * kPi);
  if (first) {
    const double q = std::sqrt(std::max(0.0, std::sin(2 * t)));
    r.t1 = 0.5 * arctan2_xy(1.0 / (s + c), sgn * q / (s + c));
    r.t2 = 0.5 * arctan2_xy(c - s, -sgn * q);
  } else {
    const double q = std::sqrt(std::max(0.0, -std::sin(2 * t)));
    r.t1 = 0.5 * arctan2_xy(1.0 / (c - s), sgn * q / (c - s));
    r.t2 = 0.5 * arctan2_xy(s + c, sgn * q);
    r.second_form = true;
  }
  return r;
}

double depth5_t_critical() { return std::pow(kPi / 4, 3) / kDepth5C; }

Depth5Times depth5_times(double t, std::optional<double> phi) {
  Depth5Times r;
  if (t == 0.0 && !phi) return r;
  r.phi = phi ? *phi : std::cbrt(kDepth5C * t);
  if (!phi && t > depth5_t_critical() * (1 + 1e-12))
    throw std::domain_error("depth-5 automatic phi only valid for t <= t_c ~ 0.33; "
                            "give phi explicitly or use conjugation");
  const double disc = std::cos(2 * t) - std::cos(4 * r.phi);
  if (disc < -1e-14) throw std::domain_error("depth-5: cos 2t - cos 4phi < 0, pulse times complex");
  const double D = std::sqrt(std::max(0.0, disc));
  const double csc = 1.0 / std::sin(2 * r.phi), cot = std::cos(2 * r.phi) * csc;
  if (!std::isfinite(csc)) throw std::domain_error("depth-5: sin 2phi = 0");
  r.t1 = 0.5 * arctan2_xy(std::sqrt(2.0) / std::cos(t) * csc * D, -2.0 * std::tan(t) * cot);
  r.t2 = arctan2_xy(csc * D / std::sqrt(2.0), std::sin(t) * csc);
  return r;
}

Depth3Times depth3_times(double theta, double t) {
  const double D = std::sqrt(std::max(0.0, 1.0 - std::pow(std::sin(theta) * std::sin(t), 2)));
  Depth3Times r;
  if (D == 0.0) {  // theta = pi/2, t = pi/2: pure h2 rotation
    r.t1 = 0.0;
    r.t2 = arctan2_xy(0.0, std::sin(theta) * std::sin(t));
    return r;
  }
  r.t1 = 0.5 * arctan2_xy(std::cos(t) / D, std::cos(theta) * std::sin(t) / D);
  r.t2 = arctan2_xy(D, std::sin(theta) * std::sin(t));
  return r;
}

double depth4_cost(double t) {
  if (t == 0.0) return 0.0;
  const auto r = depth4_times(std::abs(t));
  return 2 * std::abs(r.t1) + 2 * std::abs(r.t2);
}

double depth5_cost(double t) {
  t = std::abs(t);
  if (t == 0.0) return 0.0;
  const auto r = depth5_times(t);
  return 2 * depth4_cost(r.t1) + depth4_cost(r.t2) + 2 * std::abs(r.phi);
}

double conjugation_cost(int k, double delta, int base_weight) {
  if (k < 2 || delta == 0.0) return 0.0;
  if (base_weight <= 1) return (k - 1) * kPi / 2;
  return (k - 2) * kPi / 2 + std::abs(delta);
}

int conjugation_depth(int k, int base_weight) {
  if (k < 2) return 0;
  if (base_weight <= 1) return 2 * (k - 1);
  return 2 * (k - 2) + 1;
}

double subcircuit_crossover(int k) {
  if (k != 3 && k != 4) throw std::invalid_argument("crossover defined for k = 3 or 4");
  auto sub = [&](double d) { return k == 3 ? depth4_cost(d) : depth5_cost(d); };
  const double cap = k == 3 ? kPi / 2 : depth5_t_critical();
  auto gap = [&](double d) { return sub(d) - conjugation_cost(k, d); };
  constexpr int kGrid = 4000;
  double prev = 1e-12;
  for (int i = 1; i <= kGrid; ++i) {
    const double d = cap * i / kGrid;
    if (gap(d) >= 0) {
      double lo = prev, hi = d;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) < 0 ? lo : hi) = mid;
      }
      return lo;
    }
    prev = d;
  }
  return cap;
}

// ---------------------------------------------------------------- lowering

namespace {

struct Lowering {
  PulseSequence seq;
  bool fallback = false;
  bool recursive = false;
  std::vector<double> params;

  void rot(int q, Gate1 g, double angle = 0.0) { seq.add_rotation({q, g, angle}); }

  // basis change mapping Z to letter p on qubit q (V Z V^dag = p)
  void to_z(int q, Pauli p) {  // V^dag
    if (p == Pauli::X) rot(q, Gate1::H);
    if (p == Pauli::Y) rot(q, Gate1::HSdg);
  }
  void from_z(int q, Pauli p) {  // V
    if (p == Pauli::X) rot(q, Gate1::H);
    if (p == Pauli::Y) rot(q, Gate1::SH);
  }

  // exp(i theta Z_S), |S| <= 2
  void direct(const std::vector<int>& S, double theta) {
    if (theta == 0.0 || S.empty()) return;
    if (S.size() == 1) rot(S[0], Gate1::RZ, theta);
    else seq.add_pulse(S[0], S[1], theta);
  }

  // exp(i theta P) for a 2-local (or 1-local) P given as (qubit, letter) pairs
  void two_local(const std::vector<std::pair<int, Pauli>>& ops, double theta) {
    if (theta == 0.0) return;
    std::vector<int> S;
    for (auto [q, p] : ops) to_z(q, p), S.push_back(q);
    direct(S, theta);
    for (auto [q, p] : ops) from_z(q, p);
  }

  // exp(i theta Z_{s1} .. Z_{sk}) by conjugation down to base weight
  void zconj(const std::vector<int>& S, double theta, int base) {
    if (theta == 0.0) return;
    if (static_cast<int>(S.size()) <= std::max(base, 1)) return direct(S, theta);
    const int s1 = S[0], s2 = S[1];
    two_local({{s1, Pauli::Z}, {s2, Pauli::X}}, kPi / 4);
    to_z(s2, Pauli::Y);
    zconj({S.begin() + 1, S.end()}, theta, base);
    from_z(s2, Pauli::Y);
    two_local({{s1, Pauli::Z}, {s2, Pauli::X}}, -kPi / 4);
  }

  // h1 = Z_{s1} X_{s2}, h2 = Y_{s2} Z_{s3..}: H = (1/2i)[h1,h2] = Z_S
  void h1(const std::vector<int>& S, double t) { two_local({{S[0], Pauli::Z}, {S[1], Pauli::X}}, t); }
  void h2(const std::vector<int>& S, double t, bool sub) {
    to_z(S[1], Pauli::Y);
    const std::vector<int> rest(S.begin() + 1, S.end());
    if (sub) zsub(rest, t);
    else zconj(rest, t, 2);
    from_z(S[1], Pauli::Y);
  }

  void depth4(const std::vector<int>& S, double t) {
    const auto r = depth4_times(t);
    if (params.empty()) params = {r.t1, r.t2};
    const double s = r.second_form ? -1.0 : 1.0;
    // time order is right-to-left in the operator product
    h2(S, s * r.t1, false);
    h1(S, s * r.t2);
    h2(S, r.t2, false);
    h1(S, r.t1);
  }

  void depth5(const std::vector<int>& S, double t) {
    const auto r = depth5_times(t);
    if (params.empty()) params = {r.t1, r.t2, r.phi};
    h2(S, r.t1, true);
    h1(S, r.phi);
    h2(S, r.t2, true);
    h1(S, -r.phi);
    h2(S, r.t1, true);
  }

  // sub-circuit lowering of exp(i theta Z_S)
  void zsub(const std::vector<int>& S, double theta) {
    if (theta == 0.0) return;
    if (S.size() <= 2) return direct(S, theta);
    if (theta < 0) {  // X on s1 anticommutes with Z_S
      rot(S[0], Gate1::X);
      zsub(S, -theta);
      rot(S[0], Gate1::X);
      return;
    }
    theta = std::fmod(theta, 2 * kPi);
    if (S.size() == 3) return depth4(S, theta);
    if (S.size() == 4) {
      if (theta <= depth5_t_critical()) return depth5(S, theta);
      fallback = true;
      return zconj(S, theta, 2);
    }
    recursive = true;
    const int s1 = S[0], s2 = S[1];
    two_local({{s1, Pauli::Z}, {s2, Pauli::X}}, kPi / 4);
    to_z(s2, Pauli::Y);
    zsub({S.begin() + 1, S.end()}, theta);
    from_z(s2, Pauli::Y);
    two_local({{s1, Pauli::Z}, {s2, Pauli::X}}, -kPi / 4);
  }
};

std::vector<std::pair<int, Pauli>> ops_of(const PauliString& p) {
  std::vector<std::pair<int, Pauli>> ops;
  for (int q : p.support()) ops.push_back({q, p[q]});
  return ops;
}

// exp(i angle P) for a weight-k P: basis change to Z, lower, undo.
template <class F>
void around_z(Lowering& lw, const PauliString& p, F&& lower_z) {
  const auto ops = ops_of(p);
  std::vector<int> S;
  for (auto [q, l] : ops) lw.to_z(q, l), S.push_back(q);
  lower_z(S);
  for (auto [q, l] : ops) lw.from_z(q, l);
}

// Lower exp(i angle P) generically (2-local direct, else conjugation).
void emit_generic(Lowering& lw, const PauliTerm& h, double angle) {
  around_z(lw, h.string, [&](const std::vector<int>& S) { lw.zconj(S, angle * h.coeff, 2); });
}

// Verify on the touched qubits only, so wide registers stay cheap.
double verify(const PulseSequence& seq, const Matrix& target_local, const std::vector<int>& qubits) {
  std::map<int, int> local;
  for (std::size_t i = 0; i < qubits.size(); ++i) local[qubits[i]] = static_cast<int>(i);
  PulseSequence s;
  s.n_qubits = qubits.size();
  for (const auto& l : seq.layers) {
    PulseLayer m = l;
    for (auto& g : m.rotations) g.qubit = local.at(g.qubit);
    for (auto& p : m.pulses) p.a = local.at(p.a), p.b = local.at(p.b);
    s.layers.push_back(std::move(m));
  }
  return distance_up_to_phase(to_unitary(s), target_local);
}

std::vector<int> touched(const PulseSequence& seq, std::vector<int> base) {
  std::set<int> q(base.begin(), base.end());
  for (const auto& l : seq.layers) {
    for (const auto& g : l.rotations) q.insert(g.qubit);
    for (const auto& p : l.pulses) q.insert(p.a), q.insert(p.b);
  }
  return {q.begin(), q.end()};
}

PauliString restrict_to(const PauliString& p, const std::vector<int>& qubits) {
  PauliString r(qubits.size());
  for (std::size_t i = 0; i < qubits.size(); ++i) r.set(i, p[qubits[i]]);
  return r;
}

// exp(i t H) on the given qubit subset, H = c * P (Hermitian, P^2 = I).
Matrix exp_local(const PauliString& p, double coeff, double t, const std::vector<int>& qubits) {
  return pauli_exponential({restrict_to(p, qubits), coeff}, t);
}

SynthesisReport finish(Lowering& lw, SynthesisMethod method, const SynthesisOptions& opt,
                       const PauliString& target, double coeff, double t,
                       const std::vector<int>& extra = {}) {
  SynthesisReport r;
  r.sequence = std::move(lw.seq);
  r.sequence.validate();
  r.method = method;
  r.fallback = lw.fallback;
  r.pulse_times = lw.params;
  r.runtime_cost = r.sequence.runtime();
  r.depth_cost = r.sequence.depth();
  for (const auto& l : r.sequence.layers)
    for (const auto& p : l.pulses) r.short_pulses += std::abs(p.time) < opt.t_min;
  if (opt.verify) {
    std::vector<int> base = target.support();
    base.insert(base.end(), extra.begin(), extra.end());
    auto qs = touched(r.sequence, base);
    if (qs.empty()) qs.push_back(0);
    r.verification_error = verify(r.sequence, exp_local(target, coeff, t, qs), qs);
  }
  return r;
}

void check_involution(const PauliTerm& h, const char* name) {
  if (std::abs(std::abs(h.coeff) - 1.0) > 1e-12)
    throw std::invalid_argument(std::string(name) + " must square to identity (|coeff| = 1)");
  if (h.string.weight() == 0) throw std::invalid_argument(std::string(name) + " is the identity");
}

// H = (1/2i)[h1, h2] = -i h1 h2 for anticommuting h1, h2; returns (P, sign).
std::pair<PauliString, double> commutator_target(const PauliTerm& h1, const PauliTerm& h2) {
  check_involution(h1, "h1");
  check_involution(h2, "h2");
  if (commutes(h1.string, h2.string)) throw std::invalid_argument("h1 and h2 must anticommute");
  const auto prod = multiply(h1.string, h2.string);
  // -i * i^phase is real for odd phase: phase 1 -> +1, phase 3 -> -1
  const double sign = (prod.phase == 1 ? 1.0 : -1.0) * h1.coeff * h2.coeff;
  return {prod.string, sign};
}

}  // namespace

SynthesisReport conjugation_decompose(const PauliTerm& target, double delta, const SynthesisOptions& opt,
                                      int base_weight) {
  const int k = static_cast<int>(target.string.weight());
  Lowering lw;
  lw.seq.n_qubits = target.string.size();
  if (k >= 2 && delta != 0.0)
    around_z(lw, target.string,
             [&](const std::vector<int>& S) { lw.zconj(S, delta * target.coeff, base_weight); });
  return finish(lw, k >= 2 ? SynthesisMethod::conjugation : SynthesisMethod::none, opt, target.string,
                target.coeff, delta);
}

SynthesisReport depth4_decompose(const PauliTerm& h1, const PauliTerm& h2, double t, const SynthesisOptions& opt) {
  auto [P, sign] = commutator_target(h1, h2);
  Lowering lw;
  lw.seq.n_qubits = h1.string.size();
  const double tn = std::fmod(std::fmod(t, 2 * kPi) + 2 * kPi, 2 * kPi);
  if (tn != 0.0) {
    const auto r = depth4_times(tn);
    lw.params = {r.t1, r.t2};
    const double s = r.second_form ? -1.0 : 1.0;
    emit_generic(lw, h2, s * r.t1);
    emit_generic(lw, h1, s * r.t2);
    emit_generic(lw, h2, r.t2);
    emit_generic(lw, h1, r.t1);
  } else {
    lw.params = {0.0, 0.0};
  }
  return finish(lw, SynthesisMethod::depth4, opt, P, sign, t, h1.string.support());
}

SynthesisReport depth5_decompose(const PauliTerm& h1, const PauliTerm& h2, double t, std::optional<double> phi,
                                 const SynthesisOptions& opt) {
  auto [P, sign] = commutator_target(h1, h2);
  Lowering lw;
  lw.seq.n_qubits = h1.string.size();
  const auto r = depth5_times(t, phi);
  lw.params = {r.t1, r.t2, r.phi};
  // inner gates use the sub-circuit lowering when they are weight 3
  auto inner = [&](double a) {
    around_z(lw, h2.string, [&](const std::vector<int>& S) { lw.zsub(S, a * h2.coeff); });
  };
  if (t != 0.0 || phi) {
    inner(r.t1);
    emit_generic(lw, h1, r.phi);
    inner(r.t2);
    emit_generic(lw, h1, -r.phi);
    inner(r.t1);
  }
  return finish(lw, SynthesisMethod::depth5, opt, P, sign, t, h1.string.support());
}

SynthesisReport depth3_decompose(const PauliTerm& h1, const PauliTerm& h2, double theta, double t,
                                 const SynthesisOptions& opt) {
  check_involution(h1, "h1");
  check_involution(h2, "h2");
  if (commutes(h1.string, h2.string)) throw std::invalid_argument("h1 and h2 must anticommute");
  Lowering lw;
  lw.seq.n_qubits = h1.string.size();
  const auto r = depth3_times(theta, t);
  lw.params = {r.t1, r.t2};
  emit_generic(lw, h1, r.t1);
  emit_generic(lw, h2, r.t2);
  emit_generic(lw, h1, r.t1);
  SynthesisReport rep = finish(lw, SynthesisMethod::depth3, SynthesisOptions{false, opt.t_min}, h1.string,
                               h1.coeff, t);
  if (opt.verify) {
    auto qs = touched(rep.sequence, h1.string.support());
    for (int q : h2.string.support()) qs.push_back(q);
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    const Matrix H = std::cos(theta) * h1.coeff * pauli_matrix(restrict_to(h1.string, qs)) +
                     std::sin(theta) * h2.coeff * pauli_matrix(restrict_to(h2.string, qs));
    // H^2 = I, so exp(itH) = cos t + i sin t H
    const Matrix target = std::cos(t) * Matrix::Identity(H.rows(), H.cols()) + cplx(0, std::sin(t)) * H;
    rep.verification_error = verify(rep.sequence, target, qs);
  }
  return rep;
}

SynthesisReport synthesize(const PauliTerm& target, double delta, Strategy strategy, const SynthesisOptions& opt) {
  const int k = static_cast<int>(target.string.weight());
  if (strategy == Strategy::automatic) {
    auto a = synthesize(target, delta, Strategy::standard, opt);
    auto b = synthesize(target, delta, Strategy::subcircuit, opt);
    return b.runtime_cost < a.runtime_cost ? b : a;
  }
  if (strategy == Strategy::standard || k <= 2 || delta == 0.0)
    return conjugation_decompose(target, delta, opt);
  Lowering lw;
  lw.seq.n_qubits = target.string.size();
  around_z(lw, target.string, [&](const std::vector<int>& S) { lw.zsub(S, delta * target.coeff); });
  SynthesisMethod m = k == 3 ? SynthesisMethod::depth4 : k == 4 ? SynthesisMethod::depth5 : SynthesisMethod::recursive;
  if (lw.fallback && k == 4) m = SynthesisMethod::conjugation;
  return finish(lw, m, opt, target.string, target.coeff, delta);
}

}  // namespace subpulse
