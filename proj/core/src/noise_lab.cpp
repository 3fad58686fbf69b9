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

#include "subpulse/noise_lab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/parallel_reduce.h>

namespace subpulse {

// ---- trivial bound ----

double trivial_epsilon(double volume, double q) {
  if (volume < 0 || q < 0 || q > 1) throw std::invalid_argument("need V >= 0 and q in [0, 1]");
  if (volume == 0) return 0.0;
  return -std::expm1(volume * std::log1p(-q));
}

double trivial_q_max(double volume, double eps_target) {
  if (volume < 0 || eps_target < 0 || eps_target > 1) throw std::invalid_argument("need V >= 0 and eps in [0, 1]");
  if (volume == 0) return 1.0;
  return -std::expm1(std::log1p(-eps_target) / volume);
}

// ---- schedules ----

NoiseSchedule build_noise_schedule(const EncodedHamiltonian& h, Strategy strategy, ErrorModel model, int p,
                                   double delta0, double T) {
  if (!(delta0 > 0) || T < 0) throw std::invalid_argument("need delta0 > 0 and T >= 0");
  const int M = static_cast<int>(h.layers.size());
  const ProductFormula f = build_formula(p, M);
  NoiseSchedule s;
  s.encoding = h.layout.encoding;
  s.n_qubits = h.n_qubits();
  s.strategy = strategy;
  s.model = model;
  s.p = p;
  s.delta0 = delta0;
  s.steps = T == 0 ? 0 : static_cast<long long>(std::ceil(T / delta0 - 1e-12));

  std::map<std::pair<int, double>, std::vector<double>> cache;  // (weight, |angle|) -> pulse-layer times
  auto pulses_of = [&](const PauliTerm& t, double tau) -> const std::vector<double>& {
    const int k = static_cast<int>(t.string.weight());
    const std::pair<int, double> key{k, std::abs(tau * t.coeff)};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<double> times;
    const SynthesisReport r = term_circuit(t, tau, strategy, model);
    for (const auto& l : r.sequence.layers) {
      if (!l.two_qubit) continue;
      double m = 0.0;
      for (const auto& z : l.pulses) m = std::max(m, std::abs(z.time));
      times.push_back(m);
    }
    return cache.emplace(key, std::move(times)).first->second;
  };

  std::vector<NoiseLocation> step;
  for (int j = 0; j < f.S; ++j)
    for (int i = 0; i < M; ++i) {
      const double tau = f.tcoeff(j, i) * delta0;
      if (tau == 0.0) continue;
      const auto& layer = h.layers[i];
      std::map<int, std::vector<double>> groups;
      for (std::size_t k = 0; k < layer.terms.size(); ++k) {
        const auto& t = pulses_of(layer.terms[k], tau);
        auto& g = groups[layer.group[k]];
        g.insert(g.end(), t.begin(), t.end());
      }
      // the slowest group (by the model's own measure) sets the pulse layers
      const std::vector<double>* worst = nullptr;
      double worst_cost = -1.0;
      for (const auto& [_, g] : groups) {
        double c = model == ErrorModel::per_gate ? static_cast<double>(g.size()) : 0.0;
        if (model == ErrorModel::per_time)
          for (double t : g) c += t;
        if (c > worst_cost) {
          worst_cost = c;
          worst = &g;
        }
      }
      if (!worst || worst->empty()) {
        step.push_back({true, 0.0});
        continue;
      }
      for (std::size_t k = 0; k < worst->size(); ++k) step.push_back({k == 0, (*worst)[k]});
    }
  s.locations.reserve(step.size() * static_cast<std::size_t>(s.steps));
  for (long long n = 0; n < s.steps; ++n) s.locations.insert(s.locations.end(), step.begin(), step.end());
  for (const auto& l : s.locations) s.cost += model == ErrorModel::per_gate ? (l.duration > 0 ? 1.0 : 0.0) : l.duration;
  return s;
}

// ---- Monte Carlo ----

std::string to_string(NoiseBin b) {
  switch (b) {
    case NoiseBin::clean: return "clean";
    case NoiseBin::detectable: return "detectable";
    case NoiseBin::undetectable_phase: return "undetectable_phase";
    case NoiseBin::undetectable_nonphase: return "undetectable_nonphase";
    case NoiseBin::intra_decomposition: return "intra_decomposition";
  }
  return "?";
}

void NoiseModel::validate() const {
  if (!(q >= 0 && q <= 1)) throw std::invalid_argument("depolarizing probability q must lie in [0, 1]");
}

BinStat wilson(std::uint64_t k, std::uint64_t n, double z) {
  BinStat b;
  b.count = k;
  if (n == 0) {
    b.hi = 1.0;
    return b;
  }
  const double N = static_cast<double>(n), ph = static_cast<double>(k) / N, z2 = z * z;
  b.fraction = ph;
  const double c = (ph + z2 / (2 * N)) / (1 + z2 / N);
  const double w = z / (1 + z2 / N) * std::sqrt(ph * (1 - ph) / N + z2 / (4 * N * N));
  // the closed form lands on 0 / 1 only up to rounding at the extremes
  b.lo = k == 0 ? 0.0 : std::max(0.0, c - w);
  b.hi = k == n ? 1.0 : std::min(1.0, c + w);
  return b;
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// (0, 1]
double unit(std::mt19937_64& g) { return (static_cast<double>(g() >> 11) + 1.0) * 0x1.0p-53; }

struct Segment {
  std::size_t begin = 0, end = 0;  // locations
  double prob = 0.0;
  double log1m = 0.0;
};

struct Counts {
  std::uint64_t bins[5] = {0, 0, 0, 0, 0};
  std::uint64_t commuted = 0;
  void add(const Counts& o) {
    for (int i = 0; i < 5; ++i) bins[i] += o.bins[i];
    commuted += o.commuted;
  }
};

bool nonzero(const Syndrome& s) {
  return std::any_of(s.begin(), s.end(), [](std::uint64_t w) { return w != 0; });
}

Pauli pauli_of_bits(int b) { return b == 1 ? Pauli::X : b == 3 ? Pauli::Y : b == 2 ? Pauli::Z : Pauli::I; }
int bits_of(Pauli p) { return p == Pauli::X ? 1 : p == Pauli::Y ? 3 : p == Pauli::Z ? 2 : 0; }

struct Trial {
  const NoiseSchedule& sch;
  const SyndromeMap& map;
  const std::vector<Segment>& segs;
  const std::vector<NoiseEvent>& injected;
  std::uint64_t seed;

  NoiseRunRecord run(std::uint64_t trial) const {
    NoiseRunRecord rec;
    rec.trial = trial;
    std::mt19937_64 g(splitmix(seed ^ splitmix(trial + 0x632be59bd9b4e019ULL)));
    const std::size_t n = sch.n_qubits;
    std::vector<NoiseEvent> ev;
    for (const auto& s : segs) {
      if (s.prob <= 0) continue;
      const std::size_t cells = (s.end - s.begin) * n;
      auto emit = [&](std::size_t c) {
        const int k = std::min(2, static_cast<int>(unit(g) * 3.0));
        ev.push_back({s.begin + c / n, static_cast<int>(c % n), static_cast<Pauli>(k + 1)});
      };
      if (s.prob >= 1) {
        for (std::size_t c = 0; c < cells; ++c) emit(c);
        continue;
      }
      std::size_t pos = 0;
      bool first = true;
      for (;;) {
        const double skip = std::floor(std::log(unit(g)) / s.log1m);
        if (skip >= static_cast<double>(cells)) break;
        pos = first ? static_cast<std::size_t>(skip) : pos + 1 + static_cast<std::size_t>(skip);
        first = false;
        if (pos >= cells) break;
        emit(pos);
      }
    }
    ev.insert(ev.end(), injected.begin(), injected.end());
    std::stable_sort(ev.begin(), ev.end(), [](const NoiseEvent& a, const NoiseEvent& b) {
      return a.location != b.location ? a.location < b.location : a.qubit < b.qubit;
    });
    // errors hitting the same qubit at the same location multiply first
    for (std::size_t i = 0; i < ev.size();) {
      std::size_t j = i;
      int bits = 0;
      while (j < ev.size() && ev[j].location == ev[i].location && ev[j].qubit == ev[i].qubit) bits ^= bits_of(ev[j++].pauli);
      if (bits) rec.events.push_back({ev[i].location, ev[i].qubit, pauli_of_bits(bits)});
      i = j;
    }
    if (rec.events.empty()) return rec;

    Syndrome syn((map.n_checks + 63) / 64, 0);
    bool intra = false, nonphase = false;
    for (const auto& e : rec.events) {
      if (e.location < sch.locations.size() && !sch.locations[e.location].boundary) {
        // sub-circuit pulses are short, so the error is commuted to the layer boundary
        if (sch.strategy == Strategy::standard)
          intra = true;
        else
          rec.commuted = true;
      }
      const Syndrome s = map.syndrome(e.qubit, e.pauli);
      for (std::size_t w = 0; w < syn.size(); ++w) syn[w] ^= s[w];
      if (nonzero(syn)) ++rec.violations;
      if (!map.is_phase_noise(e.qubit, e.pauli)) nonphase = true;
    }
    if (nonzero(syn))
      rec.bin = NoiseBin::detectable;
    else if (intra)
      rec.bin = NoiseBin::intra_decomposition;
    else if (rec.violations > 0 || nonphase)
      rec.bin = NoiseBin::undetectable_nonphase;
    else
      rec.bin = NoiseBin::undetectable_phase;
    return rec;
  }
};

}  // namespace

NoiseSummary run_monte_carlo(const NoiseSchedule& sch, const SyndromeMap& map, const NoiseModel& model,
                             const MonteCarloOptions& opt) {
  model.validate();
  if (sch.encoding != Encoding::compact)
    throw std::invalid_argument("noise classification needs the compact encoding's error mapping");
  if (map.n_qubits != sch.n_qubits) throw std::invalid_argument("syndrome map and schedule disagree on qubit count");
  for (const auto& e : opt.injected)
    if (e.location >= sch.locations.size() || e.qubit < 0 || static_cast<std::size_t>(e.qubit) >= sch.n_qubits ||
        e.pauli == Pauli::I)
      throw std::invalid_argument("injected event outside the schedule");

  NoiseSummary out;
  out.trials = opt.trials;
  out.seed = opt.seed;
  out.q = model.q;
  std::vector<Segment> segs;
  double log_clean = 0.0;
  const double n = static_cast<double>(sch.n_qubits);
  for (std::size_t i = 0; i < sch.locations.size(); ++i) {
    const double w = model.mode == ErrorModel::per_time ? sch.locations[i].duration : 1.0;
    const double p = std::min(1.0, model.q * w);
    out.volume += n * (model.q > 0 ? p / model.q : w);
    log_clean += p >= 1 ? -INFINITY : n * std::log1p(-p);
    if (segs.empty() || segs.back().prob != p)
      segs.push_back({i, i + 1, p, p < 1 ? std::log1p(-p) : 0.0});
    else
      segs.back().end = i + 1;
  }
  out.clean_expected = std::exp(log_clean);

  const Trial t{sch, map, segs, opt.injected, opt.seed};
  const Counts c = tbb::parallel_reduce(
      tbb::blocked_range<std::uint64_t>(0, opt.trials, 256), Counts{},
      [&](const tbb::blocked_range<std::uint64_t>& r, Counts acc) {
        for (std::uint64_t i = r.begin(); i != r.end(); ++i) {
          const NoiseRunRecord rec = t.run(i);
          ++acc.bins[static_cast<int>(rec.bin)];
          acc.commuted += rec.commuted;
        }
        return acc;
      },
      [](Counts a, const Counts& b) {
        a.add(b);
        return a;
      });
  for (std::uint64_t i = 0; i < std::min<std::uint64_t>(opt.keep_records, opt.trials); ++i) out.records.push_back(t.run(i));

  const std::uint64_t N = opt.trials;
  out.clean = wilson(c.bins[0], N);
  out.detectable = wilson(c.bins[1], N);
  out.undetectable_phase = wilson(c.bins[2], N);
  out.undetectable_nonphase = wilson(c.bins[3], N);
  out.intra_decomposition = wilson(c.bins[4], N);
  out.commuted = c.commuted;
  const std::uint64_t accepted = N - c.bins[1];
  out.accept_rate = N ? static_cast<double>(accepted) / static_cast<double>(N) : 1.0;
  out.post_selection_overhead = accepted ? 1.0 / out.accept_rate : INFINITY;
  const std::uint64_t bad = c.bins[3] + c.bins[4];
  out.eps_s = accepted ? static_cast<double>(bad) / static_cast<double>(accepted) : 0.0;
  out.eps_s_upper = wilson(bad, accepted, 1.6448536269514722).hi;
  out.eps_c = N ? static_cast<double>(c.commuted) / static_cast<double>(N) * std::sqrt(sch.delta0) : 0.0;
  return out;
}

nlohmann::json to_json(const NoiseRunRecord& r) {
  nlohmann::json ev = nlohmann::json::array();
  for (const auto& e : r.events) ev.push_back({{"location", e.location}, {"qubit", e.qubit}, {"pauli", std::string(1, to_char(e.pauli))}});
  return {{"trial", r.trial}, {"events", ev}, {"violations", r.violations}, {"commuted", r.commuted}, {"bin", to_string(r.bin)}};
}

nlohmann::json to_json(const NoiseSummary& s) {
  auto bin = [](const BinStat& b) { return nlohmann::json{{"count", b.count}, {"fraction", b.fraction}, {"ci95", {b.lo, b.hi}}}; };
  nlohmann::json j{{"trials", s.trials},
                   {"seed", s.seed},
                   {"q", s.q},
                   {"bins",
                    {{"clean", bin(s.clean)},
                     {"detectable", bin(s.detectable)},
                     {"undetectable_phase", bin(s.undetectable_phase)},
                     {"undetectable_nonphase", bin(s.undetectable_nonphase)},
                     {"intra_decomposition", bin(s.intra_decomposition)}}},
                   {"commuted", s.commuted},
                   {"volume", s.volume},
                   {"clean_expected", s.clean_expected},
                   {"accept_rate", s.accept_rate},
                   {"post_selection_overhead", std::isfinite(s.post_selection_overhead) ? nlohmann::json(s.post_selection_overhead) : nlohmann::json(nullptr)},
                   {"eps_s", s.eps_s},
                   {"eps_s_upper95", s.eps_s_upper},
                   {"eps_c", s.eps_c}};
  if (!s.records.empty()) {
    j["records"] = nlohmann::json::array();
    for (const auto& r : s.records) j["records"].push_back(to_json(r));
  }
  return j;
}

// ---- q search ----

MaxQResult max_q_search(const NoiseSchedule& sch, const SyndromeMap& map, double eps_target, std::uint64_t trials,
                        std::uint64_t seed, double eps_t, double q_floor, double q_ceiling) {
  if (!(eps_target > 0 && eps_target <= 1)) throw std::invalid_argument("eps_target must lie in (0, 1]");
  if (!(q_floor > 0 && q_floor <= q_ceiling && q_ceiling <= 1)) throw std::invalid_argument("bad q grid");
  MaxQResult res;
  std::map<double, NoiseSummary> seen;
  auto probe = [&](double q) -> const NoiseSummary& {
    auto it = seen.find(q);
    if (it != seen.end()) return it->second;
    MonteCarloOptions o;
    o.trials = trials;
    o.seed = seed;
    NoiseSummary s = run_monte_carlo(sch, map, {q, sch.model}, o);
    res.probes.push_back({q, s.eps_s_upper});
    return seen.emplace(q, std::move(s)).first->second;
  };
  auto ok = [&](double q) { return probe(q).eps_s_upper <= eps_target; };

  const double coarse = std::sqrt(10.0), fine = std::pow(10.0, 0.125);
  double q = q_ceiling, pass = -1.0;
  for (; q >= q_floor * (1 - 1e-12); q /= coarse)
    if (ok(q)) {
      pass = q;
      break;
    }
  if (pass < 0) {
    res.q_max = q_floor;
    res.at_floor = true;
  } else if (pass == q_ceiling) {
    res.q_max = pass;
    res.at_ceiling = true;
  } else {
    res.q_max = pass;
    for (int m = 1; m < 4; ++m) {
      const double c = pass * std::pow(fine, m);
      if (!ok(c)) break;
      res.q_max = c;
    }
  }
  res.eps_s = probe(res.q_max).eps_s;
  res.combined = std::hypot(eps_t, res.eps_s);
  return res;
}

// ---- feasible simulation time ----

std::vector<FeasibleTimeRow> feasible_time_table(const FeasibleTimeConfig& cfg) {
  std::vector<FeasibleTimeRow> rows;
  for (Encoding e : cfg.encodings)
    for (Strategy s : cfg.strategies)
      for (bool mit : cfg.mitigation)
        for (double q : cfg.qs) {
          FeasibleTimeRow r;
          r.encoding = e;
          r.strategy = s;
          r.mitigation = mit;
          r.q = q;
          r.supported = !(mit && e == Encoding::vc);
          rows.push_back(r);
        }
  const double budget = cfg.eps_target / std::sqrt(2.0);

  tbb::parallel_for(std::size_t{0}, rows.size(), [&](std::size_t idx) {
    FeasibleTimeRow& row = rows[idx];
    if (!row.supported) return;
    const EncodedHamiltonian h = encode(cfg.spec, row.encoding);
    const SyndromeMap map = row.mitigation ? build_syndrome_map(h) : SyndromeMap{};
    auto evaluate = [&](double T, FeasibleTimeRow& out) {
      CostQuery cq;
      cq.spec = cfg.spec;
      cq.encoding = row.encoding;
      cq.p = cfg.p;
      cq.strategy = row.strategy;
      cq.model = cfg.model;
      cq.T = T;
      cq.eps_target = budget;
      const CostReport rep = simulation_cost(cq);
      if (!rep.feasible) return false;
      out.delta0 = rep.delta0;
      out.steps = rep.steps;
      out.cost = rep.cost;
      out.eps_t = budget;
      out.eps_c = 0.0;
      out.overhead = 1.0;
      if (!row.mitigation) {
        out.eps_s = trivial_epsilon(rep.cost * cfg.spec.L * cfg.spec.L, row.q);
      } else {
        const NoiseSchedule sch = build_noise_schedule(h, row.strategy, cfg.model, cfg.p, rep.delta0, T);
        MonteCarloOptions o;
        o.trials = cfg.trials;
        o.seed = cfg.seed;
        const NoiseSummary ns = run_monte_carlo(sch, map, {row.q, cfg.model}, o);
        out.eps_s = ns.eps_s;
        out.eps_c = ns.eps_c;
        out.overhead = ns.post_selection_overhead;
        if (!(out.overhead <= cfg.overhead_cap)) return false;
      }
      return std::sqrt(out.eps_t * out.eps_t + out.eps_s * out.eps_s + out.eps_c * out.eps_c) <= cfg.eps_target;
    };
    double lo = 0.0, hi = cfg.T_max;
    FeasibleTimeRow probe = row;
    if (evaluate(hi, probe)) {
      row = probe;
      row.T_tar = hi;
      return;
    }
    for (int it = 0; it < 40 && hi - lo > 1e-3 * std::max(1e-3, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      FeasibleTimeRow tmp = row;
      if (evaluate(mid, tmp)) {
        lo = mid;
        probe = tmp;
      } else {
        hi = mid;
      }
    }
    if (lo > 0) {
      row = probe;
      row.T_tar = lo;
    }
  });
  return rows;
}

std::string feasible_time_csv(const std::vector<FeasibleTimeRow>& rows) {
  std::ostringstream os;
  os.precision(8);
  os << "# schema=1\n";
  os << "encoding,strategy,mitigation,q,supported,T_tar,delta0,steps,cost,eps_t,eps_s,eps_c,overhead\n";
  for (const auto& r : rows)
    os << to_string(r.encoding) << ',' << to_string(r.strategy) << ',' << (r.mitigation ? 1 : 0) << ',' << r.q << ','
       << (r.supported ? 1 : 0) << ',' << r.T_tar << ',' << r.delta0 << ',' << r.steps << ',' << r.cost << ','
       << r.eps_t << ',' << r.eps_s << ',' << r.eps_c << ',' << r.overhead << '\n';
  return os.str();
}

}  // namespace subpulse
