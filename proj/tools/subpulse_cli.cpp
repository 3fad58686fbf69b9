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
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>
#include <tbb/global_control.h>

#include "subpulse/cost_analyzer.hpp"
#include "subpulse/exact_sim.hpp"
#include "subpulse/noise_lab.hpp"
#include "subpulse/pulse_synthesis.hpp"
#include "subpulse/trotter.hpp"

using nlohmann::json;
using namespace subpulse;

namespace {

struct Globals {
  bool json_out = false;
  bool dry_run = false;
  int threads = 0;
  std::optional<std::uint64_t> seed;
  std::string output;
};

struct Lattice {
  int L = 2;
  double u = 1.0;
  double t_hop = 1.0;
  double r = 1.0;
  int fermions = 2;
  std::string encoding = "compact";

  FermiHubbardSpec spec() const {
    FermiHubbardSpec s;
    s.L = L;
    s.u = u;
    s.t_hop = t_hop;
    s.r = r;
    s.fermion_count = fermions;
    s.validate();
    return s;
  }
};

void add_lattice(CLI::App* c, Lattice& l) {
  c->add_option("--L", l.L, "lattice side")->capture_default_str();
  c->add_option("--u", l.u, "on-site strength")->capture_default_str();
  c->add_option("--t-hop", l.t_hop, "hopping strength")->capture_default_str();
  c->add_option("--r", l.r, "coupling bound |u|,|t| <= r")->capture_default_str();
  c->add_option("--fermions", l.fermions, "fermion number")->capture_default_str();
  c->add_option("--encoding", l.encoding, "compact | vc")->check(CLI::IsMember({"compact", "vc"}))->capture_default_str();
}

std::uint64_t resolve_seed(const Globals& g) {
  if (g.seed) return *g.seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// single writer: stdout or --output
void emit(const Globals& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream os(g.output);
  if (!os) throw std::runtime_error("cannot open " + g.output);
  os << text;
}

std::vector<BoundFamily> parse_families(const std::vector<std::string>& names) {
  std::vector<BoundFamily> out;
  for (const auto& n : names) {
    if (n == "all") return {std::begin(kAllFamilies), std::end(kAllFamilies)};
    out.push_back(bound_family_from_string(n));
  }
  return out;
}

Strategy parse_strategy(const std::string& s) { return strategy_from_string(s == "automatic" ? "auto" : s); }

// ---- synth ----

struct SynthArgs {
  std::string pauli = "ZZZ";
  double delta = 0.05;
  std::string strategy = "subcircuit";
  double t_min = 0.0;
  bool no_verify = false;
  double tolerance = 1e-9;
};

int cmd_synth(const Globals& g, const SynthArgs& a) {
  const PauliTerm term{PauliString::parse(a.pauli), 1.0};
  if (g.dry_run) {
    emit(g, json{{"plan", "synth"}, {"pauli", a.pauli}, {"weight", term.string.weight()}, {"delta", a.delta},
                 {"strategy", a.strategy}}
                .dump(2));
    return 0;
  }
  SynthesisOptions opt;
  opt.verify = !a.no_verify;
  opt.t_min = a.t_min;
  const SynthesisReport r = synthesize(term, a.delta, parse_strategy(a.strategy), opt);
  const bool ok = a.no_verify || r.verification_error <= a.tolerance;
  if (g.json_out) {
    json j = to_json(r);
    j["pauli"] = a.pauli;
    j["delta"] = a.delta;
    j["verified"] = ok;
    emit(g, j.dump(2));
  } else {
    std::ostringstream os;
    os.precision(10);
    os << "method=" << to_string(r.method) << " runtime_cost=" << r.runtime_cost << " depth_cost=" << r.depth_cost
       << " verification_error=" << r.verification_error << (r.fallback ? " fallback" : "");
    emit(g, os.str());
  }
  if (!ok) spdlog::error("verification error {:.3e} exceeds {:.1e}", r.verification_error, a.tolerance);
  return ok ? 0 : 2;
}

// ---- bounds ----

struct BoundsArgs {
  std::vector<int> ps{2};
  int M = 5;
  double Lambda = 1.0;
  double T = 1.0;
  std::vector<double> deltas{0.1};
  int N = 0;
  int n_tilde = 0;
  int q_order = 0;
  std::vector<std::string> families{"all"};
  std::optional<double> invert;
};

int cmd_bounds(const Globals& g, const BoundsArgs& a) {
  BoundQuery base;
  base.M = a.M;
  base.Lambda = a.Lambda;
  base.T = a.T;
  base.N = a.N;
  base.n_tilde = a.n_tilde;
  base.q_order = a.q_order;
  const auto fams = parse_families(a.families);
  if (a.invert) {
    json out = json::array();
    for (int p : a.ps) {
      BoundQuery q = base;
      q.p = p;
      for (auto f : fams) {
        const InversionResult r = invert_for_delta(f, q, *a.invert);
        out.push_back({{"p", p}, {"family", to_string(f)}, {"delta0", r.delta0}, {"feasible", r.feasible},
                       {"method", r.method}});
      }
      const InversionResult best = invert_tightest(q, *a.invert);
      out.push_back({{"p", p}, {"family", "tightest:" + to_string(best.family)}, {"delta0", best.delta0},
                     {"feasible", best.feasible}, {"method", best.method}});
    }
    if (g.json_out) {
      emit(g, out.dump(2));
    } else {
      std::ostringstream os;
      os.precision(12);
      os << "# schema=1\np,family,delta0,feasible,method\n";
      for (const auto& r : out)
        os << r["p"] << ',' << r["family"].get<std::string>() << ',' << r["delta0"].get<double>() << ','
           << (r["feasible"].get<bool>() ? 1 : 0) << ',' << r["method"].get<std::string>() << '\n';
      emit(g, os.str());
    }
    return 0;
  }
  if (g.dry_run) {
    emit(g, json{{"plan", "bounds"}, {"p", a.ps}, {"deltas", a.deltas}, {"families", a.families}}.dump(2));
    return 0;
  }
  emit(g, bound_sweep_csv(base, a.ps, fams, a.deltas));
  return 0;
}

// ---- cost / table ----

struct CostArgs {
  Lattice lat{5, 1.0, 1.0, 1.0, 5, "compact"};
  std::string strategy = "subcircuit";
  std::string model = "per_time";
  int p = 0;
  double T = 7.0;
  double eps = 0.1;
  double Lambda = 0.0;
  std::string family = "tightest";
  bool table = false;
};

int cmd_cost(const Globals& g, const CostArgs& a) {
  CostQuery q;
  q.spec = a.lat.spec();
  q.encoding = encoding_from_string(a.lat.encoding);
  q.p = a.p;
  q.strategy = parse_strategy(a.strategy);
  q.model = error_model_from_string(a.model);
  q.T = a.T;
  q.eps_target = a.eps;
  q.Lambda = a.Lambda;
  if (a.family != "tightest") q.family = bound_family_from_string(a.family);
  if (g.dry_run) {
    const EncodedHamiltonian h = encode(q.spec, q.encoding);
    const LayerStructure ls = layer_structure(h.layers);
    json plan{{"plan", "cost"}, {"qubits", h.n_qubits()}, {"layers", h.layers.size()}, {"N", ls.N},
              {"n_tilde", ls.n_tilde}, {"Lambda", q.Lambda > 0 ? q.Lambda : lambda_bound(q.spec, h.layers)}};
    json ps = json::array();
    for (int p : q.p ? std::vector<int>{q.p} : q.p_candidates) {
      BoundQuery bq;
      bq.p = p;
      bq.M = static_cast<int>(h.layers.size());
      bq.Lambda = plan["Lambda"];
      bq.T = q.T;
      bq.N = ls.N;
      bq.n_tilde = ls.n_tilde;
      const auto inv = q.family ? invert_for_delta(*q.family, bq, q.eps_target) : invert_tightest(bq, q.eps_target);
      ps.push_back({{"p", p}, {"delta0", inv.delta0}, {"family", to_string(inv.family)}, {"feasible", inv.feasible}});
    }
    plan["orders"] = ps;
    emit(g, plan.dump(2));
    return 0;
  }
  const CostReport r = simulation_cost(q);
  if (g.json_out || !a.table) {
    emit(g, to_json(r).dump(2));
  } else {
    TableConfig tc;
    tc.L = q.spec.L;
    tc.T = q.T;
    tc.eps_target = q.eps_target;
    tc.fermions = q.spec.fermion_count;
    tc.r = q.spec.r;
    tc.cells.push_back({q.encoding, "analytic", q.strategy, q.model, std::nullopt, std::nullopt});
    emit(g, table_csv(table_benchmark(tc)));
  }
  return r.feasible ? 0 : 3;
}

struct TableArgs {
  int L = 5;
  double T = 7.0;
  double eps = 0.1;
  int fermions = 5;
  double r = 1.0;
  std::vector<std::string> numeric;  // "encoding:strategy:model:value"
};

int cmd_table(const Globals& g, const TableArgs& a) {
  TableConfig tc = default_table_config();
  tc.L = a.L;
  tc.T = a.T;
  tc.eps_target = a.eps;
  tc.fermions = a.fermions;
  tc.r = a.r;
  for (const auto& s : a.numeric) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string x; std::getline(ss, x, ':');) parts.push_back(x);
    if (parts.size() != 4) throw CLI::ValidationError("--numeric", "expected encoding:strategy:model:value");
    tc.cells.push_back({encoding_from_string(parts[0]), "numeric", parse_strategy(parts[1]),
                        error_model_from_string(parts[2]), std::stod(parts[3]), std::nullopt});
  }
  if (g.dry_run) {
    emit(g, json{{"plan", "table"}, {"cells", tc.cells.size()}, {"L", tc.L}, {"T", tc.T}}.dump(2));
    return 0;
  }
  const auto rows = table_benchmark(tc);
  if (g.json_out) {
    json out = json::array();
    for (const auto& r : rows) {
      json row{{"encoding", to_string(r.cell.encoding)}, {"bounds", r.cell.bounds},
               {"strategy", to_string(r.cell.strategy)}, {"error_model", to_string(r.cell.model)},
               {"value", r.value}};
      if (r.cell.target) {
        row["target"] = *r.cell.target;
        row["rel_error"] = r.rel_error;
      }
      if (r.cell.bounds == "analytic") row["report"] = to_json(r.report);
      out.push_back(row);
    }
    emit(g, out.dump(2));
  } else {
    emit(g, table_csv(rows));
  }
  return 0;
}

// ---- noise ----

struct NoiseArgs {
  Lattice lat{3, 1.0, 1.0, 1.0, 2, "compact"};
  std::string strategy = "subcircuit";
  std::string model = "per_gate";
  int p = 2;
  double T = 0.0;  // 0 = one Trotter step
  double eps_t = 0.1;
  double delta = 0.0;  // 0 = from the analytic bound
  double q = 1e-4;
  std::uint64_t trials = 10000;
  std::size_t records = 0;
  std::optional<double> max_q;
  bool feasible = false;
  std::vector<double> qs{1e-4};
  bool mitigation = false;
  std::string syndrome_in, syndrome_out;
};

int cmd_noise(const Globals& g, const NoiseArgs& a) {
  const FermiHubbardSpec spec = a.lat.spec();
  const Encoding enc = encoding_from_string(a.lat.encoding);
  const Strategy strat = parse_strategy(a.strategy);
  const ErrorModel model = error_model_from_string(a.model);
  const std::uint64_t seed = resolve_seed(g);

  if (a.feasible) {
    FeasibleTimeConfig fc;
    fc.spec = spec;
    fc.model = model;
    fc.eps_target = a.eps_t;
    fc.encodings = {enc};
    fc.strategies = {Strategy::standard, Strategy::subcircuit};
    fc.mitigation = {a.mitigation};
    fc.qs = a.qs;
    fc.p = a.p;
    fc.trials = a.trials;
    fc.seed = seed;
    if (g.dry_run) {
      emit(g, json{{"plan", "feasible_time"}, {"rows", fc.qs.size() * 2}, {"seed", seed}}.dump(2));
      return 0;
    }
    emit(g, feasible_time_csv(feasible_time_table(fc)));
    return 0;
  }

  const EncodedHamiltonian h = encode(spec, enc);
  double delta0 = a.delta;
  std::string family = "given";
  if (delta0 <= 0) {
    BoundQuery bq;
    bq.p = a.p;
    bq.M = static_cast<int>(h.layers.size());
    bq.Lambda = lambda_bound(spec, h.layers);
    bq.T = a.T > 0 ? a.T : 1.0;
    const LayerStructure ls = layer_structure(h.layers);
    bq.N = ls.N;
    bq.n_tilde = ls.n_tilde;
    const InversionResult inv = invert_tightest(bq, a.eps_t);
    if (!inv.feasible) throw std::runtime_error("no feasible Trotter step for this target");
    delta0 = inv.delta0;
    family = to_string(inv.family);
  }
  const double T = a.T > 0 ? a.T : delta0;
  const NoiseSchedule sch = build_noise_schedule(h, strat, model, a.p, delta0, T);
  SyndromeMap map = a.syndrome_in.empty() ? build_syndrome_map(h)
                                          : syndrome_map_from_json(json::parse(std::ifstream(a.syndrome_in)));
  if (!a.syndrome_out.empty()) std::ofstream(a.syndrome_out) << to_json(map).dump(1) << '\n';

  if (g.dry_run) {
    emit(g, json{{"plan", "noise"}, {"qubits", sch.n_qubits}, {"locations", sch.locations.size()},
                 {"steps", sch.steps}, {"delta0", delta0}, {"bound_family", family}, {"checks", map.n_checks},
                 {"seed", seed}}
                .dump(2));
    return 0;
  }
  if (a.max_q) {
    const MaxQResult r = max_q_search(sch, map, *a.max_q, a.trials, seed, a.eps_t);
    json probes = json::array();
    for (auto [q, e] : r.probes) probes.push_back({{"q", q}, {"eps_s_upper95", e}});
    emit(g, json{{"q_max", r.q_max}, {"at_floor", r.at_floor}, {"at_ceiling", r.at_ceiling}, {"eps_s", r.eps_s},
                 {"combined", r.combined}, {"probes", probes}, {"seed", seed}, {"delta0", delta0}}
                .dump(2));
    return 0;
  }
  MonteCarloOptions mo;
  mo.trials = a.trials;
  mo.seed = seed;
  mo.keep_records = a.records;
  const NoiseSummary s = run_monte_carlo(sch, map, {a.q, model}, mo);
  if (g.json_out) {
    json j = to_json(s);
    j["delta0"] = delta0;
    j["steps"] = sch.steps;
    j["bound_family"] = family;
    emit(g, j.dump(2));
  } else {
    std::ostringstream os;
    os.precision(10);
    os << "# schema=1\nq,trials,seed,clean,detectable,undetectable_phase,undetectable_nonphase,intra_decomposition,"
          "accept_rate,overhead,eps_s\n"
       << s.q << ',' << s.trials << ',' << s.seed << ',' << s.clean.fraction << ',' << s.detectable.fraction << ','
       << s.undetectable_phase.fraction << ',' << s.undetectable_nonphase.fraction << ','
       << s.intra_decomposition.fraction << ',' << s.accept_rate << ',' << s.post_selection_overhead << ','
       << s.eps_s << '\n';
    for (const auto& r : s.records) os << to_json(r).dump() << '\n';
    emit(g, os.str());
  }
  return 0;
}

// ---- simulate ----

struct SimulateArgs {
  Lattice lat{2, 1.0, 1.0, 1.0, 2, "compact"};
  std::vector<int> ps{1, 2, 4};
  double T = 1.0;
  std::vector<double> deltas{0.02, 0.05, 0.1};
  bool power = false;
  std::optional<double> delta0_target;
};

int cmd_simulate(const Globals& g, const SimulateArgs& a) {
  const FermiHubbardSpec spec = a.lat.spec();
  const Encoding enc = encoding_from_string(a.lat.encoding);
  NormOptions opt;
  opt.force_power_iteration = a.power;
  opt.seed = resolve_seed(g);
  if (g.dry_run) {
    const EncodedHamiltonian h = encode(spec, enc);
    emit(g, json{{"plan", "simulate"}, {"qubits", h.n_qubits()}, {"layers", h.layers.size()}, {"p", a.ps},
                 {"deltas", a.deltas}, {"norm", h.n_qubits() <= kMaxDenseNormQubits && !a.power ? "dense_svd" : "power_iteration"},
                 {"seed", opt.seed}}
                .dump(2));
    return 0;
  }
  if (a.delta0_target) {
    json out = json::array();
    for (int p : a.ps)
      out.push_back({{"p", p}, {"T", a.T}, {"eps_target", *a.delta0_target},
                     {"delta0", numeric_delta0(spec, enc, p, a.T, *a.delta0_target, 1e-4, opt)}});
    emit(g, out.dump(2));
    return 0;
  }
  std::vector<NumericErrorPoint> pts;
  for (int p : a.ps)
    for (double d : a.deltas) pts.push_back(numeric_epsilon(spec, enc, p, a.T, d, opt));
  if (g.json_out) {
    json out = json::array();
    for (const auto& e : pts) out.push_back(to_json(e));
    emit(g, out.dump(2));
  } else {
    emit(g, numeric_error_csv(pts));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  auto log = spdlog::stderr_color_mt("subpulse");
  spdlog::set_default_logger(log);

  CLI::App app{"Sub-circuit pulse synthesis and Trotter cost analysis"};
  app.require_subcommand(1);
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "TOML/INI file of option values (flags override)");
  Globals g;
  app.add_flag("--json", g.json_out, "machine-readable JSON output");
  app.add_flag("--dry-run", g.dry_run, "print the resolved plan only");
  app.add_option("--threads", g.threads, "cap worker threads (0 = all)");
  app.add_option("--seed", g.seed, "RNG seed (recorded in output)");
  app.add_option("-o,--output", g.output, "write the result here instead of stdout");
  std::string log_level = "warn";
  app.add_option("--log-level", log_level, "trace|debug|info|warn|error|off");

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "synthesize exp(i delta P) into ZZ pulses");
  synth->add_option("--pauli", sa.pauli, "Pauli string, e.g. XXY")->capture_default_str();
  synth->add_option("--delta", sa.delta, "rotation angle")->capture_default_str();
  synth->add_option("--strategy", sa.strategy, "standard | subcircuit | auto")
      ->check(CLI::IsMember({"standard", "subcircuit", "auto", "automatic"}))
      ->capture_default_str();
  synth->add_option("--t-min", sa.t_min, "count pulses shorter than this");
  synth->add_option("--tolerance", sa.tolerance, "verification tolerance")->capture_default_str();
  synth->add_flag("--no-verify", sa.no_verify, "skip dense verification");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "evaluate or invert Trotter error bounds");
  bounds->add_option("--p", ba.ps, "formula orders")->capture_default_str();
  bounds->add_option("--M", ba.M, "Trotter layers")->capture_default_str();
  bounds->add_option("--lambda", ba.Lambda, "layer norm bound")->capture_default_str();
  bounds->add_option("--T", ba.T, "simulation time")->capture_default_str();
  bounds->add_option("--delta", ba.deltas, "step sizes")->capture_default_str();
  bounds->add_option("--N", ba.N, "Pauli summands per layer (commutator family)");
  bounds->add_option("--n-tilde", ba.n_tilde, "non-commuting partners (commutator family)");
  bounds->add_option("--q-order", ba.q_order, "Taylor truncation order (0 = budget rule)");
  bounds->add_option("--family", ba.families, "basic|explicit_sum|commutator|taylor_of_taylor|all")
      ->capture_default_str();
  bounds->add_option("--invert", ba.invert, "solve for the largest delta meeting this error");

  CostArgs ca;
  auto* cost = app.add_subcommand("cost", "run-time of a full simulation");
  add_lattice(cost, ca.lat);
  cost->add_option("--strategy", ca.strategy, "standard | subcircuit | auto")->capture_default_str();
  cost->add_option("--model", ca.model, "per_gate | per_time")->capture_default_str();
  cost->add_option("--p", ca.p, "formula order (0 = best of 1, 2, 4)")->capture_default_str();
  cost->add_option("--T", ca.T, "simulation time")->capture_default_str();
  cost->add_option("--eps", ca.eps, "target Trotter error")->capture_default_str();
  cost->add_option("--lambda", ca.Lambda, "override the layer norm bound");
  cost->add_option("--family", ca.family, "bound family or 'tightest'")->capture_default_str();
  cost->add_flag("--table", ca.table, "emit a one-row table CSV instead of JSON");

  TableArgs ta;
  auto* table = app.add_subcommand("table", "regenerate the benchmark run-time tables");
  table->add_option("--L", ta.L)->capture_default_str();
  table->add_option("--T", ta.T)->capture_default_str();
  table->add_option("--eps", ta.eps)->capture_default_str();
  table->add_option("--fermions", ta.fermions)->capture_default_str();
  table->add_option("--r", ta.r)->capture_default_str();
  table->add_option("--numeric", ta.numeric, "external cell encoding:strategy:model:value");

  NoiseArgs na;
  auto* noise = app.add_subcommand("noise", "depolarizing-noise Monte Carlo with syndrome tracking");
  add_lattice(noise, na.lat);
  noise->add_option("--strategy", na.strategy)->capture_default_str();
  noise->add_option("--model", na.model, "per_gate | per_time")->capture_default_str();
  noise->add_option("--p", na.p)->capture_default_str();
  noise->add_option("--T", na.T, "simulation time (0 = one step)")->capture_default_str();
  noise->add_option("--eps", na.eps_t, "Trotter error target used to pick delta0")->capture_default_str();
  noise->add_option("--delta", na.delta, "Trotter step (0 = from the bound)");
  noise->add_option("--q", na.q, "depolarizing probability")->capture_default_str();
  noise->add_option("--trials", na.trials)->capture_default_str();
  noise->add_option("--records", na.records, "emit the first n trial logs");
  noise->add_option("--max-q", na.max_q, "search the largest q with eps_s below this");
  noise->add_flag("--feasible", na.feasible, "feasible simulation time table");
  noise->add_option("--qs", na.qs, "q grid for --feasible")->capture_default_str();
  noise->add_flag("--mitigation", na.mitigation, "post-select on syndromes in --feasible");
  noise->add_option("--syndrome-map", na.syndrome_in, "load the syndrome map from JSON");
  noise->add_option("--write-syndrome-map", na.syndrome_out, "save the derived syndrome map");

  SimulateArgs sma;
  auto* sim = app.add_subcommand("simulate", "exact Trotter error on small lattices");
  add_lattice(sim, sma.lat);
  sim->add_option("--p", sma.ps)->capture_default_str();
  sim->add_option("--T", sma.T)->capture_default_str();
  sim->add_option("--delta", sma.deltas)->capture_default_str();
  sim->add_flag("--power", sma.power, "matrix-free power iteration even when dense fits");
  sim->add_option("--delta0", sma.delta0_target, "bisect for the step meeting this error");

  for (auto* s : app.get_subcommands({})) {
    s->allow_config_extras(CLI::config_extras_mode::error);
    s->fallthrough();  // global flags may follow the subcommand
  }

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(spdlog::level::from_str(log_level));

  std::unique_ptr<tbb::global_control> limit;
  if (g.threads > 0)
    limit = std::make_unique<tbb::global_control>(tbb::global_control::max_allowed_parallelism,
                                                  static_cast<std::size_t>(g.threads));
  try {
    if (*synth) return cmd_synth(g, sa);
    if (*bounds) return cmd_bounds(g, ba);
    if (*cost) return cmd_cost(g, ca);
    if (*table) return cmd_table(g, ta);
    if (*noise) return cmd_noise(g, na);
    if (*sim) return cmd_simulate(g, sma);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 1;
}
