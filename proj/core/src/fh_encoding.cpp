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

#include "subpulse/fh_encoding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace subpulse {

std::string to_string(Encoding e) { return e == Encoding::compact ? "compact" : "vc"; }

Encoding encoding_from_string(std::string_view s) {
  if (s == "compact") return Encoding::compact;
  if (s == "vc" || s == "VC") return Encoding::vc;
  throw std::invalid_argument("unknown encoding '" + std::string(s) + "'");
}

void FermiHubbardSpec::validate() const {
  if (L < 2) throw std::invalid_argument("lattice side L must be >= 2");
  if (!(r > 0)) throw std::invalid_argument("coupling bound r must be positive");
  if (std::abs(u) > r * (1 + 1e-12) || std::abs(t_hop) > r * (1 + 1e-12))
    throw std::invalid_argument("couplings exceed the bound r");
  if (fermion_count < 0 || fermion_count > modes())
    throw std::invalid_argument("fermion_count outside [0, 2L^2]");
}

int compact_face_count(int L) {
  int n = 0;
  for (int r = 0; r + 1 < L; ++r)
    for (int c = 0; c + 1 < L; ++c) n += compact_face_occupied(r, c);
  return n;
}

int QubitLayout::occupied_faces() const {
  return encoding == Encoding::compact ? compact_face_count(L) : 0;
}

namespace {

int serpentine(int L, int r, int c) { return r * L + (r % 2 == 0 ? c : L - 1 - c); }

QubitLayout make_layout(int L, Encoding enc) {
  QubitLayout lay;
  lay.encoding = enc;
  lay.L = L;
  const int sites = L * L;
  if (enc == Encoding::compact) {
    const int faces = compact_face_count(L);
    const int block = sites + faces;
    lay.total_qubits = 2 * block;
    lay.qubit_class.assign(lay.total_qubits, QubitClass::vertex);
    for (int s = 0; s < 2; ++s) {
      lay.vertex[s].assign(sites, -1);
      lay.ancilla[s].assign((L - 1) * (L - 1), -1);
      for (int r = 0; r < L; ++r)
        for (int c = 0; c < L; ++c) lay.vertex[s][r * L + c] = s * block + serpentine(L, r, c);
      int next = s * block + sites;
      for (int r = 0; r + 1 < L; ++r)
        for (int k = 0; k + 1 < L; ++k) {
          const int c = r % 2 == 0 ? k : L - 2 - k;
          if (!compact_face_occupied(r, c)) continue;
          lay.ancilla[s][r * (L - 1) + c] = next;
          lay.qubit_class[next++] = QubitClass::ancilla;
        }
    }
  } else {
    lay.total_qubits = 4 * sites;
    lay.qubit_class.assign(lay.total_qubits, QubitClass::vertex);
    for (int s = 0; s < 2; ++s) {
      lay.vertex[s].assign(sites, -1);
      lay.ancilla[s].assign(sites, -1);
      for (int r = 0; r < L; ++r)
        for (int c = 0; c < L; ++c) {
          const int k = serpentine(L, r, c);
          lay.vertex[s][r * L + c] = s * 2 * sites + 2 * k;
          lay.ancilla[s][r * L + c] = s * 2 * sites + 2 * k + 1;
          lay.qubit_class[s * 2 * sites + 2 * k + 1] = QubitClass::ancilla;
        }
    }
  }
  return lay;
}

struct LayerBuilder {
  std::size_t n;
  InteractionLayer layer;
  int current = -1;

  void begin_group() { current = layer.n_groups++; }
  void add(const std::vector<std::pair<int, Pauli>>& ops, double coeff, int part = -1) {
    layer.terms.push_back({PauliString::sparse(n, ops), coeff});
    layer.group.push_back(current);
    layer.part.push_back(part);
  }
};

// Face adjacent to a horizontal edge (r,c)-(r,c+1) carrying an ancilla, or -1.
int compact_hface(const QubitLayout& lay, int r, int c) {
  const int L = lay.L;
  if (r >= 1 && compact_face_occupied(r - 1, c)) return lay.face_index(r - 1, c);
  if (r <= L - 2 && compact_face_occupied(r, c)) return lay.face_index(r, c);
  return -1;
}

// Face adjacent to a vertical edge (r,c)-(r+1,c); sign is +1 when the edge is
// the face's left edge and -1 when it is its right edge.
std::pair<int, int> compact_vface(const QubitLayout& lay, int r, int c) {
  const int L = lay.L;
  if (c <= L - 2 && compact_face_occupied(r, c)) return {lay.face_index(r, c), +1};
  if (c >= 1 && compact_face_occupied(r, c - 1)) return {lay.face_index(r, c - 1), -1};
  return {-1, +1};
}

void finalize(InteractionLayer& layer) {
  layer.disjoint = layer_groups_disjoint(layer);
}

}  // namespace

EncodedHamiltonian encode(const FermiHubbardSpec& spec, Encoding encoding) {
  spec.validate();
  EncodedHamiltonian h;
  h.spec = spec;
  h.layout = make_layout(spec.L, encoding);
  const auto& lay = h.layout;
  const int L = spec.L;
  const std::size_t n = static_cast<std::size_t>(lay.total_qubits);
  const double t2 = spec.t_hop / 2.0;
  std::vector<LayerBuilder> b(5, LayerBuilder{n, {}, -1});
  const char* labels[5] = {"H1", "H2", "H3", "H4", "H5"};
  for (int i = 0; i < 5; ++i) {
    b[i].layer.label = labels[i];
    b[i].layer.kind = i < 4 ? LayerKind::hopping : LayerKind::onsite;
  }

  for (int s = 0; s < 2; ++s) {
    const auto& V = lay.vertex[s];
    const auto& A = lay.ancilla[s];
    // horizontal
    for (int r = 0; r < L; ++r)
      for (int c = 0; c + 1 < L; ++c) {
        const int sa = r * L + c, sb = sa + 1;
        HoppingEdge e{s, sa, sb, true, -1, 0};
        if (encoding == Encoding::compact) {
          const int y = L - 1 - r;
          e.layer = (c + y) % 2 == 0 ? 0 : 1;
          e.face = compact_hface(lay, r, c);
          auto& lb = b[e.layer];
          lb.begin_group();
          const int qa = V[sa], qb = V[sb];
          if (e.face >= 0) {
            const int f = A[e.face];
            lb.add({{qa, Pauli::X}, {qb, Pauli::X}, {f, Pauli::Y}}, t2);
            lb.add({{qa, Pauli::Y}, {qb, Pauli::Y}, {f, Pauli::Y}}, t2);
          } else {
            lb.add({{qa, Pauli::X}, {qb, Pauli::X}}, t2);
            lb.add({{qa, Pauli::Y}, {qb, Pauli::Y}}, t2);
          }
        } else {
          e.layer = c % 2 == 0 ? 0 : 1;
          // i precedes j in the serpentine order; i' sits between them
          int si = sa, sj = sb;
          if (V[si] > V[sj]) std::swap(si, sj);
          const int qi = V[si], qa = A[si], qj = V[sj];
          auto& lb = b[e.layer];
          lb.begin_group();
          lb.add({{qi, Pauli::X}, {qa, Pauli::Z}, {qj, Pauli::X}}, t2);
          lb.add({{qi, Pauli::Y}, {qa, Pauli::Z}, {qj, Pauli::Y}}, t2);
        }
        h.edges.push_back(e);
      }
    // vertical
    for (int r = 0; r + 1 < L; ++r)
      for (int c = 0; c < L; ++c) {
        const int sa = r * L + c, sb = sa + L;
        HoppingEdge e{s, sa, sb, false, -1, 2};
        const int qa = V[sa], qb = V[sb];
        if (encoding == Encoding::compact) {
          e.layer = (c + r + L) % 2 == 0 ? 2 : 3;
          auto [face, sign] = compact_vface(lay, r, c);
          e.face = face;
          auto& lb = b[e.layer];
          lb.begin_group();
          if (face >= 0) {
            const int f = A[face];
            lb.add({{qa, Pauli::X}, {qb, Pauli::X}, {f, Pauli::X}}, sign * t2);
            lb.add({{qa, Pauli::Y}, {qb, Pauli::Y}, {f, Pauli::X}}, sign * t2);
          } else {
            lb.add({{qa, Pauli::X}, {qb, Pauli::X}}, t2);
            lb.add({{qa, Pauli::Y}, {qb, Pauli::Y}}, t2);
          }
        } else {
          e.layer = r % 2 == 0 ? 2 : 3;
          const int ia = A[sa], ib = A[sb];
          auto& lb = b[e.layer];
          lb.begin_group();
          lb.add({{qa, Pauli::X}, {ia, Pauli::Y}, {qb, Pauli::Y}, {ib, Pauli::X}}, t2);
          lb.add({{qa, Pauli::Y}, {ia, Pauli::Y}, {qb, Pauli::X}, {ib, Pauli::X}}, -t2);
        }
        h.edges.push_back(e);
      }
  }

  // on-site: (u/4)(I - Z_up)(I - Z_dn)
  const double u4 = spec.u / 4.0;
  for (int site = 0; site < L * L; ++site) {
    const int up = lay.vertex[0][site], dn = lay.vertex[1][site];
    auto& lb = b[4];
    lb.begin_group();
    lb.add({{up, Pauli::Z}}, -u4);
    lb.add({{dn, Pauli::Z}}, -u4);
    lb.add({{up, Pauli::Z}, {dn, Pauli::Z}}, u4);
    h.identity_offset += u4;
  }

  for (auto& lb : b) {
    finalize(lb.layer);
    h.layers.push_back(std::move(lb.layer));
  }
  return h;
}

std::vector<InteractionLayer> regroup_three_layers(const FermiHubbardSpec& spec, Encoding encoding) {
  if (encoding != Encoding::compact)
    throw std::invalid_argument("three-layer regrouping is defined for the compact encoding only");
  spec.validate();
  const auto lay = make_layout(spec.L, encoding);
  const int L = spec.L;
  const std::size_t n = static_cast<std::size_t>(lay.total_qubits);
  const double t2 = spec.t_hop / 2.0;

  std::vector<LayerBuilder> b(3, LayerBuilder{n, {}, -1});
  b[0].layer.label = "H0";
  b[0].layer.kind = LayerKind::onsite;
  b[1].layer.label = "H1";
  b[2].layer.label = "H2";
  b[1].layer.kind = b[2].layer.kind = LayerKind::mixed;

  const double u4 = spec.u / 4.0;
  for (int site = 0; site < L * L; ++site) {
    const int up = lay.vertex[0][site], dn = lay.vertex[1][site];
    b[0].begin_group();
    b[0].add({{up, Pauli::Z}}, -u4);
    b[0].add({{dn, Pauli::Z}}, -u4);
    b[0].add({{up, Pauli::Z}, {dn, Pauli::Z}}, u4);
  }

  std::array<std::set<int>, 3> used;  // qubits touched per layer
  std::set<std::pair<int, int>> covered;
  for (int s = 0; s < 2; ++s) {
    const auto& V = lay.vertex[s];
    for (int r = 0; r + 1 < L; ++r)
      for (int c = 0; c + 1 < L; ++c) {
        if (!compact_face_occupied(r, c)) continue;
        const int q1 = V[r * L + c], q2 = V[r * L + c + 1];
        const int q3 = V[(r + 1) * L + c + 1], q4 = V[(r + 1) * L + c];
        const int a = lay.ancilla[s][lay.face_index(r, c)];
        auto& lb = b[r % 2 == 0 ? 1 : 2];
        lb.begin_group();
        // a1, a2, b1, b2
        lb.add({{q1, Pauli::X}, {q2, Pauli::X}, {a, Pauli::Y}}, t2, 0);
        lb.add({{a, Pauli::X}, {q2, Pauli::X}, {q3, Pauli::X}}, -t2, 0);
        lb.add({{q1, Pauli::Y}, {q4, Pauli::Y}, {a, Pauli::X}}, t2, 1);
        lb.add({{a, Pauli::Y}, {q4, Pauli::Y}, {q3, Pauli::Y}}, t2, 1);
        lb.add({{q1, Pauli::Y}, {q2, Pauli::Y}, {a, Pauli::Y}}, t2, 2);
        lb.add({{a, Pauli::X}, {q2, Pauli::Y}, {q3, Pauli::Y}}, -t2, 2);
        lb.add({{q1, Pauli::X}, {q4, Pauli::X}, {a, Pauli::X}}, t2, 3);
        lb.add({{a, Pauli::Y}, {q4, Pauli::X}, {q3, Pauli::X}}, t2, 3);
        for (int q : {q1, q2, q3, q4, a}) used[r % 2 == 0 ? 1 : 2].insert(q);
        const int s1 = r * L + c, s2 = s1 + 1, s3 = s2 + L, s4 = s1 + L;
        covered.insert({s * 10000 + std::min(s1, s2), std::max(s1, s2)});
        covered.insert({s * 10000 + std::min(s2, s3), std::max(s2, s3)});
        covered.insert({s * 10000 + std::min(s3, s4), std::max(s3, s4)});
        covered.insert({s * 10000 + std::min(s1, s4), std::max(s1, s4)});
      }
  }
  // Boundary edges without an adjacent ancilla stay 2-local.
  for (int s = 0; s < 2; ++s) {
    const auto& V = lay.vertex[s];
    std::vector<std::pair<int, int>> rest;
    for (int r = 0; r < L; ++r)
      for (int c = 0; c < L; ++c) {
        const int sa = r * L + c;
        if (c + 1 < L && !covered.count({s * 10000 + sa, sa + 1})) rest.push_back({sa, sa + 1});
        if (r + 1 < L && !covered.count({s * 10000 + sa, sa + L})) rest.push_back({sa, sa + L});
      }
    for (auto [sa, sb] : rest) {
      const int qa = V[sa], qb = V[sb];
      int target = 1;
      if (used[1].count(qa) || used[1].count(qb)) target = 2;
      if (target == 2 && (used[2].count(qa) || used[2].count(qb))) target = 1;
      auto& lb = b[target];
      lb.begin_group();
      lb.add({{qa, Pauli::X}, {qb, Pauli::X}}, t2);
      lb.add({{qa, Pauli::Y}, {qb, Pauli::Y}}, t2);
      used[target].insert(qa);
      used[target].insert(qb);
    }
  }

  std::vector<InteractionLayer> out;
  for (auto& lb : b) {
    finalize(lb.layer);
    out.push_back(std::move(lb.layer));
  }
  return out;
}

double lambda_bound(const FermiHubbardSpec& spec, const InteractionLayer& layer) {
  const int n = spec.fermion_count, modes = spec.modes();
  switch (layer.kind) {
    case LayerKind::hopping:
      return std::abs(spec.t_hop) * hopping_norm_bound(modes, n, layer.n_groups);
    case LayerKind::onsite:
      return std::abs(spec.u) * std::min(n / 2, spec.L * spec.L);
    case LayerKind::mixed: {
      // every square/edge set splits into two matchings
      int edges = 0;
      std::map<int, std::set<int>> parts;
      for (std::size_t k = 0; k < layer.terms.size(); ++k) parts[layer.group[k]].insert(layer.part[k]);
      for (auto& [g, p] : parts) edges += p.count(-1) ? 1 : 4;
      return 2.0 * std::abs(spec.t_hop) * hopping_norm_bound(modes, n, edges);
    }
  }
  return 0.0;
}

double lambda_bound(const FermiHubbardSpec& spec, const std::vector<InteractionLayer>& layers) {
  double m = 0.0;
  for (const auto& l : layers) m = std::max(m, lambda_bound(spec, l));
  return m;
}

LayerStructure layer_structure(const std::vector<InteractionLayer>& layers) {
  LayerStructure s;
  if (layers.empty()) return s;
  const std::size_t n = layers.front().terms.empty() ? 0 : layers.front().terms.front().string.size();
  // qubit -> (layer, term) incidence, so only overlapping pairs are tested
  std::vector<std::vector<std::pair<int, int>>> at(n);
  for (std::size_t i = 0; i < layers.size(); ++i) {
    s.N = std::max<int>(s.N, static_cast<int>(layers[i].terms.size()));
    for (std::size_t k = 0; k < layers[i].terms.size(); ++k)
      for (int q : layers[i].terms[k].string.support()) at[q].push_back({int(i), int(k)});
  }
  for (std::size_t i = 0; i < layers.size(); ++i)
    for (std::size_t k = 0; k < layers[i].terms.size(); ++k) {
      const auto& p = layers[i].terms[k].string;
      std::set<std::pair<int, int>> cand;
      for (int q : p.support())
        for (auto lk : at[q])
          if (lk.first != int(i)) cand.insert(lk);
      int bad = 0;
      for (auto [j, m] : cand) bad += !commutes(p, layers[j].terms[m].string);
      s.n_tilde = std::max(s.n_tilde, bad);
    }
  return s;
}

bool layer_terms_commute(const InteractionLayer& layer) {
  for (std::size_t a = 0; a < layer.terms.size(); ++a)
    for (std::size_t b = a + 1; b < layer.terms.size(); ++b)
      if (!commutes(layer.terms[a].string, layer.terms[b].string)) return false;
  return true;
}

bool layer_groups_disjoint(const InteractionLayer& layer) {
  std::map<int, int> owner;
  for (std::size_t k = 0; k < layer.terms.size(); ++k)
    for (int q : layer.terms[k].string.support()) {
      auto [it, fresh] = owner.emplace(q, layer.group[k]);
      if (!fresh && it->second != layer.group[k]) return false;
    }
  return true;
}

nlohmann::json to_json(const InteractionLayer& layer) {
  nlohmann::json terms = nlohmann::json::array();
  for (std::size_t k = 0; k < layer.terms.size(); ++k) {
    const auto& t = layer.terms[k];
    std::string letters;
    for (int q : t.string.support()) letters += to_char(t.string[q]);
    terms.push_back({{"pauli", letters},
                     {"qubits", t.string.support()},
                     {"coeff", t.coeff},
                     {"group", layer.group[k]}});
  }
  const char* kind = layer.kind == LayerKind::hopping ? "hopping"
                     : layer.kind == LayerKind::onsite ? "onsite"
                                                       : "mixed";
  return {{"label", layer.label}, {"kind", kind}, {"disjoint", layer.disjoint}, {"terms", terms}};
}

nlohmann::json to_json(const EncodedHamiltonian& h) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : h.layers) layers.push_back(to_json(l));
  return {{"encoding", to_string(h.layout.encoding)},
          {"L", h.spec.L},
          {"n_qubits", h.layout.total_qubits},
          {"qubit_order",
           "serpentine per spin sector (row 0 at top, even rows left-to-right); "
           "compact: vertices then occupied faces; vc: vertex followed by its ancilla"},
          {"vertex_qubits", h.layout.vertex},
          {"ancilla_qubits", h.layout.ancilla},
          {"identity_offset", h.identity_offset},
          {"layers", layers}};
}

Matrix dense_layer(const InteractionLayer& layer, std::size_t n_qubits) {
  if (n_qubits > kMaxDenseQubits) throw std::length_error("dense layer too large");
  const auto dim = Eigen::Index{1} << n_qubits;
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& t : layer.terms) m += t.coeff * pauli_matrix(t.string);
  return m;
}

Matrix dense_hamiltonian(const std::vector<InteractionLayer>& layers, std::size_t n_qubits) {
  const auto dim = Eigen::Index{1} << n_qubits;
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& l : layers) m += dense_layer(l, n_qubits);
  return m;
}

}  // namespace subpulse
