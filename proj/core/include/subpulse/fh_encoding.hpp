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

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "subpulse/pauli.hpp"

namespace subpulse {

enum class Encoding { compact, vc };

std::string to_string(Encoding e);
Encoding encoding_from_string(std::string_view s);

struct FermiHubbardSpec {
  int L = 2;
  double u = 1.0;      // on-site strength
  double t_hop = 1.0;  // hopping strength
  double r = 1.0;      // |u|, |t_hop| <= r
  int fermion_count = 0;

  void validate() const;
  int modes() const { return 2 * L * L; }
};

enum class QubitClass { vertex, ancilla };

/// Sites are numbered row-major with row 0 at the top; qubits follow a
/// serpentine (boustrophedon) walk through each spin sector.
struct QubitLayout {
  Encoding encoding = Encoding::compact;
  int L = 0;
  std::array<std::vector<int>, 2> vertex;   // [spin][site] -> qubit
  std::array<std::vector<int>, 2> ancilla;  // compact: [spin][face] (-1 if empty); VC: [spin][site]
  std::vector<QubitClass> qubit_class;
  int total_qubits = 0;

  int face_index(int r, int c) const { return r * (L - 1) + c; }
  int occupied_faces() const;  // per spin (compact only)
};

/// True for plaquettes that carry an ancilla in the compact encoding.
inline bool compact_face_occupied(int r, int c) { return (r + c) % 2 == 0; }
int compact_face_count(int L);

enum class LayerKind { hopping, onsite, mixed };

struct InteractionLayer {
  std::string label;
  LayerKind kind = LayerKind::hopping;
  std::vector<PauliTerm> terms;
  std::vector<int> group;  // terms sharing a group id form one local interaction
  std::vector<int> part;   // sub-label inside a group (square grouping), else -1
  int n_groups = 0;
  bool disjoint = true;  // distinct groups act on disjoint qubits
};

struct HoppingEdge {
  int spin = 0;
  int a = 0, b = 0;  // sites
  bool horizontal = true;
  int face = -1;     // ancilla face (compact), -1 if none
  int layer = 0;     // index into the 5-layer split
};

struct EncodedHamiltonian {
  FermiHubbardSpec spec;
  QubitLayout layout;
  std::vector<InteractionLayer> layers;
  std::vector<HoppingEdge> edges;
  double identity_offset = 0.0;  // on-site identity part, kept as a phase

  std::size_t n_qubits() const { return static_cast<std::size_t>(layout.total_qubits); }
};

EncodedHamiltonian encode(const FermiHubbardSpec& spec, Encoding encoding);

/// Compact-encoding 3-layer split: on-site, and two sets of disjoint
/// plaquette "squares".  Square groups carry parts 0..3 = a1, a2, b1, b2.
std::vector<InteractionLayer> regroup_three_layers(const FermiHubbardSpec& spec,
                                                   Encoding encoding = Encoding::compact);

/// Hopping layer: |t| min(n, modes - n, |Omega|).  On-site layer:
/// |u| min(floor(n/2), L^2) (maximal number of doubly occupied sites).
double lambda_bound(const FermiHubbardSpec& spec, const InteractionLayer& layer);
double lambda_bound(const FermiHubbardSpec& spec, const std::vector<InteractionLayer>& layers);

/// N = largest number of Pauli summands in a layer; n_tilde = largest number
/// of summands in *other* layers that fail to commute with a single summand.
struct LayerStructure {
  int N = 0;
  int n_tilde = 0;
};
LayerStructure layer_structure(const std::vector<InteractionLayer>& layers);

bool layer_terms_commute(const InteractionLayer& layer);
bool layer_groups_disjoint(const InteractionLayer& layer);

nlohmann::json to_json(const EncodedHamiltonian& h);
nlohmann::json to_json(const InteractionLayer& layer);

/// Sum of layers as a dense matrix (<= kMaxDenseQubits).
Matrix dense_hamiltonian(const std::vector<InteractionLayer>& layers, std::size_t n_qubits);
Matrix dense_layer(const InteractionLayer& layer, std::size_t n_qubits);

// ---- fermionic norm bound (brute force over Fock space) ----

/// min(n, modes - n, |Omega|)
int hopping_norm_bound(int modes, int n, int omega);

/// Largest |eigenvalue| of sum_{(i,j) in omega} (a_i^dag a_j + h.c.) in the
/// n-fermion sector, Jordan-Wigner on `modes` modes (modes <= 16).
double hopping_norm_bruteforce(int modes, const std::vector<std::pair<int, int>>& omega, int n);

}  // namespace subpulse
