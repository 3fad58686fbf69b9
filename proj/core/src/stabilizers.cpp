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
#include <stdexcept>

#include "subpulse/noise_lab.hpp"

namespace subpulse {

namespace {

using Row = std::vector<std::uint64_t>;

bool get(const Row& r, std::size_t i) { return (r[i >> 6] >> (i & 63)) & 1u; }
void flip(Row& r, std::size_t i) { r[i >> 6] ^= std::uint64_t{1} << (i & 63); }
void xor_into(Row& a, const Row& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}

bool has_x(Pauli p) { return p == Pauli::X || p == Pauli::Y; }
bool has_z(Pauli p) { return p == Pauli::Z || p == Pauli::Y; }

Pauli from_bits(bool x, bool z) { return x ? (z ? Pauli::Y : Pauli::X) : (z ? Pauli::Z : Pauli::I); }

bool anticommutes(const PauliString& a, int q, Pauli p) {
  const Pauli b = a[q];
  return b != Pauli::I && p != Pauli::I && b != p;
}

}  // namespace

std::vector<PauliString> commutant_basis(const std::vector<PauliTerm>& terms, std::size_t n) {
  // v = (x | z) commutes with t iff t.x . v.z + t.z . v.x = 0, so each term
  // contributes the row (t.z | t.x) of a GF(2) system A v = 0.
  const std::size_t cols = 2 * n, words = (cols + 63) / 64;
  std::vector<Row> rows;
  for (const auto& t : terms) {
    Row r(words, 0);
    for (std::size_t q = 0; q < n; ++q) {
      if (has_z(t.string[q])) flip(r, q);
      if (has_x(t.string[q])) flip(r, n + q);
    }
    rows.push_back(std::move(r));
  }
  std::vector<int> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && !get(rows[piv], c)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && get(rows[i], c)) xor_into(rows[i], rows[rank]);
    pivot_col.push_back(static_cast<int>(c));
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<PauliString> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Row v(words, 0);
    flip(v, f);
    for (std::size_t i = 0; i < rank; ++i)
      if (get(rows[i], f)) flip(v, pivot_col[i]);
    PauliString s(n);
    for (std::size_t q = 0; q < n; ++q) s.set(q, from_bits(get(v, q), get(v, n + q)));
    out.push_back(std::move(s));
  }
  return out;
}

Syndrome SyndromeMap::syndrome(int qubit, Pauli p) const {
  Syndrome s((n_checks + 63) / 64, 0);
  if (has_x(p)) xor_into(s, flip_x[qubit]);
  if (has_z(p)) xor_into(s, flip_z[qubit]);
  return s;
}

bool SyndromeMap::is_phase_noise(int qubit, Pauli p) const {
  if (p == Pauli::I) return false;
  return phase_noise[qubit][static_cast<int>(p) - 1];
}

SyndromeMap build_syndrome_map(const EncodedHamiltonian& h) {
  std::vector<PauliTerm> terms;
  for (const auto& l : h.layers) terms.insert(terms.end(), l.terms.begin(), l.terms.end());
  SyndromeMap m;
  m.n_qubits = h.n_qubits();
  m.qubit_class = h.layout.qubit_class;
  m.checks = commutant_basis(terms, m.n_qubits);
  m.n_checks = static_cast<int>(m.checks.size());
  const std::size_t words = (m.checks.size() + 63) / 64;
  m.flip_x.assign(m.n_qubits, Syndrome(words, 0));
  m.flip_z.assign(m.n_qubits, Syndrome(words, 0));
  m.phase_noise.assign(m.n_qubits, {false, false, false});
  for (std::size_t c = 0; c < m.checks.size(); ++c)
    for (int q : m.checks[c].support()) {
      if (anticommutes(m.checks[c], q, Pauli::X)) flip(m.flip_x[q], c);
      if (anticommutes(m.checks[c], q, Pauli::Z)) flip(m.flip_z[q], c);
    }
  for (std::size_t q = 0; q < m.n_qubits; ++q) {
    const bool silent = std::all_of(m.flip_z[q].begin(), m.flip_z[q].end(), [](auto w) { return w == 0; });
    m.phase_noise[q][2] = m.qubit_class[q] == QubitClass::vertex && silent;
  }
  return m;
}

nlohmann::json to_json(const SyndromeMap& m) {
  static const Pauli ps[3] = {Pauli::X, Pauli::Y, Pauli::Z};
  static const char* names[3] = {"X", "Y", "Z"};
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t q = 0; q < m.n_qubits; ++q)
    for (int k = 0; k < 3; ++k) {
      const Syndrome s = m.syndrome(static_cast<int>(q), ps[k]);
      std::vector<int> bits;
      for (int c = 0; c < m.n_checks; ++c)
        if (get(s, c)) bits.push_back(c);
      entries.push_back({{"qubit", q},
                         {"qubit_class", m.qubit_class[q] == QubitClass::vertex ? "vertex" : "ancilla"},
                         {"pauli", names[k]},
                         {"syndrome_bits", bits},
                         {"phase_noise", m.phase_noise[q][k]}});
    }
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : m.checks) checks.push_back(c.str());
  return {{"n_qubits", m.n_qubits}, {"n_checks", m.n_checks}, {"checks", checks}, {"entries", entries}};
}

SyndromeMap syndrome_map_from_json(const nlohmann::json& j) {
  SyndromeMap m;
  m.n_qubits = j.at("n_qubits").get<std::size_t>();
  m.n_checks = j.at("n_checks").get<int>();
  for (const auto& c : j.value("checks", nlohmann::json::array())) m.checks.push_back(PauliString::parse(c.get<std::string>()));
  const std::size_t words = (m.n_checks + 63) / 64;
  m.flip_x.assign(m.n_qubits, Syndrome(words, 0));
  m.flip_z.assign(m.n_qubits, Syndrome(words, 0));
  m.phase_noise.assign(m.n_qubits, {false, false, false});
  m.qubit_class.assign(m.n_qubits, QubitClass::vertex);
  for (const auto& e : j.at("entries")) {
    const auto q = e.at("qubit").get<std::size_t>();
    if (q >= m.n_qubits) throw std::invalid_argument("syndrome map entry outside the register");
    m.qubit_class[q] = e.at("qubit_class").get<std::string>() == "vertex" ? QubitClass::vertex : QubitClass::ancilla;
    const std::string p = e.at("pauli").get<std::string>();
    const int k = p == "X" ? 0 : p == "Y" ? 1 : p == "Z" ? 2 : -1;
    if (k < 0) throw std::invalid_argument("syndrome map pauli must be X, Y or Z");
    m.phase_noise[q][k] = e.value("phase_noise", false);
    if (k == 1) continue;  // Y is implied by X and Z
    Syndrome& s = k == 0 ? m.flip_x[q] : m.flip_z[q];
    for (int c : e.at("syndrome_bits")) {
      if (c < 0 || c >= m.n_checks) throw std::invalid_argument("syndrome bit out of range");
      flip(s, c);
    }
  }
  return m;
}

}  // namespace subpulse
