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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace subpulse {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Dense operators are capped here; bigger systems go through the
// matrix-free state-vector path in exact_sim.
inline constexpr std::size_t kMaxDenseQubits = 14;
inline constexpr std::size_t kMaxStateQubits = 26;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/// Tensor product of single-qubit Paulis.  Qubit 0 is the leftmost Kronecker
/// factor, i.e. the most significant bit of a computational basis index.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n_qubits) : letters_(n_qubits, Pauli::I) {}

  static PauliString parse(std::string_view letters);
  static PauliString sparse(std::size_t n_qubits,
                            const std::vector<std::pair<int, Pauli>>& ops);

  std::size_t size() const { return letters_.size(); }
  Pauli operator[](std::size_t q) const { return letters_[q]; }
  void set(std::size_t q, Pauli p);

  std::size_t weight() const;
  std::vector<int> support() const;
  std::string str() const;

  bool operator==(const PauliString&) const = default;

 private:
  std::vector<Pauli> letters_;
};

/// i^phase * string
struct PhasedPauli {
  int phase = 0;
  PauliString string;
};

PhasedPauli multiply(const PauliString& a, const PauliString& b);

/// True iff a and b commute.  Throws std::invalid_argument on size mismatch.
bool commutes(const PauliString& a, const PauliString& b);

/// Do the supports of a and b intersect?
bool overlaps(const PauliString& a, const PauliString& b);

struct PauliTerm {
  PauliString string;
  double coeff = 1.0;
};

/// Bit masks for the fast matrix-free action P|x> = i^ny (-1)^{|x & z|} |x ^ x>.
struct PauliMasks {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  int ny = 0;
};
PauliMasks masks_of(const PauliString& p);

Matrix pauli_matrix(const PauliString& p);

/// exp(i * theta * coeff * P) = cos(theta c) I + i sin(theta c) P.
Matrix pauli_exponential(const PauliTerm& term, double theta);

/// In-place left multiplication by exp(i * theta * coeff * P).
void apply_pauli_exponential(const PauliTerm& term, double theta, Vector& psi);
void apply_pauli_exponential(const PauliTerm& term, double theta, Matrix& m);

/// out += coeff * P * in
void accumulate_pauli(const PauliTerm& term, const Vector& in, Vector& out);

double spectral_norm(const Matrix& a);
bool is_unitary(const Matrix& u, double tol = 1e-12);

struct PhaseDistance {
  double value = 0.0;
  bool fallback = false;  // tr(v^dag u) vanished; phase scanned numerically
};

/// min over alpha of ||u - e^{i alpha} v|| (spectral norm), using the trace
/// phase when it is well defined.
PhaseDistance distance_up_to_phase_checked(const Matrix& u, const Matrix& v);
double distance_up_to_phase(const Matrix& u, const Matrix& v);

}  // namespace subpulse
