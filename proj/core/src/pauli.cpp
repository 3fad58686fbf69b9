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

#include "subpulse/pauli.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace subpulse {

namespace {

void check_dense(std::size_t n) {
  if (n > kMaxDenseQubits)
    throw std::length_error("dense operator requested for " + std::to_string(n) +
                            " qubits (cap " + std::to_string(kMaxDenseQubits) + ")");
}

const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// single-qubit product table: a*b = i^phase * c
struct Prod {
  int phase;
  Pauli out;
};
Prod mul1(Pauli a, Pauli b) {
  if (a == Pauli::I) return {0, b};
  if (b == Pauli::I) return {0, a};
  if (a == b) return {0, Pauli::I};
  int ia = static_cast<int>(a), ib = static_cast<int>(b);
  int ic = 6 - ia - ib;  // X=1,Y=2,Z=3
  // cyclic XY=iZ, YZ=iX, ZX=iY
  bool cyclic = (ib - ia + 3) % 3 == 1;
  return {cyclic ? 1 : 3, static_cast<Pauli>(ic)};
}

}  // namespace

char to_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': case '_': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: throw std::invalid_argument(std::string("bad Pauli letter '") + c + "'");
  }
}

PauliString PauliString::parse(std::string_view letters) {
  PauliString p(letters.size());
  for (std::size_t q = 0; q < letters.size(); ++q) p.letters_[q] = pauli_from_char(letters[q]);
  return p;
}

PauliString PauliString::sparse(std::size_t n_qubits,
                                const std::vector<std::pair<int, Pauli>>& ops) {
  PauliString p(n_qubits);
  for (auto [q, op] : ops) p.set(static_cast<std::size_t>(q), op);
  return p;
}

void PauliString::set(std::size_t q, Pauli p) {
  if (q >= letters_.size()) throw std::out_of_range("qubit index out of range");
  letters_[q] = p;
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (auto l : letters_) w += l != Pauli::I;
  return w;
}

std::vector<int> PauliString::support() const {
  std::vector<int> s;
  for (std::size_t q = 0; q < letters_.size(); ++q)
    if (letters_[q] != Pauli::I) s.push_back(static_cast<int>(q));
  return s;
}

std::string PauliString::str() const {
  std::string s(letters_.size(), 'I');
  for (std::size_t q = 0; q < letters_.size(); ++q) s[q] = to_char(letters_[q]);
  return s;
}

PhasedPauli multiply(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) throw std::invalid_argument("Pauli size mismatch");
  PhasedPauli r{0, PauliString(a.size())};
  for (std::size_t q = 0; q < a.size(); ++q) {
    auto [ph, c] = mul1(a[q], b[q]);
    r.phase = (r.phase + ph) % 4;
    r.string.set(q, c);
  }
  return r;
}

bool commutes(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) throw std::invalid_argument("Pauli size mismatch");
  std::size_t anti = 0;
  for (std::size_t q = 0; q < a.size(); ++q)
    anti += a[q] != Pauli::I && b[q] != Pauli::I && a[q] != b[q];
  return anti % 2 == 0;
}

bool overlaps(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) throw std::invalid_argument("Pauli size mismatch");
  for (std::size_t q = 0; q < a.size(); ++q)
    if (a[q] != Pauli::I && b[q] != Pauli::I) return true;
  return false;
}

PauliMasks masks_of(const PauliString& p) {
  const std::size_t n = p.size();
  if (n > 63) throw std::length_error("bit-mask Pauli action limited to 63 qubits");
  PauliMasks m;
  for (std::size_t q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    switch (p[q]) {
      case Pauli::X: m.x |= bit; break;
      case Pauli::Y: m.x |= bit; m.z |= bit; ++m.ny; break;
      case Pauli::Z: m.z |= bit; break;
      default: break;
    }
  }
  return m;
}

Matrix pauli_matrix(const PauliString& p) {
  check_dense(p.size());
  const std::uint64_t dim = std::uint64_t{1} << p.size();
  const auto m = masks_of(p);
  Matrix out = Matrix::Zero(dim, dim);
  const cplx base = kIPow[m.ny % 4];
  for (std::uint64_t x = 0; x < dim; ++x) {
    const double sign = (std::popcount(x & m.z) & 1) ? -1.0 : 1.0;
    out(x ^ m.x, x) = base * sign;
  }
  return out;
}

Matrix pauli_exponential(const PauliTerm& term, double theta) {
  check_dense(term.string.size());
  const auto dim = Eigen::Index{1} << term.string.size();
  Matrix u = Matrix::Identity(dim, dim);
  apply_pauli_exponential(term, theta, u);
  return u;
}

namespace {

template <class Rows>
void apply_exp_rows(const PauliMasks& m, double angle, std::uint64_t dim, Rows&& rowop) {
  const double c = std::cos(angle), s = std::sin(angle);
  const cplx base = kIPow[m.ny % 4] * cplx(0, s);  // i sin * i^ny
  if (m.x == 0) {
    for (std::uint64_t x = 0; x < dim; ++x) {
      const double sign = (std::popcount(x & m.z) & 1) ? -1.0 : 1.0;
      rowop.diag(x, c + base * sign);
    }
    return;
  }
  for (std::uint64_t x = 0; x < dim; ++x) {
    const std::uint64_t y = x ^ m.x;
    if (y < x) continue;
    // P|x> = ph(x)|y>,  P|y> = ph(y)|x>
    const cplx px = base * ((std::popcount(x & m.z) & 1) ? -1.0 : 1.0);
    const cplx py = base * ((std::popcount(y & m.z) & 1) ? -1.0 : 1.0);
    // new[y] = c old[y] + px old[x];  new[x] = c old[x] + py old[y]
    rowop.pair(x, y, c, px, py);
  }
}

struct VecRows {
  Vector& v;
  void diag(std::uint64_t x, cplx f) { v[x] *= f; }
  void pair(std::uint64_t x, std::uint64_t y, double c, cplx px, cplx py) {
    const cplx a = v[x], b = v[y];
    v[y] = c * b + px * a;
    v[x] = c * a + py * b;
  }
};

struct MapRows {
  Eigen::Map<Vector>& v;
  void diag(std::uint64_t x, cplx f) { v[x] *= f; }
  void pair(std::uint64_t x, std::uint64_t y, double c, cplx px, cplx py) {
    const cplx a = v[x], b = v[y];
    v[y] = c * b + px * a;
    v[x] = c * a + py * b;
  }
};

}  // namespace

void apply_pauli_exponential(const PauliTerm& term, double theta, Vector& psi) {
  const auto m = masks_of(term.string);
  const std::uint64_t dim = std::uint64_t{1} << term.string.size();
  if (static_cast<std::uint64_t>(psi.size()) != dim)
    throw std::invalid_argument("state dimension mismatch");
  apply_exp_rows(m, theta * term.coeff, dim, VecRows{psi});
}

void apply_pauli_exponential(const PauliTerm& term, double theta, Matrix& mat) {
  const auto m = masks_of(term.string);
  const std::uint64_t dim = std::uint64_t{1} << term.string.size();
  if (static_cast<std::uint64_t>(mat.rows()) != dim)
    throw std::invalid_argument("operator dimension mismatch");
  for (Eigen::Index j = 0; j < mat.cols(); ++j) {
    Eigen::Map<Vector> col(mat.col(j).data(), mat.rows());
    apply_exp_rows(m, theta * term.coeff, dim, MapRows{col});
  }
}

void accumulate_pauli(const PauliTerm& term, const Vector& in, Vector& out) {
  const auto m = masks_of(term.string);
  const std::uint64_t dim = std::uint64_t{1} << term.string.size();
  const cplx base = kIPow[m.ny % 4] * term.coeff;
  for (std::uint64_t x = 0; x < dim; ++x) {
    const double sign = (std::popcount(x & m.z) & 1) ? -1.0 : 1.0;
    out[x ^ m.x] += base * sign * in[x];
  }
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() <= 64 && a.cols() <= 64) {
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
  }
  const Matrix g = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return spectral_norm(d) <= tol;
}

PhaseDistance distance_up_to_phase_checked(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw std::invalid_argument("distance_up_to_phase: dimension mismatch");
  const cplx tr = (v.adjoint() * u).trace();
  if (std::abs(tr) > 1e-12 * static_cast<double>(u.rows())) {
    return {spectral_norm(u - (tr / std::abs(tr)) * v), false};
  }
  // Degenerate trace: coarse scan plus golden-section polish.
  auto f = [&](double a) { return spectral_norm(u - std::polar(1.0, a) * v); };
  constexpr int kGrid = 360;
  double best_a = 0.0, best = f(0.0);
  for (int k = 1; k < kGrid; ++k) {
    const double a = 2.0 * std::numbers::pi * k / kGrid;
    const double val = f(a);
    if (val < best) best = val, best_a = a;
  }
  double lo = best_a - 2.0 * std::numbers::pi / kGrid, hi = best_a + 2.0 * std::numbers::pi / kGrid;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 80; ++it) {
    const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    if (f(a) < f(b)) hi = b; else lo = a;
  }
  return {std::min(best, f(0.5 * (lo + hi))), true};
}

double distance_up_to_phase(const Matrix& u, const Matrix& v) {
  return distance_up_to_phase_checked(u, v).value;
}

}  // namespace subpulse
