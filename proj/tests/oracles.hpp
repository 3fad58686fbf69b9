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

// Reference computations shared by the unit and acceptance tests.  They are
// written independently of the library code they check.
#pragma once

#include <algorithm>
#include <bit>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Spectrum of sum_{(i,j) in omega} a_i^dag a_j + h.c. in the n-particle
// sector, built directly in the occupation basis with fermionic signs.
inline Eigen::VectorXd hopping_spectrum(int modes, const std::vector<std::pair<int, int>>& omega, int n) {
  std::vector<unsigned> basis;
  for (unsigned s = 0; s < (1u << modes); ++s)
    if (std::popcount(s) == n) basis.push_back(s);
  if (basis.empty()) return Eigen::VectorXd::Zero(1);
  const auto idx = [&](unsigned s) { return std::lower_bound(basis.begin(), basis.end(), s) - basis.begin(); };
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(basis.size(), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const unsigned s = basis[k];
    for (auto [i, j] : omega)
      for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
        if (!(s >> b & 1u) || (s >> a & 1u)) continue;
        unsigned t = s & ~(1u << b);
        int sign = std::popcount(t & ((1u << b) - 1)) & 1;
        sign ^= std::popcount(t & ((1u << a) - 1)) & 1;
        t |= 1u << a;
        h(idx(t), k) += sign ? -1.0 : 1.0;
      }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double hopping_norm(int modes, const std::vector<std::pair<int, int>>& omega, int n) {
  return hopping_spectrum(modes, omega, n).cwiseAbs().maxCoeff();
}

// All sets of disjoint mode pairs (partial matchings) on `modes` modes.
inline void matchings(int modes, std::vector<std::vector<std::pair<int, int>>>& out) {
  std::vector<std::pair<int, int>> cur;
  std::vector<bool> used(modes, false);
  auto rec = [&](auto&& self, int from) -> void {
    out.push_back(cur);
    for (int i = from; i < modes; ++i) {
      if (used[i]) continue;
      for (int j = i + 1; j < modes; ++j) {
        if (used[j]) continue;
        used[i] = used[j] = true;
        cur.push_back({i, j});
        self(self, i + 1);
        cur.pop_back();
        used[i] = used[j] = false;
      }
    }
  };
  rec(rec, 0);
}

}  // namespace oracle
