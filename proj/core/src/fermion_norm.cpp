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
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "subpulse/fh_encoding.hpp"

namespace subpulse {

int hopping_norm_bound(int modes, int n, int omega) {
  return std::max(0, std::min({n, modes - n, omega}));
}

double hopping_norm_bruteforce(int modes, const std::vector<std::pair<int, int>>& omega, int n) {
  if (modes < 1 || modes > 16) throw std::invalid_argument("modes must be in [1,16]");
  if (n < 0 || n > modes) throw std::invalid_argument("particle number out of range");
  std::vector<unsigned> basis;
  for (unsigned x = 0; x < (1u << modes); ++x)
    if (std::popcount(x) == n) basis.push_back(x);
  std::unordered_map<unsigned, int> index;
  for (std::size_t k = 0; k < basis.size(); ++k) index[basis[k]] = static_cast<int>(k);

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(basis.size(), basis.size());
  for (auto [i, j] : omega) {
    if (i == j || i < 0 || j < 0 || i >= modes || j >= modes)
      throw std::invalid_argument("bad hopping pair");
    const int lo = std::min(i, j), hi = std::max(i, j);
    const unsigned between = ((1u << hi) - 1) & ~((1u << (lo + 1)) - 1);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const unsigned x = basis[k];
      const bool olo = x >> lo & 1u, ohi = x >> hi & 1u;
      if (olo == ohi) continue;
      // a_lo^dag a_hi + a_hi^dag a_lo moves the particle; Jordan-Wigner sign
      // counts occupied modes strictly between.
      const unsigned y = x ^ (1u << lo) ^ (1u << hi);
      const double sign = (std::popcount(x & between) & 1) ? -1.0 : 1.0;
      h(index.at(y), static_cast<Eigen::Index>(k)) += sign;
    }
  }
  if (basis.empty()) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace subpulse
