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
#include <stdexcept>

#include "subpulse/trotter.hpp"

namespace subpulse {

double suzuki_a(int k) { return 1.0 / (4.0 - std::pow(4.0, 1.0 / (2 * k - 1))); }

int formula_stages(int p) {
  if (p == 1) return 1;
  int s = 2;
  for (int i = 2; i <= p / 2; ++i) s *= 5;
  return s;
}

double formula_B(int p) {
  if (p == 1) return 1.0;
  double b = 0.5;
  for (int i = 2; i <= p / 2; ++i) b *= std::abs(1.0 - 4.0 * suzuki_a(i));
  return b;
}

double formula_H(int p) {
  double h = 1.0;
  for (int i = 1; i < p / 2; ++i) {
    const double r = std::pow(4.0, 1.0 / (2 * i + 1));
    h *= (4.0 + r) / std::abs(4.0 - r);
  }
  return h;
}

double formula_G(int p) {
  if (p == 1) return 1.0;
  return 2.0 / std::tgamma(p + 2.0) * std::pow(10.0 / 3.0, (p + 1) * (p / 2.0 - 1));
}

namespace {

using Stages = std::vector<std::vector<std::pair<int, double>>>;

Stages stages(int p, int M) {
  Stages out;
  if (p == 1) {
    out.emplace_back();
    for (int i = 0; i < M; ++i) out.back().push_back({i, 1.0});
    return out;
  }
  if (p == 2) {
    out.resize(2);
    for (int i = 0; i < M; ++i) out[0].push_back({i, 0.5});
    for (int i = M - 1; i >= 0; --i) out[1].push_back({i, 0.5});
    return out;
  }
  const double ak = suzuki_a(p / 2);
  const Stages sub = stages(p - 2, M);
  auto push = [&](double c) {
    for (const auto& st : sub) {
      out.emplace_back();
      for (auto [i, w] : st) out.back().push_back({i, w * c});
    }
  };
  push(ak);
  push(ak);
  push(1.0 - 4.0 * ak);
  push(ak);
  push(ak);
  return out;
}

}  // namespace

ProductFormula build_formula(int p, int M) {
  if (p < 1 || (p > 1 && p % 2 != 0)) throw std::invalid_argument("order p must be 1 or even");
  if (M < 2) throw std::invalid_argument("need at least two layers");
  ProductFormula f;
  f.p = p;
  f.M = M;
  const Stages st = stages(p, M);
  f.S = static_cast<int>(st.size());
  f.tcoeff = Eigen::MatrixXd::Zero(f.S, M);
  for (int j = 0; j < f.S; ++j)
    for (auto [i, c] : st[j]) {
      f.factors.push_back({i, c});
      f.tcoeff(j, i) += c;
    }
  for (int k = 2; k <= p / 2; ++k) f.a.push_back(suzuki_a(k));
  f.B = formula_B(p);
  f.H = formula_H(p);
  f.G = formula_G(p);
  return f;
}

nlohmann::json to_json(const ProductFormula& f) {
  nlohmann::json rows = nlohmann::json::array();
  for (int j = 0; j < f.S; ++j) {
    std::vector<double> r(f.M);
    for (int i = 0; i < f.M; ++i) r[i] = f.tcoeff(j, i);
    rows.push_back(r);
  }
  nlohmann::json order = nlohmann::json::array();
  for (auto [i, c] : f.factors) order.push_back({{"layer", i}, {"coeff", c}});
  return {{"p", f.p}, {"M", f.M}, {"stages", f.S}, {"a", f.a}, {"B_p", f.B},
          {"H_p", f.H}, {"G_p", f.G}, {"tcoeff", rows}, {"factors", order}};
}

}  // namespace subpulse
