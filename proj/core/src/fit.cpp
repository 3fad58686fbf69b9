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

#include <unsupported/Eigen/NonLinearOptimization>

#include "subpulse/exact_sim.hpp"

namespace subpulse {

double fit_model(int p, double a0, double b0, double a1, double b1, double T, double Lambda) {
  return (a0 + b0 / std::pow(T, 1.0 / p)) * (a1 + b1 / std::pow(Lambda, (p + 1.0) / p));
}

double FitResult::predict(double T, double Lambda) const { return fit_model(p, a0, b0, a1, b1, T, Lambda); }

namespace {

// gauge a1 = 1: parameters (a0, b0, b1)
struct Model {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  Eigen::VectorXd x, y, d;  // x = T^{-1/p}, y = Lambda^{-(p+1)/p}

  int inputs() const { return 3; }
  int values() const { return static_cast<int>(d.size()); }

  int operator()(const Eigen::VectorXd& v, Eigen::VectorXd& r) const {
    r = (v[0] + v[1] * x.array()) * (1.0 + v[2] * y.array()) - d.array();
    return 0;
  }
  int df(const Eigen::VectorXd& v, Eigen::MatrixXd& J) const {
    J.resize(d.size(), 3);
    J.col(0) = (1.0 + v[2] * y.array()).matrix();
    J.col(1) = (x.array() * (1.0 + v[2] * y.array())).matrix();
    J.col(2) = ((v[0] + v[1] * x.array()) * y.array()).matrix();
    return 0;
  }
};

}  // namespace

FitResult fit_extrapolation(int p, const std::vector<FitPoint>& pts) {
  if (p < 1) throw std::invalid_argument("order p must be positive");
  if (pts.size() < 8) throw std::invalid_argument("need at least 8 points to fit");
  const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
  Model m;
  m.x.resize(n);
  m.y.resize(n);
  m.d.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& q = pts[i];
    if (!(q.T > 0 && q.Lambda > 0)) throw std::invalid_argument("fit points need T > 0 and Lambda > 0");
    m.x[i] = std::pow(q.T, -1.0 / p);
    m.y[i] = std::pow(q.Lambda, -(p + 1.0) / p);
    m.d[i] = q.delta0;
  }
  // linearised start: d = c0 + c1 x + c2 y + c3 x y with c = (a0, b0, a0 b1, b0 b1)
  Eigen::MatrixXd A(n, 4);
  A.col(0).setOnes();
  A.col(1) = m.x;
  A.col(2) = m.y;
  A.col(3) = m.x.cwiseProduct(m.y);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-10);
  if (qr.rank() < 4) throw std::runtime_error("fit design is rank deficient (need spread in both T and Lambda)");
  const Eigen::VectorXd c = qr.solve(m.d);
  Eigen::VectorXd v(3);
  v << c[0], c[1], std::abs(c[0]) > std::abs(c[1]) ? c[2] / c[0] : c[3] / c[1];

  Eigen::LevenbergMarquardt<Model> lm(m);
  lm.parameters.xtol = 1e-15;
  lm.parameters.ftol = 1e-15;
  lm.parameters.maxfev = 2000;
  lm.minimize(v);

  FitResult f;
  f.p = p;
  f.a0 = v[0];
  f.b0 = v[1];
  f.a1 = 1.0;
  f.b1 = v[2];
  f.iterations = static_cast<int>(lm.iter);
  Eigen::VectorXd r;
  m(v, r);
  f.residuals.assign(r.data(), r.data() + r.size());
  f.rms_residual = std::sqrt(r.squaredNorm() / static_cast<double>(n));
  return f;
}

nlohmann::json to_json(const FitResult& f) {
  return {{"p", f.p},   {"a0", f.a0}, {"b0", f.b0}, {"a1", f.a1}, {"b1", f.b1}, {"rms_residual", f.rms_residual},
          {"iterations", f.iterations}, {"residuals", f.residuals}};
}

}  // namespace subpulse
