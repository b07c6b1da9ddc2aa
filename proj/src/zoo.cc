// Copyright 2026 The seqlab Authors.
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

#include "seqlab/zoo.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace seqlab {
namespace {

constexpr double kSumTolerance = 1e-12;

void CheckHorizon(int n) {
  Require(n >= 1 && n <= kMaxHorizon, ErrorCode::kDomain, "horizon out of range");
}

double Norm(std::span<const double> v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

}  // namespace

ExpertClass BernoulliIidClass(const std::vector<double>& theta_grid, int n) {
  CheckHorizon(n);
  Require(!theta_grid.empty(), ErrorCode::kDomain, "theta grid is empty");
  std::vector<JointDistribution> members;
  for (double theta : theta_grid) {
    Require(theta >= 0.0 && theta <= 1.0, ErrorCode::kDomain, "theta outside [0,1]");
    members.push_back(JointDistribution::Iid(n, {1.0 - theta, theta}));
  }
  GridInfo info;
  info.family = "bernoulli-iid";
  info.parameters = theta_grid;
  return ExpertClass::Grid(std::move(info), std::move(members));
}

ExpertClass BernoulliMlClass(int n) {
  CheckHorizon(n);
  std::vector<double> thetas;
  std::vector<JointDistribution> members;
  for (int j = 0; j <= n; ++j) {
    double theta = static_cast<double>(j) / n;
    thetas.push_back(theta);
    members.push_back(JointDistribution::Iid(n, {1.0 - theta, theta}));
  }
  GridInfo info;
  info.family = "bernoulli-iid";
  info.parameters = thetas;
  info.step = 1.0 / n;
  info.surrogate_note = "sup over [0,1] attained at the empirical frequency";
  SupFunction sup = [n](std::span<const Outcome> path) {
    int ones = static_cast<int>(std::count(path.begin(), path.end(), 1));
    double theta = static_cast<double>(ones) / n;
    double p = 1.0;
    for (Outcome y : path) p *= y ? theta : 1.0 - theta;
    return p;
  };
  return ExpertClass::Grid(std::move(info), std::move(members), std::move(sup));
}

ExpertClass LipschitzClass(int grid_res) {
  Require(grid_res >= 1 && grid_res <= 8, ErrorCode::kDomain, "grid_res must lie in [1, 8]");
  const int g = grid_res;
  std::vector<std::vector<double>> values;
  std::vector<int> levels(g + 1, 0);
  // Depth-first over lattice paths v_0..v_g with |v_{i+1} - v_i| <= 1.
  auto extend = [&](auto& self, int i) -> void {
    if (i > g) {
      std::vector<double> f(g + 1);
      for (int j = 0; j <= g; ++j) f[j] = static_cast<double>(levels[j]) / g;
      values.push_back(std::move(f));
      return;
    }
    for (int v = 0; v <= g; ++v) {
      if (i > 0 && std::abs(v - levels[i - 1]) > 1) continue;
      levels[i] = v;
      self(self, i + 1);
    }
  };
  extend(extend, 0);
  GridInfo info;
  info.family = "lipschitz";
  info.step = 1.0 / g;
  info.surrogate_note = "1-Lipschitz lattice paths on a uniform context and value grid";
  return ExpertClass::FiniteFunction(g + 1, std::move(values), std::move(info));
}

std::vector<double> RenewalHazards(std::span<const double> pmf, int n) {
  CheckHorizon(n);
  Require(pmf.size() <= static_cast<std::size_t>(n), ErrorCode::kDomain,
          "inter-arrival support exceeds the horizon");
  double total = 0.0;
  for (double v : pmf) {
    Require(v >= 0.0, ErrorCode::kDomain, "negative inter-arrival probability");
    total += v;
  }
  Require(total <= 1.0 + kSumTolerance, ErrorCode::kDomain, "inter-arrival mass exceeds 1");
  const double beyond = std::max(0.0, 1.0 - total);
  // h(i) = p(i) / P(T >= i); a law with no mass left renews surely.
  std::vector<double> hazard(n, 1.0);
  double tail = beyond;
  for (int i = n; i >= 1; --i) {
    double p = i <= static_cast<int>(pmf.size()) ? pmf[i - 1] : 0.0;
    tail += p;
    if (tail > 0.0) hazard[i - 1] = std::min(1.0, p / tail);
  }
  return hazard;
}

JointDistribution RenewalJoint(std::span<const double> pmf, int n) {
  std::vector<double> hazard = RenewalHazards(pmf, n);
  return JointDistribution::FromFunction(n, 2, [&](std::span<const Outcome> prefix) {
    int since = 1;
    for (Outcome y : prefix) since = y ? 1 : since + 1;
    double h = hazard[since - 1];
    return std::vector<double>{1.0 - h, h};
  });
}

ExpertClass RenewalClass(const std::vector<std::vector<double>>& pmfs, int n) {
  Require(!pmfs.empty(), ErrorCode::kDomain, "renewal grid is empty");
  std::vector<JointDistribution> members;
  for (const auto& pmf : pmfs) members.push_back(RenewalJoint(pmf, n));
  GridInfo info;
  info.family = "renewal";
  return ExpertClass::Grid(std::move(info), std::move(members));
}

std::vector<double> GeometricPmf(double hazard, int n) {
  CheckHorizon(n);
  Require(hazard > 0.0 && hazard <= 1.0, ErrorCode::kDomain, "hazard must lie in (0, 1]");
  std::vector<double> pmf(n);
  double survive = 1.0;
  for (int i = 0; i < n; ++i) {
    pmf[i] = survive * hazard;
    survive *= 1.0 - hazard;
  }
  return pmf;
}

HilbertBallClass MakeHilbertBall(int dim, int resolution, int horizon,
                                 std::vector<std::vector<double>> contexts) {
  Require(dim >= 1 && dim <= 3, ErrorCode::kDomain, "dimension must lie in [1, 3]");
  Require(resolution >= 1, ErrorCode::kDomain, "resolution must be positive");
  CheckHorizon(horizon);
  for (const auto& x : contexts) {
    Require(static_cast<int>(x.size()) == dim, ErrorCode::kDomain, "context has wrong dimension");
    Require(Norm(x) <= 1.0 + kSumTolerance, ErrorCode::kDomain, "context outside the unit ball");
  }
  HilbertBallClass f;
  f.dim = dim;
  f.horizon = horizon;
  f.contexts = std::move(contexts);
  std::vector<int> idx(dim, -resolution);
  while (true) {
    std::vector<double> w(dim);
    for (int i = 0; i < dim; ++i) w[i] = static_cast<double>(idx[i]) / resolution;
    if (Norm(w) <= 1.0 + kSumTolerance) f.weights.push_back(std::move(w));
    int i = 0;
    while (i < dim && idx[i] == resolution) idx[i++] = -resolution;
    if (i == dim) break;
    ++idx[i];
  }
  return f;
}

double HilbertValue(std::span<const double> w, std::span<const double> x) {
  double v = (1.0 + std::inner_product(w.begin(), w.end(), x.begin(), 0.0)) / 2.0;
  return std::clamp(v, 0.0, 1.0);
}

ExpertClass HilbertExpertClass(const HilbertBallClass& f) {
  Require(!f.contexts.empty(), ErrorCode::kDomain, "Hilbert class has no contexts");
  std::vector<std::vector<double>> values;
  for (const auto& w : f.weights) {
    std::vector<double> row;
    for (const auto& x : f.contexts) row.push_back(HilbertValue(w, x));
    values.push_back(std::move(row));
  }
  GridInfo info;
  info.family = "hilbert-ball";
  info.parameters = {static_cast<double>(f.dim), f.radius};
  info.surrogate_note = "weight grid in dimension " + std::to_string(f.dim) +
                        " stands in for the infinite-dimensional ball";
  return ExpertClass::FiniteFunction(static_cast<int>(f.contexts.size()), std::move(values),
                                     std::move(info));
}

HilbertBallClass HilbertShrink(const HilbertBallClass& f) {
  Require(f.radius == 1.0, ErrorCode::kDomain, "shrink expects a radius-1 class");
  Require(f.horizon >= 2, ErrorCode::kDomain, "shrink needs horizon >= 2");
  HilbertBallClass g = f;
  const double scale = 1.0 - 1.0 / f.horizon;
  g.radius = scale;
  for (auto& w : g.weights)
    for (double& c : w) c *= scale;
  return g;
}

double HilbertRoundSlack(double a, int n) {
  Require(a > -1.0 && a < 1.0, ErrorCode::kDomain, "a must lie in (-1, 1)");
  Require(n >= 2, ErrorCode::kDomain, "n must be at least 2");
  double lhs = std::log((1.0 + a) / 2.0);
  double rhs = std::log((1.0 + (1.0 - 1.0 / n) * a) / 2.0) + 1.0 / (n - 1);
  return rhs - lhs;
}

HilbertTruncationReport CheckHilbertTruncation(const HilbertBallClass& f, std::size_t draws,
                                               std::uint64_t seed) {
  Require(f.radius == 1.0, ErrorCode::kDomain, "truncation check expects a radius-1 class");
  const int n = f.horizon;
  HilbertBallClass g = HilbertShrink(f);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  std::bernoulli_distribution coin;
  auto path_sup = [&](const HilbertBallClass& c, const std::vector<std::vector<double>>& xs,
                      const Path& y) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& w : c.weights) {
      double s = 0.0;
      for (int t = 0; t < n; ++t) {
        double v = HilbertValue(w, xs[t]);
        s += std::log(y[t] ? v : 1.0 - v);
      }
      best = std::max(best, s);
    }
    return best;
  };
  HilbertTruncationReport r;
  r.draws = draws;
  r.min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t d = 0; d < draws; ++d) {
    std::vector<std::vector<double>> xs(n, std::vector<double>(f.dim));
    Path y(n);
    for (int t = 0; t < n; ++t) {
      for (double& c : xs[t]) c = gauss(rng);
      double norm = Norm(xs[t]);
      double radius = coin(rng) ? 1.0 : std::pow(unit(rng), 1.0 / f.dim);
      for (double& c : xs[t]) c = norm > 0.0 ? c * radius / norm : 0.0;
      y[t] = coin(rng) ? 1 : 0;
    }
    double slack = path_sup(g, xs, y) + 2.0 - path_sup(f, xs, y);
    r.min_slack = std::min(r.min_slack, slack);
  }
  r.holds = r.min_slack >= 0.0;
  return r;
}

EntropyProfile HilbertEntropyScan(const HilbertBallClass& f, const ContextTree& x,
                                  const std::vector<double>& scales) {
  ExpertClass composed = ComposeClassWithTree(HilbertExpertClass(f), x);
  return BuildEntropyProfile(composed, scales, CoverNotion::kSqrt, CoverMode::kGreedy);
}

}  // namespace seqlab
