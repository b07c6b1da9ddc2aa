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

#include <cmath>
#include <vector>

#include <doctest.h>

#include "seqlab/core.h"
#include "seqlab/error.h"
#include "seqlab/shtarkov.h"
#include "seqlab/zoo.h"

namespace seqlab {
namespace {

// Path probability from the inter-arrival law directly: a product of gap
// probabilities and the survival of the final open gap.
double GenerativeProb(const std::vector<double>& pmf, const Path& y) {
  auto p = [&](int gap) { return gap <= static_cast<int>(pmf.size()) ? pmf[gap - 1] : 0.0; };
  double prob = 1.0;
  int last = 0;
  for (int t = 1; t <= static_cast<int>(y.size()); ++t)
    if (y[t - 1] == 1) {
      prob *= p(t - last);
      last = t;
    }
  double survive = 1.0;
  for (int g = 1; g <= static_cast<int>(y.size()) - last; ++g) survive -= p(g);
  return prob * survive;
}

TEST_CASE("bernoulli classes") {
  ExpertClass one = BernoulliIidClass({0.5}, 3);
  CHECK(one.size() == 1);
  CHECK(one.joints()[0] == JointDistribution::Uniform(3, 2));
  ExpertClass ml = BernoulliMlClass(4);
  for (std::size_t code = 0; code < 16; ++code) {
    Path y = PathSpace(4, 2).decode_path(code);
    int k = 0;
    for (int v : y) k += v;
    double th = k / 4.0;
    CHECK(ml.closed_form_sup(y) == doctest::Approx(std::pow(th, k) * std::pow(1 - th, 4 - k)));
  }
}

TEST_CASE("renewal hazards and joints") {
  std::vector<double> point{1.0};
  JointDistribution ones = RenewalJoint(point, 4);
  CHECK(JointProb(ones, Path{1, 1, 1, 1}) == doctest::Approx(1.0));

  for (double h : RenewalHazards(GeometricPmf(0.5, 6), 6)) CHECK(h == doctest::Approx(0.5));
  JointDistribution geo = RenewalJoint(GeometricPmf(0.5, 6), 6);
  for (double v : geo.all_joint_probs()) CHECK(v == doctest::Approx(1.0 / 64));

  std::vector<std::vector<double>> laws{{0.1, 0.3, 0.2, 0.4}, {0.5, 0.0, 0.25}, {0.0, 0.0, 0.0, 0.0, 1.0}};
  for (const auto& pmf : laws) {
    JointDistribution q = RenewalJoint(pmf, 5);
    PathSpace s(5, 2);
    for (std::size_t code = 0; code < s.num_paths(); ++code) {
      Path y = s.decode_path(code);
      CHECK(JointProb(q, y) == doctest::Approx(GenerativeProb(pmf, y)).epsilon(1e-12));
    }
    for (double v : q.raw()) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
  CHECK_THROWS_AS(RenewalHazards(std::vector<double>{0.7, 0.6}, 4), Error);
  CHECK(RenewalClass({{0.5, 0.5}, {0.25, 0.75}}, 4).size() == 2);
}

TEST_CASE("lipschitz class") {
  for (int g : {2, 4, 6}) {
    ExpertClass f = LipschitzClass(g);
    CHECK(f.num_contexts() == g + 1);
    for (const auto& fn : f.functions())
      for (int i = 0; i + 1 < f.num_contexts(); ++i)
        CHECK(std::abs(fn[i + 1] - fn[i]) <= 1.0 / g + 1e-12);
  }
  CHECK_THROWS_AS(LipschitzClass(0), Error);
}

TEST_CASE("hilbert ball") {
  HilbertBallClass h = MakeHilbertBall(2, 2, 4, {{1.0, 0.0}, {0.0, -1.0}, {0.6, 0.8}});
  for (const auto& w : h.weights) CHECK(std::hypot(w[0], w[1]) <= 1.0 + 1e-12);
  for (const auto& w : h.weights)
    for (const auto& x : h.contexts) {
      double v = HilbertValue(w, x);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  CHECK(HilbertValue(std::vector<double>{0.0, 0.0}, h.contexts[2]) == 0.5);

  HilbertBallClass s = HilbertShrink(h);
  bool found = false;
  for (std::size_t i = 0; i < h.weights.size(); ++i) {
    double r = std::hypot(h.weights[i][0], h.weights[i][1]);
    CHECK(std::hypot(s.weights[i][0], s.weights[i][1]) == doctest::Approx(0.75 * r));
    if (h.weights[i] == std::vector<double>{1.0, 0.0}) {
      found = true;
      CHECK(s.weights[i][0] == doctest::Approx(0.75));
      CHECK(s.weights[i][1] == 0.0);
    }
  }
  CHECK(found);
  CHECK_THROWS_AS(MakeHilbertBall(2, 2, 4, {{1.0, 1.0}}), Error);
}

TEST_CASE("hilbert truncation") {
  HilbertBallClass h = MakeHilbertBall(2, 2, 4, {{1.0, 0.0}});
  HilbertTruncationReport r = CheckHilbertTruncation(h, 200, 3);
  CHECK(r.draws == 200);
  CHECK(r.holds);
  CHECK(r.min_slack >= 0.0);

  HilbertBallClass zero = h;
  zero.weights = {{0.0, 0.0}};
  HilbertTruncationReport z = CheckHilbertTruncation(zero, 20, 1);
  CHECK(z.min_slack == doctest::Approx(2.0));
}

TEST_CASE("hilbert entropy scan") {
  HilbertBallClass h = MakeHilbertBall(2, 2, 3, {{1.0, 0.0}, {0.0, 1.0}});
  EntropyProfile p = HilbertEntropyScan(h, ContextTree(3, {0, 1, 0, 1, 1, 0, 0}), {0.05, 0.2, 1.0});
  REQUIRE(p.points.size() == 3);
  CHECK(p.points.back().entropy == 0.0);
  CHECK(p.points[0].entropy >= p.points[1].entropy);
}

}  // namespace
}  // namespace seqlab
