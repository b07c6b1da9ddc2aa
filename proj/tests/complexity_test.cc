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
#include <random>
#include <vector>

#include <doctest.h>

#include "seqlab/complexity.h"
#include "seqlab/core.h"
#include "seqlab/error.h"
#include "seqlab/shtarkov.h"
#include "test_util.h"

namespace seqlab {
namespace {

TEST_CASE("zeta values") {
  CHECK(Zeta(1.0) == 0.0);
  CHECK(Zeta(0.25) == doctest::Approx(-1.0));
  CHECK(Zeta(4.0) == doctest::Approx(2 * std::log(2.5)));
  CHECK_THROWS_AS(Zeta(0.0), Error);
  CHECK_THROWS_AS(Zeta(-1.0), Error);
  for (double x = 0.05; x < 30; x *= 1.3) CHECK(Zeta(x) < Zeta(x * 1.01));
}

TEST_CASE("zeta inequalities") {
  for (int n : {7, 100}) {
    ZetaReport r = CheckZetaProperties(ZetaParams{n, 2}, ZetaGrids{2000, 30, 2000, 1});
    CHECK(r.divergence_min >= -kCheckTolerance);
    CHECK(r.lipschitz_min_slack >= -kCheckTolerance);
    CHECK(r.log_quarter_min_slack >= -kCheckTolerance);
    // With the full quadratic coefficient the bound breaks near x = n^2 |Y|.
    CHECK(r.log_min_slack < 0.0);
    CHECK(r.log_argmin > 0.5 * ZetaParams{n, 2}.range());
  }
  CHECK(ZetaDivergenceMinTernary(ZetaParams{7, 3}, 12) >= -kCheckTolerance);
}

TEST_CASE("circle-dot sampling") {
  JointDistribution point = JointDistribution::Iid(4, {0.0, 1.0});
  CircleDotSample s = SampleCircleDot(point, 17);
  CHECK(s.w == Path{1, 1, 1, 1});
  CHECK(s.y == s.w);
  CHECK(s.z == s.w);
  std::mt19937_64 rng(2);
  JointDistribution p = testing::RandomJoint(rng, 5, 2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CircleDotSample c = SampleCircleDot(p, seed);
    for (int t = 0; t < 5; ++t) CHECK(c.w[t] == (c.eps[t] == 1 ? c.y[t] : c.z[t]));
    CHECK(SampleCircleDot(p, seed).w == c.w);
  }
}

TEST_CASE("symmetrization holds exactly") {
  std::mt19937_64 rng(13);
  for (int n = 2; n <= 3; ++n) {
    const double delta = DeltaNFloor(n, 2);
    for (int i = 0; i < 3; ++i) {
      ExpertClass q = TruncateClass(testing::RandomJointClass(rng, n, 2, 2 + i), delta);
      JointDistribution p = TruncateDist(testing::RandomJoint(rng, n, 2), delta);
      SymmetrizationReport r = SymmetrizationCheck(q, p);
      CHECK(r.exact);
      CHECK(r.holds);
      CHECK(r.lhs <= r.rhs + kCheckTolerance);
    }
    JointDistribution p = TruncateDist(testing::RandomJoint(rng, n, 2), delta);
    SymmetrizationReport single = SymmetrizationCheck(ExpertClass::FiniteJoint({p}), p);
    CHECK(single.lhs == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(single.holds);
    ExpertClass q = TruncateClass(testing::RandomJointClass(rng, n, 2, 3), delta);
    JointDistribution nml = ShtarkovSum(q).nml;
    if (nml.in_delta_n()) {
      SymmetrizationReport at_nml = SymmetrizationCheck(q, nml);
      CHECK(at_nml.lhs == doctest::Approx(ShtarkovSum(q).value));
      CHECK(at_nml.holds);
    }
  }
  ExpertClass bad = ExpertClass::FiniteJoint({JointDistribution::Iid(3, {0.99, 0.01})});
  CHECK_THROWS_AS(SymmetrizationCheck(bad, JointDistribution::Uniform(3, 2)), Error);
}

// Exact E sup over a family of sign-independent coefficient vectors.
double ConstantOffsetOracle(const std::vector<std::vector<double>>& a, double lambda) {
  const int n = static_cast<int>(a[0].size());
  double total = 0.0;
  for (int bits = 0; bits < (1 << n); ++bits) {
    double best = -1e300;
    for (const auto& v : a) {
      double s = 0.0;
      for (int t = 0; t < n; ++t) s += v[t] * (((bits >> t) & 1) ? 1.0 : -1.0) - lambda * v[t] * v[t];
      best = std::max(best, s);
    }
    total += best;
  }
  return total / (1 << n);
}

CoefficientFamily ConstantTrees(int n, const std::vector<std::vector<double>>& seq) {
  PathSpace space(n, 2);
  CoefficientFamily fam{n, {}};
  for (const auto& s : seq) {
    std::vector<double> tree(space.num_nodes());
    for (int t = 0; t < n; ++t)
      for (std::size_t j = 0; j < space.level_size(t); ++j) tree[space.level_offset(t) + j] = s[t];
    fam.members.push_back(tree);
  }
  return fam;
}

TEST_CASE("finite class offset process") {
  CoefficientFamily zero = ConstantTrees(3, {{0, 0, 0}});
  CHECK(FiniteClassOffset(zero, 1.0).offset_value == 0.0);
  FiniteClassReport one = FiniteClassOffset(ConstantTrees(4, {{1, 1, 1, 1}}), 1.0);
  CHECK(one.offset_value == doctest::Approx(-4.0));
  CHECK(one.offset_holds);

  std::vector<std::vector<double>> pm{std::vector<double>(6, 1.0), std::vector<double>(6, -1.0)};
  FiniteClassReport r = FiniteClassOffset(ConstantTrees(6, pm), 0.5);
  CHECK(r.exact);
  CHECK(r.offset_value == doctest::Approx(ConstantOffsetOracle(pm, 0.5)));
  CHECK(r.offset_bound == doctest::Approx(std::log(2.0)));
  CHECK(r.offset_holds);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> seq(8, std::vector<double>(7));
  for (auto& s : seq)
    for (double& v : s) v = u(rng);
  for (double lambda : {0.1, 1.0, 10.0}) {
    FiniteClassReport f = FiniteClassOffset(ConstantTrees(7, seq), lambda);
    CHECK(f.offset_value == doctest::Approx(ConstantOffsetOracle(seq, lambda)));
    CHECK(f.offset_holds);
    CHECK(f.nonoffset_holds);
  }
  FiniteClassOptions mc;
  mc.force_monte_carlo = true;
  mc.samples = 20000;
  mc.seed = 4;
  FiniteClassReport m = FiniteClassOffset(ConstantTrees(7, seq), 1.0, mc);
  CHECK_FALSE(m.exact);
  CHECK(std::abs(m.offset_value - ConstantOffsetOracle(seq, 1.0)) < 5 * m.offset_stderr + 1e-9);
  CHECK_THROWS_AS(FiniteClassOffset(zero, 0.0), Error);
}

TEST_CASE("rate exponent") {
  CHECK(RateExponent(0.0) == 0.0);
  CHECK(RateExponent(2.0) == doctest::Approx(0.5));
  CHECK(RateExponent(1.0) == doctest::Approx(1.0 / 3));
  CHECK(RateExponent(4.0) == doctest::Approx(0.75));
  CHECK_THROWS_AS(RateExponent(-1.0), Error);
}

double SlopeFor(double p) {
  std::vector<double> ns, vs;
  for (int e = 10; e <= 20; ++e) {
    BoundInputs in;
    in.exponent = p;
    in.n = std::ldexp(1.0, e);
    in.form = BoundForm::kFunctionClass;
    ns.push_back(in.n);
    vs.push_back(ComputeChainingBound(in).value);
  }
  return LogLogSlope(ns, vs);
}

TEST_CASE("chaining bound slopes") {
  CHECK(std::abs(SlopeFor(1.0) - 1.0 / 3) <= 0.02);
  CHECK(std::abs(SlopeFor(4.0) - 0.75) <= 0.02);
  CHECK(LogLogSlope({1, 10, 100}, {2, 20, 200}) == doctest::Approx(1.0));
}

TEST_CASE("chaining bound is monotone in the profile") {
  BoundInputs small, large;
  small.exponent = large.exponent = 1.5;
  small.coefficient = 1.0;
  large.coefficient = 2.0;
  small.n = large.n = 4096;
  CHECK(ComputeChainingBound(small).value <= ComputeChainingBound(large).value);

  BoundInputs single;
  single.table = {{0.5, 0.0}, {1.0, 0.0}};
  single.n = 100;
  ChainingBound c = ComputeChainingBound(single);
  CHECK(c.value >= 0.0);
  CHECK(c.value <= 1.0 + 100 * c.delta * std::sqrt(2.0) + 1e-9);
  BoundInputs empty;
  CHECK_THROWS_AS(ComputeChainingBound(empty), Error);
}

}  // namespace
}  // namespace seqlab
