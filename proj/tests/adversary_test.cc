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

#include <bit>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "seqlab/adversary.h"
#include "seqlab/core.h"
#include "seqlab/error.h"
#include "seqlab/shtarkov.h"

namespace seqlab {
namespace {

// Block value by enumerating every outcome string rather than counts.
double BlockOracle(double p, double alpha, double beta, int k) {
  double total = 0.0;
  for (int bits = 0; bits < (1 << k); ++bits) {
    int ones = std::popcount(static_cast<unsigned>(bits));
    double prob = std::pow(p, ones) * std::pow(1 - p, k - ones);
    bool up = ones >= k * p;
    double f1 = up ? p + alpha - beta : p - alpha - beta;
    double f0 = up ? 1 - p - alpha - beta : 1 - p + alpha - beta;
    double gain = ones * std::log(f1 / p) + (k - ones) * std::log(f0 / (1 - p));
    total += prob * gain / k;
  }
  return total;
}

TEST_CASE("block value against enumeration") {
  BlockValueReport r = BernoulliBlockValue(0.5, 0.01, 1e-4, 7);
  CHECK(r.value == doctest::Approx(BlockOracle(0.5, 0.01, 1e-4, 7)).epsilon(1e-10));
  CHECK(r.value >= 5e-5);
  CHECK(r.canonical_k == 7);
  CHECK(7 * r.value >= kBlockFloor);
  CHECK(r.alpha_holds);
  CHECK(r.canonical_holds);
  for (double p : {0.2, 0.35, 0.6})
    for (int k : {1, 3, 8})
      CHECK(BlockExpectation(p, 0.05, 0.001, k) ==
            doctest::Approx(BlockOracle(p, 0.05, 0.001, k)).epsilon(1e-10));
}

TEST_CASE("block value edge cases") {
  // One sample at beta = 0 and p = 1/2: either outcome moves the expert toward it.
  const double a = 0.1;
  CHECK(BlockExpectation(0.5, a, 0.0, 1) == doctest::Approx(std::log(1 + 2 * a)));

  BlockValueReport large = BernoulliBlockValue(0.5, 0.1, 0.001, 1);
  CHECK(large.large_alpha_holds);
  CHECK(large.value >= 0.1 / 4);

  CHECK(BlockPreconditionFailure(0.5, 0.1, 0.02, 1).value() == "beta <= alpha^2");
  CHECK(BlockPreconditionFailure(0.05, 0.1, 0.001, 1).value() == "alpha + beta < p");
  CHECK_THROWS_AS(BernoulliBlockValue(0.05, 0.1, 0.001, 1), Error);
  CHECK_FALSE(BlockPreconditionFailure(0.5, 0.01, 1e-4, 7));
}

TEST_CASE("block adversary on a two-point class") {
  ExpertClass f = ExpertClass::FiniteFunction(1, {{0.45}, {0.55}});
  ShatterWitness w{1, {0}, {{0.45, 0.55}}, {0, 1}};
  // The gap is wide enough that one repetition suffices; later rounds are filler.
  CHECK(RequiredBlockHorizon(w) == 1);
  BlockAdversary adv = BuildBlockAdversary(f, &w, 0.07, 7);
  REQUIRE(adv.steps.size() == 1);
  CHECK(adv.steps[0].length == 1);
  CHECK(adv.steps[0].midpoint == doctest::Approx(0.5));
  CHECK(adv.certified_bound == doctest::Approx(kBlockFloor));
  BlockGameReport g = PlayBlockGame(f, adv);
  CHECK(g.holds);
  CHECK(g.nml_regret >= kBlockFloor);
  BlockGameReport self = PlayBlockGame(f, adv, &*adv.p);
  CHECK(self.expected_regret == doctest::Approx(self.dual_value));
  CHECK(self.expected_regret >= kBlockFloor);
  CHECK(g.nml_regret >= g.dual_value - 1e-12);
  JointDistribution uni = JointDistribution::Uniform(7, 2);
  CHECK(PlayBlockGame(f, adv, &uni).holds);

  BlockAdversary none = BuildBlockAdversary(f, nullptr, 0.07, 5);
  CHECK(none.certified_bound == 0.0);
  CHECK(PlayBlockGame(f, none).holds);
  ShatterWitness narrow{1, {0}, {{0.495, 0.505}}, {0, 1}};
  ExpertClass h = ExpertClass::FiniteFunction(1, {{0.495}, {0.505}});
  CHECK(RequiredBlockHorizon(narrow) == 7);
  CHECK_THROWS_AS(BuildBlockAdversary(h, &narrow, 0.007, 5), Error);
  BlockAdversary full = BuildBlockAdversary(h, &narrow, 0.007, 7);
  CHECK(full.steps[0].length == 7);
  CHECK(full.lemma_preconditions);
  CHECK_THROWS_AS(BuildBlockAdversary(f, &w, 0.2, 7), Error);
}

TEST_CASE("large-p hypercube") {
  for (int n : {1, 4, 8}) {
    LargePInstance inst = LargePHypercube(n);
    CHECK(inst.f.size() == (std::size_t{1} << n));
    LargePReport r = LargePAdversary(inst.f, inst.witness, 0.06);
    CHECK(r.paths == (std::size_t{1} << n));
    CHECK(r.bound == doctest::Approx(n * 0.03));
    CHECK(r.holds);
    CHECK(r.min_witness_gain >= r.bound);
    CHECK(r.min_sup_gain >= r.min_witness_gain - 1e-12);
  }
  LargePInstance inst = LargePHypercube(3);
  CHECK(LargePAdversary(inst.f, inst.witness, 0.0).bound == 0.0);
  CHECK_THROWS_AS(LargePAdversary(inst.f, inst.witness, 0.07), Error);
  ExpertClass wide = ExpertClass::FiniteFunction(1, {{0.3}, {0.7}});
  ShatterWitness w{1, {0}, {{0.3, 0.7}}, {0, 1}};
  CHECK_THROWS_AS(LargePAdversary(wide, w, 0.05), Error);
}

int Binomial(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(std::lround(r));
}

TEST_CASE("lexicode") {
  std::vector<std::uint32_t> code = Lexicode(16, 4);
  double ball = 0;
  for (int i = 0; i < 4; ++i) ball += Binomial(16, i);
  CHECK(code.size() >= std::ceil(65536.0 / ball));
  CHECK(code.size() >= 94);
  for (std::size_t i = 0; i < code.size(); ++i)
    for (std::size_t j = i + 1; j < code.size(); ++j) CHECK(std::popcount(code[i] ^ code[j]) >= 4);
}

TEST_CASE("renewal packing") {
  for (double alpha : {0.05, 0.1, 0.15}) {
    RenewalPackingReport r = RenewalPacking(10, alpha, 7, 50);
    CHECK(r.separation_holds);
    CHECK(r.pairs_hold);
    CHECK(r.min_pair_gap > 2 * alpha);
    CHECK(r.cover_bits >= 10);
    CHECK(r.code_holds);
    CHECK(static_cast<double>(r.code_size) >= r.gv_guarantee - 1e-9);
  }
  RenewalPackingReport small = RenewalPacking(3, 0.1, 1, 10);
  REQUIRE(small.exact_cover_size);
  CHECK(*small.exact_cover_size == 8);
  double edge = std::sqrt(0.5 + 3 * (1.0 / 6 - 1e-9)) - std::sqrt(0.5 - 3 * (1.0 / 6 - 1e-9));
  CHECK(edge > 1.0 / 3);
  CHECK_THROWS_AS(RenewalPacking(8, 1.0 / 6, 1), Error);
}

TEST_CASE("renewal packing pmf conditionals") {
  std::vector<int> signs{1, -1, 1, 1};
  const double alpha = 0.1;
  std::vector<double> pmf = RenewalPackingPmf(signs, alpha);
  double survive = 1.0;
  for (int t = 0; t < 4; ++t) {
    double a = 0.5 + 3 * signs[t] * alpha;
    CHECK(pmf[t] == doctest::Approx(survive * (1 - a)));
    survive *= a;
  }
}

TEST_CASE("renewal minimax reference") {
  double v = RenewalMinimaxReference(6, {0.25, 0.5, 0.75});
  CHECK(v > 0.0);
  CHECK(v <= std::log(3.0) + 1e-12);
  CHECK(RenewalMinimaxReference(6, {0.4}) == doctest::Approx(0.0).epsilon(1e-12));
}

}  // namespace
}  // namespace seqlab
