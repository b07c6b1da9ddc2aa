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

#include <random>
#include <vector>

#include <doctest.h>

#include "seqlab/core.h"
#include "seqlab/covering.h"
#include "seqlab/dimension.h"
#include "seqlab/error.h"
#include "test_util.h"

namespace seqlab {
namespace {

TEST_CASE("g beta counts") {
  CHECK(GBeta(3, 1, 2) == 4);
  CHECK(GBeta(4, 0, 5) == 1);
  for (int n = 1; n <= 6; ++n) {
    BigInt power = 1;
    for (int i = 0; i < n; ++i) power *= 3;
    CHECK(GBeta(n, n, 3) == power);
    CHECK(GBeta(n, n + 2, 3) == power);
  }
  CHECK(GBeta(5, 2, 0.125) == GBeta(5, 2, 4));
  BigInt big = GBeta(200, 200, 2);
  CHECK(big == (BigInt(1) << 200));
  CHECK_THROWS_AS(GBeta(3, 1, 0.3), Error);
}

TEST_CASE("grid rounding") {
  CHECK(GridCount(0.125) == 4);
  CHECK(GridValue(0, 0.125) == doctest::Approx(0.125));
  CHECK(GridValue(3, 0.125) == doctest::Approx(0.875));
  CHECK(RoundToGrid(0.0, 0.125) == 0);
  CHECK(RoundToGrid(0.6, 0.125) == 2);
  CHECK_THROWS_AS(GridCount(0.2), Error);
}

TEST_CASE("shattering dimension examples") {
  ExpertClass single = ExpertClass::FiniteFunction(2, {{0.4, 0.6}});
  CHECK(ShatterDimension(single, 0.3, 0.01, 3).dimension == 0);

  ExpertClass pair = ExpertClass::FiniteFunction(2, {{0.25, 0.25}, {0.75, 0.75}});
  ShatterResult r = ShatterDimension(pair, 0.3, 0.05, 3);
  CHECK(r.dimension >= 1);
  REQUIRE(r.witness);
  CHECK(ValidateShatterWitness(pair, *r.witness, 0.3, 0.05));
  ShatterWitness hand{1, {0}, {{0.25, 0.75}}, {0, 1}};
  CHECK(ValidateShatterWitness(pair, hand, 0.3, 0.05));
  CHECK_FALSE(ValidateShatterWitness(pair, hand, 0.4, 0.05));
  ShatterWitness swapped{1, {0}, {{0.25, 0.75}}, {1, 0}};
  CHECK_FALSE(ValidateShatterWitness(pair, swapped, 0.3, 0.05));

  CHECK(ShatterDimension(pair, 1.0, 0.05, 3).dimension == 0);
}

TEST_CASE("discrete dimension of the full grid class") {
  // All maps from three contexts to {1/4, 3/4}.
  std::vector<std::vector<double>> all;
  for (int m = 0; m < 8; ++m)
    all.push_back({m & 1 ? 0.75 : 0.25, m & 2 ? 0.75 : 0.25, m & 4 ? 0.75 : 0.25});
  ExpertClass full = ExpertClass::FiniteFunction(3, all);
  CHECK(DiscreteShatterDimension(full, 0.25, 0.3, 2).dimension == 2);
  CHECK(DiscreteShatterDimension(full, 0.25, HGap(0.25, 0.75), 2).dimension == 0);
  ExpertClass single = ExpertClass::FiniteFunction(3, {all[3]});
  CHECK(DiscreteShatterDimension(single, 0.25, 0.1, 2).dimension == 0);
  CHECK_THROWS_AS(DiscreteShatterDimension(full, 0.3, 0.1, 2), Error);
}

TEST_CASE("dimension to entropy") {
  ExpertClass pair = ExpertClass::FiniteFunction(1, {{0.25}, {0.75}});
  DimensionEntropyReport r = DimensionEntropyBound(pair, ContextTree::Constant(3, 0), 0.3, 0.25);
  CHECK(r.cover_valid);
  CHECK(r.size_holds);
  CHECK(r.cover_size <= 4);

  std::mt19937_64 rng(31);
  for (int i = 0; i < 5; ++i) {
    ExpertClass f = testing::RandomFunctionClass(rng, 2, 5);
    ContextTree x = testing::RandomTree(rng, 3, 2);
    DimensionEntropyReport d = DimensionEntropyBound(f, x, 0.2, 0.125);
    CHECK(d.cover_valid);
    CHECK(d.rounded_cover_valid);
    CHECK(d.size_holds);
    CHECK(BigInt(d.cover_size) <= d.g_bound);
  }
}

TEST_CASE("monochrome skipping trees") {
  PathSpace s4(4, 2);
  std::vector<int> mono(s4.num_nodes(), 0);
  auto chain = FindMonochromeSkippingTree(mono, 4, 1, 4);
  REQUIRE(chain);
  CHECK(chain->depth == 4);
  CHECK(ValidateSkippingTree(mono, 4, *chain));

  std::vector<int> blocked{0, 1, 1};
  CHECK_FALSE(FindMonochromeSkippingTree(blocked, 2, 2, 2));

  std::mt19937_64 rng(12);
  for (int k = 2; k <= 3; ++k)
    for (int d = 2; d <= 3; ++d) {
      int n = k * (d - 1) + 1;
      PathSpace space(n, 2);
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<int> colors(space.num_nodes());
        for (int& c : colors) c = static_cast<int>(rng() % k);
        auto t = FindMonochromeSkippingTree(colors, n, k, d);
        REQUIRE(t);
        CHECK(t->depth == d);
        CHECK(ValidateSkippingTree(colors, n, *t));
      }
    }
}

}  // namespace
}  // namespace seqlab
