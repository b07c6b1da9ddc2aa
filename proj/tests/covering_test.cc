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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "seqlab/core.h"
#include "seqlab/covering.h"
#include "seqlab/error.h"
#include "seqlab/zoo.h"
#include "test_util.h"

namespace seqlab {
namespace {

ExpertClass Coins(const std::vector<double>& thetas, int n) {
  std::vector<JointDistribution> m;
  for (double t : thetas) m.push_back(JointDistribution::Iid(n, {1 - t, t}));
  return ExpertClass::FiniteJoint(std::move(m));
}

TEST_CASE("hgap") {
  CHECK(HGap(0.3, 0.3) == 0.0);
  CHECK(HGap(0.0, 1.0) == doctest::Approx(1.0));
  CHECK(HGap(0.25, 0.75) == doctest::Approx((std::sqrt(3.0) - 1) / 2));
  CHECK(HGap(0.1, 0.6) == HGap(0.6, 0.1));
}

TEST_CASE("is cover") {
  ExpertClass q = Coins({0.2, 0.5, 0.9}, 3);
  CHECK(IsCover(q.joints(), q, 0.0, CoverNotion::kSqrt).ok);
  const double eps = 0.05;
  ExpertClass pm = Coins({0.5 - eps, 0.5 + eps}, 3);
  std::vector<JointDistribution> uni{JointDistribution::Uniform(3, 2)};
  double gap = std::sqrt(0.5) - std::sqrt(0.5 - eps);
  CHECK(IsCover(uni, pm, gap + 1e-9, CoverNotion::kSqrt).ok);
  CHECK_FALSE(IsCover(uni, pm, gap - 1e-6, CoverNotion::kSqrt).ok);
  CHECK(IsCover(uni, pm, eps + 1e-12, CoverNotion::kLinf).ok);
}

TEST_CASE("min cover examples") {
  ExpertClass q = Coins({0.0, 0.5, 1.0}, 1);
  MinCoverResult a = MinCover(q, 0.3, CoverNotion::kSqrt, CoverMode::kExact);
  REQUIRE(a.cover);
  CHECK(a.exact);
  CHECK(a.cover->members.size() == 3);
  MinCoverResult b = MinCover(q, 0.8, CoverNotion::kSqrt, CoverMode::kExact);
  REQUIRE(b.cover);
  CHECK(b.cover->members.size() == 1);
  MinCoverResult c = MinCover(Coins({0.1, 0.4, 0.7, 0.95}, 2), 1.0, CoverNotion::kSqrt);
  CHECK(c.cover->members.size() == 1);
}

TEST_CASE("exact cover is permutation invariant and covers") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 5; ++i) {
    ExpertClass q = testing::RandomJointClass(rng, 2, 2, 6, 0.0);
    std::vector<JointDistribution> rev(q.joints().rbegin(), q.joints().rend());
    ExpertClass r = ExpertClass::FiniteJoint(rev);
    for (double alpha : {0.05, 0.15, 0.3}) {
      MinCoverResult a = MinCover(q, alpha, CoverNotion::kSqrt, CoverMode::kExact);
      MinCoverResult b = MinCover(r, alpha, CoverNotion::kSqrt, CoverMode::kExact);
      REQUIRE(a.cover);
      CHECK(a.cover->members.size() == b.cover->members.size());
      CHECK(IsCover(a.cover->members, q, alpha, CoverNotion::kSqrt).ok);
      MinCoverResult g = MinCover(q, alpha, CoverNotion::kSqrt, CoverMode::kGreedy);
      CHECK(g.cover->members.size() >= a.cover->members.size());
    }
  }
}

TEST_CASE("entropy profile") {
  ExpertClass single = Coins({0.3}, 3);
  for (const EntropyPoint& p : BuildEntropyProfile(single, {0.01, 0.1, 0.5}, CoverNotion::kSqrt).points)
    CHECK(p.entropy == 0.0);
  ExpertClass two = Coins({0.25, 0.75}, 2);
  double gap = HGap(0.25, 0.75);
  EntropyProfile prof = BuildEntropyProfile(two, {gap / 2, gap * 2}, CoverNotion::kSqrt);
  CHECK(prof.points[0].entropy == doctest::Approx(std::log(2.0)));
  CHECK(prof.points[1].entropy == 0.0);

  EntropyProfile lip = BuildEntropyProfile(
      ComposeClassWithTree(LipschitzClass(4), ContextTree::Constant(2, 1)),
      {0.02, 0.05, 0.1, 0.2, 0.4}, CoverNotion::kSqrt, CoverMode::kGreedy);
  for (std::size_t i = 1; i < lip.points.size(); ++i)
    CHECK(lip.points[i].entropy <= lip.points[i - 1].entropy);
}

TEST_CASE("entropy relations on range-restricted classes") {
  ExpertClass f = ExpertClass::FiniteFunction(1, {{0.25}, {0.5}, {0.75}});
  for (double alpha : {0.05, 0.1, 0.2}) {
    EntropyRelationReport r = CheckEntropyRelations(f, ContextTree::Constant(2, 0), alpha, 0.25);
    CHECK(r.scaled_sqrt_holds);
    CHECK(r.square_scale_holds);
  }
  ExpertClass one = ExpertClass::FiniteFunction(1, {{0.4}});
  EntropyRelationReport s = CheckEntropyRelations(one, ContextTree::Constant(2, 0), 0.1, 0.3);
  CHECK(s.n_sq_scaled == 1);
  CHECK(s.n_inf == 1);
}

TEST_CASE("notion names") {
  for (CoverNotion n : {CoverNotion::kSqrt, CoverNotion::kLinf, CoverNotion::kLogMetric})
    CHECK(CoverNotionFromName(CoverNotionName(n)) == n);
  CHECK_THROWS_AS(CoverNotionFromName("hamming"), Error);
}

}  // namespace
}  // namespace seqlab
