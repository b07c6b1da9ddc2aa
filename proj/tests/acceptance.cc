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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "seqlab/adversary.h"
#include "seqlab/complexity.h"
#include "seqlab/core.h"
#include "seqlab/covering.h"
#include "seqlab/dimension.h"
#include "seqlab/seqlab.h"
#include "seqlab/shtarkov.h"
#include "seqlab/zoo.h"
#include "test_util.h"

namespace seqlab {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome_ {
  bool pass;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(const char* fmt, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c, d);
  return buf;
}

// Path probability from the raw conditional array, indexed by hand.
double RawPathProb(const JointDistribution& q, std::size_t code) {
  const int n = q.horizon(), k = q.alphabet();
  std::vector<int> digits(n);
  for (int t = n - 1; t >= 0; --t, code /= k) digits[t] = static_cast<int>(code % k);
  double prob = 1.0;
  std::size_t offset = 0, level = 1, prefix = 0;
  for (int t = 0; t < n; ++t) {
    prob *= q.raw()[(offset + prefix) * k + digits[t]];
    offset += level;
    level *= k;
    prefix = prefix * k + digits[t];
  }
  return prob;
}

// Max over members of the enumerated path probability.
std::vector<double> BruteSupTable(const ExpertClass& c) {
  const JointDistribution& first = c.joints()[0];
  std::size_t paths = first.space().num_paths();
  std::vector<double> out(paths, 0.0);
  for (std::size_t code = 0; code < paths; ++code)
    for (const auto& q : c.joints()) out[code] = std::max(out[code], RawPathProb(q, code));
  return out;
}

Outcome_ ShtarkovExactness() {
  auto start = Clock::now();
  double r2 = ShtarkovSum(BernoulliMlClass(2)).value;
  bool ok = std::abs(r2 - std::log(2.5)) <= 1e-10;
  std::size_t mismatches = 0;
  for (int n = 1; n <= 10; ++n) {
    // Grid members theta = j/n: the brute force maximizes over the grid.
    ExpertClass ml = BernoulliMlClass(n);
    std::vector<double> a = SupTable(ml), b = BruteSupTable(ml);
    for (std::size_t i = 0; i < a.size(); ++i) mismatches += a[i] != b[i];
  }
  std::mt19937_64 rng(101);
  for (int n = 1; n <= 10; ++n) {
    ExpertClass c = testing::RandomJointClass(rng, n, 2, 4);
    std::vector<double> a = SupTable(c), b = BruteSupTable(c);
    for (std::size_t i = 0; i < a.size(); ++i) mismatches += a[i] != b[i];
  }
  double t = Seconds(start);
  ok = ok && mismatches == 0 && t < 1.0;
  return {ok, Fmt("R_2 - log 2.5 = %.3g, sup-table mismatches %.0f, %.3f s", r2 - std::log(2.5),
                  static_cast<double>(mismatches), t)};
}

Outcome_ NmlEqualization() {
  std::mt19937_64 rng(202);
  std::vector<std::pair<std::string, ExpertClass>> classes;
  classes.emplace_back("singleton", ExpertClass::FiniteJoint({testing::RandomJoint(rng, 6, 2)}));
  classes.emplace_back("two-point", ExpertClass::FiniteJoint({JointDistribution::Iid(6, {0.8, 0.2}),
                                                              JointDistribution::Iid(6, {0.3, 0.7})}));
  std::vector<double> thetas;
  for (int j = 0; j <= 10; ++j) thetas.push_back(j / 10.0);
  classes.emplace_back("bernoulli-grid", BernoulliIidClass(thetas, 6));
  classes.emplace_back("lipschitz", ComposeClassWithTree(LipschitzClass(3), testing::RandomTree(rng, 5, 4)));
  std::vector<std::vector<double>> pmfs;
  for (double h : {0.2, 0.4, 0.6, 0.8}) pmfs.push_back(GeometricPmf(h, 6));
  classes.emplace_back("renewal", RenewalClass(pmfs, 6));
  double worst = 0.0;
  for (const auto& [name, c] : classes) {
    ShtarkovResult s = ShtarkovSum(c);
    std::vector<double> pn = s.nml.all_joint_probs();
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < pn.size(); ++i) {
      if (s.sup_table[i] == 0.0) continue;
      double g = std::log(s.sup_table[i] / pn[i]);
      lo = std::min(lo, g);
      hi = std::max(hi, g);
    }
    worst = std::max(worst, hi - lo);
  }
  return {worst <= 1e-9, Fmt("max spread of log(sup/p*) over 5 classes %.3g", worst)};
}

Outcome_ LseIdentity() {
  std::mt19937_64 rng(303);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    int n = 1 + i % 8;
    int k = (i % 3 == 2 && n <= 5) ? 3 : 2;
    ExpertClass c = testing::RandomJointClass(rng, n, k, 2 + i % 4);
    worst = std::max(worst, std::abs(MinimaxLse(c).value - ShtarkovSum(c).value));
  }
  return {worst <= 1e-10, Fmt("max |lse - shtarkov| over 20 classes %.3g", worst)};
}

Outcome_ TreeTransductive() {
  auto start = Clock::now();
  std::mt19937_64 rng(404);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    ExpertClass f = testing::RandomFunctionClass(rng, 2, 2 + i % 2, 0.02, 0.98);
    double best = -1.0;
    for (int code = 0; code < 8; ++code) {
      ContextTree x(2, {code & 1, (code >> 1) & 1, (code >> 2) & 1});
      best = std::max(best, ShtarkovSum(ComposeClassWithTree(f, x)).value);
    }
    worst = std::max(worst, std::abs(AdaptiveMinimax(f, 2).value - best));
  }
  double t = Seconds(start);
  return {worst <= 1e-8 && t < 10.0, Fmt("max |adaptive - best tree| %.3g, %.3f s", worst, t)};
}

Outcome_ ZetaProperties() {
  bool ok = true;
  std::string detail;
  for (int n : {7, 100, 10000}) {
    ZetaReport z = CheckZetaProperties(ZetaParams{n, 2}, ZetaGrids{10000, 50, 10000, 0});
    ok = ok && z.ok;
    detail += Fmt("n=%.0f log %.4g at x=%.4g (quarter form %.3g); ", n, z.log_min_slack, z.log_argmin,
                  z.log_quarter_min_slack);
    detail += Fmt("divergence %.3g lipschitz %.3g. ", z.divergence_min, z.lipschitz_min_slack);
  }
  return {ok, detail};
}

Outcome_ Symmetrization() {
  auto start = Clock::now();
  std::mt19937_64 rng(505);
  bool ok = true;
  double worst = -1e300;
  int count = 0;
  // With conditionals bounded below by 1/|Y| the only horizon-one member is uniform.
  for (int m = 1; m <= 2; ++m) {
    std::vector<JointDistribution> members(m, JointDistribution::Uniform(1, 2));
    SymmetrizationReport r = SymmetrizationCheck(ExpertClass::FiniteJoint(members), JointDistribution::Uniform(1, 2));
    ok = ok && r.exact && r.holds;
    worst = std::max(worst, r.lhs - r.rhs);
    ++count;
  }
  for (int n = 2; n <= 3; ++n)
    for (int i = 0; i < 4; ++i) {
      const double delta = DeltaNFloor(n, 2);
      ExpertClass q = TruncateClass(testing::RandomJointClass(rng, n, 2, 2 + i, 0.0), delta);
      JointDistribution p = TruncateDist(testing::RandomJoint(rng, n, 2, 0.0), delta);
      SymmetrizationReport r = SymmetrizationCheck(q, p);
      ok = ok && r.exact && r.holds;
      worst = std::max(worst, r.lhs - r.rhs);
      ++count;
    }
  double t = Seconds(start);
  ok = ok && t < 30.0;
  return {ok, Fmt("%.0f classes, max lhs - rhs %.4g, %.3f s", count, worst, t)};
}

Outcome_ FiniteClass() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  bool ok = true;
  double worst = -1e300;
  for (auto [n, size] : std::vector<std::pair<int, int>>{{4, 2}, {6, 8}, {8, 16}}) {
    CoefficientFamily fam{n, {}};
    PathSpace space(n, 2);
    for (int m = 0; m < size; ++m) {
      std::vector<double> a(space.num_nodes());
      for (double& v : a) v = u(rng);
      fam.members.push_back(a);
    }
    for (double lambda : {0.1, 1.0, 10.0}) {
      FiniteClassReport r = FiniteClassOffset(fam, lambda);
      ok = ok && r.exact && r.offset_holds && r.nonoffset_holds;
      worst = std::max({worst, r.offset_value - r.offset_bound, r.nonoffset_value - r.nonoffset_bound});
    }
  }
  return {ok, Fmt("max value - bound %.4g", worst)};
}

Outcome_ BlockLemma() {
  bool ok = true;
  int points = 0;
  double worst_alpha = 1e300, worst_total = 1e300;
  for (int i = 0; i < 20; ++i) {
    double p = 0.15 + 0.7 * i / 19.0;
    for (int j = 0; j < 10; ++j) {
      double alpha = 0.002 * std::pow(50.0, j / 9.0);
      double beta = alpha * alpha / 2;
      int k = CanonicalBlockLength(p, alpha);
      if (BlockPreconditionFailure(p, alpha, beta, k)) continue;
      BlockValueReport r = BernoulliBlockValue(p, alpha, beta, k);
      ok = ok && r.alpha_holds && r.canonical_holds;
      worst_alpha = std::min(worst_alpha, r.value / r.alpha_bound);
      worst_total = std::min(worst_total, r.canonical_total / kBlockFloor);
      ++points;
    }
  }
  ok = ok && points == 200;
  return {ok, Fmt("%.0f grid points, min value/bound %.4g, min k*value*5184 %.4g", points, worst_alpha,
                  worst_total)};
}

Outcome_ BlockAdversaryGame() {
  bool ok = true;
  double worst = 1e300;
  int games = 0;
  for (double v : {0.5, 0.4, 0.3})
    for (int k = 1; k <= 10; ++k) {
      double gap = std::sqrt(v * (1 - v) / (324.0 * (k + 0.5)));
      double s0 = v - gap / 2, s1 = v + gap / 2;
      ExpertClass f = ExpertClass::FiniteFunction(1, {{s0}, {s1}});
      ShatterWitness w{1, {0}, {{s0, s1}}, {0, 1}};
      if (RequiredBlockHorizon(w) != k) return {false, "block length mismatch"};
      BlockAdversary adv = BuildBlockAdversary(f, &w, 0.999 * HGap(s0, s1), k);
      BlockGameReport g = PlayBlockGame(f, adv);
      ok = ok && g.holds;
      worst = std::min(worst, g.nml_regret);
      ++games;
    }
  return {ok, Fmt("%.0f depth-one games, min NML expected regret %.4g vs %.4g", games, worst, kBlockFloor)};
}

Outcome_ LargeP() {
  bool ok = true;
  double worst = 1e300;
  for (int n = 1; n <= 12; ++n) {
    LargePInstance inst = LargePHypercube(n);
    LargePReport r = LargePAdversary(inst.f, inst.witness, 0.06);
    ok = ok && r.holds && r.paths == (std::size_t{1} << n);
    worst = std::min(worst, r.min_witness_gain - r.bound);
  }
  return {ok, Fmt("min over n <= 12 and all paths of regret - n beta/2: %.4g", worst)};
}

Outcome_ RenewalPackingCheck() {
  bool ok = true;
  std::string detail;
  for (double alpha : {0.05, 0.1, 0.15}) {
    RenewalPackingReport r = RenewalPacking(16, alpha, 7, 200);
    bool here = r.separation_holds && r.pairs_hold && r.cover_bits >= 16 && r.code_holds;
    ok = ok && here;
    detail += Fmt("a=%.2f gap %.4f, cover bits %.0f, code %.0f; ", alpha, r.min_pair_gap, r.cover_bits,
                  static_cast<double>(r.code_size));
  }
  return {ok, detail};
}

Outcome_ RateDichotomy() {
  auto start = Clock::now();
  bool ok = true;
  std::string detail;
  for (double p : {0.5, 1.0, 2.0, 3.0, 4.0}) {
    std::vector<double> ns, vs;
    for (int e = 10; e <= 20; ++e) {
      BoundInputs in;
      in.exponent = p;
      in.n = std::ldexp(1.0, e);
      in.form = BoundForm::kFunctionClass;
      ns.push_back(in.n);
      vs.push_back(ComputeChainingBound(in).value);
    }
    double slope = LogLogSlope(ns, vs), want = RateExponent(p);
    ok = ok && std::abs(slope - want) <= 0.02;
    detail += Fmt("p=%.1f slope %.4f want %.4f; ", p, slope, want);
  }
  double t = Seconds(start);
  ok = ok && t < 5.0;
  return {ok, detail + Fmt("%.3f s", t)};
}

Outcome_ EntropyRelations() {
  std::mt19937_64 rng(808);
  bool ok = true;
  const double delta = 0.2;
  for (int i = 0; i < 10; ++i) {
    ExpertClass f = testing::RandomFunctionClass(rng, 2, 3 + i % 3, delta, 1 - delta);
    ContextTree x = testing::RandomTree(rng, 2, 2);
    for (double alpha : {0.05, 0.1, 0.2}) {
      EntropyRelationReport r = CheckEntropyRelations(f, x, alpha, delta);
      ok = ok && r.exact && r.scaled_sqrt_holds && r.square_scale_holds;
    }
  }
  return {ok, "10 classes, 3 scales each"};
}

Outcome_ DimensionEntropy() {
  std::mt19937_64 rng(909);
  const double beta = 0.125;
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 10; ++i) {
    int n = 3 + i % 4;
    std::vector<std::vector<double>> values(5, std::vector<double>(2));
    for (auto& fn : values)
      for (double& v : fn) v = GridValue(static_cast<int>(rng() % 4), beta);
    ExpertClass f = ExpertClass::FiniteFunction(2, values);
    DimensionEntropyReport r = DimensionEntropyBound(f, testing::RandomTree(rng, n, 2), 0.2, beta);
    ok = ok && r.cover_valid && r.size_holds;
    detail += std::to_string(r.cover_size) + "<=" + r.g_bound.str() + " ";
  }
  return {ok, detail};
}

Outcome_ HilbertTruncation() {
  HilbertBallClass h = MakeHilbertBall(2, 3, 8, {{1.0, 0.0}});
  HilbertTruncationReport r = CheckHilbertTruncation(h, 1000, 1234);
  return {r.holds && r.draws == 1000, Fmt("%.0f draws, min slack %.4g", static_cast<double>(r.draws), r.min_slack)};
}

Outcome_ Determinism() {
  auto start = Clock::now();
  auto run = [] {
    char* out = nullptr;
    seqlab_status st = seqlab_run_command("verify-all", R"({"suite": "paper"})", &out);
    std::string text = out ? out : "";
    seqlab_string_free(out);
    return std::make_pair(st, text);
  };
  auto a = run();
  auto b = run();
  double t = Seconds(start);
  bool identical = a.second == b.second && !a.second.empty();
  return {identical && t < 300.0,
          Fmt("byte-identical %.0f, suite status %.0f, %.3f s", identical, a.first, t)};
}

}  // namespace
}  // namespace seqlab

int main() {
  using namespace seqlab;
  const std::vector<std::pair<const char*, std::function<Outcome_()>>> criteria{
      {"shtarkov exactness", ShtarkovExactness},
      {"nml equalization", NmlEqualization},
      {"lse identity", LseIdentity},
      {"tree-transductive equality", TreeTransductive},
      {"zeta properties", ZetaProperties},
      {"symmetrization", Symmetrization},
      {"finite-class offset", FiniteClass},
      {"bernoulli block value", BlockLemma},
      {"block adversary", BlockAdversaryGame},
      {"large-p adversary", LargeP},
      {"renewal packing", RenewalPackingCheck},
      {"rate dichotomy", RateDichotomy},
      {"entropy relations", EntropyRelations},
      {"dimension to entropy", DimensionEntropy},
      {"hilbert truncation", HilbertTruncation},
      {"determinism", Determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome_ r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failed += !r.pass;
    std::printf("%s %2zu %s: %s\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed;
}
