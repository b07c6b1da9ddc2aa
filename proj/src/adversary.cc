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

#include "seqlab/adversary.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "seqlab/covering.h"
#include "seqlab/shtarkov.h"
#include "seqlab/zoo.h"

namespace seqlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int BlockLength(double s0, double s1) {
  double v = (s0 + s1) / 2.0;
  double gap = s1 - s0;
  return std::max(1, static_cast<int>(std::floor(v * (1.0 - v) / (324.0 * gap * gap))));
}

}  // namespace

int CanonicalBlockLength(double p, double alpha) {
  Require(p > 0.0 && p < 1.0 && alpha > 0.0, ErrorCode::kDomain, "need p in (0,1), alpha > 0");
  return std::max(1, static_cast<int>(std::floor(p * (1.0 - p) / (324.0 * alpha * alpha))));
}

std::optional<std::string> BlockPreconditionFailure(double p, double alpha, double beta, int k) {
  if (!(beta >= 0.0 && alpha > 0.0 && alpha <= 1.0)) return "alpha, beta in [0, 1]";
  if (!(beta <= alpha * alpha)) return "beta <= alpha^2";
  if (!(alpha + beta < p)) return "alpha + beta < p";
  if (!(p < 1.0 - alpha - beta)) return "p < 1 - alpha - beta";
  if (k < 1) return "k >= 1";
  double cap = std::max(1.0, p * (1.0 - p) / (324.0 * alpha * alpha));
  if (!(k <= cap)) return "k <= p(1-p)/(324 alpha^2) v 1";
  return std::nullopt;
}

double BlockExpectation(double p, double alpha, double beta, int k) {
  const double up1 = std::log((p + alpha - beta) / p);
  const double up0 = std::log((1.0 - p - alpha - beta) / (1.0 - p));
  const double dn1 = std::log((p - alpha - beta) / p);
  const double dn0 = std::log((1.0 - p + alpha - beta) / (1.0 - p));
  const double lp = std::log(p), lq = std::log1p(-p);
  double total = 0.0;
  for (int j = 0; j <= k; ++j) {
    double logw = std::lgamma(k + 1.0) - std::lgamma(j + 1.0) - std::lgamma(k - j + 1.0) +
                  j * lp + (k - j) * lq;
    double phat = static_cast<double>(j) / k;
    bool up = j >= k * p;
    double term = up ? phat * up1 + (1.0 - phat) * up0 : phat * dn1 + (1.0 - phat) * dn0;
    total += std::exp(logw) * term;
  }
  return total;
}

BlockValueReport BernoulliBlockValue(double p, double alpha, double beta, int k) {
  if (auto bad = BlockPreconditionFailure(p, alpha, beta, k))
    Fail(ErrorCode::kDomain, "block lemma precondition failed: " + *bad);
  BlockValueReport r;
  r.k = k;
  r.value = BlockExpectation(p, alpha, beta, k);
  r.alpha_bound = alpha * alpha / (8.0 * p * (1.0 - p));
  r.alpha_holds = r.value > r.alpha_bound;
  r.canonical_k = CanonicalBlockLength(p, alpha);
  double canon = r.canonical_k == k ? r.value : BlockExpectation(p, alpha, beta, r.canonical_k);
  r.canonical_total = r.canonical_k * canon;
  r.canonical_holds = r.canonical_total > kBlockFloor;
  if (alpha > 1.0 / 36.0 && k == 1) r.large_alpha_holds = r.value >= alpha / 4.0;
  return r;
}

int RequiredBlockHorizon(const ShatterWitness& w) {
  PathSpace aux(w.depth, 2);
  Require(w.s.size() == aux.num_nodes(), ErrorCode::kDomain, "witness has wrong size");
  int best = 0;
  for (std::size_t code = 0; code < aux.num_paths(); ++code) {
    Path yt = aux.decode_path(code);
    int total = 0;
    for (int t = 0; t < w.depth; ++t) {
      auto [s0, s1] = w.s[aux.prefix_index(std::span<const Outcome>(yt).subspan(0, t))];
      total += BlockLength(s0, s1);
    }
    best = std::max(best, total);
  }
  return best;
}

BlockAdversary BuildBlockAdversary(const ExpertClass& f, const ShatterWitness* witness,
                                   double alpha, int n, int filler_context) {
  Require(!f.is_joint(), ErrorCode::kDomain, "block adversary needs a function class");
  Require(n >= 1 && n <= kMaxHorizon, ErrorCode::kDomain, "horizon out of range");
  Require(filler_context >= 0 && filler_context < f.num_contexts(), ErrorCode::kDomain,
          "filler context out of range");
  BlockAdversary adv;
  adv.horizon = n;
  adv.filler_context = filler_context;
  if (witness == nullptr || witness->depth == 0) {
    adv.x = ContextTree::Constant(n, filler_context);
    adv.p = ComposeFunction(f.functions()[0], *adv.x);
    adv.lemma_preconditions = true;
    adv.blowup_fits = true;
    return adv;
  }
  const ShatterWitness& w = *witness;
  const double beta = std::pow(alpha, 4) / 16.0;
  Require(alpha > 0.0 && ValidateShatterWitness(f, w, alpha, beta), ErrorCode::kPrecondition,
          "witness is not shattered at scale (alpha, alpha^4/16)");
  const int d = w.depth;
  adv.depth = d;
  PathSpace aux(d, 2);
  adv.lemma_preconditions = true;
  for (std::size_t v = 0; v < aux.num_nodes(); ++v) {
    auto [s0, s1] = w.s[v];
    BlockStep step;
    step.node = v;
    step.context = w.contexts[v];
    step.midpoint = (s0 + s1) / 2.0;
    step.gap = (s1 - s0) / 2.0;
    step.length = BlockLength(s0, s1);
    step.lemma_preconditions =
        !BlockPreconditionFailure(step.midpoint, step.gap, beta, step.length).has_value();
    if (step.lemma_preconditions)
      step.value = step.length * BlockExpectation(step.midpoint, step.gap, beta, step.length);
    adv.lemma_preconditions = adv.lemma_preconditions && step.lemma_preconditions;
    adv.steps.push_back(step);
  }
  adv.max_total_length = RequiredBlockHorizon(w);
  Require(adv.max_total_length <= n, ErrorCode::kPrecondition,
          "block lengths exceed the horizon on some auxiliary path");
  adv.blowup = std::max(1, static_cast<int>(std::ceil(1.0 / (162.0 * alpha * alpha))));
  adv.blowup_fits = static_cast<long long>(d) * adv.blowup <= n;
  adv.certified_bound = d * kBlockFloor;

  // Locates round |prefix|+1: its block node, or the filler phase with the
  // auxiliary path code.
  struct Locus {
    bool filler;
    std::size_t node;
  };
  auto locate = [&](std::span<const Outcome> prefix) {
    std::size_t pos = 0;
    std::vector<Outcome> yt;
    for (int t = 0; t < d; ++t) {
      std::size_t v = aux.prefix_index(yt);
      const BlockStep& s = adv.steps[v];
      if (prefix.size() < pos + s.length) return Locus{false, v};
      int ones = 0;
      for (int i = 0; i < s.length; ++i) ones += prefix[pos + i];
      yt.push_back(ones >= s.length * s.midpoint ? 1 : 0);
      pos += s.length;
    }
    return Locus{true, aux.encode_path(yt)};
  };
  PathSpace space(n, 2);
  std::vector<int> contexts(space.num_nodes());
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    Locus l = locate(space.decode_prefix(i));
    contexts[i] = l.filler ? filler_context : adv.steps[l.node].context;
  }
  adv.x = ContextTree(n, std::move(contexts));
  adv.p = JointDistribution::FromFunction(n, 2, [&](std::span<const Outcome> prefix) {
    Locus l = locate(prefix);
    double one = l.filler ? f.functions()[w.experts[l.node]][filler_context]
                          : adv.steps[l.node].midpoint;
    return std::vector<double>{1.0 - one, one};
  });
  return adv;
}

double ExpectedRegret(const ExpertClass& composed, const JointDistribution& p,
                      const JointDistribution& forecaster) {
  Require(composed.is_joint() && composed.horizon() == p.horizon() &&
              forecaster.horizon() == p.horizon(),
          ErrorCode::kDomain, "horizons disagree");
  std::vector<double> sup = SupTable(composed);
  std::vector<double> pp = p.all_joint_probs();
  std::vector<double> qq = forecaster.all_joint_probs();
  double total = 0.0;
  for (std::size_t c = 0; c < pp.size(); ++c) {
    if (pp[c] == 0.0) continue;
    if (qq[c] == 0.0) return kInf;
    total += pp[c] * (std::log(sup[c]) - std::log(qq[c]));
  }
  return total;
}

BlockGameReport PlayBlockGame(const ExpertClass& f, const BlockAdversary& adv,
                              const JointDistribution* forecaster) {
  ExpertClass composed = ComposeClassWithTree(f, *adv.x);
  ShtarkovResult nml = ShtarkovSum(composed);
  BlockGameReport r;
  r.bound = adv.certified_bound;
  r.dual_value = DualFormValue(composed, *adv.p);
  r.nml_regret = ExpectedRegret(composed, *adv.p, nml.nml);
  r.expected_regret =
      forecaster ? ExpectedRegret(composed, *adv.p, *forecaster) : r.nml_regret;
  r.holds = r.expected_regret >= r.bound;
  return r;
}

LargePReport LargePAdversary(const ExpertClass& f, const ShatterWitness& witness, double beta) {
  Require(!f.is_joint(), ErrorCode::kDomain, "large-p adversary needs a function class");
  for (const auto& fn : f.functions())
    for (double v : fn)
      Require(v >= 7.0 / 16.0 && v <= 9.0 / 16.0, ErrorCode::kPrecondition,
              "class values leave [7/16, 9/16]");
  Require(beta >= 0.0 && beta < 1.0 / 16.0, ErrorCode::kPrecondition, "beta must lie in [0, 1/16)");
  if (beta == 0.0) {
    // Degenerate scale: nothing to certify.
    LargePReport r;
    r.horizon = witness.depth;
    r.holds = true;
    return r;
  }
  Require(witness.depth >= 1 && witness.depth <= 16, ErrorCode::kDomain,
          "witness depth must lie in [1, 16]");
  Require(ValidateShatterWitness(f, witness, beta, beta * beta / 2.0), ErrorCode::kPrecondition,
          "witness is not shattered at scale (beta, beta^2/2)");
  const int n = witness.depth;
  PathSpace space(n, 2);
  LargePReport r;
  r.horizon = n;
  r.beta = beta;
  r.bound = n * beta / 2.0;
  r.paths = space.num_paths();
  for (const auto& [s0, s1] : witness.s) r.u.push_back((s0 + s1) / 2.0);
  const bool scan_class = f.size() * space.num_paths() <= (std::size_t{1} << 24);
  r.min_witness_gain = kInf;
  r.min_sup_gain = kInf;
  r.min_round_gap = kInf;
  std::vector<std::size_t> nodes(n);
  for (std::size_t code = 0; code < space.num_paths(); ++code) {
    Path y = space.decode_path(code);
    for (int t = 0; t < n; ++t) nodes[t] = space.prefix_index(std::span<const Outcome>(y).subspan(0, t));
    auto gain = [&](const std::vector<double>& fn, bool track) {
      double g = 0.0;
      for (int t = 0; t < n; ++t) {
        double fv = fn[witness.contexts[nodes[t]]];
        double uv = r.u[nodes[t]];
        double fy = y[t] ? fv : 1.0 - fv;
        double uy = y[t] ? uv : 1.0 - uv;
        if (track) r.min_round_gap = std::min(r.min_round_gap, fy - uy);
        g += std::log(fy / uy);
      }
      return g;
    };
    double wg = gain(f.functions()[witness.experts[code]], true);
    r.min_witness_gain = std::min(r.min_witness_gain, wg);
    double sg = wg;
    if (scan_class)
      for (const auto& fn : f.functions()) sg = std::max(sg, gain(fn, false));
    r.min_sup_gain = std::min(r.min_sup_gain, sg);
  }
  r.holds = r.min_witness_gain >= r.bound;
  return r;
}

LargePInstance LargePHypercube(int n) {
  Require(n >= 1 && n <= 12, ErrorCode::kDomain, "hypercube size must lie in [1, 12]");
  const double lo = 7.0 / 16.0, hi = 9.0 / 16.0;
  std::vector<std::vector<double>> values(std::size_t{1} << n, std::vector<double>(n));
  for (std::size_t m = 0; m < values.size(); ++m)
    for (int t = 0; t < n; ++t) values[m][t] = (m >> t) & 1 ? hi : lo;
  GridInfo info;
  info.family = "hypercube";
  info.parameters = {lo, hi};
  LargePInstance inst{ExpertClass::FiniteFunction(n, std::move(values), std::move(info)), {}};
  PathSpace space(n, 2);
  ShatterWitness& w = inst.witness;
  w.depth = n;
  for (std::size_t v = 0; v < space.num_nodes(); ++v) {
    int level = static_cast<int>(space.decode_prefix(v).size());
    w.contexts.push_back(level);
    w.s.emplace_back(lo, hi);
  }
  for (std::size_t code = 0; code < space.num_paths(); ++code) {
    Path y = space.decode_path(code);
    std::size_t m = 0;
    for (int t = 0; t < n; ++t) m |= static_cast<std::size_t>(y[t]) << t;
    w.experts.push_back(m);
  }
  return inst;
}

std::vector<double> RenewalPackingPmf(const std::vector<int>& signs, double alpha) {
  std::vector<double> pmf(signs.size());
  double survive = 1.0;
  for (std::size_t t = 0; t < signs.size(); ++t) {
    double a = 0.5 + 3.0 * signs[t] * alpha;
    pmf[t] = survive - survive * a;
    survive *= a;
  }
  return pmf;
}

std::vector<std::uint32_t> Lexicode(int n, int d) {
  Require(n >= 1 && n <= 20 && d >= 1, ErrorCode::kDomain, "lexicode needs n in [1, 20], d >= 1");
  std::vector<std::uint32_t> code;
  for (std::uint32_t word = 0; word < (std::uint32_t{1} << n); ++word) {
    bool far = std::all_of(code.begin(), code.end(),
                           [&](std::uint32_t c) { return std::popcount(c ^ word) >= d; });
    if (far) code.push_back(word);
  }
  return code;
}

RenewalPackingReport RenewalPacking(int n, double alpha, std::uint64_t seed, std::size_t pairs) {
  Require(alpha > 0.0 && alpha < 1.0 / 6.0, ErrorCode::kPrecondition,
          "alpha must lie in (0, 1/6)");
  Require(n >= 1 && n <= 16, ErrorCode::kDomain, "n must lie in [1, 16]");
  RenewalPackingReport r;
  r.n = n;
  r.alpha = alpha;
  r.sqrt_separation = std::sqrt(0.5 + 3.0 * alpha) - std::sqrt(0.5 - 3.0 * alpha);
  r.separation_holds = r.sqrt_separation > 2.0 * alpha;
  r.log_separation = std::abs(std::log((1.0 - 6.0 * alpha) / (1.0 + 6.0 * alpha)));
  r.log_separation_holds = r.log_separation > 6.0 * alpha;

  // Zero-path conditionals come from the hazard form of each member.
  auto zero_path = [&](const std::vector<int>& signs) {
    std::vector<double> pmf = RenewalPackingPmf(signs, alpha);
    std::vector<double> h = RenewalHazards(pmf, n);
    for (double& v : h) v = std::sqrt(1.0 - v);
    return h;
  };
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin;
  r.min_pair_gap = kInf;
  while (r.pairs_checked < pairs) {
    std::vector<int> a(n), b(n);
    for (int t = 0; t < n; ++t) {
      a[t] = coin(rng) ? 1 : -1;
      b[t] = coin(rng) ? 1 : -1;
    }
    if (a == b) continue;
    std::vector<double> za = zero_path(a), zb = zero_path(b);
    double gap = 0.0;
    for (int t = 0; t < n; ++t) gap = std::max(gap, std::abs(za[t] - zb[t]));
    r.min_pair_gap = std::min(r.min_pair_gap, gap);
    ++r.pairs_checked;
  }
  r.pairs_hold = r.min_pair_gap > 2.0 * alpha;
  if (r.separation_holds && r.pairs_hold) r.cover_bits = n;

  r.code_distance = (n + 3) / 4;
  r.code_size = Lexicode(n, r.code_distance).size();
  r.code_log = std::log(static_cast<double>(r.code_size));
  double ball = 0.0, binom = 1.0;
  for (int i = 0; i < r.code_distance; ++i) {
    ball += binom;
    binom = binom * (n - i) / (i + 1);
  }
  r.gv_guarantee = std::ldexp(1.0, n) / ball;
  r.log_entropy_trend = (1.0 - std::log(2.0)) * n;
  r.code_holds = static_cast<double>(r.code_size) >= std::floor(r.gv_guarantee);

  if (n <= 3) {
    std::vector<JointDistribution> family;
    for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) {
      std::vector<int> signs(n);
      for (int t = 0; t < n; ++t) signs[t] = (m >> t) & 1 ? 1 : -1;
      family.push_back(RenewalJoint(RenewalPackingPmf(signs, alpha), n));
    }
    ExpertClass q = ExpertClass::FiniteJoint(std::move(family));
    MinCoverResult c = MinCover(q, alpha, CoverNotion::kSqrt, CoverMode::kExact);
    if (c.cover) r.exact_cover_size = c.cover->members.size();
  }
  return r;
}

double RenewalMinimaxReference(int n, const std::vector<double>& hazard_grid) {
  Require(n >= 1 && n <= 10, ErrorCode::kDomain, "n must lie in [1, 10]");
  Require(!hazard_grid.empty(), ErrorCode::kDomain, "hazard grid is empty");
  std::vector<std::vector<double>> pmfs;
  for (double h : hazard_grid) pmfs.push_back(GeometricPmf(h, n));
  return ShtarkovSum(RenewalClass(pmfs, n)).value;
}

}  // namespace seqlab
