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

#ifndef SEQLAB_ADVERSARY_H_
#define SEQLAB_ADVERSARY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqlab/core.h"
#include "seqlab/dimension.h"

namespace seqlab {

inline constexpr double kBlockFloor = 1.0 / 5184.0;

struct BlockValueReport {
  double value = 0.0;        // exact expectation over Binomial(k, p)
  double alpha_bound = 0.0;  // alpha^2 / (8 p (1-p))
  int k = 0;
  int canonical_k = 0;
  double canonical_total = 0.0;  // canonical_k * value at canonical_k
  bool alpha_holds = false;
  bool canonical_holds = false;
  bool large_alpha_holds = true;  // value >= alpha/4 when alpha > 1/36
};

int CanonicalBlockLength(double p, double alpha);
// Empty when the preconditions hold, else the name of the failed clause.
std::optional<std::string> BlockPreconditionFailure(double p, double alpha, double beta, int k);
double BlockExpectation(double p, double alpha, double beta, int k);
BlockValueReport BernoulliBlockValue(double p, double alpha, double beta, int k);

struct BlockStep {
  std::size_t node = 0;  // witness node (prefix of the auxiliary path)
  int context = 0;
  double midpoint = 0.0;  // v_t
  double gap = 0.0;       // gamma_t
  int length = 0;         // k_t
  double value = 0.0;     // k_t times the exact block expectation
  bool lemma_preconditions = false;
};

struct BlockAdversary {
  int depth = 0;
  int horizon = 0;
  int filler_context = 0;
  std::vector<BlockStep> steps;  // one per witness node
  std::optional<ContextTree> x;
  std::optional<JointDistribution> p;
  double certified_bound = 0.0;  // depth / 5184
  int max_total_length = 0;      // max over auxiliary paths of sum k_t
  int blowup = 1;                // ceil(1/(162 alpha^2)) v 1
  bool blowup_fits = false;      // depth * blowup <= n
  bool lemma_preconditions = false;
};

// Max over auxiliary paths of the summed block lengths.
int RequiredBlockHorizon(const ShatterWitness& w);
BlockAdversary BuildBlockAdversary(const ExpertClass& f, const ShatterWitness* witness,
                                   double alpha, int n, int filler_context = 0);

struct BlockGameReport {
  double expected_regret = 0.0;  // E_p[log sup - log forecaster]
  double dual_value = 0.0;       // the same with p as forecaster
  double nml_regret = 0.0;
  double bound = 0.0;
  bool holds = false;
};

double ExpectedRegret(const ExpertClass& composed, const JointDistribution& p,
                      const JointDistribution& forecaster);
BlockGameReport PlayBlockGame(const ExpertClass& f, const BlockAdversary& adv,
                              const JointDistribution* forecaster = nullptr);

struct LargePReport {
  int horizon = 0;
  double beta = 0.0;
  double bound = 0.0;           // n beta / 2
  double min_witness_gain = 0.0;  // min over paths of sum log(f^y / u)
  double min_sup_gain = 0.0;      // min over paths of sup_f sum log(f / u)
  double min_round_gap = 0.0;     // min over rounds of f^y(y_t) - u_t(y_t)
  std::size_t paths = 0;
  bool holds = false;
  std::vector<double> u;  // midpoint tree, prefix order
};

LargePReport LargePAdversary(const ExpertClass& f, const ShatterWitness& witness, double beta);

struct LargePInstance {
  ExpertClass f;
  ShatterWitness witness;
};

// Contexts 0..n-1, every sign pattern of 1/2 +- 1/16; shattered on the
// level-constant tree.
LargePInstance LargePHypercube(int n);

struct RenewalPackingReport {
  int n = 0;
  double alpha = 0.0;
  double sqrt_separation = 0.0;  // sqrt(1/2+3a) - sqrt(1/2-3a)
  double log_separation = 0.0;   // |log((1-6a)/(1+6a))|
  bool separation_holds = false;
  bool log_separation_holds = false;
  std::size_t pairs_checked = 0;
  double min_pair_gap = 0.0;  // sampled pairs
  bool pairs_hold = false;
  double cover_bits = 0.0;  // log2 of the certified cover size
  int code_distance = 0;
  std::size_t code_size = 0;
  double code_log = 0.0;         // nats
  double gv_guarantee = 0.0;     // 2^n / sum_{i<d} C(n, i)
  double log_entropy_trend = 0.0;  // (1 - log 2) n
  bool code_holds = false;
  std::optional<std::size_t> exact_cover_size;  // n <= 3
};

std::vector<double> RenewalPackingPmf(const std::vector<int>& signs, double alpha);
RenewalPackingReport RenewalPacking(int n, double alpha, std::uint64_t seed,
                                    std::size_t pairs = 100);
// Greedy lexicographic code of length n and minimum distance d.
std::vector<std::uint32_t> Lexicode(int n, int d);

double RenewalMinimaxReference(int n, const std::vector<double>& hazard_grid);

}  // namespace seqlab

#endif  // SEQLAB_ADVERSARY_H_
