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

#ifndef SEQLAB_SHTARKOV_H_
#define SEQLAB_SHTARKOV_H_

#include <optional>
#include <span>
#include <vector>

#include "seqlab/core.h"

namespace seqlab {

// Largest number of full paths any enumeration in this module will visit.
inline constexpr std::size_t kShtarkovPathBudget = std::size_t{1} << 12;

struct ShtarkovResult {
  double value = 0.0;              // nats
  std::vector<double> sup_table;   // sup_q q(y), path-code order
  JointDistribution nml;
  bool grid_sup = false;           // true when the sup is a max over a finite grid
  double grid_step = 0.0;
};

// Per-path class supremum, path-code order. Closed forms take precedence.
std::vector<double> SupTable(const ExpertClass& q, int threads = 1);
ShtarkovResult ShtarkovSum(const ExpertClass& q, int threads = 1);
// Conditionals of the joint proportional to `sup_table`; zero-mass nodes get
// uniform conditionals.
JointDistribution NormalizedJoint(int horizon, int alphabet, std::span<const double> sup_table);
std::vector<double> NmlPredict(const ExpertClass& q, std::span<const Outcome> history);

struct AdaptiveDecision {
  std::vector<std::pair<int, Outcome>> history;
  int context;        // maximizing context choice
  double p_hat_one;   // equalizer probability of outcome 1
};

struct MinimaxValue {
  double value = 0.0;
  std::optional<JointDistribution> equalizer;  // fixed-context games
  std::vector<AdaptiveDecision> strategy;      // adaptive games
};

MinimaxValue MinimaxLse(const ExpertClass& q);
// Contexts are {0, ..., F.num_contexts()-1}.
MinimaxValue AdaptiveMinimax(const ExpertClass& f, int horizon);
// max over all |X|^(2^n-1) context trees of the composed Shtarkov sum.
double MaxOverTreesShtarkov(const ExpertClass& f, int horizon);

double DualFormValue(const ExpertClass& q, const JointDistribution& p);

JointDistribution TruncateDist(const JointDistribution& p, double delta);
ExpertClass TruncateClass(const ExpertClass& q, double delta);

struct TruncationReport {
  double delta = 0.0;
  double q_delta_slack = 0.0;   // min over paths of RHS - LHS
  double q_delta_term = 0.0;    // 4 n delta |Y|
  double p_delta_lhs = 0.0;
  double p_delta_rhs = 0.0;
  double p_delta_term = 0.0;    // 2 n^2 |Y| delta log(1/delta)
  double p_delta_slack = 0.0;
  bool q_delta_holds = false;
  bool p_delta_holds = false;
};

TruncationReport CheckTruncationLemmas(const ExpertClass& q, const JointDistribution& p,
                                       double delta);

}  // namespace seqlab

#endif  // SEQLAB_SHTARKOV_H_
