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

#ifndef SEQLAB_COVERING_H_
#define SEQLAB_COVERING_H_

#include <optional>
#include <string>
#include <vector>

#include "seqlab/core.h"

namespace seqlab {

// Exhaustive subset search is used up to this pool size.
inline constexpr std::size_t kExactCoverPoolLimit = 12;

enum class CoverNotion { kSqrt, kLinf, kLogMetric };
const char* CoverNotionName(CoverNotion notion);
CoverNotion CoverNotionFromName(const std::string& name);

enum class CoverMode { kAuto, kExact, kGreedy };

double HGap(double a, double b);

struct CoverSet {
  double scale = 0.0;
  CoverNotion notion = CoverNotion::kSqrt;
  std::vector<JointDistribution> members;
  std::vector<std::size_t> pool_indices;
};

struct CoverCheck {
  bool ok = false;
  double worst_distance = 0.0;   // max_q max_w min_v distance
  std::size_t worst_member = 0;  // index into Q
  std::size_t worst_path = 0;    // prefix code at level n-1 (sqrt/linf only)
};

CoverCheck IsCover(const std::vector<JointDistribution>& cover, const ExpertClass& q,
                   double alpha, CoverNotion notion);

// Sequential distance between two joints along the prefix w (level n-1 code).
double SequentialGap(const JointDistribution& q, const JointDistribution& v, std::size_t w,
                     CoverNotion notion);
// Global log-metric; +inf when either joint has a zero conditional.
double LogMetric(const JointDistribution& q, const JointDistribution& v);

struct MinCoverResult {
  std::optional<CoverSet> cover;  // empty when the pool cannot cover
  bool exact = false;
  std::size_t excluded = 0;       // members dropped from logmetric covers
  std::string note;
};

// Covers drawn from `pool` (the class itself when null).
MinCoverResult MinCover(const ExpertClass& q, double alpha, CoverNotion notion,
                        CoverMode mode = CoverMode::kAuto, const ExpertClass* pool = nullptr);

struct EntropyPoint {
  double scale;
  double entropy;   // nats
  std::size_t size;
  bool exact;
};

struct EntropyProfile {
  std::vector<EntropyPoint> points;  // ascending scale
  bool monotonized = false;          // a greedy point was lowered to restore monotonicity
  std::string label = "proper-cover upper bound";
};

EntropyProfile BuildEntropyProfile(const ExpertClass& q, std::vector<double> scales,
                                   CoverNotion notion, CoverMode mode = CoverMode::kAuto);

struct EntropyRelationReport {
  std::size_t n_sq_scaled = 0;   // N_sq(F∘x, alpha/sqrt(delta))
  std::size_t n_inf = 0;         // N_inf(F∘x, alpha)
  std::size_t n_sq_double = 0;   // N_sq(F∘x, 2 alpha)
  std::size_t n_inf_square = 0;  // N_inf(F∘x, alpha^2)
  bool scaled_sqrt_holds = false;   // n_sq_scaled <= n_inf
  bool square_scale_holds = false;  // n_sq_double <= n_inf_square
  bool exact = false;
};

EntropyRelationReport CheckEntropyRelations(const ExpertClass& f, const ContextTree& x,
                                            double alpha, double delta);

}  // namespace seqlab

#endif  // SEQLAB_COVERING_H_
