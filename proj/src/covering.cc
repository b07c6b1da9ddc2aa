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

#include "seqlab/covering.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace seqlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double NodeGap(std::span<const double> a, std::span<const double> b, CoverNotion notion) {
  double g = 0.0;
  for (std::size_t y = 0; y < a.size(); ++y) {
    double d = notion == CoverNotion::kSqrt ? std::abs(std::sqrt(a[y]) - std::sqrt(b[y]))
                                            : std::abs(a[y] - b[y]);
    g = std::max(g, d);
  }
  return g;
}

// Max node gap along each prefix of length n-1, indexed by its code.
std::vector<double> PathMaxGaps(const JointDistribution& q, const JointDistribution& v,
                                CoverNotion notion) {
  const PathSpace& space = q.space();
  const int k = q.alphabet();
  std::vector<double> level{NodeGap(q.node(0), v.node(0), notion)};
  for (int t = 1; t < q.horizon(); ++t) {
    std::vector<double> next(level.size() * k);
    for (std::size_t c = 0; c < next.size(); ++c) {
      std::size_t node = space.level_offset(t) + c;
      next[c] = std::max(level[c / k], NodeGap(q.node(node), v.node(node), notion));
    }
    level.swap(next);
  }
  return level;
}

void CheckCompatible(const JointDistribution& a, const JointDistribution& b) {
  Require(a.horizon() == b.horizon() && a.alphabet() == b.alphabet(), ErrorCode::kDomain,
          "cover member disagrees with the class on horizon or alphabet");
  Require(a.horizon() >= 1, ErrorCode::kDomain, "covers need horizon >= 1");
}

using Bits = std::vector<std::uint64_t>;

void SetBit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

std::size_t CountAndNot(const Bits& a, const Bits& covered) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += std::popcount(a[i] & ~covered[i]);
  return n;
}

}  // namespace

const char* CoverNotionName(CoverNotion notion) {
  switch (notion) {
    case CoverNotion::kSqrt: return "sqrt";
    case CoverNotion::kLinf: return "linf";
    case CoverNotion::kLogMetric: return "logmetric";
  }
  return "unknown";
}

CoverNotion CoverNotionFromName(const std::string& name) {
  if (name == "sqrt") return CoverNotion::kSqrt;
  if (name == "linf") return CoverNotion::kLinf;
  if (name == "logmetric") return CoverNotion::kLogMetric;
  Fail(ErrorCode::kInvalidConfig, "unknown cover notion '" + name + "'");
}

double HGap(double a, double b) {
  Require(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0, ErrorCode::kDomain,
          "h_gap arguments must lie in [0,1]");
  return std::max(std::abs(std::sqrt(a) - std::sqrt(b)),
                  std::abs(std::sqrt(1.0 - a) - std::sqrt(1.0 - b)));
}

double SequentialGap(const JointDistribution& q, const JointDistribution& v, std::size_t w,
                     CoverNotion notion) {
  CheckCompatible(q, v);
  Require(notion != CoverNotion::kLogMetric, ErrorCode::kUnsupported,
          "the log metric is not sequential");
  std::vector<double> gaps = PathMaxGaps(q, v, notion);
  Require(w < gaps.size(), ErrorCode::kDomain, "prefix code out of range");
  return gaps[w];
}

double LogMetric(const JointDistribution& q, const JointDistribution& v) {
  CheckCompatible(q, v);
  if (q.min_conditional() <= 0.0 || v.min_conditional() <= 0.0) return kInf;
  const PathSpace& space = q.space();
  const int k = q.alphabet();
  double sum = 0.0;
  for (int t = 0; t < q.horizon(); ++t) {
    double worst = 0.0;
    for (std::size_t c = 0; c < space.level_size(t); ++c) {
      std::size_t node = space.level_offset(t) + c;
      for (int y = 0; y < k; ++y) {
        double d = std::log(q.node(node)[y]) - std::log(v.node(node)[y]);
        worst = std::max(worst, d * d);
      }
    }
    sum += worst;
  }
  return std::sqrt(sum / q.horizon());
}

CoverCheck IsCover(const std::vector<JointDistribution>& cover, const ExpertClass& q,
                   double alpha, CoverNotion notion) {
  CoverCheck check;
  if (cover.empty()) return check;
  const auto& members = q.joints();
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& qm = members[i];
    CheckCompatible(qm, cover[0]);
    if (notion == CoverNotion::kLogMetric) {
      if (qm.min_conditional() <= 0.0) continue;
      double best = kInf;
      for (const auto& v : cover) best = std::min(best, LogMetric(qm, v));
      if (best > check.worst_distance) {
        check.worst_distance = best;
        check.worst_member = i;
      }
      continue;
    }
    std::vector<double> best;
    for (const auto& v : cover) {
      CheckCompatible(qm, v);
      std::vector<double> g = PathMaxGaps(qm, v, notion);
      if (best.empty()) best = std::move(g);
      else
        for (std::size_t w = 0; w < g.size(); ++w) best[w] = std::min(best[w], g[w]);
    }
    for (std::size_t w = 0; w < best.size(); ++w) {
      if (best[w] > check.worst_distance) {
        check.worst_distance = best[w];
        check.worst_member = i;
        check.worst_path = w;
      }
    }
  }
  check.ok = check.worst_distance <= alpha;
  return check;
}

MinCoverResult MinCover(const ExpertClass& q, double alpha, CoverNotion notion, CoverMode mode,
                        const ExpertClass* pool) {
  Require(alpha >= 0.0, ErrorCode::kDomain, "scale must be nonnegative");
  MinCoverResult result;
  const auto& members = q.joints();
  const auto& candidates_all = (pool ? *pool : q).joints();
  for (const auto& v : candidates_all) CheckCompatible(members[0], v);

  std::vector<std::size_t> targets, candidates;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (notion == CoverNotion::kLogMetric && members[i].min_conditional() <= 0.0) {
      ++result.excluded;
      continue;
    }
    targets.push_back(i);
  }
  for (std::size_t j = 0; j < candidates_all.size(); ++j) {
    if (notion == CoverNotion::kLogMetric && candidates_all[j].min_conditional() <= 0.0) {
      if (pool) ++result.excluded;
      continue;
    }
    candidates.push_back(j);
  }
  if (result.excluded > 0)
    result.note = "warning: " + std::to_string(result.excluded) +
                  " member(s) with a zero conditional excluded from the log metric";
  if (targets.empty()) {
    result.note += result.note.empty() ? "nothing to cover" : "; nothing to cover";
    result.exact = true;
    Require(!candidates.empty(), ErrorCode::kDegenerateClass, "no usable members");
    result.cover = CoverSet{alpha, notion, {candidates_all[candidates[0]]}, {candidates[0]}};
    return result;
  }

  // Universe: (target, prefix) pairs for sequential notions, targets otherwise.
  const std::size_t per_target =
      notion == CoverNotion::kLogMetric ? 1 : members[0].space().level_size(members[0].horizon() - 1);
  const std::size_t universe = targets.size() * per_target;
  const std::size_t words = (universe + 63) / 64;
  std::vector<Bits> sets(candidates.size(), Bits(words, 0));
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    const auto& v = candidates_all[candidates[j]];
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const auto& qm = members[targets[i]];
      if (notion == CoverNotion::kLogMetric) {
        if (LogMetric(qm, v) <= alpha) SetBit(sets[j], i);
        continue;
      }
      std::vector<double> g = PathMaxGaps(qm, v, notion);
      for (std::size_t w = 0; w < g.size(); ++w)
        if (g[w] <= alpha) SetBit(sets[j], i * per_target + w);
    }
  }
  Bits full(words, 0);
  for (std::size_t i = 0; i < universe; ++i) SetBit(full, i);

  bool exact = mode == CoverMode::kExact ||
               (mode == CoverMode::kAuto && candidates.size() <= kExactCoverPoolLimit);
  if (mode == CoverMode::kExact)
    Require(candidates.size() <= kExactCoverPoolLimit, ErrorCode::kBudgetExceeded,
            "exact cover search limited to pools of " + std::to_string(kExactCoverPoolLimit));

  std::vector<std::size_t> chosen;
  if (exact) {
    Bits all(words, 0);
    for (const auto& s : sets)
      for (std::size_t w = 0; w < words; ++w) all[w] |= s[w];
    if (all != full) {
      result.exact = true;
      result.note = "no cover from pool";
      return result;
    }
    const std::size_t m = candidates.size();
    for (std::size_t size = 1; size <= m && chosen.empty(); ++size) {
      std::vector<std::size_t> idx(size);
      for (std::size_t i = 0; i < size; ++i) idx[i] = i;
      while (true) {
        Bits acc(words, 0);
        for (std::size_t i : idx)
          for (std::size_t w = 0; w < words; ++w) acc[w] |= sets[i][w];
        if (acc == full) {
          chosen = idx;
          break;
        }
        std::size_t pos = size;
        while (pos > 0 && idx[pos - 1] == m - size + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
  } else {
    Bits covered(words, 0);
    while (covered != full) {
      std::size_t best = 0, best_gain = 0;
      for (std::size_t j = 0; j < sets.size(); ++j) {
        std::size_t gain = CountAndNot(sets[j], covered);
        if (gain > best_gain) {
          best_gain = gain;
          best = j;
        }
      }
      if (best_gain == 0) {
        result.note = "no cover from pool";
        return result;
      }
      chosen.push_back(best);
      for (std::size_t w = 0; w < words; ++w) covered[w] |= sets[best][w];
    }
  }

  CoverSet cover{alpha, notion, {}, {}};
  for (std::size_t j : chosen) {
    cover.members.push_back(candidates_all[candidates[j]]);
    cover.pool_indices.push_back(candidates[j]);
  }
  CoverCheck check = IsCover(cover.members, q, alpha, notion);
  Require(check.ok, ErrorCode::kDomain, "internal error: constructed cover failed validation");
  result.cover = std::move(cover);
  result.exact = exact;
  return result;
}

EntropyProfile BuildEntropyProfile(const ExpertClass& q, std::vector<double> scales,
                                   CoverNotion notion, CoverMode mode) {
  Require(!scales.empty(), ErrorCode::kDomain, "no scales given");
  std::sort(scales.begin(), scales.end());
  EntropyProfile profile;
  for (double a : scales) {
    MinCoverResult r = MinCover(q, a, notion, mode);
    Require(r.cover.has_value(), ErrorCode::kDomain, "class cannot cover itself: " + r.note);
    std::size_t size = r.cover->members.size();
    profile.points.push_back({a, std::log(static_cast<double>(size)), size, r.exact});
  }
  for (std::size_t i = 1; i < profile.points.size(); ++i) {
    auto& cur = profile.points[i];
    const auto& prev = profile.points[i - 1];
    if (cur.size > prev.size) {
      cur.size = prev.size;
      cur.entropy = prev.entropy;
      cur.exact = cur.exact && prev.exact;
      profile.monotonized = true;
    }
  }
  return profile;
}

EntropyRelationReport CheckEntropyRelations(const ExpertClass& f, const ContextTree& x,
                                            double alpha, double delta) {
  Require(delta > 0.0 && delta <= 0.5, ErrorCode::kDomain, "delta must lie in (0, 1/2]");
  Require(alpha > 0.0, ErrorCode::kDomain, "alpha must be positive");
  for (const auto& fn : f.functions())
    for (double v : fn)
      Require(v >= delta && v <= 1.0 - delta, ErrorCode::kPrecondition,
              "class range must lie in [delta, 1 - delta]");
  ExpertClass q = ComposeClassWithTree(f, x);
  auto size = [&](double a, CoverNotion notion, bool& exact) {
    MinCoverResult r = MinCover(q, a, notion, CoverMode::kAuto);
    exact = exact && r.exact;
    return r.cover->members.size();
  };
  EntropyRelationReport r;
  r.exact = true;
  r.n_sq_scaled = size(alpha / std::sqrt(delta), CoverNotion::kSqrt, r.exact);
  r.n_inf = size(alpha, CoverNotion::kLinf, r.exact);
  r.n_sq_double = size(2.0 * alpha, CoverNotion::kSqrt, r.exact);
  r.n_inf_square = size(alpha * alpha, CoverNotion::kLinf, r.exact);
  r.scaled_sqrt_holds = r.n_sq_scaled <= r.n_inf;
  r.square_scale_holds = r.n_sq_double <= r.n_inf_square;
  return r;
}

}  // namespace seqlab
