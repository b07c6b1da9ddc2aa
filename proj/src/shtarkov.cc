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

#include "seqlab/shtarkov.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "parallel.h"

namespace seqlab {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void CheckBudget(const ExpertClass& q) {
  Require(q.is_joint(), ErrorCode::kUnsupported, "operation needs a joint class");
  PathSpace space(q.horizon(), q.alphabet());
  Require(space.num_paths() <= kShtarkovPathBudget, ErrorCode::kBudgetExceeded,
          "enumeration budget exceeded: " + std::to_string(space.num_paths()) + " paths");
}

double SafeLog(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

double LogSumExp(std::span<const double> v) {
  double m = *std::max_element(v.begin(), v.end());
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace

std::vector<double> SupTable(const ExpertClass& q, int threads) {
  CheckBudget(q);
  PathSpace space(q.horizon(), q.alphabet());
  std::vector<double> sup(space.num_paths(), 0.0);
  if (q.has_closed_form_sup()) {
    internal::ParallelFor(sup.size(), threads, [&](std::size_t c) {
      sup[c] = q.closed_form_sup(space.decode_path(c));
    });
    return sup;
  }
  std::vector<std::vector<double>> per_member(q.size());
  internal::ParallelFor(q.size(), threads,
                        [&](std::size_t m) { per_member[m] = q.joints()[m].all_joint_probs(); });
  for (const auto& probs : per_member)
    for (std::size_t c = 0; c < sup.size(); ++c) sup[c] = std::max(sup[c], probs[c]);
  return sup;
}

JointDistribution NormalizedJoint(int horizon, int alphabet, std::span<const double> sup_table) {
  PathSpace space(horizon, alphabet);
  Require(sup_table.size() == space.num_paths(), ErrorCode::kDomain, "sup table has wrong size");
  const int k = alphabet;
  // mass[t][c]: total sup over completions of the level-t prefix with code c.
  std::vector<std::vector<double>> mass(horizon + 1);
  mass[horizon].assign(sup_table.begin(), sup_table.end());
  for (int t = horizon - 1; t >= 0; --t) {
    mass[t].assign(space.level_size(t), 0.0);
    for (std::size_t c = 0; c < mass[t].size(); ++c)
      for (int y = 0; y < k; ++y) mass[t][c] += mass[t + 1][c * k + y];
  }
  std::vector<double> cond(space.num_nodes() * k);
  for (int t = 0; t < horizon; ++t) {
    for (std::size_t c = 0; c < mass[t].size(); ++c) {
      double* out = &cond[(space.level_offset(t) + c) * k];
      double total = mass[t][c];
      if (total <= 0.0) {
        std::fill(out, out + k, 1.0 / k);
        continue;
      }
      for (int y = 0; y < k; ++y) out[y] = mass[t + 1][c * k + y] / total;
    }
  }
  return JointDistribution(horizon, k, std::move(cond));
}

ShtarkovResult ShtarkovSum(const ExpertClass& q, int threads) {
  std::vector<double> sup = SupTable(q, threads);
  double total = 0.0;
  for (double s : sup) total += s;
  Require(total > 0.0, ErrorCode::kDegenerateClass, "sup table is identically zero");
  bool grid_sup = q.kind() == ClassKind::kGrid && !q.has_closed_form_sup();
  double step = q.grid() ? q.grid()->step : 0.0;
  JointDistribution nml = NormalizedJoint(q.horizon(), q.alphabet(), sup);
  return {std::log(total), std::move(sup), std::move(nml), grid_sup, step};
}

std::vector<double> NmlPredict(const ExpertClass& q, std::span<const Outcome> history) {
  CheckBudget(q);
  const int n = q.horizon();
  const int k = q.alphabet();
  Require(history.size() < static_cast<std::size_t>(n), ErrorCode::kDomain,
          "history must be shorter than the horizon");
  std::vector<double> sup = SupTable(q);
  PathSpace space(n, k);
  std::size_t code = 0;
  for (Outcome y : history) {
    Require(y >= 0 && y < k, ErrorCode::kDomain, "symbol out of range");
    code = code * k + y;
  }
  const int rest = n - static_cast<int>(history.size()) - 1;
  std::size_t block = 1;
  for (int i = 0; i < rest; ++i) block *= k;
  std::vector<double> out(k, 0.0);
  double total = 0.0;
  for (int y = 0; y < k; ++y) {
    std::size_t start = (code * k + y) * block;
    for (std::size_t j = 0; j < block; ++j) out[y] += sup[start + j];
    total += out[y];
  }
  Require(total > 0.0, ErrorCode::kConditioning, "history has zero mass under the NML joint");
  for (double& v : out) v /= total;
  return out;
}

MinimaxValue MinimaxLse(const ExpertClass& q) {
  std::vector<double> sup = SupTable(q);
  const int n = q.horizon();
  const int k = q.alphabet();
  PathSpace space(n, k);
  std::vector<std::vector<double>> value(n + 1);
  value[n].resize(sup.size());
  for (std::size_t c = 0; c < sup.size(); ++c) value[n][c] = SafeLog(sup[c]);
  for (int t = n - 1; t >= 0; --t) {
    value[t].resize(space.level_size(t));
    for (std::size_t c = 0; c < value[t].size(); ++c)
      value[t][c] = LogSumExp(std::span<const double>(&value[t + 1][c * k], k));
  }
  Require(value[0][0] != kNegInf, ErrorCode::kDegenerateClass, "sup table is identically zero");
  std::vector<double> cond(space.num_nodes() * k);
  for (int t = 0; t < n; ++t) {
    for (std::size_t c = 0; c < value[t].size(); ++c) {
      double* out = &cond[(space.level_offset(t) + c) * k];
      double v = value[t][c];
      if (v == kNegInf) {
        std::fill(out, out + k, 1.0 / k);
        continue;
      }
      double s = 0.0;
      for (int y = 0; y < k; ++y) s += out[y] = std::exp(value[t + 1][c * k + y] - v);
      for (int y = 0; y < k; ++y) out[y] /= s;
    }
  }
  MinimaxValue result;
  result.value = value[0][0];
  result.equalizer = JointDistribution(n, k, std::move(cond));
  return result;
}

namespace {

struct AdaptiveSearch {
  const std::vector<std::vector<double>>& fns;
  int contexts;
  int horizon;
  std::vector<std::pair<int, Outcome>> history;
  std::vector<AdaptiveDecision> strategy;

  double Value(const std::vector<double>& loglik) {
    if (static_cast<int>(history.size()) == horizon)
      return *std::max_element(loglik.begin(), loglik.end());
    double best = kNegInf;
    int best_x = 0;
    double best_p = 0.5;
    std::vector<double> next(loglik.size());
    for (int x = 0; x < contexts; ++x) {
      double child[2];
      for (Outcome y = 0; y < 2; ++y) {
        for (std::size_t m = 0; m < fns.size(); ++m) {
          double p = y == 1 ? fns[m][x] : 1.0 - fns[m][x];
          next[m] = loglik[m] + SafeLog(p);
        }
        history.emplace_back(x, y);
        child[y] = Value(next);
        history.pop_back();
      }
      double v = LogSumExp(child);
      if (v > best) {
        best = v;
        best_x = x;
        best_p = v == kNegInf ? 0.5 : std::exp(child[1] - v);
      }
    }
    strategy.push_back({history, best_x, best_p});
    return best;
  }
};

}  // namespace

MinimaxValue AdaptiveMinimax(const ExpertClass& f, int horizon) {
  Require(!f.is_joint(), ErrorCode::kUnsupported, "adaptive minimax needs a function class");
  Require(horizon >= 1, ErrorCode::kDomain, "horizon must be positive");
  double leaves = std::pow(2.0 * f.num_contexts(), horizon);
  Require(leaves <= 65536.0, ErrorCode::kBudgetExceeded,
          "adaptive minimax budget exceeded: (2|X|)^n > 65536");
  AdaptiveSearch search{f.functions(), f.num_contexts(), horizon, {}, {}};
  MinimaxValue result;
  result.value = search.Value(std::vector<double>(f.size(), 0.0));
  Require(result.value != kNegInf, ErrorCode::kDegenerateClass, "all experts have zero likelihood");
  // Post-order traversal; present in pre-order by history for readability.
  std::sort(search.strategy.begin(), search.strategy.end(),
            [](const AdaptiveDecision& a, const AdaptiveDecision& b) {
              if (a.history.size() != b.history.size()) return a.history.size() < b.history.size();
              return a.history < b.history;
            });
  result.strategy = std::move(search.strategy);
  return result;
}

double MaxOverTreesShtarkov(const ExpertClass& f, int horizon) {
  Require(!f.is_joint(), ErrorCode::kUnsupported, "tree enumeration needs a function class");
  PathSpace space(horizon, 2);
  const std::size_t nodes = space.num_nodes();
  const int m = f.num_contexts();
  double count = std::pow(static_cast<double>(m), static_cast<double>(nodes));
  Require(count <= 65536.0, ErrorCode::kBudgetExceeded, "too many context trees to enumerate");
  std::vector<int> digits(nodes, 0);
  double best = kNegInf;
  for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) {
    ContextTree x(horizon, digits);
    best = std::max(best, ShtarkovSum(ComposeClassWithTree(f, x)).value);
    for (std::size_t d = 0; d < nodes; ++d) {
      if (++digits[d] < m) break;
      digits[d] = 0;
    }
  }
  return best;
}

double DualFormValue(const ExpertClass& q, const JointDistribution& p) {
  std::vector<double> sup = SupTable(q);
  Require(p.horizon() == q.horizon() && p.alphabet() == q.alphabet(), ErrorCode::kDomain,
          "p and the class disagree on horizon or alphabet");
  std::vector<double> probs = p.all_joint_probs();
  double value = 0.0;
  for (std::size_t c = 0; c < sup.size(); ++c) {
    if (probs[c] <= 0.0) {
      Require(sup[c] <= 0.0, ErrorCode::kUnbounded,
              "p assigns zero probability to a path with positive class mass");
      continue;
    }
    if (sup[c] <= 0.0) return kNegInf;
    value += probs[c] * (std::log(sup[c]) - std::log(probs[c]));
  }
  return value;
}

JointDistribution TruncateDist(const JointDistribution& p, double delta) {
  const int k = p.alphabet();
  Require(delta > 0.0 && delta <= 1.0 / (4.0 * k), ErrorCode::kDomain,
          "delta must lie in (0, 1/(4|Y|)]");
  std::vector<double> cond(p.raw().begin(), p.raw().end());
  for (std::size_t v = 0; v < p.space().num_nodes(); ++v) {
    double* c = &cond[v * k];
    double mid_mass = 0.0, low_count = 0.0, below_2delta = 0.0;
    for (int y = 0; y < k; ++y) {
      if (c[y] < delta) low_count += 1.0;
      else if (c[y] < 2.0 * delta) mid_mass += c[y];
      if (c[y] < 2.0 * delta) below_2delta += c[y];
    }
    const double factor = (1.0 - mid_mass - delta * low_count) / (1.0 - below_2delta);
    for (int y = 0; y < k; ++y) {
      if (c[y] < delta) c[y] = delta;
      else if (c[y] >= 2.0 * delta) c[y] *= factor;
    }
  }
  return JointDistribution(p.horizon(), k, std::move(cond));
}

ExpertClass TruncateClass(const ExpertClass& q, double delta) {
  std::vector<JointDistribution> out;
  for (const auto& member : q.joints()) out.push_back(TruncateDist(member, delta));
  return ExpertClass::FiniteJoint(std::move(out));
}

TruncationReport CheckTruncationLemmas(const ExpertClass& q, const JointDistribution& p,
                                       double delta) {
  const int n = q.horizon();
  const int k = q.alphabet();
  ExpertClass qd = TruncateClass(q, delta);
  JointDistribution pd = TruncateDist(p, delta);
  std::vector<double> sup = SupTable(q);
  std::vector<double> sup_d = SupTable(qd);
  std::vector<double> probs = p.all_joint_probs();
  std::vector<double> probs_d = pd.all_joint_probs();

  TruncationReport r;
  r.delta = delta;
  r.q_delta_term = 4.0 * n * delta * k;
  r.p_delta_term = 2.0 * n * n * k * delta * std::log(1.0 / delta);
  // p cancels on both sides of the pathwise inequality.
  r.q_delta_slack = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < sup.size(); ++c) {
    if (sup[c] <= 0.0) continue;
    double slack = std::log(sup_d[c]) + r.q_delta_term - std::log(sup[c]);
    r.q_delta_slack = std::min(r.q_delta_slack, slack);
  }
  for (std::size_t c = 0; c < sup.size(); ++c) {
    if (probs[c] > 0.0) r.p_delta_lhs += probs[c] * (std::log(sup_d[c]) - std::log(probs[c]));
    r.p_delta_rhs += probs_d[c] * (std::log(sup_d[c]) - std::log(probs_d[c]));
  }
  r.p_delta_rhs += r.p_delta_term;
  r.p_delta_slack = r.p_delta_rhs - r.p_delta_lhs;
  r.q_delta_holds = r.q_delta_slack >= 0.0;
  r.p_delta_holds = r.p_delta_slack >= 0.0;
  return r;
}

}  // namespace seqlab
