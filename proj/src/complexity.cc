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

#include "seqlab/complexity.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "parallel.h"
#include "seqlab/shtarkov.h"

namespace seqlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Mean and standard error of per-sample values, summed in index order.
std::pair<double, double> MeanStderr(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(v.size() > 1 ? v.size() - 1 : 1);
  return {mean, std::sqrt(var / static_cast<double>(v.size()))};
}

int Draw(std::mt19937_64& rng, std::span<const double> probs) {
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double acc = 0.0;
  for (std::size_t y = 0; y < probs.size(); ++y) {
    acc += probs[y];
    if (u < acc) return static_cast<int>(y);
  }
  // Rounding left u above the cumulative sum; return the last positive symbol.
  for (std::size_t y = probs.size(); y-- > 0;)
    if (probs[y] > 0.0) return static_cast<int>(y);
  return 0;
}

}  // namespace

double Zeta(double x) {
  Require(x > 0.0, ErrorCode::kDomain, "zeta needs a positive argument");
  if (x <= 1.0) return 2.0 * (std::sqrt(x) - 1.0);
  return 2.0 * std::log((x + 1.0) / 2.0);
}

double ZetaParams::offset() const {
  return 1.0 / (4.0 * std::log(static_cast<double>(n) * alphabet));
}

double ZetaParams::range() const { return static_cast<double>(n) * n * alphabet; }

ZetaReport CheckZetaProperties(const ZetaParams& params, const ZetaGrids& grids) {
  Require(params.n >= 7, ErrorCode::kPrecondition, "zeta properties need n >= 7");
  Require(params.alphabet >= 2, ErrorCode::kDomain, "alphabet must have at least 2 symbols");
  const double c = params.offset();
  ZetaReport r;
  r.log_min_slack = kInf;
  r.log_quarter_min_slack = kInf;
  // Log inequality on a log grid of (0, n^2 |Y|], including x = 1 and the endpoint.
  const double lo = std::log(1e-12), hi = std::log(params.range());
  std::vector<double> xs;
  for (std::size_t i = 0; i < grids.log_points; ++i)
    xs.push_back(std::exp(lo + (hi - lo) * static_cast<double>(i) / (grids.log_points - 1)));
  xs.back() = params.range();
  xs.push_back(1.0);
  for (double x : xs) {
    double z = Zeta(x);
    double slack = z - c * z * z - std::log(x);
    r.log_quarter_min_slack =
        std::min(r.log_quarter_min_slack, z - c * z * z / 4.0 - std::log(x));
    if (slack < r.log_min_slack) {
      r.log_min_slack = slack;
      r.log_argmin = x;
    }
    ++r.evaluations;
  }
  // Divergence property, binary (f, p) on an interior grid.
  r.divergence_min = kInf;
  const std::size_t m = grids.divergence_side;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double f = (i + 1.0) / (m + 1.0), p = (j + 1.0) / (m + 1.0);
      double e = 0.0;
      for (int y = 0; y < 2; ++y) {
        double fy = y ? f : 1.0 - f, py = y ? p : 1.0 - p;
        double z = Zeta(fy / py);
        e += py * (-z - c * z * z);
      }
      r.divergence_min = std::min(r.divergence_min, e);
      ++r.evaluations;
    }
  }
  // Lipschitz property on random pairs: half uniform on (0, 4), half log-uniform on the range.
  r.lipschitz_min_slack = kInf;
  std::mt19937_64 rng(grids.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < grids.lipschitz_pairs; ++i) {
    double a, b;
    if (i % 2 == 0) {
      a = 4.0 * (1.0 - unit(rng));
      b = 4.0 * (1.0 - unit(rng));
    } else {
      a = std::exp(lo + (hi - lo) * unit(rng));
      b = std::exp(lo + (hi - lo) * unit(rng));
    }
    double slack = 2.0 * std::abs(std::sqrt(a) - std::sqrt(b)) - std::abs(Zeta(a) - Zeta(b));
    r.lipschitz_min_slack = std::min(r.lipschitz_min_slack, slack);
    ++r.evaluations;
  }
  r.ok = r.log_min_slack >= -kCheckTolerance && r.divergence_min >= -kCheckTolerance &&
         r.lipschitz_min_slack >= -kCheckTolerance;
  return r;
}

double ZetaDivergenceMinTernary(const ZetaParams& params, std::size_t side) {
  const double c = params.offset();
  double worst = kInf;
  std::vector<std::vector<double>> simplex;
  for (std::size_t i = 1; i < side; ++i)
    for (std::size_t j = 1; i + j < side; ++j)
      simplex.push_back({i / double(side), j / double(side), (side - i - j) / double(side)});
  for (const auto& f : simplex) {
    for (const auto& p : simplex) {
      double e = 0.0;
      for (int y = 0; y < 3; ++y) {
        double z = Zeta(f[y] / p[y]);
        e += p[y] * (-z - c * z * z);
      }
      worst = std::min(worst, e);
    }
  }
  return worst;
}

CircleDotSample SampleCircleDot(const JointDistribution& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CircleDotSample s;
  s.seed = seed;
  const int n = p.horizon();
  for (int t = 0; t < n; ++t) s.eps.push_back(std::bernoulli_distribution(0.5)(rng) ? 1 : -1);
  for (int t = 0; t < n; ++t) {
    auto cond = p.node(p.space().prefix_index(s.w));
    int y = Draw(rng, cond);
    int z = Draw(rng, cond);
    s.y.push_back(y);
    s.z.push_back(z);
    s.w.push_back(s.eps[t] == 1 ? y : z);
  }
  return s;
}

namespace {

// Both suprema of the symmetrized process at one atom.
std::pair<double, double> SymmetrizedSups(const ExpertClass& q, const JointDistribution& p,
                                          std::span<const int> eps, std::span<const Outcome> w,
                                          std::span<const Outcome> y, std::span<const Outcome> z,
                                          double c) {
  double s1 = -kInf, s2 = -kInf;
  const PathSpace& space = p.space();
  for (const auto& qm : q.joints()) {
    double a = 0.0, b = 0.0;
    for (std::size_t t = 0; t < eps.size(); ++t) {
      std::size_t node = space.prefix_index(w.subspan(0, t));
      double zy = Zeta(qm.node(node)[y[t]] / p.node(node)[y[t]]);
      double zz = Zeta(qm.node(node)[z[t]] / p.node(node)[z[t]]);
      a += eps[t] * zy - c * zy * zy;
      b += -eps[t] * zz - c * zz * zz;
    }
    s1 = std::max(s1, a);
    s2 = std::max(s2, b);
  }
  return {s1, s2};
}

struct AtomWalker {
  const ExpertClass& q;
  const JointDistribution& p;
  double c;
  std::vector<int> eps;
  Path w, y, z;
  double first = 0.0, second = 0.0;
  std::size_t atoms = 0;

  void Walk(double prob) {
    const int n = p.horizon();
    if (static_cast<int>(w.size()) == n) {
      auto [s1, s2] = SymmetrizedSups(q, p, eps, w, y, z, c);
      first += prob * s1;
      second += prob * s2;
      ++atoms;
      return;
    }
    auto cond = p.node(p.space().prefix_index(w));
    const int k = p.alphabet();
    for (int e : {1, -1}) {
      for (int yy = 0; yy < k; ++yy) {
        for (int zz = 0; zz < k; ++zz) {
          double pr = prob * 0.5 * cond[yy] * cond[zz];
          if (pr == 0.0) continue;
          eps.push_back(e);
          y.push_back(yy);
          z.push_back(zz);
          w.push_back(e == 1 ? yy : zz);
          Walk(pr);
          eps.pop_back();
          y.pop_back();
          z.pop_back();
          w.pop_back();
        }
      }
    }
  }
};

}  // namespace

SymmetrizationReport SymmetrizationCheck(const ExpertClass& q, const JointDistribution& p,
                                         const SymmetrizationOptions& options) {
  const int n = q.horizon();
  const int k = q.alphabet();
  Require(p.horizon() == n && p.alphabet() == k, ErrorCode::kDomain,
          "p and the class disagree on horizon or alphabet");
  Require(n * k >= 2, ErrorCode::kDomain, "need n |Y| >= 2");
  Require(p.in_delta_n(), ErrorCode::kPrecondition, "p must have all conditionals >= 1/(n^2 |Y|)");
  for (const auto& qm : q.joints())
    Require(qm.in_delta_n(), ErrorCode::kPrecondition,
            "class members must have all conditionals >= 1/(n^2 |Y|)");
  const double c = ZetaParams{n, k}.offset();
  SymmetrizationReport r;
  r.lhs = DualFormValue(q, p);
  if (!options.force_monte_carlo && n <= 3) {
    AtomWalker walker{q, p, c, {}, {}, {}, {}};
    walker.Walk(1.0);
    r.first_term = walker.first;
    r.second_term = walker.second;
    r.rhs = r.first_term + r.second_term;
    r.atoms = walker.atoms;
    r.exact = true;
    r.holds = r.lhs <= r.rhs + kCheckTolerance;
    return r;
  }
  Require(options.samples >= 2, ErrorCode::kDomain, "need at least two samples");
  std::vector<double> a(options.samples), b(options.samples), sum(options.samples);
  internal::ParallelFor(options.samples, options.threads, [&](std::size_t i) {
    CircleDotSample s = SampleCircleDot(p, options.seed * 0x9E3779B97F4A7C15ULL + i);
    auto [s1, s2] = SymmetrizedSups(q, p, s.eps, s.w, s.y, s.z, c);
    a[i] = s1;
    b[i] = s2;
    sum[i] = s1 + s2;
  });
  r.first_term = MeanStderr(a).first;
  r.second_term = MeanStderr(b).first;
  auto [mean, se] = MeanStderr(sum);
  r.rhs = mean;
  r.rhs_stderr = se;
  r.atoms = options.samples;
  r.holds = r.lhs <= r.rhs + 3.0 * se + kCheckTolerance;
  return r;
}

FiniteClassReport FiniteClassOffset(const CoefficientFamily& family, double lambda,
                                    const FiniteClassOptions& options) {
  Require(lambda > 0.0, ErrorCode::kDomain, "lambda must be positive");
  Require(!family.members.empty(), ErrorCode::kDomain, "coefficient family is empty");
  const int n = family.n;
  PathSpace space(n, 2);
  for (const auto& a : family.members)
    Require(a.size() == space.num_nodes(), ErrorCode::kDomain, "coefficient tree has wrong size");
  const double log_a = std::log(static_cast<double>(family.members.size()));

  auto evaluate = [&](std::size_t bits, double& off, double& lin, double& sq) {
    off = lin = sq = -kInf;
    for (const auto& a : family.members) {
      double o = 0.0, l = 0.0, s = 0.0;
      std::size_t code = 0;
      for (int t = 0; t < n; ++t) {
        double at = a[space.level_offset(t) + code];
        int bit = static_cast<int>((bits >> (n - 1 - t)) & 1);
        double e = bit ? 1.0 : -1.0;
        o += at * e - lambda * at * at;
        l += at * e;
        s += at * at;
        code = code * 2 + bit;
      }
      off = std::max(off, o);
      lin = std::max(lin, l);
      sq = std::max(sq, s);
    }
  };

  FiniteClassReport r;
  if (!options.force_monte_carlo && n <= 16) {
    const std::size_t total = std::size_t{1} << n;
    double off_sum = 0.0, lin_sum = 0.0, sq_sum = 0.0;
    for (std::size_t bits = 0; bits < total; ++bits) {
      double o, l, s;
      evaluate(bits, o, l, s);
      off_sum += o;
      lin_sum += l;
      sq_sum += s;
    }
    r.offset_value = off_sum / total;
    r.nonoffset_value = lin_sum / total;
    r.sup_square_mean = sq_sum / total;
    r.exact = true;
  } else {
    Require(n <= 63, ErrorCode::kBudgetExceeded, "horizon too large for Monte Carlo");
    std::mt19937_64 rng(options.seed);
    std::vector<double> off(options.samples), lin(options.samples), sq(options.samples);
    for (std::size_t i = 0; i < options.samples; ++i) {
      std::size_t bits = rng() >> (64 - n);
      evaluate(bits, off[i], lin[i], sq[i]);
    }
    std::tie(r.offset_value, r.offset_stderr) = MeanStderr(off);
    std::tie(r.nonoffset_value, r.nonoffset_stderr) = MeanStderr(lin);
    r.sup_square_mean = MeanStderr(sq).first;
  }
  r.offset_bound = log_a / (2.0 * lambda);
  r.nonoffset_bound = std::sqrt(2.0 * log_a) * std::sqrt(r.sup_square_mean);
  r.offset_holds = r.offset_value <= r.offset_bound + 3.0 * r.offset_stderr + kCheckTolerance;
  r.nonoffset_holds =
      r.nonoffset_value <= r.nonoffset_bound + 3.0 * r.nonoffset_stderr + kCheckTolerance;
  return r;
}

namespace {

struct Profile {
  const BoundInputs& in;
  double operator()(double a) const {
    if (in.exponent) return in.coefficient * std::pow(a, -*in.exponent);
    // Step envelope: entropy at the largest tabulated scale <= a.
    double h = in.table.front().second;
    for (const auto& [s, e] : in.table) {
      if (s <= a) h = e;
      else break;
    }
    return h;
  }
};

}  // namespace

ChainingBound ComputeChainingBound(const BoundInputs& raw) {
  BoundInputs in = raw;
  Require(in.n >= 1.0, ErrorCode::kDomain, "n must be >= 1");
  Require(in.alphabet >= 1, ErrorCode::kDomain, "alphabet must be nonempty");
  Require(in.substeps >= 1, ErrorCode::kDomain, "substeps must be positive");
  if (in.exponent) {
    Require(*in.exponent >= 0.0, ErrorCode::kDomain, "exponent must be nonnegative");
    Require(in.coefficient >= 0.0, ErrorCode::kDomain, "coefficient must be nonnegative");
  } else {
    Require(!in.table.empty(), ErrorCode::kDomain, "empty entropy profile");
    std::sort(in.table.begin(), in.table.end());
    for (std::size_t i = 0; i < in.table.size(); ++i) {
      Require(in.table[i].first > 0.0 && in.table[i].second >= 0.0, ErrorCode::kDomain,
              "profile needs positive scales and nonnegative entropies");
      if (i > 0)
        Require(in.table[i].second <= in.table[i - 1].second, ErrorCode::kDomain,
                "profile must be nonincreasing");
    }
  }
  int levels = in.levels > 0 ? in.levels
                             : 2 * static_cast<int>(std::ceil(std::log2(in.n))) + 8;
  double lo = std::ldexp(1.0, -levels);
  double hi = 1.0;
  if (!in.exponent) {
    lo = std::max(lo, in.table.front().first);
    hi = std::max(hi, in.table.back().first);
  }
  Require(lo < hi, ErrorCode::kDomain, "empty scale grid");
  // Dyadic scales refined by `substeps` points per octave.
  std::vector<double> grid;
  const int total = static_cast<int>(std::ceil(std::log2(hi / lo) * in.substeps));
  for (int i = 0; i <= total; ++i) grid.push_back(lo * std::exp2(static_cast<double>(i) / in.substeps));
  grid.back() = hi;
  if (!in.exponent)
    for (const auto& [s, e] : in.table)
      if (s >= lo && s <= hi) grid.push_back(s);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  Require(grid.size() >= 2, ErrorCode::kDomain, "empty scale grid");

  Profile h{in};
  const std::size_t m = grid.size();
  std::vector<double> root(m), tail(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) root[i] = std::sqrt(h(grid[i]));
  // tail[i] = integral of sqrt(H) over [grid[i], grid[m-1]], accumulated from
  // the large-scale end so that differences stay well conditioned.
  for (std::size_t i = m - 1; i-- > 0;)
    tail[i] = tail[i + 1] + 0.5 * (root[i] + root[i + 1]) * (grid[i + 1] - grid[i]);

  const double s = in.form == BoundForm::kGeneral ? std::sqrt(static_cast<double>(in.alphabet)) : 1.0;
  const double rn = std::sqrt(in.n) * s;
  ChainingBound best;
  best.value = kInf;
  std::size_t best_i = 0, best_j = 1;
  double prefix = kInf;
  std::size_t prefix_i = 0;
  for (std::size_t j = 1; j < m; ++j) {
    double cand = in.n * grid[j - 1] * s + rn * tail[j - 1];
    if (cand < prefix) {
      prefix = cand;
      prefix_i = j - 1;
    }
    double v = 1.0 + prefix - rn * tail[j] + h(grid[j]);
    if (v < best.value) {
      best.value = v;
      best_i = prefix_i;
      best_j = j;
    }
  }
  best.delta = grid[best_i];
  best.gamma = grid[best_j];
  best.grid_points = m;
  // Richardson estimate against the every-other-point trapezoid.
  double fine = tail[best_i] - tail[best_j], coarse = 0.0;
  std::size_t i = best_i;
  for (; i + 2 <= best_j; i += 2)
    coarse += 0.5 * (root[i] + root[i + 2]) * (grid[i + 2] - grid[i]);
  if (i < best_j) coarse += tail[i] - tail[best_j];
  best.trapezoid_error = rn * std::abs(fine - coarse) / 3.0;
  return best;
}

double RateExponent(double p) {
  Require(p >= 0.0, ErrorCode::kDomain, "exponent must be nonnegative");
  return p <= 2.0 ? p / (p + 2.0) : (p - 1.0) / p;
}

double LogLogSlope(const std::vector<double>& x, const std::vector<double>& y) {
  Require(x.size() == y.size() && x.size() >= 2, ErrorCode::kDomain, "need at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace seqlab
