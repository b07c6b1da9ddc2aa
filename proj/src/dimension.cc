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

#include "seqlab/dimension.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>

#include "seqlab/covering.h"

namespace seqlab {
namespace {

using Mask = std::uint64_t;

// Node-visit cap for the depth-first witness search.
constexpr std::size_t kShatterVisitBudget = 5'000'000;

struct SearchTruncated {};

// Generic depth-first search for shattered trees. A "pair" is an admissible
// (s0, s1); masks[x][v] lists the experts accepted by value v at context x.
class ShatterSearch {
 public:
  struct Node {
    int context = -1;
    int pair = -1;
    int child[2] = {-1, -1};
    std::size_t expert = 0;  // leaves only
  };

  ShatterSearch(std::size_t num_values, std::vector<std::pair<int, int>> pairs,
                std::vector<std::vector<Mask>> masks)
      : pairs_(std::move(pairs)), masks_(std::move(masks)) {
    (void)num_values;
  }

  // Arena index of a witness rooted here, or -1.
  int Shattered(Mask mask, int depth) {
    if (mask == 0) return -1;
    if (depth == 0) {
      Node leaf;
      leaf.expert = static_cast<std::size_t>(std::countr_zero(mask));
      nodes_.push_back(leaf);
      return static_cast<int>(nodes_.size()) - 1;
    }
    auto key = std::make_pair(mask, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++visits_ > kShatterVisitBudget) throw SearchTruncated{};
    int found = -1;
    for (std::size_t x = 0; x < masks_.size() && found < 0; ++x) {
      for (std::size_t p = 0; p < pairs_.size(); ++p) {
        Mask m0 = mask & masks_[x][pairs_[p].first];
        Mask m1 = mask & masks_[x][pairs_[p].second];
        if (m0 == 0 || m1 == 0) continue;
        int c0 = Shattered(m0, depth - 1);
        if (c0 < 0) continue;
        int c1 = Shattered(m1, depth - 1);
        if (c1 < 0) continue;
        Node node;
        node.context = static_cast<int>(x);
        node.pair = static_cast<int>(p);
        node.child[0] = c0;
        node.child[1] = c1;
        nodes_.push_back(node);
        found = static_cast<int>(nodes_.size()) - 1;
        break;
      }
    }
    memo_[key] = found;
    return found;
  }

  // Largest depth <= cap shattered by `mask`.
  int Dimension(Mask mask, int cap) {
    int d = 0;
    while (d < cap && Shattered(mask, d + 1) >= 0) ++d;
    return d;
  }

  ShatterWitness Assemble(int root, int depth,
                          const std::vector<std::pair<double, double>>& pair_values) const {
    PathSpace space(depth, 2);
    ShatterWitness w;
    w.depth = depth;
    w.contexts.assign(space.num_nodes(), 0);
    w.s.assign(space.num_nodes(), {0.0, 0.0});
    w.experts.assign(space.num_paths(), 0);
    std::vector<int> level{root};
    for (int t = 0; t <= depth; ++t) {
      std::vector<int> next;
      for (std::size_t c = 0; c < level.size(); ++c) {
        const Node& node = nodes_[level[c]];
        if (t == depth) {
          w.experts[c] = node.expert;
          continue;
        }
        w.contexts[space.level_offset(t) + c] = node.context;
        w.s[space.level_offset(t) + c] = pair_values[node.pair];
        next.push_back(node.child[0]);
        next.push_back(node.child[1]);
      }
      level.swap(next);
    }
    return w;
  }

 private:
  std::vector<std::pair<int, int>> pairs_;
  std::vector<std::vector<Mask>> masks_;
  std::vector<Node> nodes_;
  std::map<std::pair<Mask, int>, int> memo_;
  std::size_t visits_ = 0;
};

Mask FullMask(std::size_t n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

void CheckFunctionClass(const ExpertClass& f) {
  Require(!f.is_joint(), ErrorCode::kUnsupported, "dimension needs a function class");
  Require(f.size() <= 64, ErrorCode::kBudgetExceeded, "dimension search supports at most 64 experts");
}

ShatterResult RunSearch(ShatterSearch& search, std::size_t size, int max_depth,
                        const std::vector<std::pair<double, double>>& pair_values) {
  ShatterResult result;
  int d = 0;
  int root = -1;
  try {
    while (d < max_depth) {
      int r = search.Shattered(FullMask(size), d + 1);
      if (r < 0) break;
      ++d;
      root = r;
    }
  } catch (const SearchTruncated&) {
    result.truncated = true;
  }
  result.dimension = d;
  if (d > 0) result.witness = search.Assemble(root, d, pair_values);
  return result;
}

template <typename T>
std::vector<T> CombineTrees(const T& root, const std::vector<T>& left,
                            const std::vector<T>& right, int child_depth) {
  std::vector<T> out{root};
  std::size_t off = 0;
  for (int t = 0; t < child_depth; ++t) {
    const std::size_t width = std::size_t{1} << t;
    for (const auto* side : {&left, &right})
      for (std::size_t c = 0; c < width; ++c) out.push_back((*side)[off + c]);
    off += width;
  }
  return out;
}

}  // namespace

bool ValidateShatterWitness(const ExpertClass& f, const ShatterWitness& w, double alpha,
                            double beta) {
  if (f.is_joint() || w.depth < 1) return false;
  PathSpace space(w.depth, 2);
  if (w.contexts.size() != space.num_nodes() || w.s.size() != space.num_nodes() ||
      w.experts.size() != space.num_paths())
    return false;
  for (std::size_t v = 0; v < space.num_nodes(); ++v) {
    auto [s0, s1] = w.s[v];
    if (!(s0 < s1) || s0 < beta || s1 > 1.0 - beta || !(HGap(s0, s1) > alpha)) return false;
    if (w.contexts[v] < 0 || w.contexts[v] >= f.num_contexts()) return false;
  }
  for (std::size_t code = 0; code < space.num_paths(); ++code) {
    if (w.experts[code] >= f.size()) return false;
    const auto& fn = f.functions()[w.experts[code]];
    Path y = space.decode_path(code);
    for (int t = 0; t < w.depth; ++t) {
      std::size_t v = space.prefix_index(std::span<const Outcome>(y).subspan(0, t));
      double target = y[t] ? w.s[v].second : w.s[v].first;
      if (!(std::abs(fn[w.contexts[v]] - target) < beta)) return false;
    }
  }
  return true;
}

ShatterResult ShatterDimension(const ExpertClass& f, double alpha, double beta, int max_depth) {
  CheckFunctionClass(f);
  Require(beta > 0.0 && beta < 0.5, ErrorCode::kDomain, "beta must lie in (0, 1/2)");
  Require(max_depth >= 0, ErrorCode::kDomain, "max_depth must be nonnegative");
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    double s = beta + i * (beta / 2.0);
    if (std::abs(s - (1.0 - beta)) < 1e-12) s = 1.0 - beta;
    if (s > 1.0 - beta) break;
    grid.push_back(s);
  }
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::pair<double, double>> pair_values;
  for (std::size_t a = 0; a < grid.size(); ++a)
    for (std::size_t b = a + 1; b < grid.size(); ++b)
      if (HGap(grid[a], grid[b]) > alpha) {
        pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
        pair_values.emplace_back(grid[a], grid[b]);
      }
  std::vector<std::vector<Mask>> masks(f.num_contexts(), std::vector<Mask>(grid.size(), 0));
  for (int x = 0; x < f.num_contexts(); ++x)
    for (std::size_t g = 0; g < grid.size(); ++g)
      for (std::size_t m = 0; m < f.size(); ++m)
        if (std::abs(f.functions()[m][x] - grid[g]) < beta) masks[x][g] |= Mask{1} << m;
  ShatterSearch search(grid.size(), pairs, masks);
  ShatterResult r = RunSearch(search, f.size(), max_depth, pair_values);
  if (r.witness)
    Require(ValidateShatterWitness(f, *r.witness, alpha, beta), ErrorCode::kDomain,
            "internal error: shatter witness failed validation");
  return r;
}

int GridCount(double beta) {
  Require(beta > 0.0 && beta <= 0.5, ErrorCode::kDomain, "beta must lie in (0, 1/2]");
  double m = 1.0 / (2.0 * beta);
  double r = std::round(m);
  Require(std::abs(m - r) < 1e-9 && r >= 1.0, ErrorCode::kDomain, "1/(2 beta) must be an integer");
  return static_cast<int>(r);
}

double GridValue(int index, double beta) { return (2.0 * index + 1.0) * beta; }

int RoundToGrid(double v, double beta) {
  const int m = GridCount(beta);
  int best = 0;
  for (int i = 1; i < m; ++i)
    if (std::abs(v - GridValue(i, beta)) < std::abs(v - GridValue(best, beta))) best = i;
  return best;
}

ExpertClass RoundClass(const ExpertClass& f, double beta) {
  std::vector<std::vector<double>> out;
  for (const auto& fn : f.functions()) {
    std::vector<double> r;
    for (double v : fn) r.push_back(GridValue(RoundToGrid(v, beta), beta));
    out.push_back(std::move(r));
  }
  return ExpertClass::FiniteFunction(f.num_contexts(), std::move(out));
}

namespace {

// Grid index of every (expert, context) value; domain error off the grid.
std::vector<std::vector<int>> GridIndices(const ExpertClass& f, double beta) {
  std::vector<std::vector<int>> idx;
  for (const auto& fn : f.functions()) {
    std::vector<int> row;
    for (double v : fn) {
      int i = RoundToGrid(v, beta);
      Require(std::abs(v - GridValue(i, beta)) <= 1e-12, ErrorCode::kDomain,
              "class values must lie on the grid U_beta");
      row.push_back(i);
    }
    idx.push_back(std::move(row));
  }
  return idx;
}

ShatterSearch DiscreteSearch(const ExpertClass& f, double beta, double alpha,
                             std::vector<std::pair<double, double>>& pair_values) {
  const int m = GridCount(beta);
  auto idx = GridIndices(f, beta);
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (HGap(GridValue(a, beta), GridValue(b, beta)) > alpha) {
        pairs.emplace_back(a, b);
        pair_values.emplace_back(GridValue(a, beta), GridValue(b, beta));
      }
  std::vector<std::vector<Mask>> masks(f.num_contexts(), std::vector<Mask>(m, 0));
  for (std::size_t e = 0; e < idx.size(); ++e)
    for (int x = 0; x < f.num_contexts(); ++x) masks[x][idx[e][x]] |= Mask{1} << e;
  return ShatterSearch(m, std::move(pairs), std::move(masks));
}

}  // namespace

ShatterResult DiscreteShatterDimension(const ExpertClass& f, double beta, double alpha,
                                       int max_depth) {
  CheckFunctionClass(f);
  std::vector<std::pair<double, double>> pair_values;
  ShatterSearch search = DiscreteSearch(f, beta, alpha, pair_values);
  ShatterResult r = RunSearch(search, f.size(), max_depth, pair_values);
  // Exact equality on the grid implies the (alpha, beta) clauses with margin beta.
  if (r.witness)
    Require(ValidateShatterWitness(f, *r.witness, alpha, beta), ErrorCode::kDomain,
            "internal error: discrete shatter witness failed validation");
  return r;
}

BigInt GBeta(int n, int d, int m) {
  Require(n >= 0 && d >= 0 && m >= 1, ErrorCode::kDomain, "g_beta needs n, d >= 0 and M >= 1");
  BigInt total = 0, binom = 1, power = 1;
  for (int i = 0; i <= std::min(n, d); ++i) {
    if (i > 0) {
      binom = binom * (n - i + 1) / i;
      power *= (m - 1);
    }
    total += binom * power;
  }
  return total;
}

BigInt GBeta(int n, int d, double beta) { return GBeta(n, d, GridCount(beta)); }

namespace {

class CoverBuilder {
 public:
  CoverBuilder(const ExpertClass& rounded, const ContextTree& x, double beta,
               ShatterSearch& search, std::vector<std::vector<int>> idx)
      : f_(rounded), x_(x), beta_(beta), m_(GridCount(beta)), search_(search),
        idx_(std::move(idx)), space_(x.depth(), 2) {}

  // Value trees of depth `depth` covering `mask` on the subtree at `prefix`.
  std::vector<std::vector<double>> Build(Mask mask, Path prefix, int depth) {
    if (depth == 0) return {{}};
    const int d = search_.Dimension(mask, depth);
    if (d >= depth) return BaseCase(mask, prefix, depth);
    if (d == 0) return {Realized(std::countr_zero(mask), prefix, depth)};
    const int root = x_.at(prefix);
    std::vector<Mask> groups(m_, 0);
    for (std::size_t e = 0; e < idx_.size(); ++e)
      if (mask >> e & 1) groups[idx_[e][root]] |= Mask{1} << e;
    Mask top = 0;
    int top_value = -1;
    std::vector<std::vector<double>> out;
    for (int k = 0; k < m_; ++k) {
      if (groups[k] == 0) continue;
      if (search_.Dimension(groups[k], depth) == d) {
        top |= groups[k];
        if (top_value < 0) top_value = k;
        continue;
      }
      Append(out, Join(groups[k], GridValue(k, beta_), prefix, depth));
    }
    if (top != 0) Append(out, Join(top, GridValue(top_value, beta_), prefix, depth));
    return out;
  }

 private:
  std::vector<std::vector<double>> Join(Mask mask, double root, Path prefix, int depth) {
    Path l = prefix, r = prefix;
    l.push_back(0);
    r.push_back(1);
    auto left = Build(mask, l, depth - 1);
    auto right = Build(mask, r, depth - 1);
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < std::max(left.size(), right.size()); ++i)
      out.push_back(CombineTrees(root, left[std::min(i, left.size() - 1)],
                                 right[std::min(i, right.size() - 1)], depth - 1));
    return out;
  }

  std::vector<double> Realized(std::size_t expert, const Path& prefix, int depth) const {
    PathSpace sub(depth, 2);
    std::vector<double> tree(sub.num_nodes());
    for (std::size_t v = 0; v < sub.num_nodes(); ++v) {
      Path p = prefix;
      Path tail = sub.decode_prefix(v);
      p.insert(p.end(), tail.begin(), tail.end());
      tree[v] = f_.functions()[expert][x_.at(p)];
    }
    return tree;
  }

  // Either the M^depth level-constant trees or the realized trees, whichever
  // is smaller; both are exact covers.
  std::vector<std::vector<double>> BaseCase(Mask mask, const Path& prefix, int depth) {
    std::vector<std::vector<double>> realized;
    for (std::size_t e = 0; e < idx_.size(); ++e) {
      if (!(mask >> e & 1)) continue;
      auto t = Realized(e, prefix, depth);
      if (std::find(realized.begin(), realized.end(), t) == realized.end()) realized.push_back(t);
    }
    double level_constant = std::pow(static_cast<double>(m_), depth);
    if (static_cast<double>(realized.size()) <= level_constant) return realized;
    PathSpace sub(depth, 2);
    std::vector<std::vector<double>> out;
    std::vector<int> digits(depth, 0);
    for (std::size_t i = 0; i < static_cast<std::size_t>(level_constant); ++i) {
      std::vector<double> tree(sub.num_nodes());
      for (int t = 0; t < depth; ++t)
        for (std::size_t c = 0; c < sub.level_size(t); ++c)
          tree[sub.level_offset(t) + c] = GridValue(digits[t], beta_);
      out.push_back(std::move(tree));
      for (int t = 0; t < depth; ++t) {
        if (++digits[t] < m_) break;
        digits[t] = 0;
      }
    }
    return out;
  }

  static void Append(std::vector<std::vector<double>>& out, std::vector<std::vector<double>> more) {
    for (auto& t : more)
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(std::move(t));
  }

  const ExpertClass& f_;
  const ContextTree& x_;
  double beta_;
  int m_;
  ShatterSearch& search_;
  std::vector<std::vector<int>> idx_;
  PathSpace space_;
};

std::vector<JointDistribution> TreesToJoints(const std::vector<std::vector<double>>& trees,
                                             int depth) {
  std::vector<JointDistribution> out;
  for (const auto& t : trees) {
    std::vector<double> cond;
    for (double v : t) {
      cond.push_back(1.0 - v);
      cond.push_back(v);
    }
    out.emplace_back(depth, 2, std::move(cond));
  }
  return out;
}

}  // namespace

DimensionEntropyReport DimensionEntropyBound(const ExpertClass& f, const ContextTree& x,
                                             double alpha, double beta) {
  CheckFunctionClass(f);
  Require(alpha > 0.0, ErrorCode::kDomain, "alpha must be positive");
  const int n = x.depth();
  Require(n >= 1, ErrorCode::kDomain, "tree depth must be positive");
  ExpertClass rounded = RoundClass(f, beta);
  std::vector<std::pair<double, double>> pair_values;
  ShatterSearch search = DiscreteSearch(rounded, beta, alpha, pair_values);
  DimensionEntropyReport r;
  r.dimension = search.Dimension(FullMask(rounded.size()), n);
  CoverBuilder builder(rounded, x, beta, search, GridIndices(rounded, beta));
  r.cover = builder.Build(FullMask(rounded.size()), {}, n);
  r.cover_size = r.cover.size();
  r.g_bound = GBeta(n, r.dimension, GridCount(beta));
  r.entropy = std::log(static_cast<double>(r.cover_size));
  r.entropy_bound = r.dimension * std::log(std::exp(1.0) * n / beta);
  auto joints = TreesToJoints(r.cover, n);
  r.rounded_cover_valid =
      IsCover(joints, ComposeClassWithTree(rounded, x), alpha, CoverNotion::kSqrt).ok;
  r.cover_valid = IsCover(joints, ComposeClassWithTree(f, x), alpha + std::sqrt(2.0 * beta),
                          CoverNotion::kSqrt)
                      .ok;
  r.size_holds = BigInt(r.cover_size) <= r.g_bound;
  r.entropy_holds = r.entropy <= r.entropy_bound + 1e-12;
  return r;
}

namespace {

struct SkipFinder {
  const std::vector<int>& colors;
  const PathSpace& space;

  // The lemma's induction; requires subtree depth >= sum(d) + 1.
  std::pair<int, std::vector<std::size_t>> Find(const Path& prefix, std::vector<int> d) {
    const std::size_t node = space.prefix_index(prefix);
    const int j = colors[node];
    if (d[j] == 0) return {j, {node}};
    d[j] -= 1;
    Path l = prefix, r = prefix;
    l.push_back(0);
    r.push_back(1);
    auto [i1, u1] = Find(l, d);
    if (i1 != j) return {i1, u1};
    auto [i2, u2] = Find(r, d);
    if (i2 != j) return {i2, u2};
    return {j, CombineTrees(node, u1, u2, d[j] + 1)};
  }
};

}  // namespace

bool ValidateSkippingTree(const std::vector<int>& colors, int n, const SkippingTree& tree) {
  PathSpace in(n, 2);
  if (tree.depth < 1 || colors.size() != in.num_nodes()) return false;
  PathSpace out(tree.depth, 2);
  if (tree.nodes.size() != out.num_nodes()) return false;
  for (std::size_t v = 0; v < out.num_nodes(); ++v) {
    if (tree.nodes[v] >= in.num_nodes() || colors[tree.nodes[v]] != tree.color) return false;
    Path p = out.decode_prefix(v);
    if (static_cast<int>(p.size()) == tree.depth - 1) continue;
    Path parent = in.decode_prefix(tree.nodes[v]);
    for (Outcome y : {0, 1}) {
      Path cp = p;
      cp.push_back(y);
      Path child = in.decode_prefix(tree.nodes[out.prefix_index(cp)]);
      Path need = parent;
      need.push_back(y);
      if (child.size() < need.size() || !std::equal(need.begin(), need.end(), child.begin()))
        return false;
    }
  }
  return true;
}

std::optional<SkippingTree> FindMonochromeSkippingTree(const std::vector<int>& colors, int n,
                                                       int k, int d) {
  Require(n >= 1 && k >= 1 && d >= 1, ErrorCode::kDomain, "need n, k, d >= 1");
  PathSpace space(n, 2);
  Require(colors.size() == space.num_nodes(), ErrorCode::kDomain, "coloring has wrong size");
  for (int c : colors) Require(c >= 0 && c < k, ErrorCode::kDomain, "color out of range");
  SkippingTree tree;
  tree.depth = d;
  if (n >= k * (d - 1) + 1) {
    SkipFinder finder{colors, space};
    auto [color, nodes] = finder.Find({}, std::vector<int>(k, d - 1));
    tree.color = color;
    tree.nodes = std::move(nodes);
    Require(ValidateSkippingTree(colors, n, tree), ErrorCode::kDomain,
            "internal error: skipping tree failed validation");
    return tree;
  }
  // Exact search: best[v][c] = deepest color-c skipping tree rooted at v,
  // reach[v][c] = best over v's subtree.
  const std::size_t nodes = space.num_nodes();
  std::vector<std::vector<int>> best(nodes, std::vector<int>(k, 0)), reach = best;
  for (std::size_t v = nodes; v-- > 0;) {
    Path p = space.decode_prefix(v);
    bool leaf = static_cast<int>(p.size()) == n - 1;
    for (int c = 0; c < k; ++c) {
      int down = 0, rl = 0, rr = 0;
      if (!leaf) {
        Path l = p, r = p;
        l.push_back(0);
        r.push_back(1);
        rl = reach[space.prefix_index(l)][c];
        rr = reach[space.prefix_index(r)][c];
        down = std::min(rl, rr);
      }
      best[v][c] = colors[v] == c ? 1 + down : 0;
      reach[v][c] = std::max({best[v][c], rl, rr});
    }
  }
  for (int c = 0; c < k; ++c) {
    if (reach[0][c] < d) continue;
    // Greedy reconstruction in prefix order.
    std::function<std::size_t(const Path&, int)> pick = [&](const Path& under, int depth) {
      for (std::size_t v = 0; v < nodes; ++v) {
        Path p = space.decode_prefix(v);
        if (p.size() >= under.size() && std::equal(under.begin(), under.end(), p.begin()) &&
            best[v][c] >= depth)
          return v;
      }
      return nodes;
    };
    std::function<std::vector<std::size_t>(const Path&, int)> build = [&](const Path& under,
                                                                          int depth) {
      std::size_t v = pick(under, depth);
      if (depth == 1) return std::vector<std::size_t>{v};
      Path p = space.decode_prefix(v), l = p, r = p;
      l.push_back(0);
      r.push_back(1);
      return CombineTrees(v, build(l, depth - 1), build(r, depth - 1), depth - 1);
    };
    tree.color = c;
    tree.nodes = build({}, d);
    Require(ValidateSkippingTree(colors, n, tree), ErrorCode::kDomain,
            "internal error: skipping tree failed validation");
    return tree;
  }
  return std::nullopt;
}

}  // namespace seqlab
