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

#include "runner.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "class_json.h"
#include "seqlab/adversary.h"
#include "seqlab/complexity.h"
#include "seqlab/covering.h"
#include "seqlab/dimension.h"
#include "seqlab/shtarkov.h"
#include "seqlab/zoo.h"

#ifndef SEQLAB_VERSION
#define SEQLAB_VERSION "0.0.0"
#endif

namespace seqlab::internal {
namespace {

using Cells = std::vector<std::pair<std::string, OrderedJson>>;

OrderedJson Num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

OrderedJson Big(const BigInt& v) {
  if (v <= BigInt(std::numeric_limits<std::int64_t>::max())) return static_cast<std::int64_t>(v);
  return v.str();
}

struct Ctx {
  const Json& params;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct Report {
  OrderedJson result = OrderedJson::object();
  std::vector<Cells> rows;
  bool gated = false;  // status reflects `all_hold`
  bool all_hold = true;
};

template <typename T>
T Get(const Json& p, const char* key, T fallback) {
  if (!p.contains(key)) return fallback;
  try {
    return p.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    Fail(ErrorCode::kInvalidConfig, std::string("parameter '") + key + "' has wrong type");
  }
}

template <typename T>
T Need(const Json& p, const char* key) {
  Require(p.contains(key), ErrorCode::kInvalidConfig,
          std::string("missing required parameter '") + key + "'");
  return Get<T>(p, key, T{});
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), ErrorCode::kIo, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json ClassSpec(const Json& p) {
  if (p.contains("class_spec")) return p.at("class_spec");
  Require(p.contains("class"), ErrorCode::kInvalidConfig, "missing 'class' or 'class_spec'");
  Json spec = Json::parse(ReadFile(Need<std::string>(p, "class")), nullptr, false);
  Require(!spec.is_discarded(), ErrorCode::kInvalidConfig, "class file is not valid JSON");
  return spec;
}

struct Loaded {
  std::optional<ExpertClass> raw;
  std::optional<ContextTree> tree;
  std::optional<ExpertClass> joint;
};

Loaded LoadClass(const Json& p) {
  Json spec = ClassSpec(p);
  Loaded l;
  l.raw = ClassFromJson(spec);
  if (l.raw->is_joint()) {
    l.joint = l.raw;
    return l;
  }
  int n = Get<int>(p, "n", spec.is_object() ? spec.value("n", 0) : 0);
  Require(n >= 1, ErrorCode::kInvalidConfig, "function classes need a horizon 'n'");
  l.tree = TreeFromJson(spec, n);
  if (!l.tree) l.tree = ContextTree::Constant(n, 0);
  l.joint = ComposeClassWithTree(*l.raw, *l.tree);
  return l;
}

std::vector<int> ParseIntList(const Json& v, bool powers_of_two) {
  std::vector<int> out;
  if (v.is_number_integer()) return {v.get<int>()};
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(e.get<int>());
    return out;
  }
  Require(v.is_string(), ErrorCode::kInvalidConfig, "expected an integer, list or range");
  std::string s = v.get<std::string>();
  auto dots = s.find("..");
  Require(dots != std::string::npos, ErrorCode::kInvalidConfig, "range must look like a..b");
  auto parse = [&](std::string t) {
    bool pow2 = t.rfind("2^", 0) == 0;
    if (pow2) t = t.substr(2);
    int x = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    Require(ec == std::errc() && ptr == t.data() + t.size(), ErrorCode::kInvalidConfig,
            "bad range endpoint '" + t + "'");
    return std::make_pair(x, pow2);
  };
  auto [a, pa] = parse(s.substr(0, dots));
  auto [b, pb] = parse(s.substr(dots + 2));
  if (powers_of_two || (pa && pb)) {
    Require(a <= b && b <= 40, ErrorCode::kInvalidConfig, "bad power-of-two range");
    for (int e = a; e <= b; ++e) out.push_back(e);
    return out;
  }
  Require(a >= 1 && a <= b, ErrorCode::kInvalidConfig, "bad range");
  out.push_back(a);
  for (long long d = 10; d < b; d *= 10)
    if (d > a) out.push_back(static_cast<int>(d));
  if (b != a) out.push_back(b);
  return out;
}

CoverNotion NotionParam(const Json& p) {
  try {
    return CoverNotionFromName(Get<std::string>(p, "notion", "sqrt"));
  } catch (const Error& e) {
    Fail(ErrorCode::kInvalidConfig, e.what());
  }
}

CoverMode ModeParam(const Json& p) {
  std::string m = Get<std::string>(p, "mode", "auto");
  if (m == "auto") return CoverMode::kAuto;
  if (m == "exact") return CoverMode::kExact;
  if (m == "greedy") return CoverMode::kGreedy;
  Fail(ErrorCode::kInvalidConfig, "mode must be auto, exact or greedy");
}

ExpertClass RandomJointClass(std::mt19937_64& rng, int n, int k, int members, double floor) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<JointDistribution> out;
  PathSpace space(n, k);
  for (int m = 0; m < members; ++m) {
    std::vector<double> cond;
    for (std::size_t v = 0; v < space.num_nodes(); ++v) {
      std::vector<double> w(k);
      double total = 0.0;
      for (double& x : w) total += (x = floor + u(rng));
      for (double& x : w) cond.push_back(x / total);
      double s = 0.0;
      for (int y = 0; y + 1 < k; ++y) s += cond[cond.size() - k + y];
      cond.back() = 1.0 - s;
    }
    out.emplace_back(n, k, std::move(cond));
  }
  return ExpertClass::FiniteJoint(std::move(out));
}

ExpertClass RandomFunctionClass(std::mt19937_64& rng, int contexts, int members, double lo,
                                double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<std::vector<double>> values(members, std::vector<double>(contexts));
  for (auto& f : values)
    for (double& v : f) v = u(rng);
  return ExpertClass::FiniteFunction(contexts, std::move(values));
}

// ---- subcommands --------------------------------------------------------

Report CmdShtarkov(const Ctx& c) {
  Loaded l = LoadClass(c.params);
  ShtarkovResult s = ShtarkovSum(*l.joint, c.threads);
  Report r;
  r.result["value"] = Num(s.value);
  r.result["n"] = l.joint->horizon();
  r.result["members"] = l.joint->size();
  r.result["grid_sup"] = s.grid_sup;
  if (s.grid_sup) r.result["grid_step"] = Num(s.grid_step);
  if (Get<bool>(c.params, "table", false)) {
    OrderedJson table = OrderedJson::array();
    PathSpace space(l.joint->horizon(), l.joint->alphabet());
    for (std::size_t i = 0; i < s.sup_table.size(); ++i)
      table.push_back({{"path", PathToString(space.decode_path(i))}, {"sup", Num(s.sup_table[i])}});
    r.result["sup_table"] = table;
  }
  r.rows.push_back({{"n", l.joint->horizon()},
                    {"members", l.joint->size()},
                    {"value", Num(s.value)},
                    {"grid_sup", s.grid_sup}});
  return r;
}

Report CmdNmlPredict(const Ctx& c) {
  Loaded l = LoadClass(c.params);
  Path history = PathFromString(Get<std::string>(c.params, "history", ""), l.joint->alphabet());
  std::vector<double> probs = NmlPredict(*l.joint, history);
  Report r;
  r.result["history"] = PathToString(history);
  OrderedJson arr = OrderedJson::array();
  for (double v : probs) arr.push_back(Num(v));
  r.result["probabilities"] = arr;
  Cells row{{"history", PathToString(history)}};
  for (std::size_t y = 0; y < probs.size(); ++y) row.emplace_back("p" + std::to_string(y), Num(probs[y]));
  r.rows.push_back(row);
  return r;
}

Report CmdMinimax(const Ctx& c) {
  Report r;
  if (Get<bool>(c.params, "adaptive", false)) {
    Json spec = ClassSpec(c.params);
    ExpertClass f = ClassFromJson(spec);
    int n = Get<int>(c.params, "n", spec.value("n", 0));
    Require(n >= 1, ErrorCode::kInvalidConfig, "adaptive games need a horizon 'n'");
    MinimaxValue adaptive = AdaptiveMinimax(f, n);
    double trees = MaxOverTreesShtarkov(f, n);
    r.result["adaptive_value"] = Num(adaptive.value);
    r.result["max_over_trees"] = Num(trees);
    OrderedJson strategy = OrderedJson::array();
    for (const auto& d : adaptive.strategy) {
      std::string h;
      for (auto [x, y] : d.history) h += "(" + std::to_string(x) + "," + std::to_string(y) + ")";
      strategy.push_back({{"history", h}, {"context", d.context}, {"p_one", Num(d.p_hat_one)}});
    }
    r.result["strategy"] = strategy;
    r.rows.push_back({{"n", n}, {"adaptive_value", Num(adaptive.value)}, {"max_over_trees", Num(trees)}});
    return r;
  }
  Loaded l = LoadClass(c.params);
  MinimaxValue v = MinimaxLse(*l.joint);
  double shtarkov = ShtarkovSum(*l.joint, c.threads).value;
  r.result["value"] = Num(v.value);
  r.result["shtarkov"] = Num(shtarkov);
  r.rows.push_back({{"n", l.joint->horizon()}, {"value", Num(v.value)}, {"shtarkov", Num(shtarkov)}});
  return r;
}

Report CmdCover(const Ctx& c) {
  Loaded l = LoadClass(c.params);
  double alpha = Need<double>(c.params, "alpha");
  CoverNotion notion = NotionParam(c.params);
  MinCoverResult m = MinCover(*l.joint, alpha, notion, ModeParam(c.params));
  Report r;
  r.result["notion"] = CoverNotionName(notion);
  r.result["alpha"] = Num(alpha);
  r.result["found"] = m.cover.has_value();
  std::size_t size = m.cover ? m.cover->members.size() : 0;
  r.result["size"] = size;
  r.result["entropy_nats"] = m.cover ? Num(std::log(static_cast<double>(size))) : OrderedJson();
  r.result["exact"] = m.exact;
  r.result["excluded"] = m.excluded;
  if (m.cover) r.result["witness"] = m.cover->pool_indices;
  if (!m.note.empty()) r.result["note"] = m.note;
  r.rows.push_back({{"notion", CoverNotionName(notion)},
                    {"alpha", Num(alpha)},
                    {"size", size},
                    {"exact", m.exact}});
  return r;
}

Report CmdEntropyProfile(const Ctx& c) {
  Loaded l = LoadClass(c.params);
  std::vector<double> scales =
      Get<std::vector<double>>(c.params, "scales", {0.05, 0.1, 0.2, 0.4, 0.8});
  CoverNotion notion = NotionParam(c.params);
  EntropyProfile prof = BuildEntropyProfile(*l.joint, scales, notion, ModeParam(c.params));
  Report r;
  OrderedJson points = OrderedJson::array();
  for (const auto& pt : prof.points) {
    points.push_back({{"scale", Num(pt.scale)},
                      {"entropy", Num(pt.entropy)},
                      {"size", pt.size},
                      {"exact", pt.exact}});
    r.rows.push_back({{"scale", Num(pt.scale)},
                      {"entropy", Num(pt.entropy)},
                      {"size", pt.size},
                      {"exact", pt.exact}});
  }
  r.result["label"] = prof.label;
  r.result["monotonized"] = prof.monotonized;
  r.result["points"] = points;
  return r;
}

Report CmdZetaCheck(const Ctx& c) {
  std::vector<int> ns = ParseIntList(c.params.contains("n") ? c.params.at("n") : Json(7), false);
  ZetaGrids grids;
  grids.log_points = Get<std::size_t>(c.params, "points", grids.log_points);
  grids.divergence_side = Get<std::size_t>(c.params, "side", grids.divergence_side);
  grids.lipschitz_pairs = Get<std::size_t>(c.params, "pairs", grids.lipschitz_pairs);
  grids.seed = c.seed;
  Report r;
  r.gated = true;
  OrderedJson list = OrderedJson::array();
  for (int n : ns) {
    ZetaReport z = CheckZetaProperties(ZetaParams{n, 2}, grids);
    r.all_hold = r.all_hold && z.ok;
    Cells row{{"n", n},
              {"log_min_slack", Num(z.log_min_slack)},
              {"log_argmin", Num(z.log_argmin)},
              {"log_quarter_min_slack", Num(z.log_quarter_min_slack)},
              {"divergence_min", Num(z.divergence_min)},
              {"lipschitz_min_slack", Num(z.lipschitz_min_slack)},
              {"ok", z.ok}};
    OrderedJson obj = OrderedJson::object();
    for (auto& [k, v] : row) obj[k] = v;
    list.push_back(obj);
    r.rows.push_back(std::move(row));
  }
  r.result["checks"] = list;
  r.result["all_hold"] = r.all_hold;
  return r;
}

Report CmdSymmetrize(const Ctx& c) {
  Loaded l = LoadClass(c.params);
  const int n = l.joint->horizon(), k = l.joint->alphabet();
  double delta = Get<double>(c.params, "delta", std::min(DeltaNFloor(n, k), 0.25 / k));
  ExpertClass q = TruncateClass(*l.joint, delta);
  JointDistribution p = JointDistribution::Uniform(n, k);
  if (c.params.contains("p") && c.params.at("p").is_number_integer()) {
    std::size_t idx = c.params.at("p").get<std::size_t>();
    Require(idx < q.size(), ErrorCode::kInvalidConfig, "p index out of range");
    p = q.joints()[idx];
  }
  SymmetrizationOptions opt;
  opt.force_monte_carlo = Get<bool>(c.params, "force_mc", false);
  opt.samples = Get<std::size_t>(c.params, "samples", opt.samples);
  opt.seed = c.seed;
  opt.threads = c.threads;
  SymmetrizationReport s = SymmetrizationCheck(q, p, opt);
  Report r;
  r.gated = true;
  r.all_hold = s.holds;
  r.result = {{"delta", Num(delta)},       {"lhs", Num(s.lhs)},
              {"first_term", Num(s.first_term)}, {"second_term", Num(s.second_term)},
              {"rhs", Num(s.rhs)},         {"rhs_stderr", Num(s.rhs_stderr)},
              {"exact", s.exact},          {"atoms", s.atoms},
              {"holds", s.holds}};
  r.rows.push_back({{"n", n}, {"lhs", Num(s.lhs)}, {"rhs", Num(s.rhs)}, {"exact", s.exact},
                    {"holds", s.holds}});
  return r;
}

CoefficientFamily RandomCoefficients(std::mt19937_64& rng, int n, int size) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PathSpace space(n, 2);
  CoefficientFamily fam{n, {}};
  for (int m = 0; m < size; ++m) {
    std::vector<double> a(space.num_nodes());
    for (double& v : a) v = u(rng);
    fam.members.push_back(std::move(a));
  }
  return fam;
}

Report CmdFiniteClass(const Ctx& c) {
  const int n = Get<int>(c.params, "n", 6);
  const int size = Get<int>(c.params, "size", 8);
  Require(n >= 1 && n <= 20 && size >= 1, ErrorCode::kInvalidConfig, "bad n or size");
  std::vector<double> lambdas;
  if (c.params.contains("lambda") && c.params.at("lambda").is_array())
    lambdas = Get<std::vector<double>>(c.params, "lambda", {});
  else
    lambdas = {Get<double>(c.params, "lambda", 1.0)};
  std::mt19937_64 rng(c.seed);
  CoefficientFamily fam = RandomCoefficients(rng, n, size);
  FiniteClassOptions opt;
  opt.force_monte_carlo = Get<bool>(c.params, "force_mc", false);
  opt.samples = Get<std::size_t>(c.params, "samples", opt.samples);
  opt.seed = c.seed;
  Report r;
  r.gated = true;
  OrderedJson list = OrderedJson::array();
  for (double lambda : lambdas) {
    FiniteClassReport f = FiniteClassOffset(fam, lambda, opt);
    r.all_hold = r.all_hold && f.offset_holds && f.nonoffset_holds;
    Cells row{{"lambda", Num(lambda)},
              {"offset_value", Num(f.offset_value)},
              {"offset_bound", Num(f.offset_bound)},
              {"nonoffset_value", Num(f.nonoffset_value)},
              {"nonoffset_bound", Num(f.nonoffset_bound)},
              {"exact", f.exact},
              {"holds", f.offset_holds && f.nonoffset_holds}};
    OrderedJson obj = OrderedJson::object();
    for (auto& [k, v] : row) obj[k] = v;
    list.push_back(obj);
    r.rows.push_back(std::move(row));
  }
  r.result["n"] = n;
  r.result["size"] = size;
  r.result["checks"] = list;
  r.result["all_hold"] = r.all_hold;
  return r;
}

std::vector<std::pair<double, double>> ProfileTable(const Json& doc) {
  const Json* pts = &doc;
  if (doc.is_object() && doc.contains("result")) pts = &doc.at("result");
  if (pts->is_object() && pts->contains("points")) pts = &pts->at("points");
  Require(pts->is_array(), ErrorCode::kInvalidConfig, "profile must list (scale, entropy) points");
  std::vector<std::pair<double, double>> table;
  for (const auto& e : *pts) {
    if (e.is_array())
      table.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    else
      table.emplace_back(e.at("scale").get<double>(), e.at("entropy").get<double>());
  }
  return table;
}

Report CmdBound(const Ctx& c) {
  BoundInputs in;
  if (c.params.contains("exponent")) in.exponent = Get<double>(c.params, "exponent", 1.0);
  in.coefficient = Get<double>(c.params, "coefficient", 1.0);
  if (c.params.contains("profile")) {
    Json doc = Json::parse(ReadFile(Get<std::string>(c.params, "profile", "")), nullptr, false);
    Require(!doc.is_discarded(), ErrorCode::kInvalidConfig, "profile is not valid JSON");
    in.table = ProfileTable(doc);
  } else if (c.params.contains("table")) {
    in.table = ProfileTable(c.params.at("table"));
  }
  Require(in.exponent.has_value() != !in.table.empty(), ErrorCode::kInvalidConfig,
          "give exactly one of 'exponent' or a profile");
  in.alphabet = Get<int>(c.params, "alphabet", 2);
  std::string form = Get<std::string>(c.params, "form", "function");
  Require(form == "general" || form == "function", ErrorCode::kInvalidConfig,
          "form must be general or function");
  in.form = form == "general" ? BoundForm::kGeneral : BoundForm::kFunctionClass;
  in.substeps = Get<int>(c.params, "substeps", in.substeps);
  std::vector<double> ns;
  if (c.params.contains("n_grid")) {
    for (int e : ParseIntList(c.params.at("n_grid"), true)) ns.push_back(std::ldexp(1.0, e));
  } else if (c.params.contains("n") && c.params.at("n").is_array()) {
    ns = Get<std::vector<double>>(c.params, "n", {});
  } else {
    ns = {Get<double>(c.params, "n", 1e6)};
  }
  Report r;
  std::vector<double> values;
  OrderedJson list = OrderedJson::array();
  for (double n : ns) {
    in.n = n;
    ChainingBound b = ComputeChainingBound(in);
    values.push_back(b.value);
    Cells row{{"n", Num(n)},
              {"value", Num(b.value)},
              {"delta", Num(b.delta)},
              {"gamma", Num(b.gamma)},
              {"trapezoid_error", Num(b.trapezoid_error)}};
    OrderedJson obj = OrderedJson::object();
    for (auto& [k, v] : row) obj[k] = v;
    list.push_back(obj);
    r.rows.push_back(std::move(row));
  }
  if (ns.size() == 1) {
    r.result = list[0];
  } else {
    r.result["points"] = list;
    r.result["slope"] = Num(LogLogSlope(ns, values));
    if (in.exponent) r.result["expected_exponent"] = Num(RateExponent(*in.exponent));
  }
  return r;
}

OrderedJson WitnessJson(const ShatterWitness& w) {
  OrderedJson s = OrderedJson::array();
  for (auto [a, b] : w.s) s.push_back({Num(a), Num(b)});
  return {{"depth", w.depth}, {"contexts", w.contexts}, {"s", s}, {"experts", w.experts}};
}

Report CmdDimension(const Ctx& c) {
  ExpertClass f = ClassFromJson(ClassSpec(c.params));
  double alpha = Need<double>(c.params, "alpha");
  double beta = Need<double>(c.params, "beta");
  int max_depth = Get<int>(c.params, "max_depth", 3);
  bool discrete = Get<bool>(c.params, "discrete", false);
  ShatterResult s = discrete ? DiscreteShatterDimension(f, beta, alpha, max_depth)
                             : ShatterDimension(f, alpha, beta, max_depth);
  Report r;
  r.result["d"] = s.dimension;
  r.result["truncated"] = s.truncated;
  r.result["discrete"] = discrete;
  if (s.witness) r.result["witness"] = WitnessJson(*s.witness);
  if (c.params.contains("n")) {
    int n = Get<int>(c.params, "n", 1);
    Json spec = ClassSpec(c.params);
    std::optional<ContextTree> x = TreeFromJson(spec, n);
    if (!x) x = ContextTree::Constant(n, 0);
    DimensionEntropyReport d = DimensionEntropyBound(f, *x, alpha, beta);
    r.result["cover"] = {{"size", d.cover_size},
                         {"g_bound", Big(d.g_bound)},
                         {"entropy", Num(d.entropy)},
                         {"entropy_bound", Num(d.entropy_bound)},
                         {"cover_valid", d.cover_valid},
                         {"size_holds", d.size_holds}};
  }
  r.rows.push_back({{"alpha", Num(alpha)}, {"beta", Num(beta)}, {"d", s.dimension},
                    {"truncated", s.truncated}});
  return r;
}

// First (context, pair) whose values are h-separated beyond alpha.
std::optional<ShatterWitness> PairWitness(const ExpertClass& f, double alpha) {
  for (int x = 0; x < f.num_contexts(); ++x)
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j) {
        double a = f.functions()[i][x], b = f.functions()[j][x];
        if (a < b && HGap(a, b) > alpha) return ShatterWitness{1, {x}, {{a, b}}, {i, j}};
      }
  return std::nullopt;
}

Report CmdLowerBound(const Ctx& c) {
  std::string mode = Get<std::string>(c.params, "mode", "block");
  Report r;
  r.gated = true;
  if (mode == "block") {
    ExpertClass f = ClassFromJson(ClassSpec(c.params));
    double alpha = Need<double>(c.params, "alpha");
    std::optional<ShatterWitness> w = PairWitness(f, alpha);
    int n = Get<int>(c.params, "n", 0);
    if (n <= 0) n = w ? RequiredBlockHorizon(*w) : 1;
    BlockAdversary adv = BuildBlockAdversary(f, w ? &*w : nullptr, alpha, n);
    r.result["mode"] = mode;
    r.result["depth"] = adv.depth;
    r.result["n"] = adv.horizon;
    r.result["bound"] = Num(adv.certified_bound);
    OrderedJson steps = OrderedJson::array();
    for (const auto& s : adv.steps)
      steps.push_back({{"context", s.context},
                       {"midpoint", Num(s.midpoint)},
                       {"gap", Num(s.gap)},
                       {"length", s.length},
                       {"block_value", Num(s.value)},
                       {"lemma_preconditions", s.lemma_preconditions}});
    r.result["blocks"] = steps;
    r.result["blowup"] = adv.blowup;
    r.result["blowup_fits"] = adv.blowup_fits;
    bool holds = true;
    if (adv.horizon <= 12) {
      BlockGameReport g = PlayBlockGame(f, adv);
      r.result["nml_regret"] = Num(g.nml_regret);
      r.result["dual_value"] = Num(g.dual_value);
      holds = g.holds && g.dual_value >= g.bound;
    }
    r.result["holds"] = holds;
    r.all_hold = holds;
    r.rows.push_back({{"mode", mode}, {"n", adv.horizon}, {"bound", Num(adv.certified_bound)},
                      {"holds", holds}});
    return r;
  }
  if (mode == "large-p") {
    Require(!c.params.contains("class") && !c.params.contains("class_spec"),
            ErrorCode::kInvalidConfig, "large-p mode builds its own hypercube class");
    int n = Get<int>(c.params, "n", 8);
    double beta = Get<double>(c.params, "beta", 0.06);
    LargePInstance inst = LargePHypercube(n);
    LargePReport l = LargePAdversary(inst.f, inst.witness, beta);
    r.all_hold = l.holds;
    r.result = {{"mode", mode},
                {"n", n},
                {"beta", Num(beta)},
                {"bound", Num(l.bound)},
                {"min_witness_gain", Num(l.min_witness_gain)},
                {"min_sup_gain", Num(l.min_sup_gain)},
                {"min_round_gap", Num(l.min_round_gap)},
                {"paths", l.paths},
                {"holds", l.holds}};
    r.rows.push_back({{"mode", mode}, {"n", n}, {"bound", Num(l.bound)}, {"holds", l.holds}});
    return r;
  }
  Require(mode == "renewal", ErrorCode::kInvalidConfig, "mode must be block, large-p or renewal");
  int n = Get<int>(c.params, "n", 10);
  double alpha = Get<double>(c.params, "alpha", 0.1);
  RenewalPackingReport p = RenewalPacking(n, alpha, c.seed);
  bool holds = p.separation_holds && p.pairs_hold && p.code_holds;
  r.all_hold = holds;
  r.result = {{"mode", mode},
              {"n", n},
              {"alpha", Num(alpha)},
              {"bound_bits", Num(p.cover_bits)},
              {"sqrt_separation", Num(p.sqrt_separation)},
              {"min_pair_gap", Num(p.min_pair_gap)},
              {"code_size", p.code_size},
              {"holds", holds}};
  r.rows.push_back({{"mode", mode}, {"n", n}, {"bound", Num(p.cover_bits)}, {"holds", holds}});
  return r;
}

Report CmdRenewalEntropy(const Ctx& c) {
  int n = Get<int>(c.params, "n", 8);
  double alpha = Get<double>(c.params, "alpha", 0.1);
  std::size_t pairs = Get<std::size_t>(c.params, "pairs", 100);
  RenewalPackingReport p = RenewalPacking(n, alpha, c.seed, pairs);
  Report r;
  r.gated = true;
  r.all_hold = p.separation_holds && p.pairs_hold && p.code_holds;
  r.result = {{"n", n},
              {"alpha", Num(alpha)},
              {"sqrt_separation", Num(p.sqrt_separation)},
              {"separation_holds", p.separation_holds},
              {"log_separation", Num(p.log_separation)},
              {"pairs_checked", p.pairs_checked},
              {"min_pair_gap", Num(p.min_pair_gap)},
              {"cover_bits", Num(p.cover_bits)},
              {"code_distance", p.code_distance},
              {"code_size", p.code_size},
              {"code_log_nats", Num(p.code_log)},
              {"gv_guarantee", Num(p.gv_guarantee)},
              {"log_entropy_trend", Num(p.log_entropy_trend)}};
  if (p.exact_cover_size) r.result["exact_cover_size"] = *p.exact_cover_size;
  if (n <= 10) {
    auto hazards = Get<std::vector<double>>(c.params, "hazards", {0.25, 0.5, 0.75});
    r.result["shtarkov_reference"] = Num(RenewalMinimaxReference(n, hazards));
  }
  r.result["holds"] = r.all_hold;
  r.rows.push_back({{"n", n}, {"alpha", Num(alpha)}, {"cover_bits", Num(p.cover_bits)},
                    {"code_size", p.code_size}, {"holds", r.all_hold}});
  return r;
}

// ---- verify-all ---------------------------------------------------------

struct Check {
  std::string name;
  bool holds;
  double value;
  double bound;
};

std::vector<Check> PaperSuite(std::uint64_t seed, int threads) {
  std::vector<Check> out;
  std::mt19937_64 rng(seed);

  {
    double v = ShtarkovSum(BernoulliMlClass(2), threads).value;
    out.push_back({"shtarkov-bernoulli-n2", std::abs(v - std::log(2.5)) <= 1e-10, v, std::log(2.5)});
  }
  {
    ExpertClass q = BernoulliMlClass(8);
    ShtarkovResult s = ShtarkovSum(q, threads);
    std::vector<double> pn = s.nml.all_joint_probs();
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < pn.size(); ++i) {
      double g = std::log(s.sup_table[i] / pn[i]);
      lo = std::min(lo, g);
      hi = std::max(hi, g);
    }
    out.push_back({"nml-equalizer", hi - lo <= 1e-9, hi - lo, 1e-9});
  }
  for (int i = 0; i < 4; ++i) {
    ExpertClass q = RandomJointClass(rng, 2 + i, 2, 3 + i, 0.05);
    double a = MinimaxLse(q).value, b = ShtarkovSum(q).value;
    out.push_back({"lse-identity-" + std::to_string(i), std::abs(a - b) <= 1e-10, a - b, 1e-10});
  }
  for (int m = 2; m <= 3; ++m) {
    ExpertClass f = RandomFunctionClass(rng, 2, m, 0.05, 0.95);
    double a = AdaptiveMinimax(f, 2).value, b = MaxOverTreesShtarkov(f, 2);
    out.push_back({"tree-transductive-" + std::to_string(m), std::abs(a - b) <= 1e-8, a - b, 1e-8});
  }
  for (int n : {7, 100, 10000}) {
    ZetaReport z = CheckZetaProperties(ZetaParams{n, 2}, ZetaGrids{2000, 20, 2000, seed});
    out.push_back({"zeta-" + std::to_string(n), z.ok, z.log_min_slack, -kCheckTolerance});
  }
  for (int n = 2; n <= 3; ++n) {
    ExpertClass q = TruncateClass(RandomJointClass(rng, n, 2, 3, 0.05), DeltaNFloor(n, 2));
    JointDistribution p = TruncateDist(RandomJointClass(rng, n, 2, 1, 0.05).joints()[0],
                                       DeltaNFloor(n, 2));
    SymmetrizationReport s = SymmetrizationCheck(q, p);
    out.push_back({"symmetrization-n" + std::to_string(n), s.holds, s.lhs, s.rhs});
  }
  {
    CoefficientFamily fam = RandomCoefficients(rng, 6, 8);
    for (double lambda : {0.1, 1.0, 10.0}) {
      FiniteClassReport f = FiniteClassOffset(fam, lambda);
      out.push_back({"finite-class-offset-" + ShortestDouble(lambda), f.offset_holds,
                     f.offset_value, f.offset_bound});
    }
    FiniteClassReport f = FiniteClassOffset(fam, 1.0);
    out.push_back({"finite-class-nonoffset", f.nonoffset_holds, f.nonoffset_value, f.nonoffset_bound});
  }
  {
    bool ok = true;
    double worst = 1e300;
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9})
      for (double alpha : {0.002, 0.01, 0.03}) {
        BlockValueReport b = BernoulliBlockValue(p, alpha, alpha * alpha / 2, CanonicalBlockLength(p, alpha));
        ok = ok && b.alpha_holds && b.canonical_holds;
        worst = std::min(worst, b.canonical_total);
      }
    out.push_back({"block-lemma", ok, worst, kBlockFloor});
  }
  {
    ExpertClass f = ExpertClass::FiniteFunction(1, {{0.45}, {0.55}});
    ShatterWitness w{1, {0}, {{0.45, 0.55}}, {0, 1}};
    BlockAdversary adv = BuildBlockAdversary(f, &w, 0.07, 7);
    BlockGameReport g = PlayBlockGame(f, adv);
    out.push_back({"block-adversary", g.holds, g.nml_regret, g.bound});
  }
  {
    LargePInstance inst = LargePHypercube(8);
    LargePReport l = LargePAdversary(inst.f, inst.witness, 0.06);
    out.push_back({"large-p-adversary", l.holds, l.min_witness_gain, l.bound});
  }
  for (double alpha : {0.05, 0.1, 0.15}) {
    RenewalPackingReport p = RenewalPacking(12, alpha, seed);
    out.push_back({"renewal-packing-" + ShortestDouble(alpha),
                   p.separation_holds && p.pairs_hold && p.code_holds, p.min_pair_gap, 2 * alpha});
  }
  for (int i = 0; i < 2; ++i) {
    ExpertClass f = RandomFunctionClass(rng, 2, 4, 0.2, 0.8);
    EntropyRelationReport e = CheckEntropyRelations(f, ContextTree::Constant(2, 0), 0.1, 0.2);
    out.push_back({"entropy-relations-" + std::to_string(i), e.scaled_sqrt_holds && e.square_scale_holds,
                   static_cast<double>(e.n_sq_scaled), static_cast<double>(e.n_inf)});
  }
  for (int i = 0; i < 2; ++i) {
    ExpertClass f = RandomFunctionClass(rng, 2, 6, 0.0, 1.0);
    PathSpace space(3, 2);
    std::vector<int> ctx(space.num_nodes());
    for (int& x : ctx) x = static_cast<int>(rng() % 2);
    DimensionEntropyReport d = DimensionEntropyBound(f, ContextTree(3, ctx), 0.2, 0.125);
    out.push_back({"dimension-entropy-" + std::to_string(i), d.size_holds && d.cover_valid,
                   static_cast<double>(d.cover_size), static_cast<double>(d.g_bound)});
  }
  {
    HilbertBallClass h = MakeHilbertBall(2, 3, 6, {{1.0, 0.0}});
    HilbertTruncationReport t = CheckHilbertTruncation(h, 200, seed);
    out.push_back({"hilbert-truncation", t.holds, t.min_slack, 0.0});
  }
  {
    ExpertClass q = RandomJointClass(rng, 3, 2, 3, 0.0);
    JointDistribution p = RandomJointClass(rng, 3, 2, 1, 0.05).joints()[0];
    TruncationReport t = CheckTruncationLemmas(q, p, 0.05);
    out.push_back({"truncation-q-delta", t.q_delta_holds, t.q_delta_slack, 0.0});
    out.push_back({"truncation-p-delta", t.p_delta_holds, t.p_delta_slack, 0.0});
  }
  return out;
}

Report CmdVerifyAll(const Ctx& c) {
  std::string suite = Get<std::string>(c.params, "suite", "paper");
  Require(suite == "paper", ErrorCode::kInvalidConfig, "unknown suite '" + suite + "'");
  Report r;
  r.gated = true;
  OrderedJson list = OrderedJson::array();
  for (const Check& ch : PaperSuite(c.seed, c.threads)) {
    r.all_hold = r.all_hold && ch.holds;
    Cells row{{"check", ch.name}, {"holds", ch.holds}, {"value", Num(ch.value)}, {"bound", Num(ch.bound)}};
    OrderedJson obj = OrderedJson::object();
    for (auto& [k, v] : row) obj[k] = v;
    list.push_back(obj);
    r.rows.push_back(std::move(row));
  }
  // Rate exponents are reported, not gated.
  OrderedJson rates = OrderedJson::array();
  for (double p : {0.5, 1.0, 2.0, 4.0}) rates.push_back({{"p", Num(p)}, {"exponent", Num(RateExponent(p))}});
  r.result["suite"] = suite;
  r.result["checks"] = list;
  r.result["rates"] = rates;
  r.result["all_hold"] = r.all_hold;
  return r;
}

using Handler = std::function<Report(const Ctx&)>;

struct Command {
  Handler run;
  std::set<std::string> keys;
};

const std::map<std::string, Command>& Commands() {
  static const std::map<std::string, Command> table = {
      {"shtarkov", {CmdShtarkov, {"class", "class_spec", "n", "table"}}},
      {"nml-predict", {CmdNmlPredict, {"class", "class_spec", "n", "history"}}},
      {"minimax", {CmdMinimax, {"class", "class_spec", "n", "adaptive"}}},
      {"cover", {CmdCover, {"class", "class_spec", "n", "notion", "alpha", "mode"}}},
      {"entropy-profile", {CmdEntropyProfile, {"class", "class_spec", "n", "notion", "scales", "mode"}}},
      {"zeta-check", {CmdZetaCheck, {"n", "points", "side", "pairs"}}},
      {"symmetrize", {CmdSymmetrize, {"class", "class_spec", "n", "delta", "p", "samples", "force_mc"}}},
      {"finite-class", {CmdFiniteClass, {"n", "size", "lambda", "samples", "force_mc"}}},
      {"bound", {CmdBound, {"exponent", "coefficient", "profile", "table", "n", "n_grid", "alphabet",
                            "form", "substeps"}}},
      {"dimension", {CmdDimension, {"class", "class_spec", "alpha", "beta", "max_depth", "discrete", "n"}}},
      {"lower-bound", {CmdLowerBound, {"mode", "class", "class_spec", "n", "alpha", "beta"}}},
      {"renewal-entropy", {CmdRenewalEntropy, {"n", "alpha", "hazards", "pairs"}}},
      {"verify-all", {CmdVerifyAll, {"suite"}}},
  };
  return table;
}

std::string Hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string CsvCell(const OrderedJson& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return ShortestDouble(v.get<double>());
  if (v.is_number()) return v.dump();
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string ErrorJson(const std::string& code, int status, const std::string& message) {
  OrderedJson e = {{"error", {{"code", code}, {"status", status}, {"message", message}}}};
  return e.dump(2) + "\n";
}

}  // namespace

std::string ShortestDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::uint64_t Fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string EmitTable(std::vector<TableRow> rows, const std::string& format) {
  std::stable_sort(rows.begin(), rows.end(), [](const TableRow& a, const TableRow& b) {
    return std::tie(a.subcommand, a.config_hash) < std::tie(b.subcommand, b.config_hash);
  });
  std::vector<std::string> columns{"subcommand", "config_hash"};
  for (const auto& r : rows)
    for (const auto& [k, v] : r.cells)
      if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
  auto lookup = [](const TableRow& r, const std::string& key) -> OrderedJson {
    if (key == "subcommand") return r.subcommand;
    if (key == "config_hash") return r.config_hash;
    for (const auto& [k, v] : r.cells)
      if (k == key) return v;
    return nullptr;
  };
  if (format == "json") {
    OrderedJson arr = OrderedJson::array();
    for (const auto& r : rows) {
      OrderedJson obj = OrderedJson::object();
      for (const auto& col : columns) obj[col] = lookup(r, col);
      arr.push_back(obj);
    }
    return arr.dump(2) + "\n";
  }
  Require(format == "csv", ErrorCode::kInvalidConfig, "format must be json or csv");
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + CsvCell(lookup(r, columns[i]));
    out += "\n";
  }
  return out;
}

RunResult Run(const std::string& subcommand, const std::string& params_json) {
  try {
    auto it = Commands().find(subcommand);
    Require(it != Commands().end(), ErrorCode::kInvalidConfig, "unknown subcommand '" + subcommand + "'");
    Json params = params_json.empty() ? Json::object() : Json::parse(params_json, nullptr, false);
    Require(!params.is_discarded() && params.is_object(), ErrorCode::kInvalidConfig,
            "parameters must be a JSON object");
    for (const auto& [key, value] : params.items()) {
      bool common = key == "seed" || key == "threads" || key == "format";
      Require(common || it->second.keys.count(key), ErrorCode::kInvalidConfig,
              "unknown parameter '" + key + "' for " + subcommand);
    }
    const std::string format = Get<std::string>(params, "format", "json");
    Require(format == "json" || format == "csv", ErrorCode::kInvalidConfig, "format must be json or csv");

    std::uint64_t seed = 0;
    if (params.contains("seed")) {
      seed = Get<std::uint64_t>(params, "seed", 0);
    } else if (const char* env = std::getenv("LAB_SEED")) {
      std::string s(env);
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
      Require(ec == std::errc() && ptr == s.data() + s.size(), ErrorCode::kInvalidConfig,
              "LAB_SEED must be a nonnegative integer");
    }
    const int threads = Get<int>(params, "threads", 1);
    Require(threads >= 1, ErrorCode::kInvalidConfig, "threads must be positive");

    Json hashed = params;
    hashed.erase("threads");
    hashed.erase("format");
    hashed["seed"] = seed;
    if (params.contains("class")) hashed["class_text"] = ReadFile(Get<std::string>(params, "class", ""));
    const std::string hash = Hex(Fnv1a(subcommand + "\n" + hashed.dump()));

    Report rep = it->second.run(Ctx{params, seed, threads});
    RunResult out;
    out.status = rep.gated && !rep.all_hold ? kStatusCheckFailed : kStatusOk;
    OrderedJson prov = {{"tool", "seqlab"}, {"version", SEQLAB_VERSION}, {"config_hash", hash},
                        {"seed", seed}};
    if (format == "json") {
      OrderedJson doc = {{"provenance", prov}, {"subcommand", subcommand}, {"result", rep.result}};
      out.output = doc.dump(2) + "\n";
    } else {
      std::vector<TableRow> rows;
      for (auto& cells : rep.rows) {
        Cells full{{"version", SEQLAB_VERSION}, {"seed", seed}};
        full.insert(full.end(), cells.begin(), cells.end());
        rows.push_back({subcommand, hash, std::move(full)});
      }
      out.output = EmitTable(std::move(rows), "csv");
    }
    return out;
  } catch (const Error& e) {
    return {static_cast<int>(e.code()), ErrorJson(ErrorCodeName(e.code()), static_cast<int>(e.code()), e.what())};
  } catch (const nlohmann::json::exception& e) {
    int status = static_cast<int>(ErrorCode::kInvalidConfig);
    return {status, ErrorJson(ErrorCodeName(ErrorCode::kInvalidConfig), status, e.what())};
  }
}

}  // namespace seqlab::internal
