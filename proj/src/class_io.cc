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

#include "class_json.h"

#include <string>

#include "seqlab/class_io.h"
#include "seqlab/zoo.h"

namespace seqlab {
namespace internal {
namespace {

template <typename T>
T Field(const Json& j, const char* key) {
  Require(j.is_object() && j.contains(key), ErrorCode::kInvalidConfig,
          std::string("class spec is missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    Fail(ErrorCode::kInvalidConfig, std::string("class spec field '") + key + "' has wrong type");
  }
}

template <typename T>
T FieldOr(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? Field<T>(j, key) : fallback;
}

}  // namespace

JointDistribution JointFromJson(const Json& j, int n, int alphabet) {
  if (j.contains("iid")) {
    auto probs = Field<std::vector<double>>(j, "iid");
    Require(static_cast<int>(probs.size()) == alphabet, ErrorCode::kInvalidConfig,
            "iid member has wrong alphabet size");
    return JointDistribution::Iid(n, probs);
  }
  const Json& cond = j.contains("conditionals") ? j.at("conditionals") : j;
  Require(cond.is_object(), ErrorCode::kInvalidConfig, "member needs 'iid' or 'conditionals'");
  PathSpace space(n, alphabet);
  std::vector<double> flat;
  flat.reserve(space.num_nodes() * alphabet);
  for (std::size_t v = 0; v < space.num_nodes(); ++v) {
    std::string key = PathToString(space.decode_prefix(v));
    auto probs = Field<std::vector<double>>(cond, key.c_str());
    Require(static_cast<int>(probs.size()) == alphabet, ErrorCode::kInvalidConfig,
            "conditional at '" + key + "' has wrong size");
    flat.insert(flat.end(), probs.begin(), probs.end());
  }
  return JointDistribution(n, alphabet, std::move(flat));
}

Json JointToJson(const JointDistribution& q) {
  Json cond = Json::object();
  for (std::size_t v = 0; v < q.space().num_nodes(); ++v) {
    auto node = q.node(v);
    cond[PathToString(q.space().decode_prefix(v))] = std::vector<double>(node.begin(), node.end());
  }
  return Json{{"conditionals", cond}};
}

ExpertClass ClassFromJson(const Json& spec) {
  Require(spec.is_object(), ErrorCode::kInvalidConfig, "class spec must be an object");
  const auto kind = Field<std::string>(spec, "kind");
  if (kind == "finite-joint") {
    const int n = Field<int>(spec, "n");
    const int k = FieldOr<int>(spec, "alphabet", 2);
    Require(n >= 1 && n <= kMaxHorizon && k >= 2, ErrorCode::kInvalidConfig,
            "class spec has invalid n or alphabet");
    std::vector<JointDistribution> members;
    for (const auto& m : Field<Json>(spec, "members")) members.push_back(JointFromJson(m, n, k));
    return ExpertClass::FiniteJoint(std::move(members));
  }
  if (kind == "finite-function") {
    return ExpertClass::FiniteFunction(Field<int>(spec, "contexts"),
                                       Field<std::vector<std::vector<double>>>(spec, "functions"));
  }
  Require(kind == "grid", ErrorCode::kInvalidConfig, "unknown class kind '" + kind + "'");
  const auto family = Field<std::string>(spec, "family");
  if (family == "lipschitz") return LipschitzClass(Field<int>(spec, "grid_res"));
  if (family == "hilbert-ball") {
    HilbertBallClass h = MakeHilbertBall(Field<int>(spec, "dim"), Field<int>(spec, "resolution"),
                                         Field<int>(spec, "n"),
                                         Field<std::vector<std::vector<double>>>(spec, "contexts"));
    if (FieldOr<bool>(spec, "shrink", false)) h = HilbertShrink(h);
    return HilbertExpertClass(h);
  }
  const int n = Field<int>(spec, "n");
  if (family == "bernoulli-ml") return BernoulliMlClass(n);
  if (family == "bernoulli-iid" && spec.contains("thetas"))
    return BernoulliIidClass(Field<std::vector<double>>(spec, "thetas"), n);
  if (family == "renewal" && spec.contains("hazards")) {
    std::vector<std::vector<double>> pmfs;
    for (double h : Field<std::vector<double>>(spec, "hazards")) pmfs.push_back(GeometricPmf(h, n));
    return RenewalClass(pmfs, n);
  }
  if (family == "renewal" && spec.contains("pmfs"))
    return RenewalClass(Field<std::vector<std::vector<double>>>(spec, "pmfs"), n);
  Require(spec.contains("members"), ErrorCode::kInvalidConfig,
          "grid family '" + family + "' needs parameters or explicit members");
  const int k = FieldOr<int>(spec, "alphabet", 2);
  std::vector<JointDistribution> members;
  for (const auto& m : Field<Json>(spec, "members")) members.push_back(JointFromJson(m, n, k));
  GridInfo info;
  info.family = family;
  info.parameters = FieldOr<std::vector<double>>(spec, "parameters", {});
  info.step = FieldOr<double>(spec, "step", 0.0);
  return ExpertClass::Grid(std::move(info), std::move(members));
}

std::optional<ContextTree> TreeFromJson(const Json& spec, int n) {
  if (!spec.is_object() || !spec.contains("tree")) return std::nullopt;
  const Json& t = spec.at("tree");
  if (t.contains("constant")) return ContextTree::Constant(n, Field<int>(t, "constant"));
  const Json& nodes = Field<Json>(t, "nodes");
  PathSpace space(n, 2);
  std::vector<int> ctx(space.num_nodes());
  for (std::size_t v = 0; v < ctx.size(); ++v) {
    std::string key = PathToString(space.decode_prefix(v));
    ctx[v] = Field<int>(nodes, key.c_str());
  }
  return ContextTree(n, std::move(ctx));
}

Json TreeJson(const ContextTree& x) {
  PathSpace space(x.depth(), 2);
  Json nodes = Json::object();
  for (std::size_t v = 0; v < space.num_nodes(); ++v)
    nodes[PathToString(space.decode_prefix(v))] = x.nodes()[v];
  return Json{{"nodes", nodes}};
}

Json ClassToJson(const ExpertClass& q) {
  Json out;
  out["kind"] = ClassKindName(q.kind());
  if (!q.is_joint()) {
    out["contexts"] = q.num_contexts();
    out["functions"] = q.functions();
    if (q.grid()) out["family"] = q.grid()->family;
    return out;
  }
  out["n"] = q.horizon();
  out["alphabet"] = q.alphabet();
  if (q.grid()) {
    out["family"] = q.grid()->family;
    out["parameters"] = q.grid()->parameters;
    out["step"] = q.grid()->step;
    // The empirical-frequency sup is not representable as members alone.
    if (q.grid()->family == "bernoulli-iid" && q.has_closed_form_sup()) out["family"] = "bernoulli-ml";
  }
  Json members = Json::array();
  for (const auto& m : q.joints()) members.push_back(JointToJson(m));
  out["members"] = members;
  return out;
}

}  // namespace internal

ExpertClass ParseClassSpec(const std::string& text) {
  internal::Json j = internal::Json::parse(text, nullptr, false);
  Require(!j.is_discarded(), ErrorCode::kInvalidConfig, "class spec is not valid JSON");
  return internal::ClassFromJson(j);
}

std::optional<ContextTree> ParseClassTree(const std::string& text, int n) {
  internal::Json j = internal::Json::parse(text, nullptr, false);
  Require(!j.is_discarded(), ErrorCode::kInvalidConfig, "class spec is not valid JSON");
  return internal::TreeFromJson(j, n);
}

std::string ClassSpecToJson(const ExpertClass& q, int indent) {
  return internal::ClassToJson(q).dump(indent);
}

std::string TreeToJson(const ContextTree& x, int indent) {
  return internal::Json{{"tree", internal::TreeJson(x)}}.dump(indent);
}

}  // namespace seqlab
