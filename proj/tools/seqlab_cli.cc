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

// Command-line front end. Every subcommand forwards its options as a JSON
// object to seqlab_run_command.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "seqlab/seqlab.h"

namespace {

using Json = nlohmann::json;

struct Options {
  std::optional<std::string> class_path, n, notion, history, mode, profile, n_grid, form, suite, p;
  std::optional<double> alpha, beta, delta, exponent, coefficient;
  std::optional<int> size, alphabet, substeps, max_depth;
  std::optional<std::size_t> samples, pairs, points, side;
  std::vector<double> scales, lambda, hazards;
  bool exact = false, greedy = false, adaptive = false, table = false, force_mc = false,
       discrete = false;
};

Json Scalar(const std::string& text) {
  long long i = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), i);
  if (ec == std::errc() && p == text.data() + text.size()) return i;
  double d = 0.0;
  auto [q, ec2] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (ec2 == std::errc() && q == text.data() + text.size()) return d;
  return text;
}

void Fill(const Options& o, Json& j) {
  if (o.class_path) j["class"] = *o.class_path;
  if (o.n) j["n"] = Scalar(*o.n);
  if (o.notion) j["notion"] = *o.notion;
  if (o.history) j["history"] = *o.history;
  if (o.mode) j["mode"] = *o.mode;
  if (o.profile) j["profile"] = *o.profile;
  if (o.n_grid) j["n_grid"] = *o.n_grid;
  if (o.form) j["form"] = *o.form;
  if (o.suite) j["suite"] = *o.suite;
  if (o.p) j["p"] = Scalar(*o.p);
  if (o.alpha) j["alpha"] = *o.alpha;
  if (o.beta) j["beta"] = *o.beta;
  if (o.delta) j["delta"] = *o.delta;
  if (o.exponent) j["exponent"] = *o.exponent;
  if (o.coefficient) j["coefficient"] = *o.coefficient;
  if (o.size) j["size"] = *o.size;
  if (o.alphabet) j["alphabet"] = *o.alphabet;
  if (o.substeps) j["substeps"] = *o.substeps;
  if (o.max_depth) j["max_depth"] = *o.max_depth;
  if (o.samples) j["samples"] = *o.samples;
  if (o.pairs) j["pairs"] = *o.pairs;
  if (o.points) j["points"] = *o.points;
  if (o.side) j["side"] = *o.side;
  if (!o.scales.empty()) j["scales"] = o.scales;
  if (!o.hazards.empty()) j["hazards"] = o.hazards;
  if (o.lambda.size() == 1) j["lambda"] = o.lambda[0];
  if (o.lambda.size() > 1) j["lambda"] = o.lambda;
  if (o.exact) j["mode"] = "exact";
  if (o.greedy) j["mode"] = "greedy";
  if (o.adaptive) j["adaptive"] = true;
  if (o.table) j["table"] = true;
  if (o.force_mc) j["force_mc"] = true;
  if (o.discrete) j["discrete"] = true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seqlab: exact and property-based checks for sequential log-loss prediction"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", seqlab_version());

  int threads = 1;
  std::optional<unsigned long long> seed;
  std::string format = "json";
  std::string out_path;
  std::string config_path;
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Random seed (default: LAB_SEED or 0)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "Write output to this file");
  app.add_option("--config", config_path, "JSON file with extra parameters")->check(CLI::ExistingFile);

  Options o;
  struct Spec {
    const char* name;
    const char* help;
    std::vector<std::string> opts;
  };
  const std::vector<Spec> specs = {
      {"shtarkov", "Shtarkov sum and NML of a class", {"class", "n", "table"}},
      {"nml-predict", "NML conditional after a history", {"class", "n", "history"}},
      {"minimax", "Backward-induction minimax value", {"class", "n", "adaptive"}},
      {"cover", "Minimum sequential cover", {"class", "n", "notion", "alpha", "exact", "greedy"}},
      {"entropy-profile", "Entropy over a list of scales", {"class", "n", "notion", "scales", "exact", "greedy"}},
      {"zeta-check", "Check the zeta-transform properties", {"n", "points", "side", "pairs"}},
      {"symmetrize", "Symmetrization inequality", {"class", "n", "delta", "p", "samples", "force-mc"}},
      {"finite-class", "Finite-class offset and linear bounds", {"n", "size", "lambda", "samples", "force-mc"}},
      {"bound", "Chaining bound and rate slope",
       {"exponent", "coefficient", "profile", "n", "n-grid", "alphabet", "form", "substeps"}},
      {"dimension", "Shattering dimension search", {"class", "n", "alpha", "beta", "max-depth", "discrete"}},
      {"lower-bound", "Constructive lower bounds", {"class", "mode", "n", "alpha", "beta"}},
      {"renewal-entropy", "Renewal-class entropy certificate", {"n", "alpha", "hazards", "pairs"}},
      {"verify-all", "Run every inequality check", {"suite"}},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    subs[s.name] = sub;
    for (const auto& name : s.opts) {
      std::string flag = "--" + name;
      if (name == "class") sub->add_option(flag, o.class_path, "Class-spec JSON file")->check(CLI::ExistingFile);
      else if (name == "n") sub->add_option(flag, o.n, "Horizon, list or range (a..b)");
      else if (name == "notion") sub->add_option(flag, o.notion, "sqrt, linf or logmetric");
      else if (name == "history") sub->add_option(flag, o.history, "Observed outcomes as a digit string");
      else if (name == "mode") sub->add_option(flag, o.mode, "block, large-p or renewal");
      else if (name == "profile") sub->add_option(flag, o.profile, "Entropy profile JSON")->check(CLI::ExistingFile);
      else if (name == "n-grid") sub->add_option(flag, o.n_grid, "Range such as 2^10..2^20");
      else if (name == "form") sub->add_option(flag, o.form, "general or function");
      else if (name == "suite") sub->add_option(flag, o.suite, "Check suite");
      else if (name == "p") sub->add_option(flag, o.p, "Index of the class member used as p");
      else if (name == "alpha") sub->add_option(flag, o.alpha, "Scale");
      else if (name == "beta") sub->add_option(flag, o.beta, "Closeness or separation scale");
      else if (name == "delta") sub->add_option(flag, o.delta, "Truncation level");
      else if (name == "exponent") sub->add_option(flag, o.exponent, "Entropy exponent p");
      else if (name == "coefficient") sub->add_option(flag, o.coefficient, "Entropy coefficient");
      else if (name == "size") sub->add_option(flag, o.size, "Number of class members");
      else if (name == "alphabet") sub->add_option(flag, o.alphabet, "Outcome alphabet size");
      else if (name == "substeps") sub->add_option(flag, o.substeps, "Grid points per octave");
      else if (name == "max-depth") sub->add_option(flag, o.max_depth, "Deepest tree searched");
      else if (name == "samples") sub->add_option(flag, o.samples, "Monte Carlo samples");
      else if (name == "pairs") sub->add_option(flag, o.pairs, "Sampled pairs");
      else if (name == "points") sub->add_option(flag, o.points, "Grid points");
      else if (name == "side") sub->add_option(flag, o.side, "Grid side");
      else if (name == "scales") sub->add_option(flag, o.scales, "Scales")->delimiter(',');
      else if (name == "lambda") sub->add_option(flag, o.lambda, "Offset weights")->delimiter(',');
      else if (name == "hazards") sub->add_option(flag, o.hazards, "Hazard grid")->delimiter(',');
      else if (name == "exact") sub->add_flag(flag, o.exact, "Exact search only");
      else if (name == "greedy") sub->add_flag(flag, o.greedy, "Greedy search only");
      else if (name == "adaptive") sub->add_flag(flag, o.adaptive, "Adversary picks contexts");
      else if (name == "table") sub->add_flag(flag, o.table, "Include the sup table");
      else if (name == "force-mc") sub->add_flag(flag, o.force_mc, "Monte Carlo even when exact is cheap");
      else if (name == "discrete") sub->add_flag(flag, o.discrete, "Discrete (rounded) dimension");
    }
  }
  CLI11_PARSE(app, argc, argv);

  std::string cmd;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) cmd = name;

  Json params = Json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    params = Json::parse(in, nullptr, false);
    if (params.is_discarded() || !params.is_object()) {
      std::cerr << "config file must hold a JSON object\n";
      return SEQLAB_ERR_INVALID_CONFIG;
    }
  }
  Fill(o, params);
  if (threads != 1) params["threads"] = threads;
  if (seed) params["seed"] = *seed;
  if (format != "json") params["format"] = format;

  char* text = nullptr;
  seqlab_status status = seqlab_run_command(cmd.c_str(), params.dump().c_str(), &text);
  std::string output = text ? text : std::string(seqlab_last_error()) + "\n";
  seqlab_string_free(text);
  if (out_path.empty()) {
    std::cout << output;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << output;
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return SEQLAB_ERR_IO;
    }
  }
  if (status != SEQLAB_OK && status != SEQLAB_CHECK_FAILED && !out_path.empty()) std::cerr << output;
  return static_cast<int>(status);
}
