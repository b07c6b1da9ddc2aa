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

// Exercises the shared library through its C header only.

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include <doctest.h>

#include "seqlab/seqlab.h"

namespace {

struct ClassHandle {
  seqlab_class* c = nullptr;
  ~ClassHandle() { seqlab_class_free(c); }
};

const char* kBernoulli = R"({"kind": "grid", "family": "bernoulli-ml", "n": 2})";

TEST_CASE("version and status names") {
  CHECK(std::strlen(seqlab_version()) > 0);
  CHECK(std::string(seqlab_status_name(SEQLAB_OK)) == "ok");
  CHECK(std::string(seqlab_status_name(SEQLAB_ERR_INVALID_CONFIG)) == "invalid-config");
}

TEST_CASE("class lifecycle and shtarkov") {
  ClassHandle h;
  REQUIRE(seqlab_class_from_json(kBernoulli, &h.c) == SEQLAB_OK);
  size_t size = 0;
  CHECK(seqlab_class_size(h.c, &size) == SEQLAB_OK);
  CHECK(size == 3);
  int n = 0;
  CHECK(seqlab_class_horizon(h.c, &n) == SEQLAB_OK);
  CHECK(n == 2);
  double v = 0.0, lse = 0.0;
  CHECK(seqlab_shtarkov(h.c, 2, &v) == SEQLAB_OK);
  CHECK(v == doctest::Approx(std::log(2.5)).epsilon(1e-12));
  CHECK(seqlab_minimax_lse(h.c, &lse) == SEQLAB_OK);
  CHECK(std::abs(lse - v) < 1e-10);
  double probs[2];
  int hist[1] = {0};
  CHECK(seqlab_nml_predict(h.c, hist, 1, probs, 2) == SEQLAB_OK);
  CHECK(probs[0] == doctest::Approx(0.8));
  CHECK(probs[1] == doctest::Approx(0.2));
  CHECK(seqlab_nml_predict(h.c, hist, 1, probs, 1) != SEQLAB_OK);

  char* json = nullptr;
  REQUIRE(seqlab_class_to_json(h.c, &json) == SEQLAB_OK);
  ClassHandle again;
  CHECK(seqlab_class_from_json(json, &again.c) == SEQLAB_OK);
  seqlab_string_free(json);
  double v2 = 0.0;
  CHECK(seqlab_shtarkov(again.c, 1, &v2) == SEQLAB_OK);
  CHECK(v2 == v);
}

TEST_CASE("composition and covers") {
  ClassHandle f, comp;
  REQUIRE(seqlab_class_from_json(R"({"kind": "finite-function", "contexts": 2,
      "functions": [[0.2, 0.7], [0.6, 0.1]]})", &f.c) == SEQLAB_OK);
  int n = 0;
  CHECK(seqlab_class_horizon(f.c, &n) == SEQLAB_ERR_UNSUPPORTED);
  int nodes[3] = {0, 1, 0};
  REQUIRE(seqlab_class_compose(f.c, 2, nodes, 3, &comp.c) == SEQLAB_OK);
  size_t size = 0;
  CHECK(seqlab_cover_size(comp.c, "sqrt", 1.0, 1, &size) == SEQLAB_OK);
  CHECK(size == 1);
  CHECK(seqlab_cover_size(comp.c, "sqrt", 1e-3, 1, &size) == SEQLAB_OK);
  CHECK(size == 2);
  CHECK(seqlab_cover_size(comp.c, "hamming", 0.1, 1, &size) == SEQLAB_ERR_INVALID_CONFIG);
  CHECK(seqlab_class_compose(f.c, 2, nodes, 2, &comp.c) == SEQLAB_ERR_DOMAIN);
}

TEST_CASE("scalar helpers") {
  double out = 0.0;
  CHECK(seqlab_log_loss(0.25, 0, &out) == SEQLAB_OK);
  CHECK(out == doctest::Approx(-std::log(0.75)));
  CHECK(seqlab_log_loss(2.0, 0, &out) == SEQLAB_ERR_DOMAIN);
  CHECK(std::strlen(seqlab_last_error()) > 0);
  CHECK(seqlab_zeta(4.0, &out) == SEQLAB_OK);
  CHECK(out == doctest::Approx(2 * std::log(2.5)));
  CHECK(std::strlen(seqlab_last_error()) == 0);
  CHECK(seqlab_zeta(0.0, &out) == SEQLAB_ERR_DOMAIN);
  CHECK(seqlab_hgap(0.25, 0.75, &out) == SEQLAB_OK);
  CHECK(out == doctest::Approx((std::sqrt(3.0) - 1) / 2));
  CHECK(seqlab_rate_exponent(4.0, &out) == SEQLAB_OK);
  CHECK(out == doctest::Approx(0.75));
  CHECK(seqlab_zeta(1.0, nullptr) != SEQLAB_OK);
  CHECK(seqlab_class_from_json("{", nullptr) != SEQLAB_OK);
}

TEST_CASE("run command") {
  char* out = nullptr;
  CHECK(seqlab_run_command("shtarkov", R"({"class_spec": {"kind": "grid", "family": "bernoulli-ml", "n": 2}})",
                           &out) == SEQLAB_OK);
  REQUIRE(out != nullptr);
  CHECK(std::string(out).find("0.9162907318741") != std::string::npos);
  seqlab_string_free(out);
  out = nullptr;
  CHECK(seqlab_run_command("shtarkov", R"({"nope": 1})", &out) == SEQLAB_ERR_INVALID_CONFIG);
  REQUIRE(out != nullptr);
  CHECK(std::string(out).find("\"error\"") != std::string::npos);
  seqlab_string_free(out);
}

}  // namespace
