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

#include "seqlab/seqlab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "runner.h"
#include "seqlab/class_io.h"
#include "seqlab/complexity.h"
#include "seqlab/covering.h"
#include "seqlab/shtarkov.h"

struct seqlab_class {
  seqlab::ExpertClass value;
};

namespace {

thread_local std::string last_error;

seqlab_status Record(seqlab_status s, const std::string& message) {
  last_error = message;
  return s;
}

template <typename Fn>
seqlab_status Guard(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return SEQLAB_OK;
  } catch (const seqlab::Error& e) {
    return Record(static_cast<seqlab_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Record(SEQLAB_ERR_BUDGET, "out of memory");
  } catch (const std::exception& e) {
    return Record(SEQLAB_ERR_INTERNAL, e.what());
  }
}

char* Copy(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define SEQLAB_NONNULL(p)                                                          \
  do {                                                                             \
    if ((p) == nullptr) return Record(SEQLAB_ERR_DOMAIN, #p " must not be null"); \
  } while (0)

}  // namespace

extern "C" {

const char* seqlab_version(void) { return SEQLAB_VERSION; }

const char* seqlab_status_name(seqlab_status status) {
  switch (status) {
    case SEQLAB_OK: return "ok";
    case SEQLAB_CHECK_FAILED: return "check_failed";
    case SEQLAB_ERR_INTERNAL: return "internal";
    default:
      if (status >= SEQLAB_ERR_DOMAIN && status <= SEQLAB_ERR_IO)
        return seqlab::ErrorCodeName(static_cast<seqlab::ErrorCode>(status));
      return "unknown";
  }
}

const char* seqlab_last_error(void) { return last_error.c_str(); }

seqlab_status seqlab_class_from_json(const char* spec_json, seqlab_class** out) {
  SEQLAB_NONNULL(spec_json);
  SEQLAB_NONNULL(out);
  *out = nullptr;
  return Guard([&] { *out = new seqlab_class{seqlab::ParseClassSpec(spec_json)}; });
}

seqlab_status seqlab_class_compose(const seqlab_class* f, int depth, const int* nodes,
                                   size_t num_nodes, seqlab_class** out) {
  SEQLAB_NONNULL(f);
  SEQLAB_NONNULL(nodes);
  SEQLAB_NONNULL(out);
  *out = nullptr;
  return Guard([&] {
    seqlab::ContextTree x(depth, std::vector<int>(nodes, nodes + num_nodes));
    *out = new seqlab_class{seqlab::ComposeClassWithTree(f->value, x)};
  });
}

void seqlab_class_free(seqlab_class* c) { delete c; }

seqlab_status seqlab_class_size(const seqlab_class* c, size_t* out) {
  SEQLAB_NONNULL(c);
  SEQLAB_NONNULL(out);
  return Guard([&] { *out = c->value.size(); });
}

seqlab_status seqlab_class_horizon(const seqlab_class* c, int* out) {
  SEQLAB_NONNULL(c);
  SEQLAB_NONNULL(out);
  return Guard([&] {
    seqlab::Require(c->value.is_joint(), seqlab::ErrorCode::kUnsupported,
                    "function classes have no horizon");
    *out = c->value.horizon();
  });
}

seqlab_status seqlab_class_to_json(const seqlab_class* c, char** out) {
  SEQLAB_NONNULL(c);
  SEQLAB_NONNULL(out);
  *out = nullptr;
  return Guard([&] { *out = Copy(seqlab::ClassSpecToJson(c->value)); });
}

seqlab_status seqlab_shtarkov(const seqlab_class* c, int threads, double* value) {
  SEQLAB_NONNULL(c);
  SEQLAB_NONNULL(value);
  return Guard([&] { *value = seqlab::ShtarkovSum(c->value, threads).value; });
}

seqlab_status seqlab_minimax_lse(const seqlab_class* c, double* value) {
  SEQLAB_NONNULL(c);
  SEQLAB_NONNULL(value);
  return Guard([&] { *value = seqlab::MinimaxLse(c->value).value; });
}

seqlab_status seqlab_nml_predict(const seqlab_class* c, const int* history, size_t history_len,
                                 double* probs, size_t probs_len) {
  SEQLAB_NONNULL(c);
  SEQLAB_NONNULL(probs);
  if (history_len > 0) SEQLAB_NONNULL(history);
  return Guard([&] {
    seqlab::Path h(history, history + history_len);
    std::vector<double> p = seqlab::NmlPredict(c->value, h);
    seqlab::Require(probs_len >= p.size(), seqlab::ErrorCode::kDomain, "probs buffer too small");
    std::copy(p.begin(), p.end(), probs);
  });
}

seqlab_status seqlab_cover_size(const seqlab_class* c, const char* notion, double alpha, int exact,
                                size_t* size) {
  SEQLAB_NONNULL(c);
  SEQLAB_NONNULL(notion);
  SEQLAB_NONNULL(size);
  return Guard([&] {
    auto r = seqlab::MinCover(c->value, alpha, seqlab::CoverNotionFromName(notion),
                              exact ? seqlab::CoverMode::kExact : seqlab::CoverMode::kAuto);
    seqlab::Require(r.cover.has_value(), seqlab::ErrorCode::kDegenerateClass, r.note);
    *size = r.cover->members.size();
  });
}

seqlab_status seqlab_log_loss(double p_hat, int y, double* out) {
  SEQLAB_NONNULL(out);
  return Guard([&] { *out = seqlab::LogLoss(p_hat, y); });
}

seqlab_status seqlab_zeta(double x, double* out) {
  SEQLAB_NONNULL(out);
  return Guard([&] { *out = seqlab::Zeta(x); });
}

seqlab_status seqlab_hgap(double a, double b, double* out) {
  SEQLAB_NONNULL(out);
  return Guard([&] { *out = seqlab::HGap(a, b); });
}

seqlab_status seqlab_rate_exponent(double p, double* out) {
  SEQLAB_NONNULL(out);
  return Guard([&] { *out = seqlab::RateExponent(p); });
}

seqlab_status seqlab_run_command(const char* subcommand, const char* params_json, char** out) {
  SEQLAB_NONNULL(subcommand);
  SEQLAB_NONNULL(out);
  *out = nullptr;
  seqlab::internal::RunResult r;
  seqlab_status s = Guard([&] { r = seqlab::internal::Run(subcommand, params_json ? params_json : ""); });
  if (s != SEQLAB_OK) return s;
  *out = Copy(r.output);
  if (r.status != 0 && r.status != seqlab::internal::kStatusCheckFailed)
    last_error = r.output;
  return static_cast<seqlab_status>(r.status);
}

void seqlab_string_free(char* s) { std::free(s); }

}  // extern "C"
