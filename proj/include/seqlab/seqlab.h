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

#ifndef SEQLAB_SEQLAB_H_
#define SEQLAB_SEQLAB_H_

#include <stddef.h>

#if defined(_WIN32)
#define SEQLAB_API __declspec(dllexport)
#else
#define SEQLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  SEQLAB_OK = 0,
  SEQLAB_ERR_DOMAIN = 1,
  SEQLAB_ERR_BUDGET = 2,
  SEQLAB_ERR_UNSUPPORTED = 3,
  SEQLAB_ERR_DEGENERATE = 4,
  SEQLAB_ERR_CONDITIONING = 5,
  SEQLAB_ERR_PRECONDITION = 6,
  SEQLAB_ERR_UNBOUNDED = 7,
  SEQLAB_ERR_INVALID_CONFIG = 8,
  SEQLAB_ERR_IO = 9,
  SEQLAB_CHECK_FAILED = 10,
  SEQLAB_ERR_INTERNAL = 11
} seqlab_status;

typedef struct seqlab_class seqlab_class;

SEQLAB_API const char* seqlab_version(void);
SEQLAB_API const char* seqlab_status_name(seqlab_status status);
/* Message of the last failed call on this thread; empty after success. */
SEQLAB_API const char* seqlab_last_error(void);

SEQLAB_API seqlab_status seqlab_class_from_json(const char* spec_json, seqlab_class** out);
/* Composes a function class with a context tree given in prefix order. */
SEQLAB_API seqlab_status seqlab_class_compose(const seqlab_class* f, int depth, const int* nodes,
                                              size_t num_nodes, seqlab_class** out);
SEQLAB_API void seqlab_class_free(seqlab_class* c);
SEQLAB_API seqlab_status seqlab_class_size(const seqlab_class* c, size_t* out);
/* Horizon of a joint class; SEQLAB_ERR_UNSUPPORTED for function classes. */
SEQLAB_API seqlab_status seqlab_class_horizon(const seqlab_class* c, int* out);
SEQLAB_API seqlab_status seqlab_class_to_json(const seqlab_class* c, char** out);

SEQLAB_API seqlab_status seqlab_shtarkov(const seqlab_class* c, int threads, double* value);
SEQLAB_API seqlab_status seqlab_minimax_lse(const seqlab_class* c, double* value);
SEQLAB_API seqlab_status seqlab_nml_predict(const seqlab_class* c, const int* history,
                                            size_t history_len, double* probs, size_t probs_len);
SEQLAB_API seqlab_status seqlab_cover_size(const seqlab_class* c, const char* notion, double alpha,
                                           int exact, size_t* size);

SEQLAB_API seqlab_status seqlab_log_loss(double p_hat, int y, double* out);
SEQLAB_API seqlab_status seqlab_zeta(double x, double* out);
SEQLAB_API seqlab_status seqlab_hgap(double a, double b, double* out);
SEQLAB_API seqlab_status seqlab_rate_exponent(double p, double* out);

/* Runs a subcommand with a JSON object of parameters. *out receives the
   result document, or an error document on failure; free it with
   seqlab_string_free. */
SEQLAB_API seqlab_status seqlab_run_command(const char* subcommand, const char* params_json,
                                            char** out);
SEQLAB_API void seqlab_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif  /* SEQLAB_SEQLAB_H_ */
