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

#ifndef SEQLAB_ERROR_H_
#define SEQLAB_ERROR_H_

#include <stdexcept>
#include <string>

namespace seqlab {

// Numeric values are shared with the C API status codes.
enum class ErrorCode {
  kDomain = 1,
  kBudgetExceeded = 2,
  kUnsupported = 3,
  kDegenerateClass = 4,
  kConditioning = 5,
  kPrecondition = 6,
  kUnbounded = 7,
  kInvalidConfig = 8,
  kIo = 9,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void Require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) Fail(code, message);
}

}  // namespace seqlab

#endif  // SEQLAB_ERROR_H_
