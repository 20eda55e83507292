// Copyright 2026 The Unsplit Authors
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

#ifndef UNSPLIT_ERROR_H_
#define UNSPLIT_ERROR_H_

#include <stdexcept>
#include <string>

namespace unsplit {

enum class ErrorCode {
  kInvalidInput,      // malformed file, unknown id, bad parameter
  kNotTransshipment,  // flow does not satisfy the balance equations
  kCyclicSupport,
  kInfeasible,
  kScaleGuard,  // instance too large for an exhaustive oracle
  kPrecondition,
  kInternal,  // an algorithm invariant was violated
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

}  // namespace unsplit

#endif  // UNSPLIT_ERROR_H_
