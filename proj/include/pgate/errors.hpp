// Copyright 2026 The pgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace pgate {

// The category drives the CLI exit code: validation problems exit with 2,
// numerical failures (non-convergence, singular systems) with 3.
enum class ErrorKind { validation, numerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message),
        kind_(kind),
        code_(std::move(code)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& code() const { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

[[noreturn]] inline void fail_validation(const std::string& code,
                                         const std::string& message) {
  throw Error(ErrorKind::validation, code, message);
}

[[noreturn]] inline void fail_numerical(const std::string& code,
                                        const std::string& message) {
  throw Error(ErrorKind::numerical, code, message);
}

inline void require(bool condition, const std::string& code,
                    const std::string& message) {
  if (!condition) fail_validation(code, message);
}

}  // namespace pgate
