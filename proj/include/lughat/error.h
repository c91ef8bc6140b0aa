// Copyright 2026 The Lughat Authors
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

#ifndef LUGHAT_ERROR_H_
#define LUGHAT_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lughat {

enum class ErrorCode {
  kEmptyKey,
  kRepertoireViolation,
  kNotFound,
  kRevisionConflict,
  kKeyMismatch,
  kIo,
  kConsistency,
  kBadMagic,
  kUnsupportedVersion,
  kParse,
  kDuplicateKey,
  kRepertoireFormat,
  kLinkedEntry,
  kInvalidArgument,
};

// Stable name used in JSON error bodies and CLI diagnostics.
const char* error_code_name(ErrorCode code);

// One disallowed codepoint found by repertoire validation. `offset` counts
// codepoints from the start of the validated field.
struct Violation {
  std::string field;
  std::size_t offset = 0;
  char32_t codepoint = 0;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0);
  Error(ErrorCode code, const std::string& message,
        std::vector<Violation> violations);

  ErrorCode code() const { return code_; }
  // 1-based line number for file parse errors, 0 when not applicable.
  std::size_t line() const { return line_; }
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  ErrorCode code_;
  std::size_t line_ = 0;
  std::vector<Violation> violations_;
};

}  // namespace lughat

#endif  // LUGHAT_ERROR_H_
