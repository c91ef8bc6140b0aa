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

#include "lughat/error.h"

#include <utility>

namespace lughat {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyKey: return "EmptyKey";
    case ErrorCode::kRepertoireViolation: return "RepertoireViolation";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kRevisionConflict: return "RevisionConflict";
    case ErrorCode::kKeyMismatch: return "KeyMismatch";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kConsistency: return "ConsistencyError";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kDuplicateKey: return "DuplicateKey";
    case ErrorCode::kRepertoireFormat: return "RepertoireFormatError";
    case ErrorCode::kLinkedEntry: return "LinkedEntry";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(message), code_(code), line_(line) {}

Error::Error(ErrorCode code, const std::string& message,
             std::vector<Violation> violations)
    : std::runtime_error(message),
      code_(code),
      violations_(std::move(violations)) {}

}  // namespace lughat
