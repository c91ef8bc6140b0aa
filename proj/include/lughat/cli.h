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

#ifndef LUGHAT_CLI_H_
#define LUGHAT_CLI_H_

#include <filesystem>
#include <ostream>

#include "lughat/record.h"

namespace lughat::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitNotFound = 1,
  kExitValidation = 2,
  kExitStore = 3,
  kExitUsage = 4,
};

enum class OutputMode { kHuman, kJson };

struct CliConfig {
  // --store, then $LUGHAT_STORE, then ./lughat.store.
  std::filesystem::path store_path = "lughat.store";
  DictionaryKind kind = DictionaryKind::kEnglishToSindhi;
  OutputMode output_mode = OutputMode::kHuman;
  bool repair = false;
};

int exit_code_for(ErrorCode code);

// Entry point of the `lughat` tool. Results go to `out`, diagnostics to
// `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lughat::cli

#endif  // LUGHAT_CLI_H_
