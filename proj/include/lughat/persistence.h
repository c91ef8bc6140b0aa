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

#ifndef LUGHAT_PERSISTENCE_H_
#define LUGHAT_PERSISTENCE_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lughat/lexicon.h"

namespace lughat::persistence {

inline constexpr std::string_view kMagic = "LUGHAT01";
inline constexpr int kFormatVersion = 1;

struct StoreFileHeader {
  std::string magic{kMagic};
  int format_version = kFormatVersion;
  int repertoire_version = 0;
  std::size_t entry_count_e2s = 0;
  std::size_t entry_count_s2e = 0;
};

// The exact bytes save() writes: a header line, then English-to-Sindhi
// records, then Sindhi-to-English records, one JSON object per LF-terminated
// line, each section in dictionary order.
std::string serialize(const Lexicon& lexicon);

struct SaveHooks {
  // Runs after the temporary file is complete and synced, before it is
  // renamed over the target. Throwing simulates a crash at that point.
  std::function<void(const std::filesystem::path& temp)> before_rename;
};

// Refuses (ConsistencyError) to write a lexicon that fails
// check_consistency. Atomic: the target is replaced by rename. Throws
// IoError. Returns the number of bytes written.
std::size_t save(Lexicon& lexicon, const std::filesystem::path& path,
                 const SaveHooks& hooks = {});

struct LoadOptions {
  // Re-derive every reverse link instead of failing on inconsistency.
  bool repair = false;
  StoreBackend backend = StoreBackend::kHash;
};

struct LoadResult {
  Lexicon lexicon;
  // Set when repair ran; lists what it changed.
  std::optional<ChangeSet> repairs;
};

// Throws BadMagic, UnsupportedVersion, ParseError (with line), DuplicateKey,
// ConsistencyError or IoError.
LoadResult load(const std::filesystem::path& path,
                const Repertoire& repertoire = Repertoire::shipped(),
                const LoadOptions& options = {});
LoadResult parse(std::string_view content,
                 const Repertoire& repertoire = Repertoire::shipped(),
                 const LoadOptions& options = {});

// --- TSV interchange --------------------------------------------------------

inline constexpr std::string_view kTsvHeader =
    "headword\tpronunciation\tgrammar\tsindhi_meaning\tenglish_meaning";

struct LineError {
  std::size_t line;
  ErrorCode code;
  std::string message;
};

struct ImportResult {
  ChangeSet changes;
  std::size_t lines_applied = 0;
  std::vector<LineError> errors;
};

// Each valid line is put() on its own; bad lines are reported and skipped.
// Throws IoError, or ParseError when the header line is wrong.
ImportResult import_tsv(Lexicon& lexicon, const std::filesystem::path& path,
                        DictionaryKind kind);
ImportResult import_tsv_text(Lexicon& lexicon, std::string_view content,
                             DictionaryKind kind);

// Writes the header and one line per record in dictionary order. For the
// Sindhi-to-English side only Manual records are written; derived ones are
// rebuilt by importing the English-to-Sindhi file. Returns the number of
// data lines.
std::size_t export_tsv(const Lexicon& lexicon,
                       const std::filesystem::path& path, DictionaryKind kind);
std::string export_tsv_text(const Lexicon& lexicon, DictionaryKind kind,
                            std::size_t* lines = nullptr);

// Field escaping: backslash, tab, LF and CR become \\ \t \n \r. Gloss
// fields also escape the Arabic comma, which separates glosses.
std::string escape_field(std::string_view text, bool gloss);
std::vector<std::string> split_glosses(std::string_view field);

}  // namespace lughat::persistence

#endif  // LUGHAT_PERSISTENCE_H_
