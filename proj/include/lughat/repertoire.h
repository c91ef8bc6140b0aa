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

#ifndef LUGHAT_REPERTOIRE_H_
#define LUGHAT_REPERTOIRE_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace lughat {

// The set of codepoints legal in Sindhi fields, the dictionary order of the
// letters, and the extra token delimiters. Loaded from the line-oriented
// repertoire file described in docs/formats.md.
//
// Invariants (enforced by parse): letter ranks are unique and contiguous
// from 0, and no codepoint is listed twice across letters and extras.
class Repertoire {
 public:
  struct Letter {
    char32_t codepoint;
    std::uint32_t rank;
  };

  // Throws Error(kRepertoireFormat) with the offending line number.
  static Repertoire parse(std::string_view text);

  // The repertoire compiled in from data/sindhi.repertoire.
  static const Repertoire& shipped();

  int version() const { return version_; }

  // Letters ordered by rank.
  const std::vector<Letter>& letters() const { return letters_; }
  const std::vector<char32_t>& extras() const { return extras_; }
  const std::vector<char32_t>& delimiters() const { return delimiters_; }

  std::optional<std::uint32_t> rank(char32_t cp) const;
  bool permits(char32_t cp) const;
  // Delimiters listed in the file. Unicode whitespace is handled by the
  // tokenizer itself and is not required to appear here.
  bool is_listed_delimiter(char32_t cp) const {
    return delimiter_set_.contains(cp);
  }

  // Collation weight: the rank for letters, and past every rank for other
  // codepoints, ordered among themselves by scalar value.
  std::uint64_t weight(char32_t cp) const;

 private:
  int version_ = 0;
  std::vector<Letter> letters_;
  std::vector<char32_t> extras_;
  std::vector<char32_t> delimiters_;
  std::unordered_map<char32_t, std::uint32_t> rank_of_;
  std::unordered_set<char32_t> extra_set_;
  std::unordered_set<char32_t> delimiter_set_;
};

}  // namespace lughat

#endif  // LUGHAT_REPERTOIRE_H_
