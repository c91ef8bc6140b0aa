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

#ifndef LUGHAT_TEXT_H_
#define LUGHAT_TEXT_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lughat/error.h"
#include "lughat/repertoire.h"

namespace lughat {

enum class Side { kSindhi, kEnglish };

enum class Profile {
  // NFC, whitespace trimmed and collapsed. Used for everything stored.
  kDisplay,
  // Display plus tatweel removal, harakat removal (Sindhi) and case folding
  // (English). Used for hash keys and comparisons.
  kKey,
};

inline constexpr char32_t kTatweel = 0x0640;

// Arabic vowel marks that are optional in written Sindhi.
bool is_haraka(char32_t cp);

// Unicode White_Space property.
bool is_unicode_whitespace(char32_t cp);

// Total and idempotent. An empty result means the input has no usable
// content for the given profile.
std::string normalize_text(std::string_view raw, Profile profile, Side side);

struct Token {
  std::string text;
  // Codepoint offsets into the tokenized string, half-open.
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

// Splits Display-normalized text on Unicode whitespace and the repertoire's
// delimiters. Empty tokens are dropped and repeated token texts keep only
// their first occurrence.
std::vector<Token> tokenize_sindhi(
    std::string_view text, const Repertoire& rep = Repertoire::shipped());

// Reports every codepoint outside letters and extras. Violation::field is
// left empty for the caller to fill in.
ValidationReport validate_repertoire(std::string_view text,
                                     const Repertoire& rep);

// Dictionary order over Key-normalized strings. Sindhi compares by
// repertoire rank, English by codepoint.
std::strong_ordering collate(std::string_view a, std::string_view b, Side side,
                             const Repertoire& rep);

// Precomputed collation weights; comparing two sort keys lexicographically
// agrees with collate().
std::vector<std::uint64_t> sort_key(std::string_view text, Side side,
                                    const Repertoire& rep);

// UTF-8 helpers. Ill-formed input decodes to U+FFFD.
std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(std::u32string_view text);
void append_utf8(std::string& out, char32_t cp);
std::string format_codepoint(char32_t cp);  // "U+067B"

}  // namespace lughat

#endif  // LUGHAT_TEXT_H_
