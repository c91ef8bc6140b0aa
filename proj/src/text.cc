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

#include "lughat/text.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cstdio>
#include <unordered_set>

namespace lughat {
namespace {

const icu::Normalizer2& nfc() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU NFC data unavailable");
    return n;
  }();
  return *instance;
}

icu::UnicodeString to_nfc(const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = nfc().normalize(s, status);
  if (U_FAILURE(status)) throw std::runtime_error("NFC normalization failed");
  return out;
}

// Trims and collapses every White_Space run to a single U+0020.
icu::UnicodeString collapse_whitespace(const icu::UnicodeString& s) {
  icu::UnicodeString out;
  bool pending_space = false;
  for (int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = !out.isEmpty();
      continue;
    }
    if (pending_space) {
      out.append(static_cast<UChar>(0x20));
      pending_space = false;
    }
    out.append(c);
  }
  return out;
}

icu::UnicodeString strip_for_key(const icu::UnicodeString& s, Side side) {
  icu::UnicodeString out;
  for (int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    i += U16_LENGTH(c);
    if (c == static_cast<UChar32>(kTatweel)) continue;
    if (side == Side::kSindhi && is_haraka(static_cast<char32_t>(c))) continue;
    out.append(c);
  }
  if (side == Side::kEnglish) out.foldCase(U_FOLD_CASE_DEFAULT);
  return out;
}

}  // namespace

bool is_haraka(char32_t cp) {
  // Tanween, fatha, damma, kasra, shadda, sukun and superscript alef.
  // U+0653..U+0655 are left alone: they compose into letters such as U+0622.
  return (cp >= 0x064B && cp <= 0x0652) || cp == 0x0670;
}

bool is_unicode_whitespace(char32_t cp) {
  return u_isUWhiteSpace(static_cast<UChar32>(cp));
}

std::string normalize_text(std::string_view raw, Profile profile, Side side) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  s = collapse_whitespace(to_nfc(s));
  if (profile == Profile::kKey) {
    // Removing marks or folding case can expose new compositions, so repeat
    // until nothing changes. Two rounds suffice in practice.
    for (int round = 0; round < 8; ++round) {
      icu::UnicodeString next =
          collapse_whitespace(to_nfc(strip_for_key(s, side)));
      if (next == s) break;
      s = std::move(next);
    }
  }
  std::string out;
  s.toUTF8String(out);
  return out;
}

std::vector<Token> tokenize_sindhi(std::string_view text,
                                   const Repertoire& rep) {
  const std::u32string cps = decode_utf8(text);
  auto is_delimiter = [&rep](char32_t c) {
    return is_unicode_whitespace(c) || rep.is_listed_delimiter(c);
  };

  std::vector<Token> tokens;
  std::unordered_set<std::u32string_view> seen;
  auto cursor = cps.begin();
  while (cursor != cps.end()) {
    auto first = std::find_if_not(cursor, cps.end(), is_delimiter);
    auto last = std::find_if(first, cps.end(), is_delimiter);
    cursor = last;
    if (first == last) continue;
    std::u32string_view word(&*first, static_cast<std::size_t>(last - first));
    if (!seen.insert(word).second) continue;
    tokens.push_back({encode_utf8(word),
                      static_cast<std::size_t>(first - cps.begin()),
                      static_cast<std::size_t>(last - cps.begin())});
  }
  return tokens;
}

ValidationReport validate_repertoire(std::string_view text,
                                     const Repertoire& rep) {
  ValidationReport report;
  const std::u32string cps = decode_utf8(text);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (!rep.permits(cps[i])) report.violations.push_back({"", i, cps[i]});
  }
  return report;
}

std::strong_ordering collate(std::string_view a, std::string_view b, Side side,
                             const Repertoire& rep) {
  if (side == Side::kEnglish) {
    // UTF-8 byte order is codepoint order.
    int c = a.compare(b);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
  }
  const std::u32string ca = decode_utf8(a);
  const std::u32string cb = decode_utf8(b);
  const std::size_t n = std::min(ca.size(), cb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (ca[i] == cb[i]) continue;
    return rep.weight(ca[i]) <=> rep.weight(cb[i]);
  }
  return ca.size() <=> cb.size();
}

std::vector<std::uint64_t> sort_key(std::string_view text, Side side,
                                    const Repertoire& rep) {
  std::vector<std::uint64_t> key;
  for (char32_t c : decode_utf8(text)) {
    key.push_back(side == Side::kSindhi ? rep.weight(c)
                                        : static_cast<std::uint64_t>(c));
  }
  return key;
}

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  for (int32_t i = 0; i < length;) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    out.push_back(c < 0 ? U'\uFFFD' : static_cast<char32_t>(c));
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = U'\uFFFD';
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool error = false;
  U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
  if (error) return;
  out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size() * 2);
  for (char32_t c : text) append_utf8(out, c);
  return out;
}

std::string format_codepoint(char32_t cp) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
  return buf;
}

}  // namespace lughat
