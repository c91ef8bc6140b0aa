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

#include "lughat/repertoire.h"

#include <algorithm>
#include <charconv>
#include <string>

#include "lughat/embedded_data.h"
#include "lughat/error.h"

namespace lughat {
namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kRepertoireFormat,
              "repertoire line " + std::to_string(line) + ": " + what, line);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

char32_t parse_codepoint(std::string_view field, std::size_t line) {
  if (field.empty() || field.size() > 6) fail(line, "bad codepoint '" + std::string(field) + "'");
  std::uint32_t value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value, 16);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    fail(line, "bad codepoint '" + std::string(field) + "'");
  }
  if (value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) {
    fail(line, "not a Unicode scalar value '" + std::string(field) + "'");
  }
  return static_cast<char32_t>(value);
}

std::uint32_t parse_decimal(std::string_view field, std::size_t line) {
  std::uint32_t value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value, 10);
  if (field.empty() || ec != std::errc() ||
      ptr != field.data() + field.size()) {
    fail(line, "bad integer '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

Repertoire Repertoire::parse(std::string_view text) {
  Repertoire rep;
  bool have_version = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    auto fields = split_fields(line);
    if (fields.empty()) continue;

    const std::string_view directive = fields[0];
    if (directive == "version") {
      if (have_version) fail(line_no, "duplicate version line");
      if (fields.size() != 2) fail(line_no, "expected 'version <int>'");
      rep.version_ = static_cast<int>(parse_decimal(fields[1], line_no));
      have_version = true;
      continue;
    }
    if (!have_version) fail(line_no, "the first directive must be 'version'");

    if (directive == "letter") {
      if (fields.size() != 3) fail(line_no, "expected 'letter <hex> <rank>'");
      char32_t cp = parse_codepoint(fields[1], line_no);
      std::uint32_t rank = parse_decimal(fields[2], line_no);
      if (rep.rank_of_.contains(cp) || rep.extra_set_.contains(cp)) {
        fail(line_no, "codepoint listed twice");
      }
      rep.rank_of_.emplace(cp, rank);
      rep.letters_.push_back({cp, rank});
    } else if (directive == "extra") {
      if (fields.size() != 2) fail(line_no, "expected 'extra <hex>'");
      char32_t cp = parse_codepoint(fields[1], line_no);
      if (rep.rank_of_.contains(cp) || rep.extra_set_.contains(cp)) {
        fail(line_no, "codepoint listed twice");
      }
      rep.extra_set_.insert(cp);
      rep.extras_.push_back(cp);
    } else if (directive == "delimiter") {
      if (fields.size() != 2) fail(line_no, "expected 'delimiter <hex>'");
      char32_t cp = parse_codepoint(fields[1], line_no);
      if (!rep.delimiter_set_.insert(cp).second) {
        fail(line_no, "delimiter listed twice");
      }
      rep.delimiters_.push_back(cp);
    } else {
      fail(line_no, "unknown directive '" + std::string(directive) + "'");
    }
  }
  if (!have_version) fail(line_no, "missing version line");

  std::sort(rep.letters_.begin(), rep.letters_.end(),
            [](const Letter& a, const Letter& b) { return a.rank < b.rank; });
  for (std::size_t i = 0; i < rep.letters_.size(); ++i) {
    if (rep.letters_[i].rank != i) {
      throw Error(ErrorCode::kRepertoireFormat,
                  "letter ranks must be unique and contiguous from 0 (rank " +
                      std::to_string(i) + " missing or repeated)");
    }
  }
  return rep;
}

const Repertoire& Repertoire::shipped() {
  static const Repertoire rep = parse(embedded::repertoire_text());
  return rep;
}

std::optional<std::uint32_t> Repertoire::rank(char32_t cp) const {
  auto it = rank_of_.find(cp);
  if (it == rank_of_.end()) return std::nullopt;
  return it->second;
}

bool Repertoire::permits(char32_t cp) const {
  return rank_of_.contains(cp) || extra_set_.contains(cp);
}

std::uint64_t Repertoire::weight(char32_t cp) const {
  if (auto r = rank(cp)) return *r;
  return letters_.size() + static_cast<std::uint64_t>(cp);
}

}  // namespace lughat
