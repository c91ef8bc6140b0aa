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

#include "lughat/record.h"

#include <algorithm>
#include <unordered_set>

#include "lughat/error.h"

namespace lughat {
namespace {

std::vector<std::string> clean_list(std::vector<std::string> items) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (auto& item : items) {
    std::string norm = normalize_text(item, Profile::kDisplay, Side::kSindhi);
    if (norm.empty() || !seen.insert(norm).second) continue;
    out.push_back(std::move(norm));
  }
  return out;
}

}  // namespace

const char* kind_name(DictionaryKind kind) {
  return kind == DictionaryKind::kEnglishToSindhi ? "e2s" : "s2e";
}

std::optional<DictionaryKind> parse_kind(std::string_view name) {
  if (name == "e2s") return DictionaryKind::kEnglishToSindhi;
  if (name == "s2e") return DictionaryKind::kSindhiToEnglish;
  return std::nullopt;
}

const char* provenance_name(Provenance p) {
  return p == Provenance::kManual ? "manual" : "derived";
}

std::optional<Provenance> parse_provenance(std::string_view name) {
  if (name == "manual") return Provenance::kManual;
  if (name == "derived") return Provenance::kDerived;
  return std::nullopt;
}

NormalizedKey NormalizedKey::from_raw(std::string_view raw, Side side) {
  std::string text = normalize_text(raw, Profile::kKey, side);
  if (text.empty()) {
    throw Error(ErrorCode::kEmptyKey,
                "headword '" + std::string(raw) + "' normalizes to an empty key");
  }
  return NormalizedKey(std::move(text), side);
}

NormalizedKey NormalizedKey::from_normalized(std::string text, Side side) {
  if (text.empty()) throw Error(ErrorCode::kEmptyKey, "empty key");
  return NormalizedKey(std::move(text), side);
}

bool same_content(const EntryRecord& a, const EntryRecord& b) {
  return a.headword == b.headword && a.pronunciation == b.pronunciation &&
         a.grammar == b.grammar && a.sindhi_glosses == b.sindhi_glosses &&
         a.english_glosses == b.english_glosses &&
         a.provenance == b.provenance && a.derived_from == b.derived_from;
}

EntryRecord sanitize(EntryRecord record) {
  // Display normalization is side-independent.
  auto display = [](const std::string& s) {
    return normalize_text(s, Profile::kDisplay, Side::kSindhi);
  };
  record.headword = display(record.headword);
  record.pronunciation = display(record.pronunciation);
  record.grammar = display(record.grammar);
  record.sindhi_glosses = clean_list(std::move(record.sindhi_glosses));
  record.english_glosses = clean_list(std::move(record.english_glosses));
  std::sort(record.derived_from.begin(), record.derived_from.end());
  record.derived_from.erase(
      std::unique(record.derived_from.begin(), record.derived_from.end()),
      record.derived_from.end());
  return record;
}

}  // namespace lughat
