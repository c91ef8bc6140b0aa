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

#ifndef LUGHAT_RECORD_H_
#define LUGHAT_RECORD_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lughat/text.h"

namespace lughat {

enum class DictionaryKind { kEnglishToSindhi, kSindhiToEnglish };

// Headwords of an English-to-Sindhi record are English, and vice versa.
constexpr Side headword_side(DictionaryKind kind) {
  return kind == DictionaryKind::kEnglishToSindhi ? Side::kEnglish
                                                  : Side::kSindhi;
}

const char* kind_name(DictionaryKind kind);  // "e2s" / "s2e"
std::optional<DictionaryKind> parse_kind(std::string_view name);

enum class Provenance { kManual, kDerived };

const char* provenance_name(Provenance p);  // "manual" / "derived"
std::optional<Provenance> parse_provenance(std::string_view name);

// A headword in Key form. Construction normalizes; an empty result is
// rejected with EmptyKey.
class NormalizedKey {
 public:
  static NormalizedKey from_raw(std::string_view raw, Side side);
  // For text already in Key form (store iteration, file loading).
  static NormalizedKey from_normalized(std::string text, Side side);

  const std::string& text() const { return text_; }
  Side side() const { return side_; }

  friend bool operator==(const NormalizedKey&, const NormalizedKey&) = default;

 private:
  NormalizedKey(std::string text, Side side)
      : text_(std::move(text)), side_(side) {}

  std::string text_;
  Side side_;
};

// One dictionary record: the five lexicographic fields (headword,
// pronunciation, grammar, Sindhi meaning, English meaning) plus the
// bookkeeping that tracks automatic Sindhi-to-English derivation.
struct EntryRecord {
  std::string headword;
  std::string pronunciation;
  std::string grammar;
  std::vector<std::string> sindhi_glosses;
  std::vector<std::string> english_glosses;
  Provenance provenance = Provenance::kManual;
  // Key-form English headwords this record was derived from, sorted.
  std::vector<std::string> derived_from;
  std::uint64_t revision = 0;

  friend bool operator==(const EntryRecord&, const EntryRecord&) = default;

  // Accessors mirroring the form fields.
  const std::string& word() const { return headword; }
  const std::string& pronunciation_text() const { return pronunciation; }
  const std::string& grammar_tag() const { return grammar; }
  void set_word(std::string v) { headword = std::move(v); }
  void set_pronunciation(std::string v) { pronunciation = std::move(v); }
  void set_grammar(std::string v) { grammar = std::move(v); }
  void set_sindhi_meaning(std::vector<std::string> v) {
    sindhi_glosses = std::move(v);
  }
  void set_english_meaning(std::vector<std::string> v) {
    english_glosses = std::move(v);
  }
};

// Field equality ignoring revision.
bool same_content(const EntryRecord& a, const EntryRecord& b);

// Display-normalizes every text field, drops empty and repeated glosses and
// sorts derived_from. Does not touch provenance or revision.
EntryRecord sanitize(EntryRecord record);

struct ChangeItem {
  DictionaryKind kind;
  std::string key;
  EntryRecord snapshot;
  // State before the mutation; empty for creations. Used to revert a
  // mutation whose persistence failed. Not part of the wire format.
  std::optional<EntryRecord> previous;
};

// Entries created, updated and deleted by one mutation, including the
// derived reverse entries. A key appears at most once per list and never in
// both created and deleted.
struct ChangeSet {
  std::vector<ChangeItem> created;
  std::vector<ChangeItem> updated;
  std::vector<ChangeItem> deleted;
  std::string session_tag;

  bool empty() const {
    return created.empty() && updated.empty() && deleted.empty();
  }
};

}  // namespace lughat

#endif  // LUGHAT_RECORD_H_
