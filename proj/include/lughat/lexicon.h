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

#ifndef LUGHAT_LEXICON_H_
#define LUGHAT_LEXICON_H_

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lughat/record.h"
#include "lughat/repertoire.h"
#include "lughat/store.h"

namespace lughat {

struct WordListItem {
  std::string key;
  std::string headword;
  Provenance provenance;

  friend bool operator==(const WordListItem&, const WordListItem&) = default;
};

// The twin dictionaries: English-to-Sindhi records entered by the user and
// Sindhi-to-English records, most of them derived automatically from the
// Sindhi meanings of the former.
//
// Not internally synchronized. Concurrent const calls are safe; mutations
// need exclusive access (see Service for the locking wrapper).
class Lexicon {
 public:
  explicit Lexicon(const Repertoire& repertoire = Repertoire::shipped(),
                   StoreBackend backend = StoreBackend::kHash);

  Lexicon(const Lexicon& other);
  Lexicon& operator=(const Lexicon& other);
  Lexicon(Lexicon&&) noexcept = default;
  Lexicon& operator=(Lexicon&&) noexcept = default;

  // Inserts or replaces the record filed under the Key form of its headword.
  // English-to-Sindhi puts re-derive the reverse entries. Throws EmptyKey or
  // RepertoireViolation; on error nothing is modified.
  ChangeSet put(DictionaryKind kind, EntryRecord record);

  std::optional<EntryRecord> get(DictionaryKind kind,
                                 std::string_view raw_word) const;

  // nullopt when the word is absent. Throws LinkedEntry when asked to delete
  // a derived Sindhi entry that English entries still point to.
  std::optional<ChangeSet> remove(DictionaryKind kind,
                                  std::string_view raw_word);

  // Headwords whose key starts with the Key form of `prefix`, in dictionary
  // order.
  std::vector<WordListItem> list_words(DictionaryKind kind,
                                       std::string_view prefix,
                                       std::size_t offset,
                                       std::size_t limit) const;
  std::size_t count_words(DictionaryKind kind, std::string_view prefix) const;

  std::size_t size(DictionaryKind kind) const { return store(kind).size(); }

  // Repertoire check of the Sindhi-script fields of `record` (the Sindhi
  // glosses, plus the headword of a Sindhi-to-English record).
  ValidationReport validate(DictionaryKind kind,
                            const EntryRecord& record) const;

  // Undoes a ChangeSet produced by the most recent mutation.
  void revert(const ChangeSet& changes);

  const Repertoire& repertoire() const { return repertoire_; }
  StoreBackend backend() const { return backend_; }

  // True once mutated since the last save or load.
  bool dirty() const { return dirty_; }
  void mark_clean() { dirty_ = false; }
  void mark_dirty() { dirty_ = true; }

  const std::string& session_tag() const { return session_tag_; }
  void set_session_tag(std::string tag) { session_tag_ = std::move(tag); }

  // Raw store access for derivation, persistence and tests. Writing through
  // these bypasses every invariant.
  EntryStore& store(DictionaryKind kind) {
    return kind == DictionaryKind::kEnglishToSindhi ? *e2s_ : *s2e_;
  }
  const EntryStore& store(DictionaryKind kind) const {
    return kind == DictionaryKind::kEnglishToSindhi ? *e2s_ : *s2e_;
  }

 private:
  Repertoire repertoire_;
  StoreBackend backend_;
  std::unique_ptr<EntryStore> e2s_;
  std::unique_ptr<EntryStore> s2e_;
  bool dirty_ = false;
  std::string session_tag_;
};

// Staged writes against a Lexicon. Reads see staged state; commit applies
// everything at once, assigns revisions, and reports the net effect (an
// entry rewritten with identical content is not reported and keeps its
// revision). Dropping an uncommitted Transaction discards it.
class Transaction {
 public:
  explicit Transaction(Lexicon& lexicon) : lexicon_(lexicon) {}

  Lexicon& lexicon() { return lexicon_; }
  const Repertoire& repertoire() const { return lexicon_.repertoire(); }

  const EntryRecord* find(DictionaryKind kind, const std::string& key) const;
  // `touch` reports the write as an update even when content is unchanged.
  void write(DictionaryKind kind, const std::string& key, EntryRecord record,
             bool touch = false);
  void erase(DictionaryKind kind, const std::string& key);

  // Visits the current (staged-over-stored) entries of one side in no
  // particular order. `fn` must not write to the transaction.
  void for_each_current(
      DictionaryKind kind,
      const std::function<void(const std::string&, const EntryRecord&)>& fn)
      const;

  ChangeSet commit();

 private:
  struct Staged {
    std::optional<EntryRecord> before;
    std::optional<EntryRecord> after;
    bool touch = false;
  };
  using Slot = std::pair<DictionaryKind, std::string>;

  Staged& stage(DictionaryKind kind, const std::string& key);

  Lexicon& lexicon_;
  std::map<Slot, Staged> staged_;
  bool committed_ = false;
};

// Orders each ChangeSet list by dictionary, then dictionary order of key.
void sort_changes(ChangeSet& changes, const Repertoire& repertoire);

// Folds successive ChangeSets into their net effect, e.g. an entry created
// and later updated is reported once as created.
class ChangeLog {
 public:
  void add(ChangeSet changes);
  ChangeSet take(const Repertoire& repertoire);

 private:
  enum class Status { kCreated, kUpdated, kDeleted };
  struct Net {
    Status status;
    ChangeItem item;
  };
  using Slot = std::pair<DictionaryKind, std::string>;

  void apply(Status status, ChangeItem item);

  std::map<Slot, Net> net_;
  std::string session_tag_;
};

}  // namespace lughat

#endif  // LUGHAT_LEXICON_H_
