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

#include "lughat/lexicon.h"

#include <algorithm>
#include <stdexcept>

#include "lughat/crosslink.h"
#include "lughat/error.h"

namespace lughat {
namespace {

bool has_gloss_with_key(const std::vector<std::string>& glosses,
                        const std::string& english_key) {
  return std::any_of(glosses.begin(), glosses.end(), [&](const auto& g) {
    return normalize_text(g, Profile::kKey, Side::kEnglish) == english_key;
  });
}

}  // namespace

static void sort_items(std::vector<ChangeItem>& items, const Repertoire& rep) {
  struct Keyed {
    DictionaryKind kind;
    std::vector<std::uint64_t> weight;
    ChangeItem item;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(items.size());
  for (auto& item : items) {
    auto weight = sort_key(item.key, headword_side(item.kind), rep);
    keyed.push_back({item.kind, std::move(weight), std::move(item)});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.weight < b.weight;
  });
  items.clear();
  for (auto& k : keyed) items.push_back(std::move(k.item));
}

void sort_changes(ChangeSet& changes, const Repertoire& repertoire) {
  sort_items(changes.created, repertoire);
  sort_items(changes.updated, repertoire);
  sort_items(changes.deleted, repertoire);
}

Lexicon::Lexicon(const Repertoire& repertoire, StoreBackend backend)
    : repertoire_(repertoire),
      backend_(backend),
      e2s_(make_store(backend)),
      s2e_(make_store(backend)) {}

Lexicon::Lexicon(const Lexicon& other)
    : repertoire_(other.repertoire_),
      backend_(other.backend_),
      e2s_(other.e2s_->clone()),
      s2e_(other.s2e_->clone()),
      dirty_(other.dirty_),
      session_tag_(other.session_tag_) {}

Lexicon& Lexicon::operator=(const Lexicon& other) {
  if (this != &other) *this = Lexicon(other);
  return *this;
}

ValidationReport Lexicon::validate(DictionaryKind kind,
                                   const EntryRecord& record) const {
  ValidationReport report;
  auto check = [&](const std::string& text, const std::string& field) {
    for (auto v : validate_repertoire(text, repertoire_).violations) {
      v.field = field;
      report.violations.push_back(std::move(v));
    }
  };
  if (kind == DictionaryKind::kSindhiToEnglish) check(record.headword, "headword");
  for (std::size_t i = 0; i < record.sindhi_glosses.size(); ++i) {
    check(record.sindhi_glosses[i], "sindhi_glosses[" + std::to_string(i) + "]");
  }
  return report;
}

ChangeSet Lexicon::put(DictionaryKind kind, EntryRecord record) {
  record = sanitize(std::move(record));
  const NormalizedKey key =
      NormalizedKey::from_raw(record.headword, headword_side(kind));
  if (auto report = validate(kind, record); !report.ok()) {
    throw Error(ErrorCode::kRepertoireViolation,
                "Sindhi field contains codepoints outside the repertoire",
                std::move(report.violations));
  }

  Transaction txn(*this);
  const EntryRecord* existing = store(kind).find(key.text());
  record.provenance = Provenance::kManual;

  if (kind == DictionaryKind::kEnglishToSindhi) {
    std::optional<EntryRecord> old;
    if (existing) old = *existing;
    record.derived_from.clear();
    txn.write(kind, key.text(), record, /*touch=*/true);
    if (old) crosslink::retract(txn, key.text());
    crosslink::derive(txn, record);
  } else {
    // Links from English entries survive a manual edit, and so do their
    // glosses.
    record.derived_from.clear();
    if (existing) {
      record.derived_from = existing->derived_from;
      for (const auto& source_key : record.derived_from) {
        if (has_gloss_with_key(record.english_glosses, source_key)) continue;
        const EntryRecord* source =
            store(DictionaryKind::kEnglishToSindhi).find(source_key);
        record.english_glosses.push_back(source ? source->headword
                                                : source_key);
      }
    }
    txn.write(kind, key.text(), std::move(record), /*touch=*/true);
  }
  return txn.commit();
}

std::optional<EntryRecord> Lexicon::get(DictionaryKind kind,
                                        std::string_view raw_word) const {
  std::string key = normalize_text(raw_word, Profile::kKey, headword_side(kind));
  if (key.empty()) return std::nullopt;
  const EntryRecord* record = store(kind).find(key);
  if (!record) return std::nullopt;
  return *record;
}

std::optional<ChangeSet> Lexicon::remove(DictionaryKind kind,
                                         std::string_view raw_word) {
  std::string key = normalize_text(raw_word, Profile::kKey, headword_side(kind));
  if (key.empty()) return std::nullopt;
  const EntryRecord* existing = store(kind).find(key);
  if (!existing) return std::nullopt;

  Transaction txn(*this);
  if (kind == DictionaryKind::kEnglishToSindhi) {
    txn.erase(kind, key);
    crosslink::retract(txn, key);
    return txn.commit();
  }

  if (existing->derived_from.empty()) {
    txn.erase(kind, key);
    return txn.commit();
  }
  if (existing->provenance == Provenance::kDerived) {
    throw Error(ErrorCode::kLinkedEntry,
                "'" + existing->headword +
                    "' is derived from English entries; edit those instead");
  }
  // A manual entry that English entries still point to falls back to its
  // derived form.
  EntryRecord demoted;
  demoted.headword = existing->headword;
  demoted.provenance = Provenance::kDerived;
  demoted.derived_from = existing->derived_from;
  const EntryStore& e2s = store(DictionaryKind::kEnglishToSindhi);
  for (const auto& source_key : existing->derived_from) {
    const EntryRecord* source = e2s.find(source_key);
    if (!source) continue;
    if (demoted.grammar.empty()) demoted.grammar = source->grammar;
    demoted.english_glosses.push_back(source->headword);
  }
  txn.write(kind, key, std::move(demoted));
  return txn.commit();
}

std::vector<WordListItem> Lexicon::list_words(DictionaryKind kind,
                                              std::string_view prefix,
                                              std::size_t offset,
                                              std::size_t limit) const {
  const Side side = headword_side(kind);
  const std::string key_prefix = normalize_text(prefix, Profile::kKey, side);

  struct Row {
    std::vector<std::uint64_t> weight;
    WordListItem item;
  };
  std::vector<Row> rows;
  store(kind).for_each([&](const std::string& key, const EntryRecord& r) {
    if (!key.starts_with(key_prefix)) return;
    rows.push_back({sort_key(key, side, repertoire_),
                    {key, r.headword, r.provenance}});
  });
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.weight < b.weight; });

  std::vector<WordListItem> out;
  for (std::size_t i = offset; i < rows.size() && out.size() < limit; ++i) {
    out.push_back(std::move(rows[i].item));
  }
  return out;
}

std::size_t Lexicon::count_words(DictionaryKind kind,
                                 std::string_view prefix) const {
  const std::string key_prefix =
      normalize_text(prefix, Profile::kKey, headword_side(kind));
  std::size_t n = 0;
  store(kind).for_each([&](const std::string& key, const EntryRecord&) {
    if (key.starts_with(key_prefix)) ++n;
  });
  return n;
}

void Lexicon::revert(const ChangeSet& changes) {
  for (const auto& item : changes.created) store(item.kind).erase(item.key);
  for (const auto* list : {&changes.updated, &changes.deleted}) {
    for (const auto& item : *list) {
      if (item.previous) store(item.kind).upsert(item.key, *item.previous);
    }
  }
}

Transaction::Staged& Transaction::stage(DictionaryKind kind,
                                        const std::string& key) {
  auto [it, inserted] = staged_.try_emplace(Slot{kind, key});
  if (inserted) {
    if (const EntryRecord* r = lexicon_.store(kind).find(key)) {
      it->second.before = *r;
      it->second.after = *r;
    }
  }
  return it->second;
}

const EntryRecord* Transaction::find(DictionaryKind kind,
                                     const std::string& key) const {
  auto it = staged_.find(Slot{kind, key});
  if (it != staged_.end()) {
    return it->second.after ? &*it->second.after : nullptr;
  }
  return lexicon_.store(kind).find(key);
}

void Transaction::write(DictionaryKind kind, const std::string& key,
                        EntryRecord record, bool touch) {
  Staged& s = stage(kind, key);
  s.after = std::move(record);
  s.touch = s.touch || touch;
}

void Transaction::erase(DictionaryKind kind, const std::string& key) {
  stage(kind, key).after.reset();
}

void Transaction::for_each_current(
    DictionaryKind kind,
    const std::function<void(const std::string&, const EntryRecord&)>& fn)
    const {
  lexicon_.store(kind).for_each(
      [&](const std::string& key, const EntryRecord& record) {
        auto it = staged_.find(Slot{kind, key});
        if (it == staged_.end()) {
          fn(key, record);
        } else if (it->second.after) {
          fn(key, *it->second.after);
        }
      });
  for (const auto& [slot, s] : staged_) {
    if (slot.first == kind && !s.before && s.after) fn(slot.second, *s.after);
  }
}

ChangeSet Transaction::commit() {
  if (committed_) throw std::logic_error("transaction committed twice");
  committed_ = true;

  ChangeSet changes;
  changes.session_tag = lexicon_.session_tag();
  for (auto& [slot, s] : staged_) {
    const auto& [kind, key] = slot;
    EntryStore& store = lexicon_.store(kind);
    if (!s.before && s.after) {
      s.after->revision = 1;
      store.upsert(key, *s.after);
      changes.created.push_back({kind, key, *s.after, std::nullopt});
    } else if (s.before && s.after) {
      if (!s.touch && same_content(*s.before, *s.after)) continue;
      s.after->revision = s.before->revision + 1;
      store.upsert(key, *s.after);
      changes.updated.push_back({kind, key, *s.after, s.before});
    } else if (s.before && !s.after) {
      store.erase(key);
      changes.deleted.push_back({kind, key, *s.before, s.before});
    }
  }
  sort_changes(changes, lexicon_.repertoire());
  if (!changes.empty()) lexicon_.mark_dirty();
  return changes;
}

void ChangeLog::apply(Status status, ChangeItem item) {
  Slot slot{item.kind, item.key};
  auto it = net_.find(slot);
  if (it == net_.end()) {
    net_.emplace(std::move(slot), Net{status, std::move(item)});
    return;
  }
  Net& net = it->second;
  std::optional<EntryRecord> original = net.item.previous;
  switch (status) {
    case Status::kCreated:
      // Deleted earlier in the log, so it existed before: a net update.
      net.status = net.status == Status::kDeleted ? Status::kUpdated
                                                  : Status::kCreated;
      break;
    case Status::kUpdated:
      break;
    case Status::kDeleted:
      if (net.status == Status::kCreated) {
        net_.erase(it);
        return;
      }
      net.status = Status::kDeleted;
      break;
  }
  net.item = std::move(item);
  net.item.previous = std::move(original);
}

void ChangeLog::add(ChangeSet changes) {
  session_tag_ = changes.session_tag;
  for (auto& item : changes.created) apply(Status::kCreated, std::move(item));
  for (auto& item : changes.updated) apply(Status::kUpdated, std::move(item));
  for (auto& item : changes.deleted) apply(Status::kDeleted, std::move(item));
}

ChangeSet ChangeLog::take(const Repertoire& repertoire) {
  ChangeSet out;
  out.session_tag = session_tag_;
  for (auto& [slot, net] : net_) {
    switch (net.status) {
      case Status::kCreated: out.created.push_back(std::move(net.item)); break;
      case Status::kUpdated: out.updated.push_back(std::move(net.item)); break;
      case Status::kDeleted: out.deleted.push_back(std::move(net.item)); break;
    }
  }
  net_.clear();
  sort_changes(out, repertoire);
  return out;
}

}  // namespace lughat
