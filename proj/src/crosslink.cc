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

#include "lughat/crosslink.h"

#include <algorithm>
#include <tuple>

#include "lughat/error.h"

namespace lughat::crosslink {
namespace {

constexpr auto kE2S = DictionaryKind::kEnglishToSindhi;
constexpr auto kS2E = DictionaryKind::kSindhiToEnglish;

std::string english_key(std::string_view text) {
  return normalize_text(text, Profile::kKey, Side::kEnglish);
}

bool has_gloss_with_key(const std::vector<std::string>& glosses,
                        const std::string& key) {
  return std::any_of(glosses.begin(), glosses.end(),
                     [&](const auto& g) { return english_key(g) == key; });
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

void insert_sorted(std::vector<std::string>& v, const std::string& s) {
  auto it = std::lower_bound(v.begin(), v.end(), s);
  if (it == v.end() || *it != s) v.insert(it, s);
}

// Removes the link to `source_key` and the gloss it contributed.
void unlink(EntryRecord& record, const std::string& source_key) {
  std::erase(record.derived_from, source_key);
  std::erase_if(record.english_glosses, [&](const std::string& g) {
    return english_key(g) == source_key;
  });
}

}  // namespace

std::vector<std::string> derived_keys(const EntryRecord& source,
                                      const Repertoire& repertoire) {
  std::vector<std::string> keys;
  for (const auto& gloss : source.sindhi_glosses) {
    for (const Token& token : tokenize_sindhi(gloss, repertoire)) {
      std::string key = normalize_text(token.text, Profile::kKey, Side::kSindhi);
      if (key.empty() || contains(keys, key)) continue;
      keys.push_back(std::move(key));
    }
  }
  return keys;
}

void derive(Transaction& txn, const EntryRecord& source) {
  const std::string source_key =
      NormalizedKey::from_raw(source.headword, Side::kEnglish).text();
  const Repertoire& rep = txn.repertoire();

  for (std::size_t g = 0; g < source.sindhi_glosses.size(); ++g) {
    for (const Token& token : tokenize_sindhi(source.sindhi_glosses[g], rep)) {
      auto report = validate_repertoire(token.text, rep);
      if (!report.ok()) {
        for (auto& v : report.violations) {
          v.field = "sindhi_glosses[" + std::to_string(g) + "]";
          v.offset += token.start;
        }
        throw Error(ErrorCode::kRepertoireViolation,
                    "Sindhi meaning contains codepoints outside the repertoire",
                    std::move(report.violations));
      }
      const std::string key =
          normalize_text(token.text, Profile::kKey, Side::kSindhi);
      if (key.empty()) continue;

      EntryRecord record;
      if (const EntryRecord* existing = txn.find(kS2E, key)) {
        record = *existing;
        if (!has_gloss_with_key(record.english_glosses, source_key)) {
          record.english_glosses.push_back(source.headword);
        }
      } else {
        record.headword = token.text;
        record.grammar = source.grammar;
        record.english_glosses = {source.headword};
        record.provenance = Provenance::kDerived;
      }
      insert_sorted(record.derived_from, source_key);
      txn.write(kS2E, key, std::move(record));
    }
  }
}

void retract(Transaction& txn, const std::string& source_key) {
  std::vector<std::string> linked;
  txn.for_each_current(kS2E, [&](const std::string& key, const EntryRecord& r) {
    if (contains(r.derived_from, source_key)) linked.push_back(key);
  });
  for (const auto& key : linked) {
    EntryRecord record = *txn.find(kS2E, key);
    unlink(record, source_key);
    if (record.provenance == Provenance::kDerived &&
        (record.english_glosses.empty() || record.derived_from.empty())) {
      txn.erase(kS2E, key);
    } else {
      txn.write(kS2E, key, std::move(record));
    }
  }
}

ChangeSet derive(Lexicon& lexicon, const EntryRecord& source) {
  Transaction txn(lexicon);
  derive(txn, source);
  return txn.commit();
}

ChangeSet retract(Lexicon& lexicon, const NormalizedKey& source_key) {
  Transaction txn(lexicon);
  retract(txn, source_key.text());
  return txn.commit();
}

ChangeSet reconcile(Lexicon& lexicon, const EntryRecord* old,
                    const EntryRecord& updated) {
  Transaction txn(lexicon);
  if (old) retract(txn, NormalizedKey::from_raw(old->headword, Side::kEnglish).text());
  derive(txn, updated);
  return txn.commit();
}

ConsistencyReport check_consistency(const Lexicon& lexicon) {
  ConsistencyReport report;
  const EntryStore& e2s = lexicon.store(kE2S);
  const EntryStore& s2e = lexicon.store(kS2E);
  const Repertoire& rep = lexicon.repertoire();
  auto add = [&](char kind, DictionaryKind dict, const std::string& key,
                 std::string detail) {
    report.violations.push_back({kind, dict, key, std::move(detail)});
  };

  e2s.for_each([&](const std::string& key, const EntryRecord& r) {
    if (english_key(r.headword) != key) {
      add('k', kE2S, key, "headword '" + r.headword + "' does not match key");
    }
    for (const auto& token_key : derived_keys(r, rep)) {
      const EntryRecord* target = s2e.find(token_key);
      if (!target) {
        add('a', kE2S, key, "no Sindhi entry '" + token_key + "'");
        continue;
      }
      if (!has_gloss_with_key(target->english_glosses, key)) {
        add('a', kE2S, key, "Sindhi entry '" + token_key + "' lacks the gloss");
      }
      if (!contains(target->derived_from, key)) {
        add('a', kE2S, key, "Sindhi entry '" + token_key + "' lacks the link");
      }
    }
  });

  s2e.for_each([&](const std::string& key, const EntryRecord& r) {
    if (normalize_text(r.headword, Profile::kKey, Side::kSindhi) != key) {
      add('k', kS2E, key, "headword '" + r.headword + "' does not match key");
    }
    for (const auto& source : r.derived_from) {
      if (!e2s.find(source)) {
        add('b', kS2E, key, "derived_from '" + source + "' has no English entry");
      }
    }
    if (r.provenance == Provenance::kDerived && r.english_glosses.empty()) {
      add('c', kS2E, key, "derived entry has no English glosses");
    }
  });

  std::sort(report.violations.begin(), report.violations.end(),
            [](const auto& a, const auto& b) {
              return std::tie(a.dictionary, a.key, a.kind, a.detail) <
                     std::tie(b.dictionary, b.key, b.kind, b.detail);
            });
  return report;
}

ChangeSet rederive_all(Lexicon& lexicon) {
  Transaction txn(lexicon);
  std::vector<std::pair<std::string, EntryRecord>> reverse;
  lexicon.store(kS2E).for_each(
      [&](const std::string& key, const EntryRecord& r) {
        reverse.emplace_back(key, r);
      });
  for (auto& [key, record] : reverse) {
    if (record.provenance == Provenance::kDerived) {
      txn.erase(kS2E, key);
      continue;
    }
    if (record.derived_from.empty()) continue;
    for (const auto& source : std::vector(record.derived_from)) {
      unlink(record, source);
    }
    txn.write(kS2E, key, std::move(record));
  }

  std::vector<std::pair<std::vector<std::uint64_t>, EntryRecord>> sources;
  lexicon.store(kE2S).for_each([&](const std::string& key, const EntryRecord& r) {
    sources.emplace_back(sort_key(key, Side::kEnglish, lexicon.repertoire()), r);
  });
  std::sort(sources.begin(), sources.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [weight, record] : sources) derive(txn, record);
  return txn.commit();
}

}  // namespace lughat::crosslink
