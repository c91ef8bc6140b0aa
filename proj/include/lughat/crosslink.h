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

#ifndef LUGHAT_CROSSLINK_H_
#define LUGHAT_CROSSLINK_H_

#include <string>
#include <vector>

#include "lughat/lexicon.h"
#include "lughat/record.h"

// Keeps the Sindhi-to-English dictionary in step with the English-to-Sindhi
// one. Every Sindhi meaning of an English record is tokenized into words;
// each word becomes (or extends) a Sindhi headword whose English glosses
// include the English headword and whose derived_from lists its key.
//
// Rules:
//  - a new Sindhi entry is Derived, copies the source's grammar, and has an
//    empty pronunciation;
//  - an existing entry (Manual or Derived) only gains a gloss and a link;
//  - retracting a source removes its gloss and link, and deletes a Derived
//    entry left without sources; Manual entries are never deleted.
namespace lughat::crosslink {

ChangeSet derive(Lexicon& lexicon, const EntryRecord& source);
ChangeSet retract(Lexicon& lexicon, const NormalizedKey& source_key);
// retract(old) then derive(updated), as one atomic ChangeSet.
ChangeSet reconcile(Lexicon& lexicon, const EntryRecord* old,
                    const EntryRecord& updated);

// Staged forms used inside Lexicon mutations.
void derive(Transaction& txn, const EntryRecord& source);
void retract(Transaction& txn, const std::string& source_key);

// Key forms of the Sindhi words of a record's Sindhi meanings, in first
// occurrence order.
std::vector<std::string> derived_keys(const EntryRecord& source,
                                      const Repertoire& repertoire);

struct ConsistencyViolation {
  // 'a' missing reverse link, 'b' dangling derived_from, 'c' derived entry
  // without glosses, 'k' store key differs from the headword's key.
  char kind;
  DictionaryKind dictionary;
  std::string key;
  std::string detail;
};

struct ConsistencyReport {
  std::vector<ConsistencyViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Full scan.
ConsistencyReport check_consistency(const Lexicon& lexicon);

// Drops every derived link and re-derives them from the English entries.
// Manual Sindhi entries keep their own glosses.
ChangeSet rederive_all(Lexicon& lexicon);

}  // namespace lughat::crosslink

#endif  // LUGHAT_CROSSLINK_H_
