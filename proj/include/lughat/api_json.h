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

#ifndef LUGHAT_API_JSON_H_
#define LUGHAT_API_JSON_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "lughat/error.h"
#include "lughat/lexicon.h"
#include "lughat/record.h"

// JSON encodings shared by the store file, the HTTP API and `--json` CLI
// output. Keys are emitted in a fixed order, so equal values always dump to
// equal bytes.
namespace lughat::api {

using Json = nlohmann::ordered_json;

// Compact, UTF-8, invalid sequences replaced.
std::string dump(const Json& j);

struct ApiEntry {
  DictionaryKind kind = DictionaryKind::kEnglishToSindhi;
  std::string key;
  EntryRecord record;
};

// Field order: kind, key, headword, pronunciation, grammar, sindhi_glosses,
// english_glosses, provenance, derived_from, revision.
Json entry_to_json(DictionaryKind kind, const std::string& key,
                   const EntryRecord& record);

// Strict: every field present with the right type and nothing else.
// Throws Error(kParse).
ApiEntry entry_from_json(const Json& j);

// Lenient form for request bodies: only `headword` is required; kind and
// key are optional, unknown fields are rejected.
ApiEntry entry_from_request(const Json& j);

Json word_list_to_json(DictionaryKind kind, const std::string& prefix,
                       std::size_t offset, std::size_t limit, std::size_t total,
                       const std::vector<WordListItem>& items);

Json changeset_to_json(const ChangeSet& changes);

Json tokens_to_json(const std::vector<Token>& tokens);

Json error_to_json(const Error& error);

Json health_to_json(const Lexicon& lexicon);

}  // namespace lughat::api

#endif  // LUGHAT_API_JSON_H_
