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

#include "lughat/api_json.h"

#include <set>

namespace lughat::api {
namespace {

constexpr const char* kEntryFields[] = {
    "kind",            "key",        "headword",     "pronunciation",
    "grammar",         "sindhi_glosses", "english_glosses", "provenance",
    "derived_from",    "revision"};

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::kParse, what);
}

std::string get_string(const Json& j, const char* field, bool required) {
  auto it = j.find(field);
  if (it == j.end()) {
    if (required) bad(std::string("missing field '") + field + "'");
    return {};
  }
  if (!it->is_string()) bad(std::string("field '") + field + "' must be a string");
  return it->get<std::string>();
}

std::vector<std::string> get_strings(const Json& j, const char* field,
                                     bool required) {
  auto it = j.find(field);
  if (it == j.end()) {
    if (required) bad(std::string("missing field '") + field + "'");
    return {};
  }
  if (!it->is_array()) bad(std::string("field '") + field + "' must be an array");
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) {
      bad(std::string("field '") + field + "' must hold strings");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

void reject_unknown(const Json& j) {
  static const std::set<std::string> known(std::begin(kEntryFields),
                                           std::end(kEntryFields));
  for (const auto& [name, value] : j.items()) {
    if (!known.contains(name)) bad("unknown field '" + name + "'");
  }
}

ApiEntry parse(const Json& j, bool strict) {
  if (!j.is_object()) bad("entry must be a JSON object");
  reject_unknown(j);
  ApiEntry entry;

  std::string kind = get_string(j, "kind", strict);
  if (!kind.empty() || strict) {
    auto k = parse_kind(kind);
    if (!k) bad("kind must be 'e2s' or 's2e'");
    entry.kind = *k;
  }
  entry.key = get_string(j, "key", strict);

  EntryRecord& r = entry.record;
  r.headword = get_string(j, "headword", true);
  r.pronunciation = get_string(j, "pronunciation", strict);
  r.grammar = get_string(j, "grammar", strict);
  r.sindhi_glosses = get_strings(j, "sindhi_glosses", strict);
  r.english_glosses = get_strings(j, "english_glosses", strict);
  r.derived_from = get_strings(j, "derived_from", strict);

  std::string provenance = get_string(j, "provenance", strict);
  if (!provenance.empty() || strict) {
    auto p = parse_provenance(provenance);
    if (!p) bad("provenance must be 'manual' or 'derived'");
    r.provenance = *p;
  }

  auto rev = j.find("revision");
  if (rev == j.end()) {
    if (strict) bad("missing field 'revision'");
  } else {
    if (!rev->is_number_unsigned()) {
      bad("field 'revision' must be a non-negative integer");
    }
    r.revision = rev->get<std::uint64_t>();
  }
  return entry;
}

Json item_list(const std::vector<ChangeItem>& items) {
  Json out = Json::array();
  for (const auto& item : items) {
    out.push_back(entry_to_json(item.kind, item.key, item.snapshot));
  }
  return out;
}

}  // namespace

std::string dump(const Json& j) {
  return j.dump(-1, ' ', false, Json::error_handler_t::replace);
}

Json entry_to_json(DictionaryKind kind, const std::string& key,
                   const EntryRecord& record) {
  Json j = Json::object();
  j["kind"] = kind_name(kind);
  j["key"] = key;
  j["headword"] = record.headword;
  j["pronunciation"] = record.pronunciation;
  j["grammar"] = record.grammar;
  j["sindhi_glosses"] = record.sindhi_glosses;
  j["english_glosses"] = record.english_glosses;
  j["provenance"] = provenance_name(record.provenance);
  j["derived_from"] = record.derived_from;
  j["revision"] = record.revision;
  return j;
}

ApiEntry entry_from_json(const Json& j) { return parse(j, true); }

ApiEntry entry_from_request(const Json& j) { return parse(j, false); }

Json word_list_to_json(DictionaryKind kind, const std::string& prefix,
                       std::size_t offset, std::size_t limit, std::size_t total,
                       const std::vector<WordListItem>& items) {
  Json j = Json::object();
  j["kind"] = kind_name(kind);
  j["prefix"] = prefix;
  j["offset"] = offset;
  j["limit"] = limit;
  j["total"] = total;
  Json list = Json::array();
  for (const auto& item : items) {
    Json row = Json::object();
    row["key"] = item.key;
    row["headword"] = item.headword;
    row["provenance"] = provenance_name(item.provenance);
    list.push_back(std::move(row));
  }
  j["items"] = std::move(list);
  return j;
}

Json changeset_to_json(const ChangeSet& changes) {
  Json j = Json::object();
  j["session_tag"] = changes.session_tag;
  j["created"] = item_list(changes.created);
  j["updated"] = item_list(changes.updated);
  j["deleted"] = item_list(changes.deleted);
  return j;
}

Json tokens_to_json(const std::vector<Token>& tokens) {
  Json list = Json::array();
  for (const auto& t : tokens) {
    Json row = Json::object();
    row["text"] = t.text;
    row["start"] = t.start;
    row["end"] = t.end;
    list.push_back(std::move(row));
  }
  Json j = Json::object();
  j["tokens"] = std::move(list);
  return j;
}

Json error_to_json(const Error& error) {
  Json j = Json::object();
  j["error"] = error_code_name(error.code());
  j["message"] = error.what();
  if (error.line() != 0) j["line"] = error.line();
  if (!error.violations().empty()) {
    Json list = Json::array();
    for (const auto& v : error.violations()) {
      Json row = Json::object();
      row["field"] = v.field;
      row["offset"] = v.offset;
      row["codepoint"] = format_codepoint(v.codepoint);
      list.push_back(std::move(row));
    }
    j["violations"] = std::move(list);
  }
  return j;
}

Json health_to_json(const Lexicon& lexicon) {
  Json j = Json::object();
  j["status"] = "ok";
  j["entries_e2s"] = lexicon.size(DictionaryKind::kEnglishToSindhi);
  j["entries_s2e"] = lexicon.size(DictionaryKind::kSindhiToEnglish);
  return j;
}

}  // namespace lughat::api
