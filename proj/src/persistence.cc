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

#include "lughat/persistence.h"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <tuple>

#include "lughat/api_json.h"
#include "lughat/crosslink.h"
#include "lughat/error.h"

namespace lughat::persistence {
namespace {

using api::Json;

constexpr auto kE2S = DictionaryKind::kEnglishToSindhi;
constexpr auto kS2E = DictionaryKind::kSindhiToEnglish;

[[noreturn]] void io_error(const std::string& what,
                           const std::filesystem::path& path, int err) {
  throw Error(ErrorCode::kIo,
              what + " '" + path.string() + "': " + std::strerror(err));
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParse,
              "line " + std::to_string(line) + ": " + what, line);
}

struct SortedEntry {
  std::vector<std::uint64_t> weight;
  const std::string* key;
  const EntryRecord* record;
};

std::vector<SortedEntry> sorted_entries(const Lexicon& lexicon,
                                        DictionaryKind kind) {
  std::vector<SortedEntry> out;
  out.reserve(lexicon.size(kind));
  const Side side = headword_side(kind);
  lexicon.store(kind).for_each(
      [&](const std::string& key, const EntryRecord& record) {
        out.push_back({sort_key(key, side, lexicon.repertoire()), &key, &record});
      });
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.weight < b.weight; });
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error("cannot open", path, errno);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) io_error("cannot read", path, errno);
  return std::move(buf).str();
}

void write_all(int fd, std::string_view data, const std::filesystem::path& path) {
  while (!data.empty()) {
    ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      io_error("cannot write", path, errno);
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

void sync_directory(const std::filesystem::path& dir) {
  int fd = ::open(dir.empty() ? "." : dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd < 0) return;
  ::fsync(fd);
  ::close(fd);
}

std::size_t header_count(const Json& header, const char* field) {
  auto it = header.find(field);
  if (it == header.end() || !it->is_number_unsigned()) {
    parse_error(1, std::string("header field '") + field +
                       "' must be a non-negative integer");
  }
  return it->get<std::size_t>();
}

StoreFileHeader parse_header(std::string_view line, const Repertoire& rep) {
  Json header = Json::parse(line, nullptr, false);
  if (header.is_discarded() || !header.is_object() ||
      !header.contains("magic") || !header["magic"].is_string() ||
      header["magic"].get<std::string>() != kMagic) {
    throw Error(ErrorCode::kBadMagic, "not a lughat store file", 1);
  }
  for (const auto& [name, value] : header.items()) {
    if (name != "magic" && name != "format_version" &&
        name != "repertoire_version" && name != "entry_count_e2s" &&
        name != "entry_count_s2e") {
      parse_error(1, "unknown header field '" + name + "'");
    }
  }
  StoreFileHeader h;
  h.format_version = static_cast<int>(header_count(header, "format_version"));
  if (h.format_version != kFormatVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "store format version " + std::to_string(h.format_version) +
                    " is not supported",
                1);
  }
  h.repertoire_version =
      static_cast<int>(header_count(header, "repertoire_version"));
  if (h.repertoire_version != rep.version()) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "store was written with repertoire version " +
                    std::to_string(h.repertoire_version) + ", this build has " +
                    std::to_string(rep.version()),
                1);
  }
  h.entry_count_e2s = header_count(header, "entry_count_e2s");
  h.entry_count_s2e = header_count(header, "entry_count_s2e");
  return h;
}

void check_record(const api::ApiEntry& entry, DictionaryKind expected,
                  const Lexicon& lexicon, std::size_t line) {
  const EntryRecord& r = entry.record;
  if (entry.kind != expected) {
    parse_error(line, std::string("expected a ") + kind_name(expected) +
                          " record");
  }
  if (normalize_text(r.headword, Profile::kKey, headword_side(expected)) !=
      entry.key) {
    parse_error(line, "key does not match headword");
  }
  if (entry.key.empty()) parse_error(line, "empty key");
  EntryRecord clean = sanitize(r);
  if (!same_content(clean, r)) parse_error(line, "record is not in normalized form");
  if (r.revision == 0) parse_error(line, "revision must be positive");
  if (expected == kE2S && (r.provenance != Provenance::kManual ||
                           !r.derived_from.empty())) {
    parse_error(line, "English entries must be manual and underived");
  }
  if (r.provenance == Provenance::kDerived && r.derived_from.empty()) {
    parse_error(line, "derived entry without derived_from");
  }
  if (!lexicon.validate(expected, r).ok()) {
    parse_error(line, "Sindhi field outside the repertoire");
  }
}

// --- TSV helpers ---

constexpr char32_t kArabicComma = 0x060C;
constexpr std::string_view kGlossSeparator = "\xD8\x8C ";  // U+060C, space

std::string join_glosses(const std::vector<std::string>& glosses) {
  std::string out;
  for (std::size_t i = 0; i < glosses.size(); ++i) {
    if (i) out += kGlossSeparator;
    out += escape_field(glosses[i], true);
  }
  return out;
}

// Unescapes a non-gloss field. Returns false on a bad escape.
bool unescape(std::string_view field, std::string& out) {
  std::u32string cps = decode_utf8(field);
  std::u32string result;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (cps[i] != U'\\') {
      result.push_back(cps[i]);
      continue;
    }
    if (++i == cps.size()) return false;
    switch (cps[i]) {
      case U'\\': result.push_back(U'\\'); break;
      case U't': result.push_back(U'\t'); break;
      case U'n': result.push_back(U'\n'); break;
      case U'r': result.push_back(U'\r'); break;
      case kArabicComma: result.push_back(kArabicComma); break;
      default: return false;
    }
  }
  out = encode_utf8(result);
  return true;
}

}  // namespace

std::string serialize(const Lexicon& lexicon) {
  Json header = Json::object();
  header["magic"] = kMagic;
  header["format_version"] = kFormatVersion;
  header["repertoire_version"] = lexicon.repertoire().version();
  header["entry_count_e2s"] = lexicon.size(kE2S);
  header["entry_count_s2e"] = lexicon.size(kS2E);

  std::string out = api::dump(header);
  out += '\n';
  for (DictionaryKind kind : {kE2S, kS2E}) {
    for (const auto& e : sorted_entries(lexicon, kind)) {
      out += api::dump(api::entry_to_json(kind, *e.key, *e.record));
      out += '\n';
    }
  }
  return out;
}

std::size_t save(Lexicon& lexicon, const std::filesystem::path& path,
                 const SaveHooks& hooks) {
  auto report = crosslink::check_consistency(lexicon);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw Error(ErrorCode::kConsistency,
                "refusing to save an inconsistent lexicon (" +
                    std::to_string(report.violations.size()) +
                    " violations, first: " + v.key + ": " + v.detail + ")");
  }
  const std::string content = serialize(lexicon);

  std::filesystem::path temp = path;
  temp += ".tmp." + std::to_string(::getpid());
  int fd = ::open(temp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) io_error("cannot create", temp, errno);
  try {
    write_all(fd, content, temp);
    if (::fsync(fd) != 0) io_error("cannot sync", temp, errno);
  } catch (...) {
    ::close(fd);
    std::filesystem::remove(temp);
    throw;
  }
  if (::close(fd) != 0) {
    int err = errno;
    std::filesystem::remove(temp);
    io_error("cannot close", temp, err);
  }

  try {
    if (hooks.before_rename) hooks.before_rename(temp);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(temp, ec);
    throw;
  }
  if (::rename(temp.c_str(), path.c_str()) != 0) {
    int err = errno;
    std::error_code ec;
    std::filesystem::remove(temp, ec);
    io_error("cannot replace", path, err);
  }
  sync_directory(path.parent_path());
  lexicon.mark_clean();
  return content.size();
}

LoadResult parse(std::string_view content, const Repertoire& repertoire,
                 const LoadOptions& options) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) {
      // The last line lost its terminator: the file was cut short.
      if (lines.empty()) {
        parse_header(content.substr(pos), repertoire);
      }
      parse_error(lines.size() + 1, "truncated line (no line terminator)");
    }
    lines.push_back(content.substr(pos, eol - pos));
    pos = eol + 1;
  }
  if (lines.empty()) throw Error(ErrorCode::kBadMagic, "empty store file", 1);

  const StoreFileHeader header = parse_header(lines[0], repertoire);
  const std::size_t expected = header.entry_count_e2s + header.entry_count_s2e;

  LoadResult result{Lexicon(repertoire, options.backend), std::nullopt};
  Lexicon& lexicon = result.lexicon;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (i > expected) {
      parse_error(line_no, "more records than the header declares (" +
                               std::to_string(expected) + ")");
    }
    Json j = Json::parse(lines[i], nullptr, false);
    if (j.is_discarded()) parse_error(line_no, "malformed JSON");
    api::ApiEntry entry;
    try {
      entry = api::entry_from_json(j);
    } catch (const Error& e) {
      parse_error(line_no, e.what());
    }
    const DictionaryKind expected_kind = i <= header.entry_count_e2s ? kE2S : kS2E;
    check_record(entry, expected_kind, lexicon, line_no);
    EntryStore& store = lexicon.store(expected_kind);
    if (store.find(entry.key)) {
      throw Error(ErrorCode::kDuplicateKey,
                  "line " + std::to_string(line_no) + ": duplicate key '" +
                      entry.key + "'",
                  line_no);
    }
    store.upsert(entry.key, std::move(entry.record));
  }
  if (lines.size() - 1 < expected) {
    parse_error(lines.size() + 1,
                "file ends after " + std::to_string(lines.size() - 1) +
                    " records, header declares " + std::to_string(expected));
  }

  auto report = crosslink::check_consistency(lexicon);
  if (!report.ok()) {
    if (!options.repair) {
      const auto& v = report.violations.front();
      throw Error(ErrorCode::kConsistency,
                  "store is inconsistent (" +
                      std::to_string(report.violations.size()) +
                      " violations, first: " + v.key + ": " + v.detail +
                      "); load with repair to re-derive reverse entries");
    }
    result.repairs = crosslink::rederive_all(lexicon);
    if (!crosslink::check_consistency(lexicon).ok()) {
      throw Error(ErrorCode::kConsistency, "repair did not restore consistency");
    }
  }
  if (result.repairs && !result.repairs->empty()) {
    lexicon.mark_dirty();
  } else {
    lexicon.mark_clean();
  }
  return result;
}

LoadResult load(const std::filesystem::path& path, const Repertoire& repertoire,
                const LoadOptions& options) {
  return parse(read_file(path), repertoire, options);
}

std::string escape_field(std::string_view text, bool gloss) {
  std::string out;
  for (char32_t c : decode_utf8(text)) {
    switch (c) {
      case U'\\': out += "\\\\"; break;
      case U'\t': out += "\\t"; break;
      case U'\n': out += "\\n"; break;
      case U'\r': out += "\\r"; break;
      default:
        if (gloss && c == kArabicComma) out += '\\';
        append_utf8(out, c);
    }
  }
  return out;
}

std::vector<std::string> split_glosses(std::string_view field) {
  std::vector<std::string> glosses;
  std::u32string current;
  std::u32string cps = decode_utf8(field);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (cps[i] == U'\\' && i + 1 < cps.size()) {
      current.push_back(cps[i]);
      current.push_back(cps[++i]);
    } else if (cps[i] == kArabicComma) {
      glosses.push_back(encode_utf8(current));
      current.clear();
    } else {
      current.push_back(cps[i]);
    }
  }
  glosses.push_back(encode_utf8(current));
  return glosses;
}

std::string export_tsv_text(const Lexicon& lexicon, DictionaryKind kind,
                            std::size_t* lines) {
  std::string out(kTsvHeader);
  out += '\n';
  std::size_t n = 0;
  for (const auto& e : sorted_entries(lexicon, kind)) {
    const EntryRecord& r = *e.record;
    if (kind == kS2E && r.provenance != Provenance::kManual) continue;
    out += escape_field(r.headword, false);
    out += '\t';
    out += escape_field(r.pronunciation, false);
    out += '\t';
    out += escape_field(r.grammar, false);
    out += '\t';
    out += join_glosses(r.sindhi_glosses);
    out += '\t';
    out += join_glosses(r.english_glosses);
    out += '\n';
    ++n;
  }
  if (lines) *lines = n;
  return out;
}

std::size_t export_tsv(const Lexicon& lexicon, const std::filesystem::path& path,
                       DictionaryKind kind) {
  std::size_t lines = 0;
  const std::string content = export_tsv_text(lexicon, kind, &lines);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) io_error("cannot create", path, errno);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) io_error("cannot write", path, errno);
  return lines;
}

ImportResult import_tsv_text(Lexicon& lexicon, std::string_view content,
                             DictionaryKind kind) {
  ImportResult result;
  ChangeLog log;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line_no == 1) {
      if (line != kTsvHeader) {
        parse_error(1, "expected the TSV column header");
      }
      continue;
    }
    if (line.empty()) continue;

    auto reject = [&](ErrorCode code, std::string message) {
      result.errors.push_back({line_no, code, std::move(message)});
    };

    std::vector<std::string_view> columns;
    std::size_t start = 0;
    for (std::size_t tab; (tab = line.find('\t', start)) != std::string_view::npos;
         start = tab + 1) {
      columns.push_back(line.substr(start, tab - start));
    }
    columns.push_back(line.substr(start));
    if (columns.size() != 5) {
      reject(ErrorCode::kParse,
             "expected 5 columns, found " + std::to_string(columns.size()));
      continue;
    }

    EntryRecord record;
    bool ok = unescape(columns[0], record.headword) &&
              unescape(columns[1], record.pronunciation) &&
              unescape(columns[2], record.grammar);
    for (int col : {3, 4}) {
      auto& target = col == 3 ? record.sindhi_glosses : record.english_glosses;
      for (const auto& piece : split_glosses(columns[col])) {
        std::string gloss;
        ok = ok && unescape(piece, gloss);
        target.push_back(std::move(gloss));
      }
    }
    if (!ok) {
      reject(ErrorCode::kParse, "bad escape sequence");
      continue;
    }

    try {
      log.add(lexicon.put(kind, std::move(record)));
      ++result.lines_applied;
    } catch (const Error& e) {
      reject(e.code(), e.what());
    }
  }
  if (line_no == 0) parse_error(1, "expected the TSV column header");
  result.changes = log.take(lexicon.repertoire());
  return result;
}

ImportResult import_tsv(Lexicon& lexicon, const std::filesystem::path& path,
                        DictionaryKind kind) {
  return import_tsv_text(lexicon, read_file(path), kind);
}

}  // namespace lughat::persistence
