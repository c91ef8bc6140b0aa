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

#include "lughat/cli.h"

#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lughat/api_json.h"
#include "lughat/crosslink.h"
#include "lughat/error.h"
#include "lughat/lexicon.h"
#include "lughat/persistence.h"
#include "lughat/service.h"

namespace lughat::cli {
namespace {

constexpr std::string_view kGlossJoin = "\xD8\x8C ";  // U+060C, space

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += kGlossJoin;
    out += items[i];
  }
  return out;
}

void print_record(std::ostream& out, const EntryRecord& r) {
  out << "headword:      " << r.headword << '\n'
      << "pronunciation: " << r.pronunciation << '\n'
      << "grammar:       " << r.grammar << '\n'
      << "sindhi:        " << join(r.sindhi_glosses) << '\n'
      << "english:       " << join(r.english_glosses) << '\n'
      << "provenance:    " << provenance_name(r.provenance) << '\n';
  if (!r.derived_from.empty()) {
    out << "derived from:  " << join(r.derived_from) << '\n';
  }
  out << "revision:      " << r.revision << '\n';
}

void print_changes(std::ostream& out, const ChangeSet& changes) {
  if (changes.empty()) {
    out << "no changes\n";
    return;
  }
  auto rows = [&](const char* action, const std::vector<ChangeItem>& items) {
    for (const auto& item : items) {
      out << action << ' ' << kind_name(item.kind) << ' '
          << item.snapshot.headword;
      if (item.snapshot.provenance == Provenance::kDerived) out << " (derived)";
      out << '\n';
    }
  };
  rows("created", changes.created);
  rows("updated", changes.updated);
  rows("deleted", changes.deleted);
}

void print_error(std::ostream& err, const Error& e, OutputMode mode) {
  if (mode == OutputMode::kJson) {
    err << api::dump(api::error_to_json(e)) << '\n';
    return;
  }
  err << "lughat: " << error_code_name(e.code()) << ": " << e.what() << '\n';
  for (const auto& v : e.violations()) {
    err << "  " << v.field << " offset " << v.offset << ": "
        << format_codepoint(v.codepoint) << '\n';
  }
}

class Session {
 public:
  Session(const CliConfig& config, std::ostream& out, std::ostream& err)
      : config_(config), out_(out), err_(err) {}

  Lexicon load() {
    if (!std::filesystem::exists(config_.store_path)) {
      throw Error(ErrorCode::kIo, "store '" + config_.store_path.string() +
                                      "' does not exist; run 'lughat init'");
    }
    persistence::LoadOptions options;
    options.repair = config_.repair;
    auto result = persistence::load(config_.store_path, Repertoire::shipped(),
                                    options);
    if (result.repairs && !result.repairs->empty()) {
      err_ << "lughat: repaired reverse entries:\n";
      print_changes(err_, *result.repairs);
    }
    result.lexicon.set_session_tag("cli");
    return std::move(result.lexicon);
  }

  void save(Lexicon& lexicon) {
    persistence::save(lexicon, config_.store_path);
  }

  void report(const ChangeSet& changes) {
    if (json()) {
      out_ << api::dump(api::changeset_to_json(changes)) << '\n';
    } else {
      print_changes(out_, changes);
    }
  }

  bool json() const { return config_.output_mode == OutputMode::kJson; }
  const CliConfig& config() const { return config_; }
  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

 private:
  const CliConfig& config_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound:
      return kExitNotFound;
    case ErrorCode::kEmptyKey:
    case ErrorCode::kRepertoireViolation:
    case ErrorCode::kLinkedEntry:
    case ErrorCode::kKeyMismatch:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kRevisionConflict:
      return kExitValidation;
    default:
      return kExitStore;
  }
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Bilingual English/Sindhi dictionary", "lughat"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig config;
  std::string store = "lughat.store";
  std::string kind = "e2s";
  bool json = false;
  app.add_option("--store", store, "Store file")
      ->envname("LUGHAT_STORE")
      ->capture_default_str();
  app.add_option("--kind", kind, "Dictionary: e2s or s2e")
      ->check(CLI::IsMember({"e2s", "s2e"}))
      ->capture_default_str();
  app.add_flag("--json", json, "Machine-readable output");
  app.add_flag("--repair", config.repair,
               "Re-derive reverse entries if the store is inconsistent");

  std::function<int(Session&)> action;

  auto* init = app.add_subcommand("init", "Create an empty store");
  bool force = false;
  init->add_flag("--force", force, "Overwrite an existing store");
  init->callback([&] {
    action = [&](Session& s) {
      if (!force && std::filesystem::exists(s.config().store_path)) {
        throw Error(ErrorCode::kIo, "store '" + s.config().store_path.string() +
                                        "' already exists (use --force)");
      }
      Lexicon lexicon;
      s.save(lexicon);
      if (!s.json()) s.out() << "created " << s.config().store_path.string() << '\n';
      return 0;
    };
  });

  auto* add = app.add_subcommand("add", "Add or replace an entry");
  EntryRecord record;
  add->add_option("--word", record.headword, "Headword")->required();
  add->add_option("--pron", record.pronunciation, "Pronunciation");
  add->add_option("--grammar", record.grammar, "Grammar tag");
  add->add_option("--sindhi", record.sindhi_glosses, "Sindhi meaning (repeatable)");
  add->add_option("--english", record.english_glosses,
                  "English meaning (repeatable)");
  add->callback([&] {
    action = [&](Session& s) {
      Lexicon lexicon = s.load();
      ChangeSet changes = lexicon.put(s.config().kind, record);
      s.save(lexicon);
      s.report(changes);
      return 0;
    };
  });

  std::string word;
  auto* get = app.add_subcommand("get", "Show one entry");
  get->add_option("word", word, "Headword")->required();
  get->callback([&] {
    action = [&](Session& s) {
      Lexicon lexicon = s.load();
      const DictionaryKind k = s.config().kind;
      auto found = lexicon.get(k, word);
      if (!found) throw Error(ErrorCode::kNotFound, "no entry '" + word + "'");
      if (s.json()) {
        const std::string key =
            normalize_text(word, Profile::kKey, headword_side(k));
        s.out() << api::dump(api::entry_to_json(k, key, *found)) << '\n';
      } else {
        print_record(s.out(), *found);
      }
      return 0;
    };
  });

  auto* del = app.add_subcommand("delete", "Delete an entry");
  del->add_option("word", word, "Headword")->required();
  del->callback([&] {
    action = [&](Session& s) {
      Lexicon lexicon = s.load();
      auto changes = lexicon.remove(s.config().kind, word);
      if (!changes) throw Error(ErrorCode::kNotFound, "no entry '" + word + "'");
      s.save(lexicon);
      s.report(*changes);
      return 0;
    };
  });

  auto* list = app.add_subcommand("list", "List headwords in dictionary order");
  std::string prefix;
  std::size_t offset = 0;
  std::size_t limit = 100;
  list->add_option("--prefix", prefix, "Key prefix");
  list->add_option("--offset", offset, "Entries to skip")->capture_default_str();
  list->add_option("--limit", limit, "Page size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  list->callback([&] {
    action = [&](Session& s) {
      Lexicon lexicon = s.load();
      const DictionaryKind k = s.config().kind;
      auto items = lexicon.list_words(k, prefix, offset, limit);
      if (s.json()) {
        s.out() << api::dump(api::word_list_to_json(
                       k, prefix, offset, limit, lexicon.count_words(k, prefix),
                       items))
                << '\n';
      } else {
        for (const auto& item : items) {
          s.out() << item.headword;
          if (item.provenance == Provenance::kDerived) s.out() << "\t(derived)";
          s.out() << '\n';
        }
      }
      return 0;
    };
  });

  auto* tokenize = app.add_subcommand("tokenize", "Split a Sindhi meaning into words");
  std::string text;
  tokenize->add_option("text", text, "Sindhi text")->required();
  tokenize->callback([&] {
    action = [&](Session& s) {
      auto tokens = tokenize_sindhi(
          normalize_text(text, Profile::kDisplay, Side::kSindhi));
      if (s.json()) {
        s.out() << api::dump(api::tokens_to_json(tokens)) << '\n';
      } else {
        for (const auto& t : tokens) s.out() << t.text << '\n';
      }
      return 0;
    };
  });

  std::string file;
  auto* import = app.add_subcommand("import", "Import a five-column TSV file");
  import->add_option("file", file, "TSV file")->required();
  import->callback([&] {
    action = [&](Session& s) {
      Lexicon lexicon = s.load();
      auto result = persistence::import_tsv(lexicon, file, s.config().kind);
      s.save(lexicon);
      for (const auto& e : result.errors) {
        s.err() << file << ':' << e.line << ": " << error_code_name(e.code)
                << ": " << e.message << '\n';
      }
      if (s.json()) {
        s.report(result.changes);
      } else {
        s.out() << "imported " << result.lines_applied << " lines, "
                << result.errors.size() << " rejected; "
                << result.changes.created.size() << " created, "
                << result.changes.updated.size() << " updated\n";
      }
      return result.errors.empty() ? 0 : static_cast<int>(kExitValidation);
    };
  });

  auto* export_cmd = app.add_subcommand("export", "Export a five-column TSV file");
  export_cmd->add_option("file", file, "TSV file")->required();
  export_cmd->callback([&] {
    action = [&](Session& s) {
      Lexicon lexicon = s.load();
      std::size_t lines = persistence::export_tsv(lexicon, file, s.config().kind);
      if (!s.json()) s.out() << "exported " << lines << " lines\n";
      return 0;
    };
  });

  auto* serve_cmd = app.add_subcommand("serve", "Run the local HTTP API");
  ServiceOptions service_options;
  std::string static_dir;
  serve_cmd->add_option("--port", service_options.port, "TCP port")
      ->capture_default_str();
  serve_cmd->add_option("--host", service_options.host, "Bind address")
      ->capture_default_str();
  serve_cmd->add_option("--static", static_dir, "Editor UI directory to serve at /");
  serve_cmd->callback([&] {
    action = [&](Session& s) {
      service_options.store_path = s.config().store_path;
      if (!static_dir.empty()) service_options.static_dir = static_dir;
      serve(service_options);
      return 0;
    };
  });

  auto* stats = app.add_subcommand("stats", "Entry counts");
  stats->callback([&] {
    action = [&](Session& s) {
      Lexicon lexicon = s.load();
      std::size_t derived = 0;
      lexicon.store(DictionaryKind::kSindhiToEnglish)
          .for_each([&](const std::string&, const EntryRecord& r) {
            if (r.provenance == Provenance::kDerived) ++derived;
          });
      const std::size_t e2s = lexicon.size(DictionaryKind::kEnglishToSindhi);
      const std::size_t s2e = lexicon.size(DictionaryKind::kSindhiToEnglish);
      if (s.json()) {
        api::Json j = api::Json::object();
        j["entries_e2s"] = e2s;
        j["entries_s2e"] = s2e;
        j["derived_s2e"] = derived;
        j["repertoire_version"] = lexicon.repertoire().version();
        s.out() << api::dump(j) << '\n';
      } else {
        s.out() << "e2s entries:        " << e2s << '\n'
                << "s2e entries:        " << s2e << " (" << derived
                << " derived)\n"
                << "repertoire version: " << lexicon.repertoire().version()
                << '\n';
      }
      return 0;
    };
  });

  auto* check = app.add_subcommand(
      "check", "Verify reverse-entry consistency (--repair rewrites the store)");
  check->callback([&] {
    action = [&](Session& s) {
      Lexicon lexicon = s.load();
      if (s.config().repair && lexicon.dirty()) s.save(lexicon);
      if (!s.json()) s.out() << "ok\n";
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(kExitUsage);
  }

  config.store_path = store;
  config.kind = *parse_kind(kind);
  config.output_mode = json ? OutputMode::kJson : OutputMode::kHuman;
  if (config.store_path.empty()) {
    err << "lughat: --store must not be empty\n";
    return kExitUsage;
  }

  Session session(config, out, err);
  try {
    return action(session);
  } catch (const Error& e) {
    print_error(err, e, config.output_mode);
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "lughat: " << e.what() << '\n';
    return kExitStore;
  }
}

}  // namespace lughat::cli
