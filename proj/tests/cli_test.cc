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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <sstream>

#include "lughat/api_json.h"
#include "lughat/error.h"
#include "lughat/persistence.h"
#include "test_support.h"

namespace lughat {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), {"lughat", "--store", store().string()});
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
  }

  std::filesystem::path store() const { return dir.file("lex.store"); }

  testing::TempDir dir;
};

TEST_F(CliTest, MissingStoreIsStoreError) {
  EXPECT_EQ(run({"get", "water"}).code, cli::kExitStore);
  EXPECT_EQ(run({"list"}).code, cli::kExitStore);
}

TEST_F(CliTest, InitRefusesToOverwrite) {
  EXPECT_EQ(run({"init"}).code, 0);
  EXPECT_EQ(run({"init"}).code, cli::kExitStore);
  EXPECT_EQ(run({"init", "--force"}).code, 0);
}

TEST_F(CliTest, AddGetListDelete) {
  run({"init"});
  auto r = run({"add", "--word", "school", "--grammar", "noun", "--sindhi", "درسگاهه، اسڪول"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "created e2s school\n"
            "created s2e اسڪول (derived)\n"
            "created s2e درسگاهه (derived)\n");
  r = run({"get", "SCHOOL"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("درسگاهه، اسڪول"), std::string::npos);
  r = run({"--kind", "s2e", "list"});
  EXPECT_EQ(r.out, "اسڪول\t(derived)\nدرسگاهه\t(derived)\n");
  // Global options are accepted after the subcommand too.
  r = run({"list", "--kind", "s2e", "--limit", "1", "--offset", "1"});
  EXPECT_EQ(r.out, "درسگاهه\t(derived)\n");
  EXPECT_EQ(run({"delete", "school"}).code, 0);
  EXPECT_EQ(run({"delete", "school"}).code, cli::kExitNotFound);
  EXPECT_EQ(run({"--kind", "s2e", "list"}).out, "");
}

TEST_F(CliTest, ExitCodes) {
  run({"init"});
  EXPECT_EQ(run({"get", "nothing"}).code, cli::kExitNotFound);
  EXPECT_EQ(run({"add", "--word", "  "}).code, cli::kExitValidation);
  auto r = run({"add", "--word", "x", "--sindhi", "abcپ"});
  EXPECT_EQ(r.code, cli::kExitValidation);
  EXPECT_NE(r.err.find("U+0061"), std::string::npos);
  EXPECT_EQ(run({"bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"list", "--limit", "0"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--kind", "x2y", "list"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"add"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, 0);
  run({"add", "--word", "water", "--sindhi", "پاڻي"});
  EXPECT_EQ(run({"--kind", "s2e", "delete", "پاڻي"}).code, cli::kExitValidation);
}

TEST_F(CliTest, CorruptStoreIsStoreError) {
  testing::write_bytes(store(), "garbage\n");
  auto r = run({"list"});
  EXPECT_EQ(r.code, cli::kExitStore);
  EXPECT_NE(r.err.find("BadMagic"), std::string::npos);
}

TEST_F(CliTest, JsonMatchesServiceEncoding) {
  run({"init"});
  run({"add", "--word", "water", "--sindhi", "پاڻي", "--pron", "wɔːtər"});
  Lexicon lex = persistence::load(store()).lexicon;
  auto r = run({"--json", "get", "Water"});
  EXPECT_EQ(r.out, api::dump(api::entry_to_json(DictionaryKind::kEnglishToSindhi, "water",
                                                *lex.get(DictionaryKind::kEnglishToSindhi, "water"))) +
                       "\n");
  r = run({"--json", "--kind", "s2e", "list"});
  EXPECT_EQ(r.out, api::dump(api::word_list_to_json(
                       DictionaryKind::kSindhiToEnglish, "", 0, 100, 1,
                       lex.list_words(DictionaryKind::kSindhiToEnglish, "", 0, 100))) +
                       "\n");
  r = run({"--json", "get", "nothing"});
  EXPECT_EQ(r.err, R"({"error":"NotFound","message":"no entry 'nothing'"})" "\n");
}

TEST_F(CliTest, Tokenize) {
  auto r = run({"tokenize", "درسگاهه، اسڪول درسگاهه"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "درسگاهه\nاسڪول\n");
  r = run({"--json", "tokenize", "ب ت"});
  EXPECT_EQ(r.out, R"({"tokens":[{"text":"ب","start":0,"end":1},{"text":"ت","start":2,"end":3}]})" "\n");
}

TEST_F(CliTest, ImportExport) {
  run({"init"});
  const auto tsv = dir.file("in.tsv");
  testing::write_bytes(tsv, std::string(persistence::kTsvHeader) +
                                "\nwater\t\t\tپاڻي\t\n\t\t\tاسڪول\t\n");
  auto r = run({"import", tsv.string()});
  EXPECT_EQ(r.code, cli::kExitValidation);
  EXPECT_NE(r.err.find(":3: EmptyKey"), std::string::npos);
  EXPECT_EQ(run({"export", dir.file("out.tsv").string()}).code, 0);
  EXPECT_EQ(testing::read_bytes(dir.file("out.tsv")),
            std::string(persistence::kTsvHeader) + "\nwater\t\t\tپاڻي\t\n");
  EXPECT_EQ(run({"import", dir.file("missing.tsv").string()}).code, cli::kExitStore);
}

TEST_F(CliTest, StatsAndCheck) {
  run({"init"});
  run({"add", "--word", "water", "--sindhi", "پاڻي"});
  EXPECT_EQ(run({"--json", "stats"}).out,
            R"({"entries_e2s":1,"entries_s2e":1,"derived_s2e":1,"repertoire_version":1})" "\n");
  EXPECT_EQ(run({"check"}).out, "ok\n");

  // Break the reverse entry by hand.
  std::string bytes = testing::read_bytes(store());
  const std::string from = R"("english_glosses":["water"],"provenance":"derived","derived_from":["water"])";
  const std::string to = R"("english_glosses":["water","ghost"],"provenance":"derived","derived_from":["ghost","water"])";
  bytes.replace(bytes.find(from), from.size(), to);
  testing::write_bytes(store(), bytes);
  EXPECT_EQ(run({"check"}).code, cli::kExitStore);
  auto r = run({"--repair", "check"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(run({"check"}).code, 0);
  EXPECT_EQ(testing::read_bytes(store()).find("ghost"), std::string::npos);
}

TEST_F(CliTest, StoreFromEnvironment) {
  setenv("LUGHAT_STORE", store().c_str(), 1);
  std::ostringstream out;
  std::ostringstream err;
  const char* argv[] = {"lughat", "init"};
  EXPECT_EQ(cli::run(2, argv, out, err), 0);
  unsetenv("LUGHAT_STORE");
  EXPECT_TRUE(std::filesystem::exists(store()));
}

TEST_F(CliTest, BinaryExitStatus) {
  const std::string base = std::string(LUGHAT_CLI_PATH) + " --store '" + store().string() + "' ";
  auto status = [&](const std::string& rest) {
    const int raw = std::system((base + rest + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("init"), 0);
  EXPECT_EQ(status("get nothing"), 1);
  EXPECT_EQ(status("add --word ' '"), 2);
  EXPECT_EQ(status("frobnicate"), 4);
}

}  // namespace
}  // namespace lughat
