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

#include <gtest/gtest.h>

#include <filesystem>

#include "lughat/crosslink.h"
#include "lughat/error.h"
#include "test_support.h"

namespace lughat {
namespace {

using testing::observable_state;
using testing::read_bytes;
using testing::TempDir;
using testing::write_bytes;

constexpr auto kE2S = DictionaryKind::kEnglishToSindhi;
constexpr auto kS2E = DictionaryKind::kSindhiToEnglish;

const std::string kHeader11 =
    R"({"magic":"LUGHAT01","format_version":1,"repertoire_version":1,"entry_count_e2s":1,"entry_count_s2e":1})";
const std::string kWater =
    R"({"kind":"e2s","key":"water","headword":"water","pronunciation":"","grammar":"","sindhi_glosses":["پاڻي"],"english_glosses":[],"provenance":"manual","derived_from":[],"revision":1})";
const std::string kPani =
    R"({"kind":"s2e","key":"پاڻي","headword":"پاڻي","pronunciation":"","grammar":"","sindhi_glosses":[],"english_glosses":["water"],"provenance":"derived","derived_from":["water"],"revision":1})";

EntryRecord english(std::string word, std::vector<std::string> sindhi) {
  EntryRecord r;
  r.headword = std::move(word);
  r.sindhi_glosses = std::move(sindhi);
  return r;
}

struct Failure {
  ErrorCode code;
  std::size_t line;
};

Failure parse_failure(const std::string& content, bool repair = false) {
  try {
    persistence::parse(content, Repertoire::shipped(), {.repair = repair});
  } catch (const Error& e) {
    return {e.code(), e.line()};
  }
  ADD_FAILURE() << "parse accepted:\n" << content;
  return {ErrorCode::kInvalidArgument, 0};
}

TEST(SaveTest, EmptyLexicon) {
  TempDir dir;
  Lexicon lex;
  const auto bytes = persistence::save(lex, dir.file("s"));
  const std::string expected =
      R"({"magic":"LUGHAT01","format_version":1,"repertoire_version":1,"entry_count_e2s":0,"entry_count_s2e":0})"
      "\n";
  EXPECT_EQ(read_bytes(dir.file("s")), expected);
  EXPECT_EQ(bytes, expected.size());
}

TEST(SaveTest, KnownLayout) {
  Lexicon lex;
  lex.put(kE2S, english("water", {"پاڻي"}));
  EXPECT_EQ(persistence::serialize(lex), kHeader11 + "\n" + kWater + "\n" + kPani + "\n");
}

TEST(SaveTest, DeterministicAndClearsDirty) {
  TempDir dir;
  Lexicon lex = testing::random_lexicon(1, 80);
  lex.mark_dirty();
  persistence::save(lex, dir.file("a"));
  EXPECT_FALSE(lex.dirty());
  persistence::save(lex, dir.file("b"));
  EXPECT_EQ(read_bytes(dir.file("a")), read_bytes(dir.file("b")));
  // No temporary files left behind.
  int files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir.path())) ++files;
  EXPECT_EQ(files, 2);
}

TEST(SaveTest, BackendDoesNotChangeBytes) {
  for (std::uint32_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(persistence::serialize(testing::random_lexicon(seed, 60, StoreBackend::kHash)),
              persistence::serialize(testing::random_lexicon(seed, 60, StoreBackend::kSortedList)));
  }
}

TEST(SaveTest, RefusesInconsistentLexicon) {
  TempDir dir;
  Lexicon lex;
  lex.put(kE2S, english("water", {"پاڻي"}));
  lex.store(kS2E).erase("پاڻي");
  try {
    persistence::save(lex, dir.file("s"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConsistency);
  }
  EXPECT_FALSE(std::filesystem::exists(dir.file("s")));
}

TEST(SaveTest, UnwritablePathIsIoError) {
  Lexicon lex;
  try {
    persistence::save(lex, "/nonexistent-dir/x/store");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(SaveTest, CrashBeforeRenameKeepsPreviousFile) {
  TempDir dir;
  Lexicon lex;
  lex.put(kE2S, english("water", {"پاڻي"}));
  persistence::save(lex, dir.file("s"));
  const std::string before = read_bytes(dir.file("s"));
  lex.put(kE2S, english("rain", {"مينهن"}));
  persistence::SaveHooks hooks;
  hooks.before_rename = [](const std::filesystem::path&) {
    throw std::runtime_error("simulated crash");
  };
  EXPECT_THROW(persistence::save(lex, dir.file("s"), hooks), std::runtime_error);
  EXPECT_EQ(read_bytes(dir.file("s")), before);
  EXPECT_TRUE(lex.dirty());
  auto loaded = persistence::load(dir.file("s"));
  EXPECT_FALSE(loaded.lexicon.get(kE2S, "rain"));
}

TEST(LoadTest, SaveLoadSaveIsByteIdentical) {
  TempDir dir;
  for (std::uint32_t seed = 0; seed < 500; ++seed) {
    Lexicon lex = testing::random_lexicon(seed, 40);
    persistence::save(lex, dir.file("a"));
    auto loaded = persistence::load(dir.file("a"));
    ASSERT_EQ(observable_state(loaded.lexicon, true), observable_state(lex, true))
        << "seed " << seed;
    persistence::save(loaded.lexicon, dir.file("b"));
    ASSERT_EQ(read_bytes(dir.file("a")), read_bytes(dir.file("b"))) << "seed " << seed;
    EXPECT_FALSE(loaded.repairs);
  }
}

TEST(LoadTest, MissingFileIsIoError) {
  try {
    persistence::load("/nonexistent/store");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(LoadTest, TruncatedFileReportsFailingLine) {
  const std::string full = kHeader11 + "\n" + kWater + "\n" + kPani + "\n";
  // Cut in the middle of the last record.
  auto f = parse_failure(full.substr(0, full.size() - 20));
  EXPECT_EQ(f.code, ErrorCode::kParse);
  EXPECT_EQ(f.line, 3u);
  // Record missing altogether: the count check fails.
  f = parse_failure(kHeader11 + "\n" + kWater + "\n");
  EXPECT_EQ(f.code, ErrorCode::kParse);
  // Final newline missing.
  f = parse_failure(full.substr(0, full.size() - 1));
  EXPECT_EQ(f.code, ErrorCode::kParse);
  EXPECT_EQ(f.line, 3u);
  f = parse_failure("");
  EXPECT_EQ(f.code, ErrorCode::kBadMagic);
}

TEST(LoadTest, DuplicateKey) {
  std::string header = kHeader11;
  header.replace(header.find("\"entry_count_e2s\":1"), 19, "\"entry_count_e2s\":2");
  auto f = parse_failure(header + "\n" + kWater + "\n" + kWater + "\n" + kPani + "\n");
  EXPECT_EQ(f.code, ErrorCode::kDuplicateKey);
  EXPECT_EQ(f.line, 3u);
}

TEST(LoadTest, BadMagicAndVersions) {
  std::string bad = kHeader11;
  bad.replace(bad.find("LUGHAT01"), 8, "LUGHAT02");
  EXPECT_EQ(parse_failure(bad + "\n" + kWater + "\n" + kPani + "\n").code, ErrorCode::kBadMagic);
  EXPECT_EQ(parse_failure("not json\n").code, ErrorCode::kBadMagic);

  std::string future = kHeader11;
  future.replace(future.find("\"format_version\":1"), 18, "\"format_version\":9");
  EXPECT_EQ(parse_failure(future + "\n").code, ErrorCode::kUnsupportedVersion);

  std::string other_rep = kHeader11;
  other_rep.replace(other_rep.find("\"repertoire_version\":1"), 22, "\"repertoire_version\":2");
  EXPECT_EQ(parse_failure(other_rep + "\n" + kWater + "\n" + kPani + "\n").code,
            ErrorCode::kUnsupportedVersion);
}

TEST(LoadTest, RejectsMalformedRecords) {
  auto with_e2s = [&](std::string record) {
    return kHeader11 + "\n" + record + "\n" + kPani + "\n";
  };
  std::string wrong_key = kWater;
  wrong_key.replace(wrong_key.find("\"key\":\"water\""), 13, "\"key\":\"Water\"");
  EXPECT_EQ(parse_failure(with_e2s(wrong_key)).line, 2u);

  std::string zero_rev = kWater;
  zero_rev.replace(zero_rev.find("\"revision\":1"), 12, "\"revision\":0");
  EXPECT_EQ(parse_failure(with_e2s(zero_rev)).line, 2u);

  std::string unknown_field = kWater;
  unknown_field.insert(1, "\"extra\":1,");
  EXPECT_EQ(parse_failure(with_e2s(unknown_field)).line, 2u);

  std::string latin = kWater;
  latin.replace(latin.find("پاڻي"), std::string("پاڻي").size(), "abc");
  EXPECT_EQ(parse_failure(with_e2s(latin)).line, 2u);
}

TEST(LoadTest, InconsistentFileNeedsRepair) {
  std::string dangling = kPani;
  dangling.replace(dangling.find("[\"water\"],\"provenance\""), 9, "[\"water\",\"zzz\"]");
  dangling.replace(dangling.find("\"derived_from\":[\"water\"]"), 24,
                   "\"derived_from\":[\"water\",\"zzz\"]");
  const std::string content = kHeader11 + "\n" + kWater + "\n" + dangling + "\n";
  EXPECT_EQ(parse_failure(content).code, ErrorCode::kConsistency);

  auto repaired = persistence::parse(content, Repertoire::shipped(), {.repair = true});
  ASSERT_TRUE(repaired.repairs);
  EXPECT_FALSE(repaired.repairs->empty());
  EXPECT_TRUE(crosslink::check_consistency(repaired.lexicon).ok());
  EXPECT_EQ(persistence::serialize(repaired.lexicon).find("zzz"), std::string::npos);
}

TEST(LoadTest, LoadsIntoEitherBackend) {
  Lexicon lex = testing::random_lexicon(9, 80);
  const std::string bytes = persistence::serialize(lex);
  auto sorted = persistence::parse(bytes, Repertoire::shipped(),
                                   {.backend = StoreBackend::kSortedList});
  EXPECT_EQ(sorted.lexicon.backend(), StoreBackend::kSortedList);
  EXPECT_EQ(persistence::serialize(sorted.lexicon), bytes);
}

}  // namespace
}  // namespace lughat
