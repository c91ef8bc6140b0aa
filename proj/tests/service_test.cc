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

#include "lughat/service.h"

#include <gtest/gtest.h>
#include <httplib.h>

#include <atomic>
#include <random>
#include <set>
#include <thread>

#include "lughat/api_json.h"
#include "lughat/crosslink.h"
#include "lughat/error.h"
#include "lughat/persistence.h"
#include "test_support.h"

namespace lughat {
namespace {

using api::Json;

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override { start(); }

  void start() {
    ServiceOptions options;
    options.store_path = dir.file("store");
    options.port = 0;
    options.save_hooks.before_rename = [this](const std::filesystem::path&) {
      if (fail_saves) throw std::runtime_error("disk full");
    };
    service = std::make_unique<Service>(options);
    port = service->start();
  }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port);
    c.set_read_timeout(10, 0);
    return c;
  }

  httplib::Result put(const std::string& path, const std::string& body,
                      const std::string& if_match = "") {
    httplib::Headers headers;
    if (!if_match.empty()) headers.emplace("If-Match", if_match);
    return client().Put(path, headers, body, "application/json");
  }

  static Json body(const httplib::Result& r) { return Json::parse(r->body); }

  // The file on disk always matches what the service holds.
  void expect_file_matches_memory() {
    Lexicon in_memory = service->snapshot();
    EXPECT_EQ(testing::read_bytes(dir.file("store")), persistence::serialize(in_memory));
  }

  testing::TempDir dir;
  std::atomic<bool> fail_saves{false};
  std::unique_ptr<Service> service;
  int port = 0;
};

TEST_F(ServiceTest, CreatesStoreAndReportsHealth) {
  EXPECT_TRUE(std::filesystem::exists(dir.file("store")));
  auto r = client().Get("/api/health");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(r->body, R"({"status":"ok","entries_e2s":0,"entries_s2e":0})");
  EXPECT_EQ(r->get_header_value("Content-Type"), "application/json; charset=utf-8");
}

TEST_F(ServiceTest, PutGetDerived) {
  auto r = put("/api/entries/e2s/water", R"({"headword":"water","sindhi_glosses":["پاڻي"]})");
  ASSERT_TRUE(r);
  ASSERT_EQ(r->status, 200) << r->body;
  EXPECT_EQ(r->get_header_value("ETag"), "\"1\"");
  EXPECT_EQ(body(r)["created"].size(), 2u);

  r = client().Get("/api/entries/e2s/Water");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["headword"], "water");
  EXPECT_EQ(r->get_header_value("ETag"), "\"1\"");

  r = client().Get("/api/entries/s2e/پاڻي");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["provenance"], "derived");
  EXPECT_EQ(body(r)["english_glosses"], Json::array({"water"}));
  expect_file_matches_memory();
}

TEST_F(ServiceTest, GetJsonMatchesLibraryEncoding) {
  put("/api/entries/e2s/school", R"({"headword":"school","grammar":"noun","sindhi_glosses":["درسگاهه، اسڪول"]})");
  Lexicon lex = service->snapshot();
  auto r = client().Get("/api/entries/e2s/school");
  EXPECT_EQ(r->body, api::dump(api::entry_to_json(DictionaryKind::kEnglishToSindhi, "school",
                                                  *lex.get(DictionaryKind::kEnglishToSindhi, "school"))));
}

TEST_F(ServiceTest, NotFoundAndBadKind) {
  auto r = client().Get("/api/entries/e2s/nothing");
  EXPECT_EQ(r->status, 404);
  EXPECT_EQ(body(r)["error"], "NotFound");
  EXPECT_EQ(client().Delete("/api/entries/e2s/nothing")->status, 404);
  EXPECT_EQ(client().Get("/api/entries/xx/water")->status, 400);
  EXPECT_EQ(client().Get("/api/entries?kind=xx")->status, 400);
}

TEST_F(ServiceTest, RejectsBadBodies) {
  EXPECT_EQ(put("/api/entries/e2s/water", "{")->status, 400);
  EXPECT_EQ(put("/api/entries/e2s/water", R"({"headword":"rain"})")->status, 400);
  EXPECT_EQ(put("/api/entries/e2s/water", R"({"headword":"water","colour":1})")->status, 400);
  EXPECT_EQ(put("/api/entries/e2s/%20", R"({"headword":" "})")->status, 400);
  auto r = put("/api/entries/e2s/water", R"({"headword":"water","sindhi_glosses":["abcپ"]})");
  EXPECT_EQ(r->status, 400);
  EXPECT_EQ(body(r)["error"], "RepertoireViolation");
  EXPECT_EQ(body(r)["violations"].size(), 3u);
  EXPECT_EQ(body(r)["violations"][1]["offset"], 1);
  EXPECT_EQ(service->snapshot().size(DictionaryKind::kEnglishToSindhi), 0u);
}

TEST_F(ServiceTest, IfMatchGuardsRevisions) {
  const std::string doc = R"({"headword":"water","sindhi_glosses":["پاڻي"]})";
  EXPECT_EQ(put("/api/entries/e2s/water", doc, "0")->status, 200);
  EXPECT_EQ(put("/api/entries/e2s/water", doc, "0")->status, 409);
  auto r = put("/api/entries/e2s/water", doc, "\"7\"");
  EXPECT_EQ(r->status, 409);
  EXPECT_EQ(body(r)["error"], "RevisionConflict");
  r = put("/api/entries/e2s/water", doc, "W/\"1\"");
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(r->get_header_value("ETag"), "\"2\"");
  EXPECT_EQ(put("/api/entries/e2s/water", doc, "abc")->status, 400);

  httplib::Headers stale{{"If-Match", "1"}};
  EXPECT_EQ(client().Delete("/api/entries/e2s/water", stale)->status, 409);
  httplib::Headers fresh{{"If-Match", "2"}};
  EXPECT_EQ(client().Delete("/api/entries/e2s/water", fresh)->status, 200);
  EXPECT_EQ(service->snapshot().size(DictionaryKind::kSindhiToEnglish), 0u);
}

TEST_F(ServiceTest, ConcurrentConflictingPutsOneWins) {
  put("/api/entries/e2s/water", R"({"headword":"water","sindhi_glosses":["پاڻي"]})");
  constexpr int kWriters = 8;
  std::atomic<int> ok{0};
  std::atomic<int> conflicts{0};
  std::vector<std::thread> threads;
  for (int i = 0; i < kWriters; ++i) {
    threads.emplace_back([&, i] {
      auto r = put("/api/entries/e2s/water",
                   R"({"headword":"water","pronunciation":"v)" + std::to_string(i) + R"("})", "1");
      if (r && r->status == 200) ++ok;
      if (r && r->status == 409) ++conflicts;
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(ok.load(), 1);
  EXPECT_EQ(conflicts.load(), kWriters - 1);
  EXPECT_EQ(service->snapshot().get(DictionaryKind::kEnglishToSindhi, "water")->revision, 2u);
  expect_file_matches_memory();
}

TEST_F(ServiceTest, ConcurrentReadersDuringWrites) {
  std::atomic<bool> done{false};
  std::atomic<int> bad{0};
  std::thread reader([&] {
    auto c = client();
    while (!done) {
      auto r = c.Get("/api/entries?kind=s2e&limit=1000");
      if (!r || r->status != 200) { ++bad; continue; }
      Json j = Json::parse(r->body);
      if (j["total"] != j["items"].size()) ++bad;
    }
  });
  for (int i = 0; i < 40; ++i) {
    put("/api/entries/e2s/w" + std::to_string(i),
        R"({"headword":"w)" + std::to_string(i) + R"(","sindhi_glosses":["پاڻي، ب)" +
            std::string(i % 2 ? "ا" : "ت") + R"("]})");
  }
  done = true;
  reader.join();
  EXPECT_EQ(bad.load(), 0);
  EXPECT_TRUE(crosslink::check_consistency(service->snapshot()).ok());
}

TEST_F(ServiceTest, EveryMutationIsOnDisk) {
  std::mt19937 rng(4);
  for (int i = 0; i < 60; ++i) {
    const std::string w = "w" + std::to_string(rng() % 15);
    if (rng() % 3 == 0) {
      client().Delete("/api/entries/e2s/" + w);
    } else {
      Json doc = {{"headword", w},
                  {"sindhi_glosses", {testing::random_sindhi_word(rng) + "، " +
                                      testing::random_sindhi_word(rng)}}};
      ASSERT_EQ(put("/api/entries/e2s/" + w, doc.dump())->status, 200);
    }
    auto reloaded = persistence::load(dir.file("store"));
    ASSERT_EQ(testing::observable_state(reloaded.lexicon, true),
              testing::observable_state(service->snapshot(), true));
  }
}

TEST_F(ServiceTest, FailedSaveRollsBack) {
  put("/api/entries/e2s/water", R"({"headword":"water","sindhi_glosses":["پاڻي"]})");
  const std::string before = testing::read_bytes(dir.file("store"));
  fail_saves = true;
  auto r = put("/api/entries/e2s/water", R"({"headword":"water","sindhi_glosses":["آب"]})");
  EXPECT_EQ(r->status, 500);
  EXPECT_EQ(client().Delete("/api/entries/e2s/water")->status, 500);
  fail_saves = false;
  EXPECT_EQ(testing::read_bytes(dir.file("store")), before);
  EXPECT_EQ(persistence::serialize(service->snapshot()), before);
}

TEST_F(ServiceTest, LinkedSindhiDeleteConflicts) {
  put("/api/entries/e2s/water", R"({"headword":"water","sindhi_glosses":["پاڻي"]})");
  auto r = client().Delete("/api/entries/s2e/پاڻي");
  EXPECT_EQ(r->status, 409);
  EXPECT_EQ(body(r)["error"], "LinkedEntry");
}

TEST_F(ServiceTest, ListPaginates) {
  for (const char* w : {"c", "a", "b"}) {
    put(std::string("/api/entries/e2s/") + w, std::string(R"({"headword":")") + w + "\"}");
  }
  auto r = client().Get("/api/entries?kind=e2s&offset=1&limit=1");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(r->body,
            R"({"kind":"e2s","prefix":"","offset":1,"limit":1,"total":3,)"
            R"("items":[{"key":"b","headword":"b","provenance":"manual"}]})");
  EXPECT_EQ(client().Get("/api/entries?limit=0")->status, 400);
  EXPECT_EQ(client().Get("/api/entries?offset=-1")->status, 400);
  EXPECT_EQ(body(client().Get("/api/entries"))["limit"], 100);
}

TEST_F(ServiceTest, TokenizeComposesAndSplits) {
  auto r = client().Post("/api/tokenize", R"({"text":"درسگاهه، اسڪول"})", "application/json");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(r->body,
            R"({"tokens":[{"text":"درسگاهه","start":0,"end":7},{"text":"اسڪول","start":9,"end":14}]})");
  // Alef followed by a combining madda comes back as one precomposed U+0622.
  r = client().Post("/api/tokenize", "{\"text\":\"\xD8\xA7\xD9\x93\"}", "application/json");
  EXPECT_EQ(body(r)["tokens"][0]["text"].get<std::string>(), "\xD8\xA2");
  EXPECT_EQ(client().Post("/api/tokenize", "[]", "application/json")->status, 400);
}

TEST_F(ServiceTest, StoredTextIsNfc) {
  put("/api/entries/e2s/cafe", "{\"headword\":\"cafe\",\"pronunciation\":\"cafe\xCC\x81\","
                               "\"sindhi_glosses\":[\"\xD8\xA7\xD9\x93\xD8\xA8\"]}");
  auto r = client().Get("/api/entries/e2s/cafe");
  EXPECT_NE(r->body.find("caf\xC3\xA9"), std::string::npos);
  EXPECT_EQ(testing::read_bytes(dir.file("store")).find("\xCC\x81"), std::string::npos);
  EXPECT_EQ(client().Get("/api/entries/s2e/\xD8\xA2\xD8\xA8")->status, 200);
}

TEST_F(ServiceTest, KeyboardUsesRepertoireCodepoints) {
  auto r = client().Get("/api/keyboard");
  ASSERT_EQ(r->status, 200);
  Json layout = body(r);
  EXPECT_EQ(layout["direction"], "rtl");
  const Repertoire& rep = Repertoire::shipped();
  std::set<char32_t> covered;
  for (const auto& row : layout["rows"]) {
    for (const auto& key : row) {
      ASSERT_FALSE(key["codepoints"].empty());
      for (const auto& cp : key["codepoints"]) {
        const auto c = cp.get<char32_t>();
        EXPECT_TRUE(rep.permits(c)) << format_codepoint(c);
        covered.insert(c);
      }
    }
  }
  for (const auto& letter : rep.letters()) {
    EXPECT_TRUE(covered.contains(letter.codepoint)) << format_codepoint(letter.codepoint);
  }
}

TEST_F(ServiceTest, RestartSeesSavedState) {
  put("/api/entries/e2s/water", R"({"headword":"water","sindhi_glosses":["پاڻي"]})");
  service->stop();
  start();
  EXPECT_EQ(client().Get("/api/entries/s2e/پاڻي")->status, 200);
}

}  // namespace
}  // namespace lughat
