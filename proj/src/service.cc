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

#include <signal.h>

#include <charconv>
#include <iostream>
#include <mutex>

#include "httplib.h"
#include "lughat/api_json.h"
#include "lughat/embedded_data.h"
#include "lughat/error.h"

namespace lughat {
namespace {

using api::Json;

constexpr const char* kJsonType = "application/json; charset=utf-8";

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(api::dump(body), kJsonType);
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyKey:
    case ErrorCode::kRepertoireViolation:
    case ErrorCode::kKeyMismatch:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParse:
      return 400;
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kRevisionConflict:
    case ErrorCode::kLinkedEntry:
      return 409;
    default:
      return 500;
  }
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const Error& e) {
      send_json(res, http_status(e.code()), api::error_to_json(e));
    } catch (const std::exception& e) {
      send_json(res, 500, api::error_to_json(Error(ErrorCode::kIo, e.what())));
    }
  };
}

DictionaryKind kind_or_throw(std::string_view name) {
  auto kind = parse_kind(name);
  if (!kind) {
    throw Error(ErrorCode::kInvalidArgument,
                "kind must be 'e2s' or 's2e', got '" + std::string(name) + "'");
  }
  return *kind;
}

std::size_t size_param(const httplib::Request& req, const char* name,
                       std::size_t fallback) {
  if (!req.has_param(name)) return fallback;
  const std::string value = req.get_param_value(name);
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("query parameter '") + name +
                    "' must be a non-negative integer");
  }
  return out;
}

// Accepts 3, "3" and W/"3".
std::optional<std::uint64_t> if_match(const httplib::Request& req) {
  if (!req.has_header("If-Match")) return std::nullopt;
  std::string value = req.get_header_value("If-Match");
  if (value.starts_with("W/")) value.erase(0, 2);
  if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
    value = value.substr(1, value.size() - 2);
  }
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "If-Match must carry an entry revision");
  }
  return out;
}

void check_revision(std::optional<std::uint64_t> expected,
                    const EntryRecord* current) {
  if (!expected) return;
  const std::uint64_t actual = current ? current->revision : 0;
  if (*expected != actual) {
    throw Error(ErrorCode::kRevisionConflict,
                "entry is at revision " + std::to_string(actual) +
                    ", request expected " + std::to_string(*expected));
  }
}

void set_etag(httplib::Response& res, std::uint64_t revision) {
  res.set_header("ETag", "\"" + std::to_string(revision) + "\"");
}

const std::string& keyboard_body() {
  static const std::string body =
      api::dump(Json::parse(embedded::keyboard_text()));
  return body;
}

Lexicon open_or_create(const ServiceOptions& options) {
  if (std::filesystem::exists(options.store_path)) {
    return persistence::load(options.store_path).lexicon;
  }
  Lexicon lexicon;
  persistence::save(lexicon, options.store_path, options.save_hooks);
  return lexicon;
}

}  // namespace

Service::Service(ServiceOptions options)
    : options_(std::move(options)),
      lexicon_(open_or_create(options_)),
      server_(std::make_unique<httplib::Server>()) {
  lexicon_.set_session_tag("http");
  install_routes();
}

Service::~Service() { stop(); }

void Service::install_routes() {
  httplib::Server& s = *server_;

  s.Get("/api/health", guarded([this](const auto&, auto& res) {
          std::shared_lock lock(mutex_);
          send_json(res, 200, api::health_to_json(lexicon_));
        }));

  s.Get("/api/entries", guarded([this](const httplib::Request& req, auto& res) {
          const DictionaryKind kind = kind_or_throw(
              req.has_param("kind") ? req.get_param_value("kind") : "e2s");
          const std::string prefix = req.get_param_value("prefix");
          const std::size_t offset = size_param(req, "offset", 0);
          const std::size_t limit = size_param(req, "limit", 100);
          if (limit == 0) {
            throw Error(ErrorCode::kInvalidArgument, "limit must be positive");
          }
          std::shared_lock lock(mutex_);
          auto items = lexicon_.list_words(kind, prefix, offset, limit);
          send_json(res, 200,
                    api::word_list_to_json(kind, prefix, offset, limit,
                                           lexicon_.count_words(kind, prefix),
                                           items));
        }));

  s.Get(R"(/api/entries/([^/]+)/(.+))",
        guarded([this](const httplib::Request& req, auto& res) {
          const DictionaryKind kind = kind_or_throw(req.matches[1].str());
          const std::string raw = req.matches[2].str();
          std::shared_lock lock(mutex_);
          auto record = lexicon_.get(kind, raw);
          if (!record) {
            throw Error(ErrorCode::kNotFound, "no entry '" + raw + "'");
          }
          const std::string key =
              normalize_text(raw, Profile::kKey, headword_side(kind));
          set_etag(res, record->revision);
          send_json(res, 200, api::entry_to_json(kind, key, *record));
        }));

  s.Put(R"(/api/entries/([^/]+)/(.+))",
        guarded([this](const httplib::Request& req, auto& res) {
          const DictionaryKind kind = kind_or_throw(req.matches[1].str());
          const Side side = headword_side(kind);
          const std::string key =
              NormalizedKey::from_raw(req.matches[2].str(), side).text();

          Json body = Json::parse(req.body, nullptr, false);
          if (body.is_discarded()) {
            throw Error(ErrorCode::kParse, "request body is not valid JSON");
          }
          api::ApiEntry entry = api::entry_from_request(body);
          if (body.contains("kind") && entry.kind != kind) {
            throw Error(ErrorCode::kKeyMismatch, "body kind differs from URL");
          }
          if (body.contains("key") && entry.key != key) {
            throw Error(ErrorCode::kKeyMismatch, "body key differs from URL");
          }
          if (NormalizedKey::from_raw(entry.record.headword, side).text() != key) {
            throw Error(ErrorCode::kKeyMismatch,
                        "headword does not normalize to the URL key");
          }
          const auto expected = if_match(req);

          std::unique_lock lock(mutex_);
          check_revision(expected, lexicon_.store(kind).find(key));
          ChangeSet changes = lexicon_.put(kind, std::move(entry.record));
          try {
            persistence::save(lexicon_, options_.store_path, options_.save_hooks);
          } catch (...) {
            lexicon_.revert(changes);
            throw;
          }
          set_etag(res, lexicon_.store(kind).find(key)->revision);
          send_json(res, 200, api::changeset_to_json(changes));
        }));

  s.Delete(R"(/api/entries/([^/]+)/(.+))",
           guarded([this](const httplib::Request& req, auto& res) {
             const DictionaryKind kind = kind_or_throw(req.matches[1].str());
             const std::string raw = req.matches[2].str();
             const std::string key =
                 normalize_text(raw, Profile::kKey, headword_side(kind));
             const auto expected = if_match(req);

             std::unique_lock lock(mutex_);
             const EntryRecord* current =
                 key.empty() ? nullptr : lexicon_.store(kind).find(key);
             if (!current) {
               throw Error(ErrorCode::kNotFound, "no entry '" + raw + "'");
             }
             check_revision(expected, current);
             auto changes = lexicon_.remove(kind, raw);
             try {
               persistence::save(lexicon_, options_.store_path,
                                 options_.save_hooks);
             } catch (...) {
               lexicon_.revert(*changes);
               throw;
             }
             send_json(res, 200, api::changeset_to_json(*changes));
           }));

  s.Post("/api/tokenize", guarded([this](const httplib::Request& req, auto& res) {
           Json body = Json::parse(req.body, nullptr, false);
           if (body.is_discarded() || !body.is_object() ||
               !body.contains("text") || !body["text"].is_string()) {
             throw Error(ErrorCode::kParse, "expected {\"text\": string}");
           }
           const std::string text = normalize_text(
               body["text"].get<std::string>(), Profile::kDisplay, Side::kSindhi);
           send_json(res, 200,
                     api::tokens_to_json(
                         tokenize_sindhi(text, lexicon_.repertoire())));
         }));

  s.Get("/api/keyboard", [](const auto&, httplib::Response& res) {
    res.set_content(keyboard_body(), kJsonType);
  });

  if (options_.static_dir) {
    if (!s.set_mount_point("/", options_.static_dir->string())) {
      throw Error(ErrorCode::kIo, "static directory '" +
                                      options_.static_dir->string() +
                                      "' does not exist");
    }
  }
}

int Service::bind() {
  int port = options_.port;
  if (port == 0) {
    port = server_->bind_to_any_port(options_.host);
    if (port < 0) throw Error(ErrorCode::kIo, "cannot bind a port");
  } else if (!server_->bind_to_port(options_.host, port)) {
    throw Error(ErrorCode::kIo, "cannot bind " + options_.host + ":" +
                                    std::to_string(port));
  }
  return port;
}

void Service::run() { server_->listen_after_bind(); }

int Service::start() {
  int port = bind();
  thread_ = std::thread([this] { run(); });
  server_->wait_until_ready();
  return port;
}

void Service::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

Lexicon Service::snapshot() const {
  std::shared_lock lock(mutex_);
  return lexicon_;
}

void serve(const ServiceOptions& options) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  Service service(options);
  const int port = service.bind();
  std::cerr << "lughat: serving " << options.store_path.string() << " on http://"
            << options.host << ":" << port << "/\n";

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    service.stop();
  });
  service.run();
  // run() also returns if the listener fails; wake the waiter in that case.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
}

}  // namespace lughat
