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

#ifndef LUGHAT_SERVICE_H_
#define LUGHAT_SERVICE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <thread>

#include "lughat/lexicon.h"
#include "lughat/persistence.h"

namespace httplib {
class Server;
}

namespace lughat {

struct ServiceOptions {
  std::filesystem::path store_path;
  std::string host = "127.0.0.1";
  // 0 picks a free port.
  int port = 8765;
  // Served at "/" when set (the built editor UI).
  std::optional<std::filesystem::path> static_dir;
  // Test hook forwarded to every save.
  persistence::SaveHooks save_hooks;
};

// Local HTTP+JSON API over one store file. Reads run concurrently; each
// mutation is applied and saved under an exclusive lock before the response
// is sent. If the save fails the mutation is rolled back.
//
//   GET    /api/health
//   GET    /api/entries?kind=&prefix=&offset=&limit=
//   GET    /api/entries/{kind}/{key}
//   PUT    /api/entries/{kind}/{key}      (If-Match: revision, 0 = must not exist)
//   DELETE /api/entries/{kind}/{key}      (If-Match: revision)
//   POST   /api/tokenize                  {"text": ...}
//   GET    /api/keyboard
class Service {
 public:
  // Loads the store, creating an empty one when the file does not exist.
  explicit Service(ServiceOptions options);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds the listening socket and returns the port. Throws IoError.
  int bind();
  // Serves until stop(). Requires bind().
  void run();
  // bind() and run() on a background thread; returns the port.
  int start();
  void stop();

  // Copy of the current state, for tests and diagnostics.
  Lexicon snapshot() const;

 private:
  void install_routes();

  ServiceOptions options_;
  mutable std::shared_mutex mutex_;
  Lexicon lexicon_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

// Blocking entry point used by `lughat serve`; returns when SIGINT or
// SIGTERM arrives.
void serve(const ServiceOptions& options);

}  // namespace lughat

#endif  // LUGHAT_SERVICE_H_
