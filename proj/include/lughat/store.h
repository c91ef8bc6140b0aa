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

#ifndef LUGHAT_STORE_H_
#define LUGHAT_STORE_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lughat/record.h"

namespace lughat {

// Key/value map from Key-form headword to record. Two implementations exist:
// the hash table used in production and a sorted association list kept as a
// behavioral reference. Nothing observable may depend on which one is used,
// including for_each order, which callers must not rely on.
class EntryStore {
 public:
  virtual ~EntryStore() = default;

  virtual const EntryRecord* find(std::string_view key) const = 0;
  virtual void upsert(const std::string& key, EntryRecord record) = 0;
  virtual bool erase(std::string_view key) = 0;
  virtual std::size_t size() const = 0;
  virtual void for_each(
      const std::function<void(const std::string&, const EntryRecord&)>& fn)
      const = 0;
  virtual std::unique_ptr<EntryStore> clone() const = 0;
};

enum class StoreBackend { kHash, kSortedList };

const char* backend_name(StoreBackend backend);

std::unique_ptr<EntryStore> make_store(StoreBackend backend);

// Bucket array sized once for the expected dictionary size.
inline constexpr std::size_t kDefaultBucketHint = 65536;

class HashStore final : public EntryStore {
 public:
  explicit HashStore(std::size_t bucket_hint = kDefaultBucketHint);

  const EntryRecord* find(std::string_view key) const override;
  void upsert(const std::string& key, EntryRecord record) override;
  bool erase(std::string_view key) override;
  std::size_t size() const override { return map_.size(); }
  void for_each(const std::function<void(const std::string&,
                                         const EntryRecord&)>& fn)
      const override;
  std::unique_ptr<EntryStore> clone() const override;

 private:
  std::unordered_map<std::string, EntryRecord> map_;
};

// Vector of (key, record) kept sorted by key bytes; binary-search lookup,
// linear-time insert and erase.
class SortedListStore final : public EntryStore {
 public:
  const EntryRecord* find(std::string_view key) const override;
  void upsert(const std::string& key, EntryRecord record) override;
  bool erase(std::string_view key) override;
  std::size_t size() const override { return items_.size(); }
  void for_each(const std::function<void(const std::string&,
                                         const EntryRecord&)>& fn)
      const override;
  std::unique_ptr<EntryStore> clone() const override;

 private:
  using Item = std::pair<std::string, EntryRecord>;
  std::vector<Item>::const_iterator lower_bound(std::string_view key) const;

  std::vector<Item> items_;
};

}  // namespace lughat

#endif  // LUGHAT_STORE_H_
