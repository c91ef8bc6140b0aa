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

#include "lughat/store.h"

#include <algorithm>

namespace lughat {

const char* backend_name(StoreBackend backend) {
  return backend == StoreBackend::kHash ? "hash" : "sorted-list";
}

std::unique_ptr<EntryStore> make_store(StoreBackend backend) {
  if (backend == StoreBackend::kHash) return std::make_unique<HashStore>();
  return std::make_unique<SortedListStore>();
}

HashStore::HashStore(std::size_t bucket_hint) { map_.reserve(bucket_hint); }

const EntryRecord* HashStore::find(std::string_view key) const {
  auto it = map_.find(std::string(key));
  return it == map_.end() ? nullptr : &it->second;
}

void HashStore::upsert(const std::string& key, EntryRecord record) {
  map_.insert_or_assign(key, std::move(record));
}

bool HashStore::erase(std::string_view key) {
  return map_.erase(std::string(key)) > 0;
}

void HashStore::for_each(
    const std::function<void(const std::string&, const EntryRecord&)>& fn)
    const {
  for (const auto& [key, record] : map_) fn(key, record);
}

std::unique_ptr<EntryStore> HashStore::clone() const {
  return std::make_unique<HashStore>(*this);
}

std::vector<SortedListStore::Item>::const_iterator SortedListStore::lower_bound(
    std::string_view key) const {
  return std::lower_bound(
      items_.begin(), items_.end(), key,
      [](const Item& item, std::string_view k) { return item.first < k; });
}

const EntryRecord* SortedListStore::find(std::string_view key) const {
  auto it = lower_bound(key);
  if (it == items_.end() || it->first != key) return nullptr;
  return &it->second;
}

void SortedListStore::upsert(const std::string& key, EntryRecord record) {
  auto pos = items_.begin() + (lower_bound(key) - items_.cbegin());
  if (pos != items_.end() && pos->first == key) {
    pos->second = std::move(record);
  } else {
    items_.emplace(pos, key, std::move(record));
  }
}

bool SortedListStore::erase(std::string_view key) {
  auto it = lower_bound(key);
  if (it == items_.end() || it->first != key) return false;
  items_.erase(it);
  return true;
}

void SortedListStore::for_each(
    const std::function<void(const std::string&, const EntryRecord&)>& fn)
    const {
  for (const auto& [key, record] : items_) fn(key, record);
}

std::unique_ptr<EntryStore> SortedListStore::clone() const {
  return std::make_unique<SortedListStore>(*this);
}

}  // namespace lughat
