// Copyright 2026 The Geopart Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "geopart/hash.h"

#include <cstdio>

#include "geopart/errors.h"

namespace geopart {

uint64_t Fnv1a64(std::string_view bytes, uint64_t seed) {
  uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string HexDigest(uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string ContentHash(std::string_view bytes) {
  return HexDigest(Fnv1a64(bytes));
}

std::string JsonContentHash(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("content_hash")) {
    return ContentHash(doc.dump());
  }
  nlohmann::json copy = doc;
  copy.erase("content_hash");
  return ContentHash(copy.dump());
}

void StampContentHash(nlohmann::json& doc) {
  doc["content_hash"] = JsonContentHash(doc);
}

void VerifyContentHash(const nlohmann::json& doc, std::string_view what) {
  if (!doc.is_object() || !doc.contains("content_hash") ||
      !doc["content_hash"].is_string()) {
    Fail(ErrorKind::kInvalidInput, std::string(what) + ": missing content_hash");
  }
  if (doc["content_hash"].get<std::string>() != JsonContentHash(doc)) {
    Fail(ErrorKind::kInvalidInput,
         std::string(what) + ": content hash mismatch (file modified or corrupt)");
  }
}

}  // namespace geopart
