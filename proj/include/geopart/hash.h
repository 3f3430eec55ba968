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

// Content hashes for persisted artifacts.  Not cryptographic: they detect
// stale or mismatched inputs, not tampering.

#ifndef GEOPART_HASH_H_
#define GEOPART_HASH_H_

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

namespace geopart {

// 64-bit FNV-1a.
uint64_t Fnv1a64(std::string_view bytes, uint64_t seed = 0xcbf29ce484222325ULL);

// 16 lowercase hex digits.
std::string HexDigest(uint64_t h);
std::string ContentHash(std::string_view bytes);

// Hash of `doc` serialized without its "content_hash" member.
std::string JsonContentHash(const nlohmann::json& doc);
// Sets doc["content_hash"].
void StampContentHash(nlohmann::json& doc);
// Throws kInvalidInput if the stored hash is missing or stale.
void VerifyContentHash(const nlohmann::json& doc, std::string_view what);

}  // namespace geopart

#endif  // GEOPART_HASH_H_
