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

#ifndef GEOPART_ERRORS_H_
#define GEOPART_ERRORS_H_

#include <stdexcept>
#include <string>

namespace geopart {

enum class ErrorKind {
  kInvalidInput,  // malformed or inconsistent caller data
  kDegenerate,    // well-formed input with no meaningful answer
  kInfeasible,    // constraints that cannot be met (e.g. too many components)
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace geopart

#endif  // GEOPART_ERRORS_H_
