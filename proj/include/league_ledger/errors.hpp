// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ledger {

enum class ErrorKind {
    invalid_model,         // a domain type invariant was violated
    invalid_argument,      // an operation precondition was violated
    invalid_name,          // empty/whitespace-only country name
    schema,                // malformed CSV or missing/ambiguous columns
    io,                    // unreadable file or stream
    empty_snapshot,        // zero parseable rows
    empty_input,           // an operation received an empty collection
    undefined_score,       // AR ranking met a score without an average rank
    method_mismatch,       // diffing rankings produced by different methods
    insufficient_overlap,  // fewer than two common countries
    missing_snapshot,      // (source, edition) not present in the store
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace ledger
