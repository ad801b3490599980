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

#include <string>
#include <string_view>

#include "league_ledger/errors.hpp"

namespace ledger {

/// Canonical three-letter country identifier (ISO-3166-1 alpha-3 style).
/// The code is the identity; display_name is presentation-only and does not
/// participate in comparisons.
class CountryCode {
  public:
    explicit CountryCode(std::string code, std::string display_name = "")
        : code_(std::move(code)),
          display_(display_name.empty() ? code_ : std::move(display_name)) {
        if (code_.size() != 3) {
            fail(ErrorKind::invalid_model,
                 "CountryCode: code must match [A-Z]{3}, got \"" + code_ + "\"");
        }
        for (char c : code_) {
            if (c < 'A' || c > 'Z') {
                fail(ErrorKind::invalid_model,
                     "CountryCode: code must match [A-Z]{3}, got \"" + code_ + "\"");
            }
        }
    }

    const std::string& code() const noexcept { return code_; }
    const std::string& display_name() const noexcept { return display_; }

    friend bool operator==(const CountryCode& a, const CountryCode& b) noexcept {
        return a.code_ == b.code_;
    }
    friend bool operator!=(const CountryCode& a, const CountryCode& b) noexcept {
        return !(a == b);
    }
    friend bool operator<(const CountryCode& a, const CountryCode& b) noexcept {
        return a.code_ < b.code_;
    }

  private:
    std::string code_;
    std::string display_;
};

/// Bucket for country names that do not resolve through the alias table.
inline const CountryCode& unmapped_bucket() {
    static const CountryCode bucket{"ZZZ", "Unmapped"};
    return bucket;
}

}  // namespace ledger
