/*
   Copyright 2026 The preserverlab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace preserverlab {

/// Malformed or inconsistent input (bad descriptor, dimension or field mismatch).
class InvalidInput : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// The requested computation is outside what the library decides exactly.
class Unsupported : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An enumeration would exceed its configured cap.
class BudgetExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Enumeration cap, overridable with PRESERVERLAB_BUDGET (a plain integer count).
std::uint64_t enumeration_budget(std::uint64_t default_cap);

/// Throws BudgetExceeded when count > enumeration_budget(default_cap).
void require_budget(std::uint64_t count, std::uint64_t default_cap, const std::string& what);

/// base^exp, or UINT64_MAX when it overflows.
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp);

}  // namespace preserverlab
