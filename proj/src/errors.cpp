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

#include "preserverlab/errors.hpp"

#include <cstdlib>
#include <limits>

namespace preserverlab {

std::uint64_t enumeration_budget(std::uint64_t default_cap) {
    const char* env = std::getenv("PRESERVERLAB_BUDGET");
    if (env == nullptr || *env == '\0') return default_cap;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') return default_cap;
    return static_cast<std::uint64_t>(v);
}

void require_budget(std::uint64_t count, std::uint64_t default_cap, const std::string& what) {
    const auto cap = enumeration_budget(default_cap);
    if (count > cap)
        throw BudgetExceeded(what + ": " + std::to_string(count) + " items exceed budget " + std::to_string(cap));
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            return std::numeric_limits<std::uint64_t>::max();
        r *= base;
    }
    return r;
}

}  // namespace preserverlab
