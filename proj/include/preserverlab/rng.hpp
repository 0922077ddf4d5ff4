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
#include <random>

namespace preserverlab {

/// Seeded generator with a platform-independent draw sequence. std::uniform_*
/// distributions are implementation-defined, so bounded draws use modulo.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform-ish in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

   private:
    std::mt19937_64 engine_;
};

}  // namespace preserverlab
