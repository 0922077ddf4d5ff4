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

#include <optional>
#include <string>

#include "preserverlab/canonform.hpp"
#include "preserverlab/elemop.hpp"

namespace preserverlab {

enum class OmegaCase { trivial_zero, rank_one_square_zero, scalar_idempotent_line, other };
enum class ClassPath { structural, direct };

std::string to_string(OmegaCase c);
std::string to_string(ClassPath p);

struct OmegaClassification {
    OmegaCase kind = OmegaCase::other;
    ClassPath path = ClassPath::structural;
    /// Working field: the base field, or the splitting-field lift.
    Field field;
    FieldEmbedding embedding;
    /// Square-zero rank-one N, or the idempotent P, over `field`.
    std::optional<ExactMatrix> witness;
    /// Intersection basis over `field`; always set by the direct path, and for Other.
    std::optional<SubspaceBasis> basis;
};

/// Follows the Jordan-form case analysis: no common zero of the two scalar
/// polynomials, a common zero at distinct eigenvalues, a zero eigenvalue with
/// a block of size >= 2, a zero eigenvalue with a 1x1 block.
/// Without `lift` the characteristic polynomial must split over A's field
/// (InvalidInput otherwise); over Q and Q(i) non-split input is Unsupported.
OmegaClassification classify_structural(const ExactMatrix& A, const NormalizedPoly& np, bool lift);

/// Computes the intersection and searches it for a square-zero rank-one element.
/// Finite fields enumerate projective points when there are at most 2^20 of
/// them, else sample 1e5 combinations from `seed` and then defer to the
/// structural path. Over Q and Q(i) dimensions 1 and 2 are decided exactly;
/// larger intersections use the structural path when it applies, else Other.
OmegaClassification classify_direct(const ExactMatrix& A, const NormalizedPoly& np, bool lift, std::uint64_t seed = 0);

struct CrossValidation {
    bool agree = false;
    OmegaClassification structural;
    OmegaClassification direct;
    /// Both outcomes, filled when the cases differ.
    std::string diagnostic;
};

CrossValidation cross_validate(const ExactMatrix& A, const NormalizedPoly& np, bool lift = true, std::uint64_t seed = 0);

}  // namespace preserverlab
