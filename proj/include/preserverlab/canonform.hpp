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

#include <vector>

#include "preserverlab/matrix.hpp"
#include "preserverlab/unipoly.hpp"

namespace preserverlab {

struct CompanionBlock {
    UniPoly poly;
    ExactMatrix matrix;
};

/// Ones on the subdiagonal, -a_0..-a_{d-1} down the last column; 1x1 (-a_0) in degree one.
CompanionBlock companion(const UniPoly& f);

struct PrimaryBlock {
    UniPoly factor;  ///< monic irreducible
    unsigned exponent = 1;
    CompanionBlock block;  ///< companion of factor^exponent
};

struct PrimaryRationalForm {
    std::vector<PrimaryBlock> blocks;
    /// P with P^{-1} A P = block_matrix().
    ExactMatrix transform;

    ExactMatrix block_matrix() const;
};

/// Blocks ordered by factor (canonical polynomial order), then exponent descending.
/// Throws Unsupported when the characteristic polynomial cannot be factored.
PrimaryRationalForm primary_rational_form(const ExactMatrix& A);

/// True iff some block is C(x^e) with e >= 2.
bool has_nonzero_nilpotent_block(const PrimaryRationalForm& rf);

/// One eigenvalue with all of its Jordan cells.
struct EigenGroup {
    Scalar eigenvalue;
    std::vector<std::size_t> cells;  ///< sizes, descending
    std::size_t size() const;
    /// Direct sum of upper Jordan cells J_s(lambda).
    ExactMatrix block(const Field& f) const;
};

struct SplitJordanData {
    Field field;
    FieldEmbedding embedding;  ///< base field into field
    std::vector<EigenGroup> groups;  ///< distinct eigenvalues in canonical scalar order
    ExactMatrix S;  ///< over field, S^{-1} A S = jordan_matrix()
    ExactMatrix jordan_matrix() const;
    /// Offset of group i along the diagonal.
    std::size_t offset(std::size_t i) const;
};

/// Jordan form over the smallest splitting field (finite base), or over the base
/// field itself when the characteristic polynomial splits there (Q, Q(i)).
/// Throws Unsupported for non-split input over Q or Q(i).
SplitJordanData jordan_over_splitting_field(const ExactMatrix& A);

/// Jordan cell of size n for lambda, ones on the superdiagonal.
ExactMatrix jordan_cell(const Field& f, std::size_t n, const Scalar& lambda);

}  // namespace preserverlab
