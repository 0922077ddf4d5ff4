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
#include <optional>
#include <string>
#include <vector>

#include "preserverlab/field.hpp"
#include "preserverlab/unipoly.hpp"

namespace preserverlab {

/// Dense matrix over a Field, entries stored row-major.
class ExactMatrix {
   public:
    ExactMatrix() = default;
    /// rows x cols zero matrix.
    ExactMatrix(Field f, std::size_t rows, std::size_t cols);
    ExactMatrix(Field f, std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

    static ExactMatrix identity(const Field& f, std::size_t n);
    static ExactMatrix scalar(const Field& f, std::size_t n, const Scalar& s);
    /// E_ij with 0-based indices.
    static ExactMatrix unit(const Field& f, std::size_t n, std::size_t i, std::size_t j);
    static ExactMatrix diag(const Field& f, const std::vector<Scalar>& d);
    static ExactMatrix column(const Field& f, const std::vector<Scalar>& v);
    static ExactMatrix from_ints(const Field& f, const std::vector<std::vector<long long>>& rows);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    const Scalar& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, Scalar v);
    const std::vector<Scalar>& entries() const { return e_; }

    ExactMatrix transpose() const;
    ExactMatrix scale(const Scalar& s) const;
    ExactMatrix pow(std::uint64_t e) const;
    Scalar trace() const;
    bool is_zero() const;

    std::string str() const;

    friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator-(const ExactMatrix& a);
    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

   private:
    Field field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> e_;
};

ExactMatrix direct_sum(const ExactMatrix& a, const ExactMatrix& b);

struct RrefResult {
    ExactMatrix rref;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

RrefResult rref(const ExactMatrix& m);
std::size_t rank(const ExactMatrix& m);
/// Basis of {v : M v = 0} as column vectors, one per free column in increasing order.
std::vector<ExactMatrix> null_space(const ExactMatrix& m);

/// Kronecker product; vec(L X M) = kron(M^T, L) vec(X).
ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b);
/// Stacks columns: E_11, E_21, ..., E_n1, E_12, ...
ExactMatrix vec(const ExactMatrix& x);
ExactMatrix unvec(const ExactMatrix& v, std::size_t rows, std::size_t cols);

/// X^phi, entrywise.
ExactMatrix apply_hom_entrywise(const FieldHom& phi, const ExactMatrix& x);
ExactMatrix map_entries(const FieldEmbedding& e, const ExactMatrix& x);

bool is_idempotent(const ExactMatrix& p);
bool is_rank_one(const ExactMatrix& a);
/// N^2 = 0 and N != 0.
bool is_square_zero(const ExactMatrix& n);
/// PQ = QP = 0.
bool is_orthogonal_pair(const ExactMatrix& p, const ExactMatrix& q);

struct RankOneFactor {
    ExactMatrix x;  // column
    ExactMatrix f;  // column; the matrix is x f^T
};

/// f is the first nonzero row of A; x is scaled so its entry in that row is 1.
RankOneFactor rank_one_factorize(const ExactMatrix& a);

Scalar det(const ExactMatrix& a);
std::optional<ExactMatrix> inverse(const ExactMatrix& a);
/// Throws InvalidInput when singular.
ExactMatrix inverse_or_throw(const ExactMatrix& a);

/// det(xI - A), by fraction-free elimination over F[x].
UniPoly char_poly(const ExactMatrix& a);
/// f(A) by Horner's rule.
ExactMatrix eval_poly(const UniPoly& f, const ExactMatrix& a);

/// Linearly independent list of equally shaped matrices.
class SubspaceBasis {
   public:
    SubspaceBasis() = default;
    /// Throws InvalidInput if the basis is dependent or shapes disagree.
    SubspaceBasis(Field f, std::size_t rows, std::size_t cols, std::vector<ExactMatrix> basis);
    /// Canonical basis of the span: RREF of the vectorized spanning set.
    static SubspaceBasis span(const Field& f, std::size_t rows, std::size_t cols, const std::vector<ExactMatrix>& gens);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<ExactMatrix>& basis() const { return basis_; }

    bool contains(const ExactMatrix& x) const;
    /// Same subspace in canonical form.
    SubspaceBasis canonical() const;
    /// Sum of coeffs[i] * basis[i].
    ExactMatrix combination(const std::vector<Scalar>& coeffs) const;

    /// Compares spans, not bases.
    friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b);

   private:
    Field field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<ExactMatrix> basis_;
};

SubspaceBasis intersect_subspaces(const SubspaceBasis& u, const SubspaceBasis& v);

/// q^(n-1) (q^n - 1) / (q - 1).
std::uint64_t rank_one_idempotent_count(std::size_t n, const Field& f);
/// Position `index` in the enumeration: f^T up to scaling (first nonzero entry 1)
/// in lexicographic order, then x with f^T x = 1 in lexicographic order.
ExactMatrix rank_one_idempotent_at(std::size_t n, const Field& f, std::uint64_t index);
std::vector<ExactMatrix> enumerate_rank_one_idempotents(std::size_t n, const Field& f);

/// q^(rows*cols).
std::uint64_t matrix_count(const Field& f, std::size_t rows, std::size_t cols);
/// The matrix whose row-major entry codes spell `index` in base q, first entry least significant.
ExactMatrix matrix_at(const Field& f, std::size_t rows, std::size_t cols, std::uint64_t index);

}  // namespace preserverlab
