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
#include <string>
#include <utility>
#include <vector>

#include "preserverlab/field.hpp"

namespace preserverlab {

/// Univariate polynomial over a Field, coefficients lowest degree first with
/// trailing zeros stripped.
class UniPoly {
   public:
    /// The zero polynomial over Q.
    UniPoly() = default;
    /// The zero polynomial over f.
    explicit UniPoly(Field f) : field_(std::move(f)) {}
    UniPoly(Field f, std::vector<Scalar> coeffs);

    static UniPoly constant(const Field& f, const Scalar& c);
    /// c * x^deg
    static UniPoly monomial(const Field& f, const Scalar& c, std::size_t deg);
    static UniPoly x(const Field& f);
    static UniPoly from_ints(const Field& f, const std::vector<long long>& coeffs);

    const Field& field() const { return field_; }
    const std::vector<Scalar>& coeffs() const { return c_; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const;
    bool is_monic() const;
    /// Zero beyond the degree.
    Scalar coeff(std::size_t i) const;
    Scalar leading() const;

    Scalar eval(const Scalar& x) const;
    UniPoly monic() const;
    UniPoly derivative() const;
    UniPoly scale(const Scalar& s) const;
    /// Pointwise image under a field embedding or automorphism.
    UniPoly map(const FieldEmbedding& e) const;

    std::string str(const std::string& var = "x") const;

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a);
    friend bool operator==(const UniPoly& a, const UniPoly& b);

   private:
    void trim();
    Field field_;
    std::vector<Scalar> c_;
};

/// Quotient and remainder; throws std::domain_error on division by zero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly operator/(const UniPoly& a, const UniPoly& b);
UniPoly operator%(const UniPoly& a, const UniPoly& b);
/// Monic gcd; zero only when both inputs are zero.
UniPoly gcd(const UniPoly& a, const UniPoly& b);
UniPoly powmod(const UniPoly& base, const mpz_class& e, const UniPoly& mod);
/// Canonical order: coefficient vectors compared lexicographically, constant
/// term first, a proper prefix before its extensions.
int compare(const UniPoly& a, const UniPoly& b);

/// Irreducibility over the polynomial's own field. Finite fields use Rabin's
/// test; Q and Q(i) go through factor_poly and share its degree limits.
bool is_irreducible(const UniPoly& f);

/// Smallest monic irreducible of the given degree over GF(p), coefficients
/// lowest first, ranked as a base-p integer with the constant term least significant.
std::vector<std::uint64_t> smallest_irreducible(std::uint64_t p, unsigned degree);

struct Factor {
    UniPoly poly;
    unsigned multiplicity = 0;
};

/// Monic irreducible factorization in canonical factor order.
///
/// Finite fields: exhaustive divisor search when q^deg <= 2^16, otherwise
/// square-free, distinct-degree and equal-degree splitting driven by `seed`.
/// Q and Q(i): rational roots are stripped at any degree; the remaining cofactor
/// must have degree <= 4, else Unsupported is thrown.
std::vector<Factor> factor_poly(const UniPoly& f, std::uint64_t seed = 0);

/// Distinct roots in the polynomial's field, in canonical scalar order.
std::vector<Scalar> roots(const UniPoly& f);

struct SplittingField {
    Field field;
    FieldEmbedding embedding;
};

/// Smallest GF(q^m) over which f splits. The embedding sends the base generator
/// to the smallest root of the base modulus in the target.
SplittingField splitting_field(const UniPoly& f);

/// Embedding of a finite field into GF(p^(k*m)) as chosen by splitting_field.
FieldEmbedding extension_embedding(const Field& base, unsigned m);

}  // namespace preserverlab
