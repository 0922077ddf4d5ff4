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

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace preserverlab {

struct GaussianRational {
    mpq_class re;
    mpq_class im;
};
bool operator==(const GaussianRational& a, const GaussianRational& b);

/// A canonical field value whose meaning is fixed by the owning Field.
///
/// Finite-field values are codes in [0, q): the residue for GF(p), and the
/// base-p packing sum c_i p^i of the coefficient vector for GF(p^k).
/// Rationals are reduced mpq values; Gaussian rationals are (re, im) pairs.
using Scalar = std::variant<std::uint64_t, mpq_class, GaussianRational>;

enum class FieldKind { prime, extension, rationals, gaussian_rationals };

/// Handle to an exact field: GF(p), GF(p^k) = GF(p)[x]/(modulus), Q or Q(i).
///
/// Handles are cheap to copy and immutable. Extension fields with at most 2^20
/// elements use log/exp tables; larger ones multiply polynomials directly.
class Field {
   public:
    /// The rationals.
    Field();

    static Field prime(std::uint64_t p);
    /// modulus: lowest-degree-first, monic, irreducible over GF(p), degree >= 2.
    static Field extension(std::uint64_t p, const std::vector<std::uint64_t>& modulus);
    /// GF(p^degree) built on the smallest monic irreducible of that degree
    /// (coefficients compared as base-p integers, constant term least significant).
    static Field galois(std::uint64_t p, unsigned degree);
    static Field rationals();
    static Field gaussian_rationals();

    FieldKind kind() const;
    bool is_finite() const;
    /// 0 for Q and Q(i).
    std::uint64_t characteristic() const;
    /// Degree over the prime field for finite fields, 1 otherwise.
    unsigned degree() const;
    /// Number of elements; 0 for infinite fields.
    std::uint64_t order() const;
    /// Empty unless kind() == extension.
    const std::vector<std::uint64_t>& modulus() const;
    std::string name() const;

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(long long v) const;
    Scalar from_mpz(const mpz_class& v) const;
    /// Q and Q(i) only.
    Scalar from_rational(const mpq_class& v) const;
    /// Q(i) only.
    Scalar gaussian(const mpq_class& re, const mpq_class& im) const;
    /// The class of x modulo the modulus (extensions only).
    Scalar generator() const;

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    /// Throws std::domain_error on zero.
    Scalar inv(const Scalar& a) const;
    Scalar div(const Scalar& a, const Scalar& b) const;
    Scalar pow(const Scalar& a, std::uint64_t e) const;
    Scalar pow(const Scalar& a, const mpz_class& e) const;

    bool is_zero(const Scalar& a) const;
    bool is_one(const Scalar& a) const;
    bool equal(const Scalar& a, const Scalar& b) const;
    /// Canonical total order: code order for finite fields, numeric for Q,
    /// (re, im) lexicographic for Q(i).
    int compare(const Scalar& a, const Scalar& b) const;

    /// Finite fields: the element with code `index`, index < order().
    Scalar element(std::uint64_t index) const;
    std::uint64_t index_of(const Scalar& a) const;
    /// Extension coefficient vector, length degree(), lowest first.
    std::vector<std::uint64_t> coefficients(const Scalar& a) const;
    Scalar from_coefficients(const std::vector<std::uint64_t>& c) const;

    /// Finite fields only: arithmetic on raw element codes, no validation.
    std::uint64_t code_add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t code_sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t code_neg(std::uint64_t a) const;
    std::uint64_t code_mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t code_inv(std::uint64_t a) const;

    /// True when `a` is a valid canonical value of this field.
    bool contains(const Scalar& a) const;
    std::string format(const Scalar& a) const;

    friend bool operator==(const Field& a, const Field& b);

    /// Opaque representation; defined in field.cpp.
    struct Impl;

   private:
    explicit Field(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

/// Deterministic primality for p < 2^31 (trial division).
bool is_prime(std::uint64_t p);

/// A scalar bundled with its field; the user-facing element type.
class FieldElem {
   public:
    FieldElem() = default;
    FieldElem(Field f, Scalar v);
    static FieldElem from_int(const Field& f, long long v);

    const Field& field() const { return field_; }
    const Scalar& value() const { return value_; }

    bool is_zero() const { return field_.is_zero(value_); }
    FieldElem inverse() const;
    FieldElem pow(std::uint64_t e) const;
    std::string str() const { return field_.format(value_); }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a);
    friend bool operator==(const FieldElem& a, const FieldElem& b);

   private:
    Field field_;
    Scalar value_ = std::uint64_t{0};
};

/// A field automorphism: identity, x -> x^(p^e) on a finite field, or
/// complex conjugation on Q(i).
class FieldHom {
   public:
    enum class Kind { identity, frobenius, conjugation };

    FieldHom() = default;
    static FieldHom identity(const Field& f);
    /// 0 <= e < degree(); e == 0 is the identity.
    static FieldHom frobenius(const Field& f, unsigned e);
    static FieldHom conjugation(const Field& f);

    Kind kind() const { return kind_; }
    unsigned power() const { return power_; }
    const Field& field() const { return field_; }
    bool is_identity() const;

    Scalar apply(const Scalar& x) const;
    /// Throws InvalidInput on field mismatch.
    FieldElem apply(const FieldElem& x) const;
    /// The inverse automorphism.
    FieldHom inverse() const;
    std::string describe() const;

    friend bool operator==(const FieldHom& a, const FieldHom& b);

   private:
    FieldHom(Field f, Kind k, unsigned e) : field_(std::move(f)), kind_(k), power_(e) {}
    Field field_;
    Kind kind_ = Kind::identity;
    unsigned power_ = 0;
};

/// All automorphisms: Frobenius powers for GF(p^k), {id} for Q, {id, conj} for Q(i).
std::vector<FieldHom> enumerate_homs(const Field& f);

/// Field embedding of a finite field into an extension of it, determined by the
/// image of the source generator.
class FieldEmbedding {
   public:
    FieldEmbedding() = default;
    /// Identity embedding of a field into itself.
    explicit FieldEmbedding(const Field& f);
    FieldEmbedding(Field source, Field target, Scalar generator_image);

    const Field& source() const { return source_; }
    const Field& target() const { return target_; }
    const Scalar& generator_image() const { return generator_image_; }
    bool is_identity() const { return source_ == target_; }

    Scalar apply(const Scalar& x) const;
    FieldElem apply(const FieldElem& x) const;

   private:
    Field source_;
    Field target_;
    Scalar generator_image_ = std::uint64_t{0};
};

}  // namespace preserverlab
