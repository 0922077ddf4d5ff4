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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "preserverlab/codemat.hpp"
#include "preserverlab/field.hpp"
#include "preserverlab/matrix.hpp"

namespace preserverlab {

/// One-based image array [sigma(1), ..., sigma(k)].
using Permutation = std::vector<unsigned>;

bool is_permutation(const Permutation& s);
Permutation identity_permutation(unsigned k);
/// (a o b)(i) = a(b(i)).
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& s);
int sign(const Permutation& s);
/// All permutations of {1..k} in lexicographic order.
std::vector<Permutation> all_permutations(unsigned k);
std::string to_string(const Permutation& s);

inline constexpr unsigned kMaxArity = 8;

/// Homogeneous multilinear polynomial sum_sigma alpha_sigma x_{sigma(1)} ... x_{sigma(k)}.
/// Only nonzero coefficients are stored.
class MultilinearPoly {
   public:
    MultilinearPoly() = default;
    MultilinearPoly(Field f, unsigned k);
    /// Repeated permutations are summed; zero sums dropped.
    MultilinearPoly(Field f, unsigned k, const std::vector<std::pair<Permutation, Scalar>>& terms);

    const Field& field() const { return field_; }
    unsigned arity() const { return k_; }
    const std::map<Permutation, Scalar>& terms() const { return terms_; }
    /// Zero when sigma is absent.
    Scalar coeff(const Permutation& sigma) const;

    void add_term(const Permutation& sigma, const Scalar& c);
    MultilinearPoly scale(const Scalar& s) const;
    /// p(x_{tau(1)}, ..., x_{tau(k)}); the term of sigma moves to tau o sigma.
    MultilinearPoly rename(const Permutation& tau) const;
    /// Coefficients pushed through a field embedding.
    MultilinearPoly map(const FieldEmbedding& e) const;
    MultilinearPoly apply_hom(const FieldHom& phi) const;

    std::string str() const;

    friend bool operator==(const MultilinearPoly& a, const MultilinearPoly& b);

   private:
    Field field_;
    unsigned k_ = 0;
    std::map<Permutation, Scalar> terms_;
};

ExactMatrix evaluate(const MultilinearPoly& p, const std::vector<ExactMatrix>& tuple);
bool is_zero_tuple(const MultilinearPoly& p, const std::vector<ExactMatrix>& tuple);

/// Finite-field evaluator that shares products across terms with a common prefix.
class CompiledPoly {
   public:
    explicit CompiledPoly(const MultilinearPoly& p);
    const CodeOps& ops() const { return ops_; }
    unsigned arity() const { return k_; }
    CodeMatrix evaluate(const std::vector<CodeMatrix>& tuple) const;
    bool is_zero_tuple(const std::vector<CodeMatrix>& tuple) const;

   private:
    struct Term {
        Permutation sigma;
        std::uint64_t coeff;
    };
    void walk(const std::vector<CodeMatrix>& tuple, std::size_t lo, std::size_t hi, unsigned depth, const CodeMatrix& prefix,
              CodeMatrix& acc) const;
    CodeOps ops_;
    unsigned k_;
    std::vector<Term> terms_;
};

Scalar coeff_sum(const MultilinearPoly& p);
enum class PolyClass { generic, derogatory };
PolyClass classify(const MultilinearPoly& p);
std::string to_string(PolyClass c);

struct CofMatrix {
    /// k x k, entry (i, j) = sum over sigma(i) = j of alpha_sigma (0-based storage).
    ExactMatrix entries;
    bool invertible = false;
};
CofMatrix cof_matrix(const MultilinearPoly& p);

/// Normal form used by the annihilator computations.
///
/// base = p(x_{tau(1)}, ..., x_{tau(k)}) / scale with tau = (1 i0), so that the
/// coefficient of X A^{k-1} in base(X, A, ..., A) is 1. All vectors are indexed
/// from 0 but describe the 1-based quantities: beta[i-1] is the coefficient of
/// A^{i-1} X A^{k-i} in base(X, A, ..., A); tilde_beta[i-1] is the same with X
/// in slot j0.
struct NormalizedPoly {
    MultilinearPoly original;
    MultilinearPoly base;
    unsigned i0 = 1;
    Scalar scale;
    std::vector<Scalar> beta;
    Scalar xi;
    unsigned j0 = 1;
    std::vector<Scalar> tilde_beta;
    Scalar xi_j0k;
    std::vector<Scalar> hat_beta;

    const Field& field() const { return base.field(); }
    unsigned arity() const { return base.arity(); }
    /// Same data with every coefficient pushed into a larger field.
    NormalizedPoly map(const FieldEmbedding& e) const;
};

/// Throws InvalidInput for derogatory input.
NormalizedPoly normalize(const MultilinearPoly& p);

struct TauIndex {
    unsigned j0_prime = 0;
    Scalar tau;
};
/// Smallest j >= 2 with sum over sigma(1) = 1, sigma(j) = 2 of the base coefficients nonzero.
TauIndex find_tau_index(const NormalizedPoly& np);

struct AdmissibleSet {
    unsigned k = 0;
    std::vector<Permutation> xi;
    unsigned t = 0, w = 0, u = 0, v = 0;
};

struct AdmissibleWitness {
    unsigned t, w, u, v;
    friend bool operator==(const AdmissibleWitness& a, const AdmissibleWitness& b) {
        return a.t == b.t && a.w == b.w && a.u == b.u && a.v == b.v;
    }
};

/// Every (t, w, u, v) satisfying both admissibility conditions, in lexicographic order.
std::vector<AdmissibleWitness> all_admissible_witnesses(unsigned k, const std::vector<Permutation>& xi);
/// Lexicographically smallest witness; throws InvalidInput when there is none.
AdmissibleSet validate_admissible(unsigned k, const std::vector<Permutation>& xi);

/// s_m = sum sign(sigma) x_{sigma(1)} ... x_{sigma(m)}.
MultilinearPoly standard_polynomial(const Field& f, unsigned m);

enum class SearchMode { exhaustive, sample };

struct SearchPlan {
    SearchMode mode = SearchMode::exhaustive;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

enum class IdentityOutcome { identity, not_identity, no_witness_found };
std::string to_string(IdentityOutcome o);

struct IdentityVerdict {
    IdentityOutcome outcome = IdentityOutcome::no_witness_found;
    std::optional<std::vector<ExactMatrix>> witness;
    std::uint64_t checked = 0;
};

/// Exhaustive mode visits tuples in index order with the first slot most
/// significant and needs q^(n^2 k) <= 2^24 (or PRESERVERLAB_BUDGET).
IdentityVerdict is_identity_on(const MultilinearPoly& p, std::size_t n, const SearchPlan& plan);

}  // namespace preserverlab
