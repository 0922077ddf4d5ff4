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
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "preserverlab/field.hpp"
#include "preserverlab/matrix.hpp"
#include "preserverlab/multipoly.hpp"

namespace preserverlab {

/// A failing instance, stored so that it can be re-checked by hand.
struct Counterexample {
    std::string what;
    std::vector<std::pair<std::string, ExactMatrix>> matrices;
    std::vector<std::pair<std::string, Scalar>> scalars;
    std::vector<std::pair<std::string, std::string>> text;

    const ExactMatrix& matrix(const std::string& name) const;
    const Scalar& scalar(const std::string& name) const;
};

struct LemmaReport {
    std::string lemma;
    Field field;
    /// Instances examined.
    std::uint64_t instances = 0;
    /// Instances whose hypothesis held, so that the conclusion was actually tested.
    std::uint64_t premise_held = 0;
    std::uint64_t failure_count = 0;
    /// The first failures in instance order (at most kMaxStoredFailures).
    std::vector<Counterexample> failures;
    /// Checks outside the stated claim (converses, restricted witness sets).
    /// Reported, never counted as failures.
    std::uint64_t secondary_failure_count = 0;
    std::vector<Counterexample> secondary_failures;
    std::string secondary_label;
    bool exhaustive = false;
    std::uint64_t seed = 0;
    std::vector<std::string> notes;

    bool passed() const { return failure_count == 0; }
};

inline constexpr std::size_t kMaxStoredFailures = 16;

/// Visits every k-tuple of n x n matrices that is a zero of p, in index order
/// (first slot most significant, entries as in matrix_at). The visitor returns
/// false to stop. Needs a finite field and q^(n^2 k) within the 2^24 budget.
/// Returns the number of zeros visited.
std::uint64_t enumerate_zero_set(const MultilinearPoly& p, std::size_t n,
                                 const std::function<bool(const std::vector<ExactMatrix>&)>& visit);
std::uint64_t count_zero_set(const MultilinearPoly& p, std::size_t n);

struct OrthogonalityScalars {
    Scalar mu, nu, mu2, nu2;
};

struct OrthogonalityCheck {
    bool premise = false;    // 1 + mu + nu != 0 and P idempotent
    bool equations = false;  // PX + mu PXP + nu XP = 0 = XP + mu2 PXP + nu2 PX
    bool orthogonal = false; // PX = 0 = XP
};

OrthogonalityCheck check_orthogonality(const ExactMatrix& P, const ExactMatrix& X, const OrthogonalityScalars& s);

/// Exhaustive over all idempotents, all X and all scalar quadruples when
/// q^(n^2) <= 2^12 and the instance count fits 2^26; otherwise `trials` seeded
/// instances with X drawn from the solution space of the two equations.
LemmaReport verify_orthogonality_lemma(const Field& f, std::size_t n, std::uint64_t trials = 1000,
                                       std::uint64_t seed = 0);

/// For every A in M_n(F_q): A = 0 iff p(A, X, ..., X) = 0 for all rank-one X.
/// The proof's witness set {E_ii} is checked alongside and reported as the
/// secondary result. p must be generic; q^(n^2) <= 2^20.
LemmaReport verify_zero_detection(const MultilinearPoly& p, std::size_t n, unsigned jobs = 1);

/// X in Omega_{.A} and Omega_{A.A} of the normalized form of p.
bool in_omega_intersection(const NormalizedPoly& np, const ExactMatrix& A, const ExactMatrix& X);

struct ProportionalityCheck {
    /// For every rank-one idempotent P: N1 in the intersection for P iff N2 is for P^phi.
    bool condition = true;
    /// The first P (enumeration order) where the equivalence breaks.
    std::optional<ExactMatrix> distinguishing;
    bool proportional = false;
    std::optional<Scalar> lambda;  // N2 = lambda N1^phi
};

ProportionalityCheck check_nilpotent_pair(const NormalizedPoly& np, const ExactMatrix& N1, const ExactMatrix& N2,
                                          const FieldHom& phi);

/// `pairs` seeded rank-one nilpotent pairs (N1, N2); both implications between
/// the condition and N2 in F* N1^phi count as failures. n >= 3.
LemmaReport verify_nilpotent_proportionality(const MultilinearPoly& p, std::size_t n, const FieldHom& phi,
                                             std::uint64_t pairs = 100, std::uint64_t seed = 0, unsigned jobs = 1);

struct BStructureCheck {
    /// NAP + alpha PAN = 0 iff N^phi B P^phi + beta P^phi B N^phi = 0, for all
    /// rank-one idempotents P and rank-one N with PN = 0 = NP.
    bool condition = true;
    std::optional<ExactMatrix> P, N;
    /// B in span{A^phi, Id}.
    bool in_span = false;
};

/// Enumerates P = x g^T (x projective, g^T x = 1) and N = y f^T (y, f
/// projective, g^T y = 0 = f^T x); N enters the condition only up to scale.
/// Needs q^n <= 2^16.
BStructureCheck check_B_structure(const ExactMatrix& A, const ExactMatrix& B, const Scalar& alpha,
                                  const Scalar& beta, const FieldHom& phi);

/// Seeded (A, B, alpha, beta) instances, n >= 4. Failures are instances where
/// the condition holds but B is outside span{A^phi, Id}. The unclaimed converse
/// (B in the span implies the condition) is reported as the secondary result.
LemmaReport verify_B_structure_lemma(const Field& f, std::size_t n, const FieldHom& phi, std::uint64_t trials = 24,
                                     std::uint64_t seed = 0, unsigned jobs = 1);

enum class LldCase { globally_dependent, common_3dim_image, rank_one_projection, none };
std::string to_string(LldCase c);

struct LldResult {
    /// R1 u, R2 u, R3 u dependent for every u.
    bool dependent_everywhere = false;
    /// First u (index order) with independent images.
    std::optional<ExactMatrix> independent_at;
    /// First matching branch in the order of the enum.
    LldCase conclusion = LldCase::none;
    /// Rank-one idempotent for the projection branch.
    std::optional<ExactMatrix> projection;
};

/// Finite fields; q^n <= 2^16 for the premise, |rank-one idempotents| <= 2^20.
LldResult local_linear_dependence(const ExactMatrix& R1, const ExactMatrix& R2, const ExactMatrix& R3);

struct SpectrumSweep {
    std::size_t max_block = 3;
    /// Random (m, n, lambda, mu, c) draws; ignored when lists_per_pair > 0.
    std::uint64_t cases = 200;
    /// When positive, every (m, n, lambda, mu) with this many coefficient lists each.
    std::uint64_t lists_per_pair = 0;
    unsigned max_degree = 3;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

/// X -> sum_j c_j J_m(lambda)^{t-j} X J_n(mu)^j as an mn x mn matrix, built by
/// applying the map to the unit matrices (column-stacked).
ExactMatrix operator_matrix_by_action(const std::vector<Scalar>& coeffs, const ExactMatrix& L, const ExactMatrix& M);

/// char_poly of the operator equals (x - sum_j c_j lambda^{t-j} mu^j)^{mn}.
LemmaReport check_spectrum_formula(const Field& f, const SpectrumSweep& sweep);

}  // namespace preserverlab
