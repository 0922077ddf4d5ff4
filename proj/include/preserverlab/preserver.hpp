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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "preserverlab/matrix.hpp"
#include "preserverlab/multipoly.hpp"

namespace preserverlab {

using Tuple = std::vector<ExactMatrix>;

/// Canonical serialization used as the key of gamma, shift and map tables.
std::string matrix_key(const ExactMatrix& a);

enum class EntryTweak { none, add_a12_identity, subtract_trace_over_n };
std::string to_string(EntryTweak t);

/// A transformation of M_n(F).
///
/// Parametric mode applies, in this order: entry tweak, entrywise hom phi,
/// optional transpose, X -> T X T^{-1}, scaling by gamma(A), adding shift(A) Id.
/// gamma and shift are looked up on the original argument A; gamma falls back
/// to the constant, shift to zero. Table mode maps every matrix through `table`
/// (finite fields only; matrices not listed map to themselves).
struct PreserverSpec {
    enum class Mode { parametric, table };

    std::size_t n = 0;
    Field field;
    Mode mode = Mode::parametric;

    ExactMatrix T;
    ExactMatrix T_inv;
    FieldHom phi;
    bool transpose = false;
    Scalar gamma;
    std::map<std::string, Scalar> gamma_table;
    std::map<std::string, Scalar> shift_table;
    EntryTweak tweak = EntryTweak::none;

    std::map<std::string, ExactMatrix> table;

    /// Parametric identity map.
    static PreserverSpec identity(const Field& f, std::size_t n);
    static PreserverSpec from_table(const Field& f, std::size_t n, const std::vector<std::pair<ExactMatrix, ExactMatrix>>& entries);

    /// Sets T and its inverse; throws InvalidInput when T is singular.
    void set_similarity(const ExactMatrix& t);
    /// Throws InvalidInput on a singular T, a zero gamma value, a hom over
    /// another field, malformed table entries, or a trace tweak with char | n.
    void validate() const;
};

ExactMatrix apply(const PreserverSpec& spec, const ExactMatrix& a);
Tuple apply_tuple(const PreserverSpec& spec, const Tuple& t);

enum class Strategy { exhaustive, witnesses, sample };
std::string to_string(Strategy s);

struct StrategyPlan {
    Strategy kind = Strategy::witnesses;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    /// Extra tuples tried first by the witnesses strategy.
    std::vector<Tuple> candidates;
};

struct Verdict {
    bool holds = true;
    std::optional<Tuple> witness;
    std::optional<Tuple> image;
    /// p1 on the witness and p2 on its image.
    std::optional<ExactMatrix> value;
    std::optional<ExactMatrix> image_value;
    Strategy strategy = Strategy::witnesses;
    bool strong = false;
    std::uint64_t checked = 0;
    std::uint64_t seed = 0;
};

/// Looks for a tuple in the zero set of p1 whose image is not a zero of p2
/// (strong: any tuple where the two zero tests disagree).
/// Exhaustive mode needs a finite field and q^{n^2 k} within the enumeration
/// budget (BudgetExceeded otherwise); tuples are ordered with the first slot
/// most significant and matrices as in matrix_at, lowest violating index wins.
Verdict check_maps_zeros(const MultilinearPoly& p1, const MultilinearPoly& p2, const PreserverSpec& spec, bool strong,
                         const StrategyPlan& plan);

/// check_maps_zeros with p1 = p2 = xy - yx.
Verdict check_commutativity_preservation(const PreserverSpec& spec, const StrategyPlan& plan, bool strong = true);

/// Probe matrices: E_ij row-major, Id, Id + E_ij and E_ii + E_ij for i != j.
std::vector<ExactMatrix> probe_matrices(const Field& f, std::size_t n);

struct LabelledTuple {
    std::string family;
    Tuple tuple;
};

/// Tuples built after the families used in the preserver arguments:
///   "admissible_t":  (Id, ..., Id, c Id at t, F, ..., F), F a rank-one idempotent
///                    (only when p is derogatory with an admissible term set);
///   "commuting":     (Id, ..., X at w, Y at w+1, ..., Id) for commuting probes X, Y
///                    (w from the admissible witness; w = 1 otherwise);
///   "orthogonal":    P in one slot, Q in all others, PQ = QP = 0 rank-one idempotents;
///   "nilpotent_pair":(N, P, ..., A at j0', ..., P) with PN = NP = 0, N rank one,
///                    A a probe (generic p only).
/// Rank-one idempotents are all of them when there are at most 256, else E_ii
/// and E_ii + E_ij.
std::vector<LabelledTuple> structured_witness_tuples(const MultilinearPoly& p, std::size_t n);

/// Searches for a nonzero A with apply(spec, A) = 0. Exhaustive needs a finite
/// field and q^{n^2} within the budget; witnesses tries probes, scalar
/// multiples of Id and rank-one idempotents; sample draws uniform matrices.
Verdict check_zero_kernel(const PreserverSpec& spec, const StrategyPlan& plan);

struct IdempotentStructureReport {
    Verdict precondition;
    std::uint64_t checked = 0;
    /// Rank-one idempotents whose image is not a nonzero multiple of one.
    std::vector<std::pair<ExactMatrix, ExactMatrix>> exceptions;
    bool holds() const { return precondition.holds && exceptions.empty(); }
};

/// Verifies strong zero preservation of the generic p (exhaustive when within
/// the budget, witnesses otherwise), then maps every rank-one idempotent.
/// Finite fields only.
IdempotentStructureReport check_rank_one_idempotent_structure(const PreserverSpec& spec, const MultilinearPoly& p,
                                                              unsigned jobs = 1);

/// Adjusts gamma (and shift) on rank-one idempotents so their images are
/// idempotent; table specs are fixed pointwise. Throws InvalidInput when
/// check_rank_one_idempotent_structure fails.
PreserverSpec rescale_to_idempotent_preserving(const PreserverSpec& spec, const MultilinearPoly& p, unsigned jobs = 1);

struct ExampleReport {
    std::string id;
    std::string expected;
    std::string computed;
    bool matches = false;
    std::optional<Verdict> verdict;
    /// Additional named facts, in a fixed order.
    std::vector<std::pair<std::string, std::string>> facts;
};

std::vector<std::string> example_ids();
/// add_a12, trace_kernel, jordan_theta, real_omega, gaussian_conjugation, transpose_xy.
ExampleReport reproduce_example(const std::string& id, unsigned jobs = 1, std::uint64_t seed = 0);

}  // namespace preserverlab
