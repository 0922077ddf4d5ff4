#include <gtest/gtest.h>

#include "preserverlab/errors.hpp"
#include "preserverlab/multipoly.hpp"
#include "preserverlab/rng.hpp"

using namespace preserverlab;

namespace {

ExactMatrix random_matrix(const Field& f, std::size_t n, Rng& rng) {
    std::vector<Scalar> e;
    for (std::size_t i = 0; i < n * n; ++i) e.push_back(f.element(rng.below(f.order())));
    return ExactMatrix(f, n, n, e);
}

ExactMatrix random_invertible(const Field& f, std::size_t n, Rng& rng) {
    while (true) {
        auto m = random_matrix(f, n, rng);
        if (!f.is_zero(det(m))) return m;
    }
}

MultilinearPoly poly(const Field& f, unsigned k, const std::vector<std::pair<Permutation, long long>>& terms) {
    MultilinearPoly p(f, k);
    for (auto& [s, c] : terms) p.add_term(s, f.from_int(c));
    return p;
}

MultilinearPoly random_poly(const Field& f, unsigned k, Rng& rng) {
    MultilinearPoly p(f, k);
    for (auto& s : all_permutations(k))
        if (rng.below(2)) p.add_term(s, f.element(rng.below(f.order())));
    return p;
}

// Direct sum of coefficient-weighted A^{i-1} X A^{k-i}.
ExactMatrix weighted_powers(const std::vector<Scalar>& c, const ExactMatrix& X, const ExactMatrix& A) {
    const std::size_t k = c.size();
    ExactMatrix acc(X.field(), X.rows(), X.cols());
    for (std::size_t i = 1; i <= k; ++i) acc = acc + (A.pow(i - 1) * X * A.pow(k - i)).scale(c[i - 1]);
    return acc;
}

}  // namespace

TEST(Permutations, Basics) {
    EXPECT_EQ(all_permutations(3).size(), 6u);
    EXPECT_EQ(sign({2, 1, 3}), -1);
    EXPECT_EQ(sign({2, 3, 1}), 1);
    EXPECT_EQ(compose({2, 1, 3}, {1, 3, 2}), (Permutation{2, 3, 1}));
    EXPECT_EQ(compose(inverse({2, 3, 1}), {2, 3, 1}), identity_permutation(3));
    EXPECT_FALSE(is_permutation({1, 1}));
}

TEST(MultiPoly, EvaluateExamples) {
    Field f = Field::prime(3);
    auto E11 = ExactMatrix::unit(f, 2, 0, 0), E12 = ExactMatrix::unit(f, 2, 0, 1), I = ExactMatrix::identity(f, 2);
    auto comm = poly(f, 2, {{{1, 2}, 1}, {{2, 1}, -1}});
    EXPECT_EQ(evaluate(comm, {E11, E12}), E12);
    auto p3 = poly(f, 3, {{{1, 2, 3}, 1}, {{2, 1, 3}, -1}});
    EXPECT_TRUE(is_zero_tuple(p3, {E11, E12, E12}));
    EXPECT_EQ(evaluate(p3, {E11, I + E12, I + E12}), E12);
    auto xy = poly(f, 2, {{{1, 2}, 1}});
    EXPECT_TRUE(is_zero_tuple(xy, {E11, ExactMatrix::unit(f, 2, 1, 0)}));
    EXPECT_FALSE(is_zero_tuple(xy, {E11, E12}));
    EXPECT_TRUE(is_zero_tuple(p3, {ExactMatrix(f, 2, 2), ExactMatrix(f, 2, 2), ExactMatrix(f, 2, 2)}));
    EXPECT_THROW(evaluate(p3, {E11, E12}), InvalidInput);
    EXPECT_THROW(evaluate(xy, {E11, ExactMatrix::identity(Field::prime(5), 2)}), InvalidInput);
    EXPECT_THROW(evaluate(xy, {E11, ExactMatrix::identity(f, 3)}), InvalidInput);
}

TEST(MultiPoly, Classification) {
    Field f3 = Field::prime(3), f2 = Field::prime(2);
    auto jordan3 = poly(f3, 2, {{{1, 2}, 1}, {{2, 1}, 1}});
    EXPECT_EQ(coeff_sum(jordan3), f3.from_int(2));
    EXPECT_EQ(classify(jordan3), PolyClass::generic);
    EXPECT_EQ(classify(poly(f3, 2, {{{1, 2}, 1}, {{2, 1}, -1}})), PolyClass::derogatory);
    EXPECT_EQ(classify(poly(f2, 2, {{{1, 2}, 1}, {{2, 1}, 1}})), PolyClass::derogatory);
}

TEST(MultiPoly, NormalizeExamples) {
    Field f5 = Field::prime(5), Q = Field::rationals();
    auto np = normalize(poly(f5, 2, {{{1, 2}, 1}, {{2, 1}, 1}}));
    EXPECT_EQ(np.i0, 1u);
    EXPECT_EQ(np.beta, (std::vector<Scalar>{f5.one(), f5.one()}));
    EXPECT_EQ(np.xi, f5.one());
    EXPECT_EQ(np.j0, 1u);
    EXPECT_EQ(np.tilde_beta, (std::vector<Scalar>{f5.one(), f5.one()}));
    EXPECT_EQ(np.xi_j0k, f5.one());

    auto xy = normalize(poly(Q, 2, {{{1, 2}, 1}}));
    EXPECT_EQ(xy.beta, (std::vector<Scalar>{Q.one(), Q.zero()}));
    EXPECT_EQ(xy.xi, Q.zero());
    EXPECT_EQ(xy.j0, 2u);
    EXPECT_EQ(xy.tilde_beta, (std::vector<Scalar>{Q.zero(), Q.one()}));

    auto single = normalize(poly(Q, 3, {{{1, 2, 3}, 1}}));
    EXPECT_EQ(single.beta, (std::vector<Scalar>{Q.one(), Q.zero(), Q.zero()}));
    EXPECT_EQ(single.j0, 3u);

    EXPECT_THROW(normalize(poly(Q, 2, {{{1, 2}, 1}, {{2, 1}, -1}})), InvalidInput);
}

TEST(MultiPoly, NormalizeNeedsVariableSwap) {
    Field Q = Field::rationals();
    // x2 x3 x1: nothing starts with x1, so slot 1 is renamed to x2
    auto np = normalize(poly(Q, 3, {{{2, 3, 1}, 3}}));
    EXPECT_EQ(np.i0, 2u);
    EXPECT_EQ(np.scale, Q.from_int(3));
    EXPECT_EQ(np.base.terms().begin()->first, (Permutation{1, 3, 2}));
    EXPECT_EQ(np.beta[0], Q.one());
}

TEST(MultiPoly, NormalizeProperties) {
    Rng rng(21);
    for (Field f : {Field::prime(5), Field::prime(7), Field::galois(2, 2)})
        for (int t = 0; t < 40; ++t) {
            unsigned k = 2 + static_cast<unsigned>(rng.below(3));
            auto p = random_poly(f, k, rng);
            if (classify(p) != PolyClass::generic) continue;
            auto np = normalize(p);
            EXPECT_EQ(np.beta[0], f.one());
            Scalar sb = f.zero();
            for (auto& b : np.beta) sb = f.add(sb, b);
            EXPECT_EQ(sb, f.add(f.one(), np.xi));
            EXPECT_FALSE(f.is_zero(np.xi_j0k));
            EXPECT_FALSE(f.is_zero(f.add(f.one(), np.xi)));
            // base(A_1..A_k) = p(A_tau(1)..A_tau(k)) / scale
            std::vector<ExactMatrix> tuple;
            for (unsigned i = 0; i < k; ++i) tuple.push_back(random_matrix(f, 2, rng));
            std::vector<ExactMatrix> swapped = tuple;
            std::swap(swapped[0], swapped[np.i0 - 1]);
            EXPECT_EQ(evaluate(np.base, tuple), evaluate(p, swapped).scale(f.inv(np.scale)));
            // beta and tilde_beta are the coefficients of A^{i-1} X A^{k-i}
            auto X = random_matrix(f, 3, rng), A = random_matrix(f, 3, rng);
            std::vector<ExactMatrix> right(k, A), left(k, A);
            right[0] = X;
            left[np.j0 - 1] = X;
            EXPECT_EQ(evaluate(np.base, right), weighted_powers(np.beta, X, A));
            EXPECT_EQ(evaluate(np.base, left), weighted_powers(np.tilde_beta, X, A));
            auto cof = cof_matrix(p).entries;
            for (unsigned i = 0; i < k; ++i) {
                Scalar row = f.zero();
                for (unsigned j = 0; j < k; ++j) row = f.add(row, cof.at(i, j));
                EXPECT_EQ(row, coeff_sum(p));
            }
        }
}

TEST(MultiPoly, CofMatrix) {
    Field Q = Field::rationals(), f3 = Field::prime(3);
    auto a = cof_matrix(poly(Q, 2, {{{1, 2}, 1}}));
    EXPECT_EQ(a.entries, ExactMatrix::identity(Q, 2));
    EXPECT_TRUE(a.invertible);
    auto b = cof_matrix(poly(Q, 2, {{{1, 2}, 1}, {{2, 1}, -1}}));
    EXPECT_EQ(b.entries, ExactMatrix::from_ints(Q, {{1, -1}, {-1, 1}}));
    EXPECT_FALSE(b.invertible);
    auto c = cof_matrix(poly(f3, 2, {{{1, 2}, 1}, {{2, 1}, 1}}));
    EXPECT_EQ(c.entries, ExactMatrix::from_ints(f3, {{1, 1}, {1, 1}}));
    EXPECT_FALSE(c.invertible);
}

TEST(MultiPoly, Admissible) {
    auto a = validate_admissible(2, {{2, 1}});
    EXPECT_EQ(a.t, 1u);
    EXPECT_EQ(a.w, 1u);
    EXPECT_EQ(a.u, 1u);
    EXPECT_EQ(a.v, 2u);

    std::vector<Permutation> swaps;
    for (auto& s : all_permutations(4))
        if (s[0] == 2 && s[1] == 1) swaps.push_back(s);
    EXPECT_EQ(swaps.size(), 2u);
    auto b = validate_admissible(4, swaps);
    EXPECT_EQ(b.t, 1u);
    EXPECT_EQ(b.w, 1u);

    EXPECT_THROW(validate_admissible(3, {{2, 3, 1}, {3, 1, 2}}), InvalidInput);
    EXPECT_THROW(validate_admissible(3, {{1, 2, 3}}), InvalidInput);
    EXPECT_THROW(validate_admissible(3, {}), InvalidInput);

    // several witnesses; the smallest w is reported
    auto all = all_admissible_witnesses(4, {{2, 1, 4, 3}});
    ASSERT_EQ(all.size(), 2u);
    EXPECT_EQ(all[0], (AdmissibleWitness{1, 1, 1, 2}));
    EXPECT_EQ(all[1], (AdmissibleWitness{1, 3, 3, 4}));
    for (auto& s : all_permutations(4)) {
        if (s == identity_permutation(4)) continue;
        for (auto& w : all_admissible_witnesses(4, {s})) {
            EXPECT_LT(s[w.w], s[w.w - 1]);
            for (unsigned i = 1; i < w.t; ++i) EXPECT_EQ(s[i - 1], i);
            EXPECT_NE(s[w.t - 1], w.t);
            EXPECT_LT(w.t, 4u);
        }
        // any single nonidentity permutation is admissible
        EXPECT_NO_THROW(validate_admissible(4, {s}));
    }
}

TEST(MultiPoly, StandardPolynomial) {
    Field Q = Field::rationals();
    auto s2 = standard_polynomial(Q, 2);
    EXPECT_EQ(s2, poly(Q, 2, {{{1, 2}, 1}, {{2, 1}, -1}}));
    auto s3 = standard_polynomial(Q, 3);
    EXPECT_EQ(s3.terms().size(), 6u);
    for (auto& [s, c] : s3.terms()) EXPECT_EQ(c, Q.from_int(sign(s)));
    auto s4 = standard_polynomial(Q, 4);
    EXPECT_EQ(s4.terms().size(), 24u);
    EXPECT_EQ(coeff_sum(s4), Q.zero());
}

TEST(MultiPoly, IdentityTesting) {
    Field f2 = Field::prime(2);
    auto s4 = standard_polynomial(f2, 4);
    auto v = is_identity_on(s4, 2, {});
    EXPECT_EQ(v.outcome, IdentityOutcome::identity);
    EXPECT_EQ(v.checked, 65536u);

    auto s2 = standard_polynomial(f2, 2);
    auto w = is_identity_on(s2, 2, {});
    EXPECT_EQ(w.outcome, IdentityOutcome::not_identity);
    ASSERT_TRUE(w.witness);
    EXPECT_EQ((*w.witness)[0], ExactMatrix::unit(f2, 2, 0, 0));
    EXPECT_EQ((*w.witness)[1], ExactMatrix::unit(f2, 2, 0, 1));

    // s4 has degree 4 < 6, so it is not an identity on M3; sampling finds a genuine witness
    SearchPlan sample{SearchMode::sample, 10000, 1, 1};
    auto x = is_identity_on(s4, 3, sample);
    EXPECT_EQ(x.outcome, IdentityOutcome::not_identity);
    ASSERT_TRUE(x.witness);
    EXPECT_FALSE(evaluate(s4, *x.witness).is_zero());
    // s6 is an identity on M3, so sampling can only report the absence of a witness
    auto y = is_identity_on(standard_polynomial(f2, 6), 3, {SearchMode::sample, 2000, 1, 1});
    EXPECT_EQ(y.outcome, IdentityOutcome::no_witness_found);
    EXPECT_FALSE(y.witness);

    EXPECT_THROW(is_identity_on(s4, 3, {}), BudgetExceeded);
}

TEST(MultiPoly, IdentityTestingIsJobIndependent) {
    Field f3 = Field::prime(3);
    auto p = poly(f3, 2, {{{1, 2}, 1}, {{2, 1}, 1}});
    auto a = is_identity_on(p, 2, {SearchMode::exhaustive, 0, 0, 1});
    auto b = is_identity_on(p, 2, {SearchMode::exhaustive, 0, 0, 4});
    ASSERT_TRUE(a.witness && b.witness);
    EXPECT_EQ(*a.witness, *b.witness);
    EXPECT_EQ(a.checked, b.checked);
}

TEST(MultiPoly, TauIndex) {
    Field Q = Field::rationals();
    auto a = find_tau_index(normalize(poly(Q, 3, {{{1, 2, 3}, 1}})));
    EXPECT_EQ(a.j0_prime, 2u);
    EXPECT_EQ(a.tau, Q.one());
    // two terms start with x1, so normalization halves every coefficient
    auto b = find_tau_index(normalize(poly(Q, 3, {{{1, 3, 2}, 1}, {{1, 2, 3}, 1}, {{2, 1, 3}, -1}})));
    EXPECT_EQ(b.j0_prime, 2u);
    EXPECT_EQ(b.tau, Q.from_rational(mpq_class(1, 2)));
    auto c = find_tau_index(normalize(poly(Q, 3, {{{1, 3, 2}, 1}, {{2, 1, 3}, 1}})));
    EXPECT_EQ(c.j0_prime, 3u);
}

TEST(MultiPoly, CompiledAgreesWithDirect) {
    Rng rng(33);
    for (Field f : {Field::prime(2), Field::prime(5), Field::galois(2, 2), Field::galois(3, 2)})
        for (int t = 0; t < 30; ++t) {
            unsigned k = 2 + static_cast<unsigned>(rng.below(3));
            auto p = random_poly(f, k, rng);
            CompiledPoly cp(p);
            std::vector<ExactMatrix> tuple;
            std::vector<CodeMatrix> codes;
            for (unsigned i = 0; i < k; ++i) {
                tuple.push_back(random_matrix(f, 3, rng));
                codes.push_back(cp.ops().from(tuple.back()));
            }
            EXPECT_EQ(cp.ops().to(cp.evaluate(codes)), evaluate(p, tuple));
        }
}

TEST(MultiPoly, Multilinear) {
    Rng rng(5);
    Field f = Field::prime(7);
    for (int t = 0; t < 30; ++t) {
        auto p = random_poly(f, 3, rng);
        std::vector<ExactMatrix> tuple;
        for (int i = 0; i < 3; ++i) tuple.push_back(random_matrix(f, 2, rng));
        auto B = random_matrix(f, 2, rng);
        std::size_t slot = rng.below(3);
        auto with_sum = tuple, with_b = tuple;
        with_sum[slot] = tuple[slot] + B;
        with_b[slot] = B;
        EXPECT_EQ(evaluate(p, with_sum), evaluate(p, tuple) + evaluate(p, with_b));
    }
}

TEST(MultiPoly, SimilarityEquivariant) {
    Rng rng(6);
    Field f = Field::prime(5);
    for (int t = 0; t < 30; ++t) {
        auto p = random_poly(f, 3, rng);
        auto S = random_invertible(f, 3, rng);
        auto Si = inverse_or_throw(S);
        std::vector<ExactMatrix> tuple, conj;
        for (int i = 0; i < 3; ++i) {
            tuple.push_back(random_matrix(f, 3, rng));
            conj.push_back(S * tuple.back() * Si);
        }
        EXPECT_EQ(evaluate(p, conj), S * evaluate(p, tuple) * Si);
    }
}

TEST(MultiPoly, HomCompatible) {
    Rng rng(7);
    Field f = Field::galois(2, 3);
    auto phi = enumerate_homs(f)[1];
    // coefficients in the prime field are fixed by every Frobenius power
    auto p = poly(f, 3, {{{1, 2, 3}, 1}, {{3, 1, 2}, 1}, {{2, 3, 1}, 1}});
    for (int t = 0; t < 20; ++t) {
        std::vector<ExactMatrix> tuple, mapped;
        for (int i = 0; i < 3; ++i) {
            tuple.push_back(random_matrix(f, 2, rng));
            mapped.push_back(apply_hom_entrywise(phi, tuple.back()));
        }
        EXPECT_EQ(evaluate(p, mapped), apply_hom_entrywise(phi, evaluate(p, tuple)));
    }
}
