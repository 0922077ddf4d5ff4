#include <gtest/gtest.h>

#include "preserverlab/elemop.hpp"
#include "preserverlab/errors.hpp"
#include "preserverlab/rng.hpp"

using namespace preserverlab;

namespace {

MultilinearPoly poly(const Field& f, unsigned k, const std::vector<std::pair<Permutation, long long>>& terms) {
    MultilinearPoly p(f, k);
    for (auto& [s, c] : terms) p.add_term(s, f.from_int(c));
    return p;
}

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

ExactMatrix jordan_block(const Field& f, std::size_t m, const Scalar& lambda) {
    ExactMatrix j = ExactMatrix::scalar(f, m, lambda);
    for (std::size_t i = 0; i + 1 < m; ++i) j.set(i, i + 1, f.one());
    return j;
}

std::vector<ExactMatrix> tuple_with(const ExactMatrix& A, const ExactMatrix& X, unsigned k, unsigned slot) {
    std::vector<ExactMatrix> t(k, A);
    t[slot - 1] = X;
    return t;
}

}  // namespace

TEST(ElemOp, KronMatrixExamples) {
    Field f5 = Field::prime(5);
    auto I2 = ExactMatrix::identity(f5, 2);
    ElementaryOperator anti({f5.one(), f5.one()}, I2, I2);
    EXPECT_EQ(anti.kron_matrix(), ExactMatrix::scalar(f5, 4, f5.from_int(2)));

    auto E12 = ExactMatrix::unit(f5, 2, 0, 1);
    ElementaryOperator left_mult({f5.one(), f5.zero()}, E12, E12);
    EXPECT_EQ(left_mult.kron_matrix(), kron(I2, E12));
}

TEST(ElemOp, KronMatrixMatchesApply) {
    Field f5 = Field::prime(5);
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng.below(3), t = rng.below(4);
        std::vector<Scalar> c;
        for (std::size_t j = 0; j <= t; ++j) c.push_back(f5.element(rng.below(5)));
        std::size_t m = 1 + rng.below(3);
        ElementaryOperator op(c, random_matrix(f5, m, rng), random_matrix(f5, n, rng));
        std::vector<Scalar> xe;
        for (std::size_t i = 0; i < m * n; ++i) xe.push_back(f5.element(rng.below(5)));
        ExactMatrix X(f5, m, n, xe);
        EXPECT_EQ(op.kron_matrix() * vec(X), vec(op.apply(X)));
    }
}

TEST(ElemOp, OmegaRightExamples) {
    Field f5 = Field::prime(5);
    auto anti5 = normalize(poly(f5, 2, {{{1, 2}, 1}, {{2, 1}, 1}}));
    EXPECT_EQ(omega_right(ExactMatrix::identity(f5, 2), anti5).basis.dim(), 0u);

    Field Q;
    auto antiQ = normalize(poly(Q, 2, {{{1, 2}, 1}, {{2, 1}, 1}}));
    auto A = direct_sum(ExactMatrix::from_ints(Q, {{0, -3}, {1, 0}}), ExactMatrix::identity(Q, 1));
    auto right = omega_right(A, antiQ).basis;
    EXPECT_EQ(right.dim(), 2u);
    // [[-d,3c],[c,d]] (+) 0 with (c,d) = (1,0) and (0,1)
    auto c1 = direct_sum(ExactMatrix::from_ints(Q, {{0, 3}, {1, 0}}), ExactMatrix(Q, 1, 1));
    auto d1 = direct_sum(ExactMatrix::from_ints(Q, {{-1, 0}, {0, 1}}), ExactMatrix(Q, 1, 1));
    EXPECT_EQ(right, SubspaceBasis::span(Q, 3, 3, {c1, d1}));
    EXPECT_EQ(omega_left(A, antiQ).basis, right);
    EXPECT_EQ(omega_intersection(A, antiQ).dim(), 2u);
}

TEST(ElemOp, OmegaRightAgreesWithExhaustiveScan) {
    Field f3 = Field::prime(3);
    auto np = normalize(poly(f3, 2, {{{1, 2}, 1}, {{2, 1}, 1}}));
    auto A = ExactMatrix::identity(f3, 3) - ExactMatrix::unit(f3, 3, 0, 0);
    auto right = omega_right(A, np).basis;
    auto left = omega_left(A, np).basis;
    std::size_t right_count = 0, left_count = 0;
    for (std::uint64_t i = 0; i < matrix_count(f3, 3, 3); ++i) {
        auto X = matrix_at(f3, 3, 3, i);
        bool r = (X * A + A * X).is_zero();
        EXPECT_EQ(r, right.contains(X));
        right_count += r;
        left_count += left.contains(X);
    }
    std::uint64_t expect = 1;
    for (std::size_t d = 0; d < right.dim(); ++d) expect *= 3;
    EXPECT_EQ(right_count, expect);
    expect = 1;
    for (std::size_t d = 0; d < left.dim(); ++d) expect *= 3;
    EXPECT_EQ(left_count, expect);
}

TEST(ElemOp, OmegaLeftExamples) {
    Field f3 = Field::prime(3);
    auto xy = normalize(poly(f3, 2, {{{1, 2}, 1}}));
    EXPECT_EQ(xy.j0, 2u);
    auto E11 = ExactMatrix::unit(f3, 2, 0, 0);
    auto left = omega_left(E11, xy).basis;
    EXPECT_EQ(left, SubspaceBasis::span(f3, 2, 2, {ExactMatrix::unit(f3, 2, 1, 0), ExactMatrix::unit(f3, 2, 1, 1)}));
    EXPECT_EQ(omega_left(ExactMatrix(f3, 2, 2), xy).basis.dim(), 4u);
    EXPECT_EQ(omega_right(ExactMatrix(f3, 2, 2), xy).basis.dim(), 4u);

    // j0 = 1 makes the two spaces coincide
    Field f7 = Field::prime(7);
    auto p = normalize(poly(f7, 2, {{{1, 2}, 1}, {{2, 1}, 3}}));
    ASSERT_EQ(p.j0, 1u);
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto A = random_matrix(f7, 3, rng);
        EXPECT_EQ(omega_left(A, p).basis, omega_right(A, p).basis);
    }
}

TEST(ElemOp, IntersectionExamples) {
    Field f5 = Field::prime(5);
    auto np = normalize(poly(f5, 2, {{{1, 2}, 1}, {{2, 1}, 1}}));
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto P = rank_one_idempotent_at(3, f5, rng.below(rank_one_idempotent_count(3, f5)));
        auto inter = omega_intersection(ExactMatrix::identity(f5, 3) - P, np);
        EXPECT_EQ(inter, SubspaceBasis::span(f5, 3, 3, {P}));
    }
    Field f7 = Field::prime(7);
    auto np7 = normalize(poly(f7, 2, {{{1, 2}, 1}, {{2, 1}, 1}}));
    EXPECT_EQ(omega_intersection(ExactMatrix::diag(f7, {f7.from_int(1), f7.from_int(2)}), np7).dim(), 0u);
}

TEST(ElemOp, KernelsSatisfyDefiningEquations) {
    Rng rng(21);
    for (std::uint64_t q : {3, 5, 7}) {
        Field f = Field::prime(q);
        for (int trial = 0; trial < 30; ++trial) {
            unsigned k = 2 + rng.below(3);
            MultilinearPoly p(f, k);
            for (auto& s : all_permutations(k))
                if (rng.below(2)) p.add_term(s, f.element(rng.below(q)));
            if (classify(p) != PolyClass::generic) continue;
            auto np = normalize(p);
            std::size_t n = 1 + rng.below(3);
            auto A = random_matrix(f, n, rng);
            auto right = ElementaryOperator::right(A, np);
            auto R = right.kernel();
            EXPECT_EQ(R.dim(), n * n - rank(right.kron_matrix()));
            for (auto& X : R.basis()) EXPECT_TRUE(is_zero_tuple(np.base, tuple_with(A, X, k, 1)));
            auto Lspace = omega_left(A, np).basis;
            for (auto& X : Lspace.basis()) EXPECT_TRUE(is_zero_tuple(np.base, tuple_with(A, X, k, np.j0)));
            // operator application equals the defining evaluation on arbitrary X
            auto X = random_matrix(f, n, rng);
            EXPECT_EQ(right.apply(X), evaluate(np.base, tuple_with(A, X, k, 1)));
            EXPECT_EQ(ElementaryOperator::left(A, np).apply(X).scale(np.xi_j0k), evaluate(np.base, tuple_with(A, X, k, np.j0)));
        }
    }
}

TEST(ElemOp, OmegaSimilarityEquivariance) {
    Field f5 = Field::prime(5);
    auto np = normalize(poly(f5, 3, {{{1, 2, 3}, 1}, {{2, 3, 1}, 2}, {{3, 1, 2}, 4}}));
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        auto A = random_matrix(f5, 3, rng);
        auto S = random_invertible(f5, 3, rng);
        auto Si = inverse_or_throw(S);
        std::vector<ExactMatrix> moved;
        auto R = omega_right(A, np).basis;
        for (auto& X : R.basis()) moved.push_back(S * X * Si);
        EXPECT_EQ(omega_right(S * A * Si, np).basis, SubspaceBasis::span(f5, 3, 3, moved));
    }
}

TEST(ElemOp, SpectrumExamples) {
    Field f7 = Field::prime(7);
    ElementaryOperator op({f7.one(), f7.one()}, jordan_block(f7, 2, f7.from_int(1)), jordan_block(f7, 2, f7.from_int(2)));
    auto v = spectrum_single_eigenvalue(op);
    EXPECT_TRUE(f7.equal(v, f7.from_int(3)));
    UniPoly lin(f7, {f7.from_int(-3), f7.one()});
    EXPECT_EQ(char_poly(op.kron_matrix()), lin * lin * lin * lin);

    ElementaryOperator diff({f7.one(), f7.from_int(-1)}, jordan_block(f7, 3, f7.from_int(4)), jordan_block(f7, 2, f7.from_int(4)));
    EXPECT_TRUE(f7.is_zero(spectrum_single_eigenvalue(diff)));

    ElementaryOperator ends({f7.one(), f7.zero(), f7.zero(), f7.one()}, jordan_block(f7, 2, f7.zero()), jordan_block(f7, 2, f7.from_int(3)));
    EXPECT_TRUE(f7.equal(spectrum_single_eigenvalue(ends), f7.from_int(27)));

    ElementaryOperator bad({f7.one(), f7.one()}, ExactMatrix::diag(f7, {f7.one(), f7.from_int(2)}), ExactMatrix::identity(f7, 2));
    EXPECT_THROW(spectrum_single_eigenvalue(bad), InvalidInput);
    // x^2 + 1 has no roots in GF(7)
    ElementaryOperator irr({f7.one(), f7.one()}, ExactMatrix::from_ints(f7, {{0, -1}, {1, 0}}), ExactMatrix::identity(f7, 2));
    EXPECT_THROW(spectrum_single_eigenvalue(irr), InvalidInput);
}

TEST(ElemOp, SingletonSpectrumLaw) {
    Rng rng(99);
    for (std::uint64_t q : {5, 7}) {
        Field f = Field::prime(q);
        for (std::size_t m = 1; m <= 3; ++m)
            for (std::size_t n = 1; n <= 3; ++n)
                for (std::uint64_t a = 0; a < q * q; ++a) {
                    auto lambda = f.element(a % q);
                    auto mu = f.element(a / q);
                    auto L = jordan_block(f, m, lambda);
                    auto M = jordan_block(f, n, mu);
                    std::size_t t = rng.below(4);
                    std::vector<Scalar> c;
                    for (std::size_t j = 0; j <= t; ++j) c.push_back(f.element(rng.below(q)));
                    ElementaryOperator op(c, L, M);
                    auto v = spectrum_single_eigenvalue(op);
                    UniPoly lin(f, {f.neg(v), f.one()});
                    UniPoly expect = UniPoly::constant(f, f.one());
                    for (std::size_t i = 0; i < m * n; ++i) expect = expect * lin;
                    EXPECT_EQ(char_poly(op.kron_matrix()), expect);
                }
    }
}

TEST(ElemOp, ScalarPolynomials) {
    Field f7 = Field::prime(7);
    auto anti = normalize(poly(f7, 2, {{{1, 2}, 1}, {{2, 1}, 1}}));
    auto xy = normalize(poly(f7, 2, {{{1, 2}, 1}}));
    for (std::uint64_t a = 0; a < 7; ++a)
        for (std::uint64_t b = 0; b < 7; ++b) {
            auto l = f7.element(a), m = f7.element(b);
            EXPECT_TRUE(f7.equal(p_bullet(anti, l, m), f7.add(l, m)));
            EXPECT_TRUE(f7.equal(p_Abullet(xy, l, m), l));
        }
    Rng rng(4);
    for (int trial = 0; trial < 40; ++trial) {
        unsigned k = 2 + rng.below(3);
        MultilinearPoly p(f7, k);
        for (auto& s : all_permutations(k))
            if (rng.below(2)) p.add_term(s, f7.element(rng.below(7)));
        if (classify(p) != PolyClass::generic) continue;
        auto np = normalize(p);
        auto l = f7.element(rng.below(7));
        auto expect = f7.mul(f7.pow(l, std::uint64_t(k - 1)), f7.add(f7.one(), np.xi));
        EXPECT_TRUE(f7.equal(p_bullet(np, l, l), expect));
    }
}

TEST(ElemOp, Anticommutant) {
    Field f5 = Field::prime(5);
    auto a = anticommutant(ExactMatrix::diag(f5, {f5.one(), f5.from_int(-1)}));
    EXPECT_EQ(a, SubspaceBasis::span(f5, 2, 2, {ExactMatrix::unit(f5, 2, 0, 1), ExactMatrix::unit(f5, 2, 1, 0)}));
    EXPECT_EQ(anticommutant(ExactMatrix::identity(f5, 3)).dim(), 0u);
    Field f7 = Field::prime(7);
    EXPECT_EQ(anticommutant(ExactMatrix::diag(f7, {f7.one(), f7.one(), f7.from_int(-1)})).dim(), 4u);
    Rng rng(2);
    auto S = random_invertible(f7, 3, rng);
    auto A = S * ExactMatrix::diag(f7, {f7.from_int(3), f7.from_int(-3), f7.from_int(-3)}) * inverse_or_throw(S);
    EXPECT_EQ(anticommutant(A).dim(), 4u);
    EXPECT_THROW(anticommutant(ExactMatrix::identity(Field::prime(2), 2)), InvalidInput);
}
