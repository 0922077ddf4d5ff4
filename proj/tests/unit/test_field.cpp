#include <gtest/gtest.h>

#include "preserverlab/errors.hpp"
#include "preserverlab/field.hpp"
#include "preserverlab/rng.hpp"
#include "preserverlab/unipoly.hpp"

using namespace preserverlab;

namespace {

// Brute-force irreducibility: no monic divisor of degree 1..deg/2.
bool brute_irreducible(const UniPoly& f) {
    const Field& F = f.field();
    const int n = f.degree();
    for (int d = 1; 2 * d <= n; ++d) {
        std::uint64_t count = saturating_pow(F.order(), d);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<Scalar> c(d + 1);
            std::uint64_t t = idx;
            for (int i = 0; i < d; ++i) {
                c[i] = F.element(t % F.order());
                t /= F.order();
            }
            c[d] = F.one();
            if ((f % UniPoly(F, c)).is_zero()) return false;
        }
    }
    return n >= 1;
}

UniPoly product(const std::vector<Factor>& fs, const Field& F) {
    UniPoly r = UniPoly::constant(F, F.one());
    for (auto& f : fs)
        for (unsigned i = 0; i < f.multiplicity; ++i) r = r * f.poly;
    return r;
}

UniPoly random_monic(const Field& F, int deg, Rng& rng) {
    std::vector<Scalar> c;
    for (int i = 0; i < deg; ++i) c.push_back(F.element(rng.below(F.order())));
    c.push_back(F.one());
    return UniPoly(F, c);
}

Scalar q(long a, long b = 1) {
    mpq_class v(a, b);
    v.canonicalize();
    return v;
}

}  // namespace

TEST(Field, PrimeArithmetic) {
    Field f = Field::prime(5);
    EXPECT_EQ(f.mul(f.from_int(2), f.from_int(3)), f.one());
    EXPECT_EQ(f.inv(f.from_int(2)), f.from_int(3));
    EXPECT_EQ(f.from_int(-1), f.from_int(4));
    EXPECT_THROW(Field::prime(6), InvalidInput);
    EXPECT_THROW(Field::prime(1), InvalidInput);
    EXPECT_THROW(f.inv(f.zero()), std::domain_error);
}

TEST(Field, ExtensionGF4) {
    Field f = Field::extension(2, {1, 1, 1});
    EXPECT_EQ(f.order(), 4u);
    Scalar g = f.generator();
    // g^2 = g + 1, g^3 = 1
    EXPECT_EQ(f.mul(g, g), f.add(g, f.one()));
    EXPECT_EQ(f.pow(g, std::uint64_t{3}), f.one());
    EXPECT_THROW(Field::extension(2, {1, 0, 1}), InvalidInput);
    EXPECT_THROW(Field::extension(2, {1, 1, 0}), InvalidInput);
    EXPECT_TRUE(brute_irreducible(UniPoly::from_ints(Field::prime(2), {1, 1, 1})));
}

TEST(Field, RationalsAndGaussian) {
    Field Q = Field::rationals();
    EXPECT_EQ(Q.add(q(1, 2), q(1, 3)), q(5, 6));
    EXPECT_EQ(Q.format(q(-10, 4)), "-5/2");
    Field Qi = Field::gaussian_rationals();
    Scalar i = Qi.gaussian(0, 1);
    EXPECT_EQ(Qi.mul(i, i), Qi.from_int(-1));
    Scalar z = Qi.gaussian(1, 2);
    EXPECT_EQ(Qi.mul(z, Qi.inv(z)), Qi.one());
    EXPECT_EQ(Qi.format(Qi.gaussian(1, -1)), "1-i");
}

TEST(Field, GaloisPicksSmallestIrreducible) {
    EXPECT_EQ(Field::galois(3, 2).modulus(), (std::vector<std::uint64_t>{1, 0, 1}));
    EXPECT_EQ(Field::galois(2, 2).modulus(), (std::vector<std::uint64_t>{1, 1, 1}));
    EXPECT_EQ(Field::galois(2, 3).modulus(), (std::vector<std::uint64_t>{1, 1, 0, 1}));
    EXPECT_EQ(Field::galois(5, 2).modulus(), (std::vector<std::uint64_t>{2, 0, 1}));
}

TEST(Field, AxiomsOnSamples) {
    Rng rng(7);
    for (Field f : {Field::prime(7), Field::galois(2, 3), Field::galois(3, 3), Field::galois(2, 8), Field::galois(5, 9),
                    Field::galois(2, 21)}) {
        for (int t = 0; t < 200; ++t) {
            Scalar a = f.element(rng.below(f.order())), b = f.element(rng.below(f.order())),
                   c = f.element(rng.below(f.order()));
            EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c))) << f.name();
            EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c))) << f.name();
            EXPECT_EQ(f.add(a, f.neg(a)), f.zero());
            if (!f.is_zero(a)) EXPECT_EQ(f.mul(a, f.inv(a)), f.one()) << f.name();
            EXPECT_EQ(f.pow(a, f.order()), a);
        }
    }
}

TEST(FieldHom, EnumerateAndApply) {
    Field gf4 = Field::galois(2, 2);
    auto homs = enumerate_homs(gf4);
    ASSERT_EQ(homs.size(), 2u);
    EXPECT_TRUE(homs[0].is_identity());
    EXPECT_EQ(homs[1].apply(gf4.generator()), gf4.mul(gf4.generator(), gf4.generator()));
    for (auto& h : homs)
        for (std::uint64_t x = 0; x < 4; ++x)
            for (std::uint64_t y = 0; y < 4; ++y) {
                Scalar a = gf4.element(x), b = gf4.element(y);
                EXPECT_EQ(h.apply(gf4.add(a, b)), gf4.add(h.apply(a), h.apply(b)));
                EXPECT_EQ(h.apply(gf4.mul(a, b)), gf4.mul(h.apply(a), h.apply(b)));
            }
    EXPECT_EQ(enumerate_homs(Field::rationals()).size(), 1u);
    EXPECT_EQ(enumerate_homs(Field::prime(3)).size(), 1u);
    Field Qi = Field::gaussian_rationals();
    auto qh = enumerate_homs(Qi);
    ASSERT_EQ(qh.size(), 2u);
    EXPECT_EQ(qh[1].apply(Qi.gaussian(1, 1)), Qi.gaussian(1, -1));
    EXPECT_EQ(homs[0].apply(FieldElem(gf4, gf4.generator())).value(), gf4.generator());
    EXPECT_THROW(qh[1].apply(FieldElem(gf4, gf4.one())), InvalidInput);
    FieldElem r(Field::rationals(), q(7, 3));
    EXPECT_EQ(enumerate_homs(Field::rationals())[0].apply(r), r);
}

TEST(FieldHom, FrobeniusPowersOfLargerField) {
    Field f = Field::galois(3, 4);
    auto homs = enumerate_homs(f);
    ASSERT_EQ(homs.size(), 4u);
    Rng rng(3);
    for (auto& h : homs) {
        EXPECT_EQ(h.apply(f.one()), f.one());
        for (int t = 0; t < 50; ++t) {
            Scalar a = f.element(rng.below(f.order())), b = f.element(rng.below(f.order()));
            EXPECT_EQ(h.apply(f.add(a, b)), f.add(h.apply(a), h.apply(b)));
            EXPECT_EQ(h.apply(f.mul(a, b)), f.mul(h.apply(a), h.apply(b)));
            EXPECT_EQ(h.inverse().apply(h.apply(a)), a);
        }
    }
}

TEST(UniPoly, FactorSmallFinite) {
    Field f5 = Field::prime(5);
    auto fs = factor_poly(UniPoly::from_ints(f5, {1, 0, 1}));
    ASSERT_EQ(fs.size(), 2u);
    EXPECT_EQ(fs[0].poly, UniPoly::from_ints(f5, {2, 1}));
    EXPECT_EQ(fs[1].poly, UniPoly::from_ints(f5, {3, 1}));
    Field f3 = Field::prime(3);
    auto g = factor_poly(UniPoly::from_ints(f3, {1, 0, 1}));
    ASSERT_EQ(g.size(), 1u);
    EXPECT_EQ(g[0].multiplicity, 1u);
    EXPECT_EQ(g[0].poly.degree(), 2);
    EXPECT_THROW(factor_poly(UniPoly::from_ints(f3, {1, 2})), InvalidInput);
}

TEST(UniPoly, FactorRecomposesRandomFinite) {
    Rng rng(11);
    for (Field F : {Field::prime(2), Field::prime(3), Field::galois(2, 2), Field::prime(7), Field::galois(3, 2), Field::prime(101)}) {
        for (int t = 0; t < 25; ++t) {
            int deg = 1 + static_cast<int>(rng.below(12));
            UniPoly f = random_monic(F, deg, rng);
            // force repeated factors now and then
            if (t % 3 == 0) f = f * f;
            auto fs = factor_poly(f, t);
            EXPECT_EQ(product(fs, F), f) << F.name() << " " << f.str();
            for (auto& fac : fs) {
                EXPECT_TRUE(fac.poly.is_monic());
                if (saturating_pow(F.order(), fac.poly.degree() / 2) <= 4096) EXPECT_TRUE(brute_irreducible(fac.poly)) << fac.poly.str();
                EXPECT_TRUE(is_irreducible(fac.poly));
            }
        }
    }
}

TEST(UniPoly, CantorZassenhausInCharacteristicTwo) {
    Field F = Field::prime(2);
    // (x^2+x+1)^3 (x^3+x+1)(x^3+x^2+1) x^4 has q^deg = 2^19
    UniPoly a = UniPoly::from_ints(F, {1, 1, 1}), b = UniPoly::from_ints(F, {1, 1, 0, 1}), c = UniPoly::from_ints(F, {1, 0, 1, 1});
    UniPoly x = UniPoly::x(F);
    UniPoly f = a * a * a * b * c * x * x * x * x;
    auto fs = factor_poly(f, 5);
    ASSERT_EQ(fs.size(), 4u);
    EXPECT_EQ(product(fs, F), f);
    EXPECT_EQ(fs[0].poly, x);
    EXPECT_EQ(fs[0].multiplicity, 4u);
}

TEST(UniPoly, RabinAgreesWithBruteForce) {
    Field F = Field::prime(3);
    for (std::uint64_t idx = 0; idx < 243; ++idx) {
        std::vector<Scalar> c;
        std::uint64_t t = idx;
        for (int i = 0; i < 5; ++i) {
            c.push_back(F.element(t % 3));
            t /= 3;
        }
        c.push_back(F.one());
        UniPoly f(F, c);
        EXPECT_EQ(is_irreducible(f), brute_irreducible(f)) << f.str();
    }
}

TEST(UniPoly, FactorRationals) {
    Field Q = Field::rationals();
    auto x3 = factor_poly(UniPoly::from_ints(Q, {0, 0, 0, 1}));
    ASSERT_EQ(x3.size(), 1u);
    EXPECT_EQ(x3[0].multiplicity, 3u);
    EXPECT_EQ(x3[0].poly, UniPoly::x(Q));

    // x^4 + 4 = (x^2 - 2x + 2)(x^2 + 2x + 2)
    auto s = factor_poly(UniPoly::from_ints(Q, {4, 0, 0, 0, 1}));
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0].poly, UniPoly::from_ints(Q, {2, -2, 1}));
    EXPECT_EQ(s[1].poly, UniPoly::from_ints(Q, {2, 2, 1}));

    EXPECT_TRUE(is_irreducible(UniPoly::from_ints(Q, {1, 0, 0, 0, 1})));
    EXPECT_TRUE(is_irreducible(UniPoly::from_ints(Q, {3, 0, 1})));

    // x^6 - 1 = (x-1)(x+1)(x^2+x+1)(x^2-x+1)
    auto six = factor_poly(UniPoly::from_ints(Q, {-1, 0, 0, 0, 0, 0, 1}));
    EXPECT_EQ(six.size(), 4u);
    EXPECT_EQ(product(six, Q), UniPoly::from_ints(Q, {-1, 0, 0, 0, 0, 0, 1}));

    // x^2 - 1/4
    auto h = factor_poly(UniPoly(Q, {q(-1, 4), q(0), q(1)}));
    ASSERT_EQ(h.size(), 2u);
    EXPECT_EQ(h[0].poly, UniPoly(Q, {q(-1, 2), q(1)}));

    // (x^2 + 1/2)^2 stays a square after scaling
    UniPoly sq(Q, {q(1, 2), q(0), q(1)});
    auto hs = factor_poly(sq * sq);
    ASSERT_EQ(hs.size(), 1u);
    EXPECT_EQ(hs[0].multiplicity, 2u);
    EXPECT_EQ(hs[0].poly, sq);

    // x^5 - x - 1 is irreducible of degree 5
    EXPECT_THROW(factor_poly(UniPoly::from_ints(Q, {-1, -1, 0, 0, 0, 1})), Unsupported);
}

TEST(UniPoly, FactorGaussianRationals) {
    Field Qi = Field::gaussian_rationals();
    Scalar i = Qi.gaussian(0, 1), mi = Qi.gaussian(0, -1);
    auto fs = factor_poly(UniPoly::from_ints(Qi, {1, 0, 1}));
    ASSERT_EQ(fs.size(), 2u);
    EXPECT_EQ(product(fs, Qi), UniPoly::from_ints(Qi, {1, 0, 1}));
    auto q4 = factor_poly(UniPoly::from_ints(Qi, {1, 0, 0, 0, 1}));
    ASSERT_EQ(q4.size(), 2u);
    EXPECT_EQ(q4[0].poly, UniPoly(Qi, {mi, Qi.zero(), Qi.one()}));
    EXPECT_EQ(q4[1].poly, UniPoly(Qi, {i, Qi.zero(), Qi.one()}));
    EXPECT_TRUE(is_irreducible(UniPoly::from_ints(Qi, {-2, 0, 1})));
    // x^2 - 2i = (x - (1+i))(x + (1+i))
    auto r = factor_poly(UniPoly(Qi, {Qi.gaussian(0, -2), Qi.zero(), Qi.one()}));
    EXPECT_EQ(r.size(), 2u);
}

TEST(UniPoly, SplittingFields) {
    Field f3 = Field::prime(3);
    auto s = splitting_field(UniPoly::from_ints(f3, {1, 0, 1}));
    EXPECT_EQ(s.field.order(), 9u);
    auto lifted = UniPoly::from_ints(f3, {1, 0, 1}).map(s.embedding);
    EXPECT_EQ(roots(lifted).size(), 2u);

    Field f2 = Field::prime(2);
    auto t = splitting_field(UniPoly::from_ints(f2, {1, 1}));
    EXPECT_EQ(t.field, f2);
    auto u = splitting_field(UniPoly::from_ints(f2, {1, 1, 1}));
    EXPECT_EQ(u.field.order(), 4u);
}

TEST(UniPoly, SplittingFieldOfExtensionEmbedsCompatibly) {
    Field gf4 = Field::galois(2, 2);
    Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        UniPoly f = random_monic(gf4, 1 + static_cast<int>(rng.below(5)), rng);
        auto s = splitting_field(f);
        UniPoly g = f.map(s.embedding);
        // product of linear factors counts the degree
        int total = 0;
        for (auto& fac : factor_poly(g)) {
            EXPECT_EQ(fac.poly.degree(), 1);
            total += static_cast<int>(fac.multiplicity);
        }
        EXPECT_EQ(total, f.degree());
        for (std::uint64_t a = 0; a < 4; ++a)
            for (std::uint64_t b = 0; b < 4; ++b) {
                Scalar x = gf4.element(a), y = gf4.element(b);
                EXPECT_EQ(s.embedding.apply(gf4.mul(x, y)), s.field.mul(s.embedding.apply(x), s.embedding.apply(y)));
                EXPECT_EQ(s.embedding.apply(gf4.add(x, y)), s.field.add(s.embedding.apply(x), s.embedding.apply(y)));
            }
    }
}
