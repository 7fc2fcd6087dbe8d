#include <gtest/gtest.h>

#include "support.hpp"

using namespace weilforge;
using namespace wftest;

TEST(IntPoly, ParseAndFormat) {
    const IntPoly f = IntPoly::parse("49, 7,1,+1,1");
    EXPECT_EQ(f.degree(), 4);
    EXPECT_EQ(f.to_string(), "49,7,1,1,1");
    EXPECT_EQ(f.to_pretty(), "x^4 + x^3 + x^2 + 7*x + 49");
    EXPECT_EQ(IntPoly::parse("0,0,0").to_string(), "0");
    EXPECT_EQ(IntPoly::parse("-3,0,-1").to_pretty(), "-x^2 - 3");
    EXPECT_THROW(IntPoly::parse("1,,2"), error);
    EXPECT_THROW(IntPoly::parse("1,x"), error);
    EXPECT_EQ(IntPoly::parse("123456789012345678901234567890,1")[0], mpz_class("123456789012345678901234567890"));
}

TEST(IntPoly, RoundTripRandomText) {
    for (int t = 0; t < 200; ++t) {
        const IntPoly f = random_monic(static_cast<unsigned>(uniform(0, 10)), 1000000);
        EXPECT_EQ(IntPoly::parse(f.to_string()), f);
    }
}

TEST(IntPoly, ArithmeticAndEvaluation) {
    const IntPoly a{1, 1};   // x + 1
    const IntPoly b{-1, 1};  // x - 1
    EXPECT_EQ(a * b, (IntPoly{-1, 0, 1}));
    EXPECT_EQ((a * b).eval(5), 24);
    EXPECT_EQ((a * b).derivative(), (IntPoly{0, 2}));
    EXPECT_EQ((IntPoly{6, 4, 2}).content(), 2);
    EXPECT_EQ((IntPoly{-6, -4, -2}).primitive_part(), (IntPoly{3, 2, 1}));
    EXPECT_EQ((IntPoly{0, 1, 1}).reflected(), (IntPoly{0, -1, 1}));
    EXPECT_EQ((IntPoly{-1, 0, 1}).sign_at(mpq_class(1, 2)), -1);
    EXPECT_EQ((IntPoly{-1, 0, 1}).sign_at(mpq_class(-1)), 0);
}

TEST(IntPoly, ExactDivisionAndGcd) {
    for (int t = 0; t < 100; ++t) {
        const IntPoly h = random_monic(static_cast<unsigned>(uniform(1, 3)), 5);
        const IntPoly u = random_monic(static_cast<unsigned>(uniform(1, 4)), 5);
        const IntPoly v = random_monic(static_cast<unsigned>(uniform(1, 4)), 5);
        const auto q = divide_exact(u * h, h);
        ASSERT_TRUE(q.has_value());
        EXPECT_EQ(*q, u);
        const IntPoly g = gcd(u * h, v * h);
        EXPECT_TRUE(divide_exact(g, h).has_value());
        EXPECT_TRUE(divide_exact(u * h, g).has_value());
        EXPECT_TRUE(divide_exact(v * h, g).has_value());
    }
    EXPECT_FALSE(divide_exact(IntPoly{1, 0, 1}, IntPoly{1, 1}).has_value());
    EXPECT_FALSE(divide_exact(IntPoly{1, 1}, IntPoly{1, 2}).has_value());
}

TEST(IntPoly, SturmCountsIntegerRoots) {
    for (int t = 0; t < 200; ++t) {
        std::vector<i64> roots;
        const int k = static_cast<int>(uniform(1, 7));
        while (static_cast<int>(roots.size()) < k) {
            const i64 r = uniform(-20, 20);
            if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
        }
        const IntPoly f = from_roots(roots);
        EXPECT_EQ(sturm_count(f), roots.size());
        // endpoints chosen on and off the roots; the interval is (lo, hi]
        const i64 lo = uniform(-22, 20);
        const i64 hi = uniform(lo + 1, 22);
        unsigned expect = 0;
        for (i64 r : roots) expect += (lo < r && r <= hi);
        EXPECT_EQ(sturm_count(f, mpq_class(lo), mpq_class(hi)), expect);
        unsigned below = 0;
        for (i64 r : roots) below += r <= hi;
        EXPECT_EQ(sturm_count(f, std::nullopt, mpq_class(hi)), below);
    }
}

TEST(IntPoly, SturmIrrationalAndComplexRoots) {
    const IntPoly f{-2, 0, 1};
    EXPECT_EQ(sturm_count(f), 2u);
    EXPECT_EQ(sturm_count(f, mpq_class(1), mpq_class(3, 2)), 1u);
    EXPECT_EQ(sturm_count(f, mpq_class(141, 100), mpq_class(1415, 1000)), 1u);
    EXPECT_EQ(sturm_count(f, mpq_class(1415, 1000), mpq_class(2)), 0u);
    EXPECT_EQ(sturm_count(IntPoly{1, 0, 1}), 0u);
    EXPECT_EQ(sturm_count(IntPoly{1, 0, 0, 0, 1}), 0u);
    EXPECT_EQ(sturm_count(IntPoly{-1, 0, 0, 0, 1}), 2u);
    // non-monic with a negative leading coefficient
    EXPECT_EQ(sturm_count(IntPoly{3, 0, -4}), 2u);
    EXPECT_EQ(sturm_count(IntPoly{3, 0, -4}, mpq_class(0), std::nullopt), 1u);
    EXPECT_THROW(sturm_count(IntPoly{1, 2, 1}), error);
    EXPECT_THROW(sturm_count(f, mpq_class(2), mpq_class(1)), error);
}

TEST(IntPoly, SquarefreePart) {
    const IntPoly f = from_roots({1, 1, 1, -2, 5, 5});
    EXPECT_EQ(squarefree_part(f), from_roots({1, -2, 5}));
    EXPECT_TRUE(is_squarefree(from_roots({1, 2, 3})));
    EXPECT_FALSE(is_squarefree(f));
    EXPECT_EQ(squarefree_part(mpz_class(6) * (IntPoly{1, 0, 1} * IntPoly{1, 0, 1})), (IntPoly{1, 0, 1}));
}

TEST(IntPoly, NewtonPowerSumsMatchRoots) {
    for (int t = 0; t < 100; ++t) {
        std::vector<i64> roots;
        for (int i = 0, k = static_cast<int>(uniform(1, 6)); i < k; ++i) roots.push_back(uniform(-9, 9));
        const IntPoly f = from_roots(roots);
        const auto p = newton_power_sums(f, 15);
        for (std::size_t k = 1; k <= 15; ++k) {
            mpz_class s = 0;
            for (i64 r : roots) {
                mpz_class rk;
                mpz_pow_ui(rk.get_mpz_t(), to_mpz(r).get_mpz_t(), k);
                s += rk;
            }
            ASSERT_EQ(p[k], s);
        }
        EXPECT_EQ(from_power_sums(p, roots.size()), f);
    }
}

TEST(IntPoly, PowerCharpolyMatchesPoweredRoots) {
    for (int t = 0; t < 100; ++t) {
        std::vector<i64> roots;
        for (int i = 0, k = static_cast<int>(uniform(1, 5)); i < k; ++i) roots.push_back(uniform(-6, 6));
        const unsigned d = static_cast<unsigned>(uniform(1, 5));
        std::vector<i64> powered;
        for (i64 r : roots) {
            i64 v = 1;
            for (unsigned i = 0; i < d; ++i) v *= r;
            powered.push_back(v);
        }
        EXPECT_EQ(power_charpoly(from_roots(roots), d), from_roots(powered));
    }
    // roots of x^2 + 1 are +-i; their squares are -1, -1
    EXPECT_EQ(power_charpoly(IntPoly{1, 0, 1}, 2), (IntPoly{1, 2, 1}));
    EXPECT_THROW(power_charpoly(IntPoly{1, 2}, 2), error);
}

TEST(IntPoly, PowerCharpolyCompositionLaw) {
    for (int t = 0; t < 100; ++t) {
        const IntPoly f = random_monic(static_cast<unsigned>(uniform(1, 6)), 6);
        const unsigned a = static_cast<unsigned>(uniform(1, 4));
        const unsigned b = static_cast<unsigned>(uniform(1, 4));
        EXPECT_EQ(power_charpoly(power_charpoly(f, a), b), power_charpoly(f, a * b));
    }
}

TEST(IntPoly, IrreducibilityKnownCases) {
    // Swinnerton-Dyer polynomials split modulo every prime, so the
    // recombination stage decides them.
    const IntPoly sd2{1, 0, -10, 0, 1};
    const IntPoly sd3{576, 0, -960, 0, 352, 0, -40, 0, 1};
    EXPECT_TRUE(is_irreducible_over_rationals(sd2));
    EXPECT_TRUE(is_irreducible_over_rationals(sd3));
    EXPECT_FALSE(is_irreducible_over_rationals(sd2 * sd3));
    EXPECT_FALSE(is_irreducible_over_rationals(sd2 * IntPoly{1, 0, -10, 0, 1}.reflected() * IntPoly{2, 1}));
    EXPECT_TRUE(is_irreducible_over_rationals(IntPoly{-2, 0, 0, 0, 0, 1}));  // Eisenstein
    EXPECT_TRUE(is_irreducible_over_rationals(IntPoly{1, 1, 1, 1, 1, 1, 1}));  // Phi_7
    EXPECT_FALSE(is_irreducible_over_rationals(IntPoly{-1, 0, 0, 0, 0, 0, 1}));
    EXPECT_TRUE(is_irreducible_over_rationals(IntPoly{1, 0, 2}));   // 2x^2 + 1
    EXPECT_FALSE(is_irreducible_over_rationals(IntPoly{-1, 0, 4}));  // (2x-1)(2x+1)
    EXPECT_FALSE(is_irreducible_over_rationals(IntPoly{9, 0, 2, 0, 1}));  // (x^2-2x+3)(x^2+2x+3)
    EXPECT_TRUE(is_irreducible_over_rationals(IntPoly{9, 0, 1, 0, 1}));
    EXPECT_TRUE(is_irreducible_over_rationals(IntPoly{5, 3}));
    EXPECT_THROW(is_irreducible_over_rationals(IntPoly{7}), error);
}

TEST(IntPoly, IrreducibilityOfRandomProducts) {
    for (int t = 0; t < 150; ++t) {
        const IntPoly u = random_monic(static_cast<unsigned>(uniform(1, 6)), 20);
        const IntPoly v = random_monic(static_cast<unsigned>(uniform(1, 6)), 20);
        EXPECT_FALSE(is_irreducible_over_rationals(u * v)) << (u * v).to_string();
    }
}

TEST(IntPoly, IrreducibilityOfEisensteinFamilies) {
    for (int t = 0; t < 150; ++t) {
        const unsigned n = static_cast<unsigned>(uniform(2, 14));
        const i64 p = static_cast<i64>(first_primes(6)[static_cast<std::size_t>(uniform(0, 5))]);
        std::vector<i64> c(n + 1);
        for (unsigned i = 0; i < n; ++i) c[i] = p * uniform(-5, 5);
        c[0] = p * (uniform(0, 1) ? 1 : -1) * (1 + p * uniform(0, 3));
        c[n] = 1;
        EXPECT_TRUE(is_irreducible_over_rationals(IntPoly::from_i64(c)));
    }
}
