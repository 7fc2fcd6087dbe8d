#include <gtest/gtest.h>

#include "support.hpp"

using namespace weilforge;
using namespace wftest;

namespace {

ResiduePoly random_residue(u64 p, unsigned degree, bool monic) {
    std::vector<u64> c(degree + 1);
    for (auto& v : c) v = static_cast<u64>(uniform(0, static_cast<i64>(p) - 1));
    if (monic) c[degree] = 1;
    else if (c[degree] == 0) c[degree] = 1;
    return {p, c};
}

}  // namespace

TEST(ModPoly, ArithmeticBasics) {
    const ResiduePoly a = ResiduePoly::from_signed(5, {-1, 0, 1});  // x^2 - 1
    EXPECT_EQ(a.to_string(), "4,0,1 mod 5");
    const ResiduePoly b = ResiduePoly::from_signed(5, {1, 1});      // x + 1
    EXPECT_TRUE((a % b).is_zero());
    EXPECT_EQ(a / b, ResiduePoly::from_signed(5, {-1, 1}));
    EXPECT_EQ(gcd(a, b), b);
    EXPECT_EQ(a.eval(2), 3u);
    EXPECT_EQ(a.derivative(), ResiduePoly::from_signed(5, {0, 2}));
}

TEST(ModPoly, XgcdBezoutIdentity) {
    for (u64 p : {2u, 3u, 7u, 101u}) {
        for (int trial = 0; trial < 50; ++trial) {
            const ResiduePoly a = random_residue(p, static_cast<unsigned>(uniform(1, 8)), false);
            const ResiduePoly b = random_residue(p, static_cast<unsigned>(uniform(1, 8)), false);
            auto [g, s, t] = xgcd(a, b);
            EXPECT_EQ(s * a + t * b, g);
            EXPECT_EQ(g, gcd(a, b));
            EXPECT_TRUE((a % g).is_zero());
            EXPECT_TRUE((b % g).is_zero());
        }
    }
}

TEST(ModPoly, IrreducibilityMatchesBruteForce) {
    for (u64 p : {2u, 3u, 5u}) {
        for (unsigned n = 1; n <= 6; ++n) {
            u64 total = 1;
            for (unsigned i = 0; i < n; ++i) total *= p;
            for (u64 idx = 0; idx < std::min<u64>(total, 800); ++idx) {
                const ResiduePoly f = detail::monic_from_index(p, n, idx);
                ASSERT_EQ(is_irreducible_mod_p(f), naive_irreducible_mod_p(f)) << f.to_string();
            }
        }
    }
}

TEST(ModPoly, FactorPatternOfKnownProducts) {
    // (x^2+1)(x+1)^2 (x) over F_3: x^2+1 is irreducible mod 3
    const ResiduePoly f = ResiduePoly::from_signed(3, {1, 0, 1}) * ResiduePoly::from_signed(3, {1, 1}) *
                          ResiduePoly::from_signed(3, {1, 1}) * ResiduePoly::from_signed(3, {0, 1});
    const FactorPattern pat = factor_degree_pattern(f);
    EXPECT_EQ(pat.degrees, (std::vector<unsigned>{1, 1, 1, 2}));
    EXPECT_EQ(pat.total_degree(), 5u);
    EXPECT_FALSE(pat.is_irreducible());
    const FactorPattern lin = factor_degree_pattern(ResiduePoly::from_signed(3, {0, 1}) * ResiduePoly::from_signed(3, {1, 0, 1}));
    EXPECT_TRUE(lin.is_linear_times_irreducible());
    EXPECT_THROW(factor_degree_pattern(ResiduePoly::from_signed(3, {2})), error);
}

TEST(ModPoly, FactorPatternDegreesSumToDegree) {
    for (u64 p : {2u, 3u, 5u, 13u}) {
        for (int trial = 0; trial < 100; ++trial) {
            const unsigned n = static_cast<unsigned>(uniform(1, 12));
            const ResiduePoly f = random_residue(p, n, true);
            EXPECT_EQ(factor_degree_pattern(f).total_degree(), n);
        }
    }
}

TEST(ModPoly, SquarefreeFactorizationMultipliesBack) {
    for (u64 p : {3u, 5u, 11u, 10007u}) {
        for (int trial = 0; trial < 60; ++trial) {
            const unsigned n = static_cast<unsigned>(uniform(1, 10));
            ResiduePoly f = random_residue(p, n, true);
            const ResiduePoly d = f.derivative();
            if (d.is_zero() || gcd(f, d).degree() != 0) continue;
            const auto factors = factor_squarefree(f);
            ResiduePoly prod(p, {1});
            for (const auto& g : factors) {
                EXPECT_TRUE(is_irreducible_mod_p(g));
                EXPECT_TRUE(g.is_monic());
                prod = prod * g;
            }
            EXPECT_EQ(prod, f);
        }
    }
}

TEST(ModPoly, SquarefreeDecompositionReconstructs) {
    for (u64 p : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 60; ++trial) {
            ResiduePoly f = random_residue(p, static_cast<unsigned>(uniform(1, 4)), true);
            f = f * f * random_residue(p, static_cast<unsigned>(uniform(1, 3)), true);
            if (trial % 3 == 0) f = f * ResiduePoly::monomial(p, p);
            ResiduePoly prod(p, {1});
            for (const auto& [part, mult] : squarefree_decomposition(f)) {
                for (unsigned i = 0; i < mult; ++i) prod = prod * part;
            }
            EXPECT_EQ(prod, f);
        }
    }
}

TEST(ModPoly, PowModFermat) {
    // x^(p^n) = x mod an irreducible of degree n
    const ResiduePoly f = ResiduePoly::from_signed(7, {1, 1, 0, 1});  // x^3+x+1 has no root mod 7
    ASSERT_TRUE(is_irreducible_mod_p(f));
    const ResiduePoly x = ResiduePoly::monomial(7, 1);
    EXPECT_EQ(pow_mod(x, u64{343}, f), x);
    EXPECT_NE(pow_mod(x, u64{7}, f), x);
    const ResiduePoly g = ResiduePoly::from_signed(2, {1, 1, 0, 0, 1});  // x^4+x+1 irreducible
    ASSERT_TRUE(is_irreducible_mod_p(g));
    EXPECT_EQ(pow_mod(ResiduePoly::monomial(2, 1), u64{16}, g), ResiduePoly::monomial(2, 1));
}

TEST(ModPoly, MoebiusCountsMatchEnumeration) {
    for (u64 p : {2u, 3u, 5u}) {
        for (unsigned n = 1; n <= 6; ++n) {
            const u64 irr = count_by_pattern(p, n, [](const FactorPattern& pat) { return pat.is_irreducible(); });
            EXPECT_EQ(count_irreducible(p, n), mpz_class(to_mpz(irr))) << p << " " << n;
            if (n >= 2) {
                const u64 lin = count_by_pattern(p, n, [](const FactorPattern& pat) { return pat.is_linear_times_irreducible(); });
                EXPECT_EQ(count_linear_times_irreducible(p, n), mpz_class(to_mpz(lin))) << p << " " << n;
            }
        }
    }
}

TEST(ModPoly, CountExamples) {
    EXPECT_EQ(count_irreducible(2, 4), 3);
    EXPECT_EQ(count_irreducible(3, 4), 18);
    EXPECT_EQ(count_irreducible(2, 1), 2);
    EXPECT_THROW(count_irreducible(4, 2), error);
    EXPECT_THROW(count_linear_times_irreducible(3, 1), error);
}

TEST(ModPoly, CountLowerBounds) {
    for (u64 p : primes_up_to(13)) {
        for (unsigned n = 2; n <= 12; ++n) {
            mpz_class pn;
            mpz_ui_pow_ui(pn.get_mpz_t(), p, n);
            EXPECT_GE(2 * n * count_irreducible(p, n), pn);
            EXPECT_GE((2 * n - 2) * count_linear_times_irreducible(p, n), pn);
        }
    }
}

TEST(ModPoly, EnumerationGuard) {
    try {
        count_by_pattern(13, 12, [](const FactorPattern&) { return true; }, 1000);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::too_large);
    }
}
