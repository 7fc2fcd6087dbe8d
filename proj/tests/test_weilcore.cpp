#include <gtest/gtest.h>

#include "support.hpp"

using namespace weilforge;
using namespace wftest;

namespace {

const PrimePower& Q(u64 q) {
    static std::map<u64, PrimePower> cache;
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, parse_prime_power(q)).first;
    return it->second;
}

// t^n g(t + q/t), evaluated in Q: an oracle for real_to_weil independent of
// the coefficient expansion.
mpq_class omega_at(const IntPoly& g, u64 q, const mpq_class& t) {
    const mpq_class y = t + mpq_class(to_mpz(q)) / t;
    mpq_class acc = 0;
    for (std::size_t i = g.size(); i-- > 0;) acc = acc * y + mpq_class(g.coeffs()[i]);
    for (long i = 0; i < g.degree(); ++i) acc *= t;
    return acc;
}

mpq_class eval_q(const IntPoly& f, const mpq_class& t) {
    mpq_class acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * t + mpq_class(f.coeffs()[i]);
    return acc;
}

}  // namespace

TEST(WeilCore, RealToWeilExamples) {
    EXPECT_EQ(real_to_weil(IntPoly{0, 1}, Q(7)).f, (IntPoly{7, 0, 1}));
    EXPECT_EQ(real_to_weil(IntPoly{1 - 4, 1, 1}, Q(2)).f, (IntPoly{4, 2, 1, 1, 1}));
    const WeilPoly w = real_to_weil(IntPoly{1, -5, 0, 1}, Q(2));
    EXPECT_EQ(w.n, 3u);
    EXPECT_EQ(w.f.degree(), 6);
    EXPECT_EQ(mpz_fdiv_ui(w.f[3].get_mpz_t(), 2), 1u);
    EXPECT_THROW(real_to_weil(IntPoly{1, 2}, Q(3)), error);
}

TEST(WeilCore, RealToWeilAgreesWithPointEvaluation) {
    for (int t = 0; t < 200; ++t) {
        const u64 q = std::vector<u64>{2, 3, 4, 5, 7, 9, 27, 101}[static_cast<std::size_t>(uniform(0, 7))];
        const IntPoly g = random_monic(static_cast<unsigned>(uniform(1, 8)), 30);
        const IntPoly f = real_to_weil(g, Q(q)).f;
        for (int k = 0; k < 3; ++k) {
            mpq_class x(uniform(1, 40), uniform(1, 7));
            x.canonicalize();
            ASSERT_EQ(eval_q(f, x), omega_at(g, q, x));
        }
    }
}

TEST(WeilCore, WeilToRealExamplesAndErrors) {
    EXPECT_EQ(weil_to_real(IntPoly{5, 0, 1}, Q(5)), (IntPoly{0, 1}));
    EXPECT_EQ(weil_to_real(IntPoly{9, 3, 1, 1, 1}, Q(3)), (IntPoly{1 - 6, 1, 1}));
    try {
        weil_to_real(IntPoly{1, 1, 1, 1, 1}, Q(2));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::functional_equation_violated);
    }
    EXPECT_THROW(weil_to_real(IntPoly{3, 1, 1}, Q(2)), error);  // wrong constant term
    EXPECT_THROW(weil_to_real(IntPoly{2, 1, 1, 1}, Q(2)), error);  // odd degree
}

TEST(WeilCore, OmegaRoundTripAndCongruences) {
    for (int t = 0; t < 2000; ++t) {
        const u64 q = std::vector<u64>{2, 3, 4, 5, 7, 9}[static_cast<std::size_t>(uniform(0, 5))];
        const IntPoly g = random_monic(static_cast<unsigned>(uniform(1, 8)), 50);
        const IntPoly f = real_to_weil(g, Q(q)).f;
        ASSERT_TRUE(satisfies_functional_equation(f, Q(q)));
        ASSERT_EQ(weil_to_real(f, Q(q)), g);
        const unsigned n = static_cast<unsigned>(g.degree());
        mpz_class diff = f[n] - g[0];
        ASSERT_TRUE(mpz_divisible_ui_p(diff.get_mpz_t(), q));
        if (q == 2) {
            ASSERT_EQ(f.mod(2), ResiduePoly::monomial(2, n) * g.mod(2));
        }
    }
}

TEST(WeilCore, IsRealWeilExamples) {
    EXPECT_TRUE(is_real_weil(IntPoly{5, -5, 1}, Q(4)));
    EXPECT_FALSE(is_real_weil(IntPoly{-25, 0, 1}, Q(4)));
    EXPECT_TRUE(is_real_weil(IntPoly{-9, 0, 1}, Q(4)));
    EXPECT_FALSE(is_real_weil(IntPoly{1, 0, 1}, Q(5)));
    // boundary: x - 4 at q = 4 has its root at 2 sqrt(q)
    EXPECT_TRUE(is_real_weil(IntPoly{-4, 1}, Q(4)));
    EXPECT_FALSE(is_real_weil(IntPoly{-4, 1}, Q(4), RootInterval::open));
    EXPECT_TRUE(is_real_weil(IntPoly{-3, 1}, Q(4), RootInterval::open));
    // x^2 - 8 at q = 2: roots +-2 sqrt 2, on the closed boundary
    EXPECT_TRUE(is_real_weil(IntPoly{-8, 0, 1}, Q(2)));
    EXPECT_FALSE(is_real_weil(IntPoly{-8, 0, 1}, Q(2), RootInterval::open));
    EXPECT_FALSE(is_real_weil(IntPoly{-9, 0, 1}, Q(2)));
    // repeated roots
    EXPECT_TRUE(is_real_weil(from_roots({1, 1, -2, -2, 0}), Q(2)));
    EXPECT_FALSE(is_real_weil(from_roots({3, 3}), Q(2)));
}

TEST(WeilCore, IsRealWeilMatchesIntegerRootOracle) {
    for (int t = 0; t < 300; ++t) {
        std::vector<i64> roots;
        for (int i = 0, k = static_cast<int>(uniform(1, 6)); i < k; ++i) roots.push_back(uniform(-12, 12));
        const u64 q = std::vector<u64>{2, 3, 4, 5, 7, 8, 9, 16, 25}[static_cast<std::size_t>(uniform(0, 8))];
        bool closed = true, open = true;
        for (i64 r : roots) {
            closed = closed && static_cast<u64>(r * r) <= 4 * q;
            open = open && static_cast<u64>(r * r) < 4 * q;
        }
        const IntPoly g = from_roots(roots);
        EXPECT_EQ(is_real_weil(g, Q(q)), closed);
        EXPECT_EQ(is_real_weil(g, Q(q), RootInterval::open), open);
    }
}

TEST(WeilCore, IsRealWeilMonotoneInQ) {
    const std::vector<u64> qs{2, 3, 4, 5, 7, 8, 9, 11, 13, 16};
    for (int t = 0; t < 200; ++t) {
        const IntPoly g = random_monic(static_cast<unsigned>(uniform(1, 5)), 6);
        bool seen = false;
        for (u64 q : qs) {
            const bool now = is_real_weil(g, Q(q));
            if (seen) ASSERT_TRUE(now) << g.to_string() << " q=" << q;
            seen = seen || now;
        }
    }
}

TEST(WeilCore, OrdinaryExamples) {
    EXPECT_TRUE(is_ordinary_weil(IntPoly{9, 3, 1, 1, 1}, Q(3)));
    EXPECT_FALSE(is_ordinary_weil(IntPoly{3, 0, 1}, Q(3)));
    EXPECT_FALSE(is_ordinary_weil(IntPoly{25, 0, 5, 0, 1}, Q(5)));
    EXPECT_THROW(is_ordinary_weil(IntPoly{1, 1, 1, 1, 1}, Q(2)), error);
}

TEST(WeilCore, CandidateExponents) {
    EXPECT_EQ(candidate_exponents(1), (std::vector<unsigned>{2, 3, 4, 6}));
    EXPECT_EQ(candidate_exponents(2), (std::vector<unsigned>{2, 3, 4, 5, 6, 8, 10, 12}));
    const auto c3 = candidate_exponents(3);
    for (unsigned d : {7u, 9u, 14u, 18u}) EXPECT_NE(std::find(c3.begin(), c3.end(), d), c3.end());
    // brute-force oracle on a wider range than the enumeration bound
    for (unsigned n = 1; n <= 8; ++n) {
        std::vector<unsigned> want;
        for (unsigned d = 2; d <= 1000; ++d) {
            u64 phi = 0;
            for (unsigned k = 1; k <= d; ++k) phi += std::gcd(k, d) == 1;
            if ((2 * n) % d == 0 || (2 * n) % phi == 0) want.push_back(d);
        }
        EXPECT_EQ(candidate_exponents(n), want) << n;
    }
}

TEST(WeilCore, SubfieldDegreeExamples) {
    const IntPoly f{9, 3, 1, 1, 1};
    EXPECT_EQ(subfield_degree(f, 1), 4u);
    for (unsigned d : candidate_exponents(2)) EXPECT_EQ(subfield_degree(f, d), 4u) << d;
    EXPECT_EQ(subfield_degree(IntPoly{9, 0, 1, 0, 1}, 2), 2u);
    try {
        subfield_degree(IntPoly{9, 0, 2, 0, 1}, 2);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::not_irreducible);
    }
}

TEST(WeilCore, AbsoluteSimplicityExamples) {
    EXPECT_EQ(absolute_simplicity(IntPoly{9, 3, 1, 1, 1}, Q(3)), SimplicityVerdict::absolutely_simple());
    EXPECT_EQ(absolute_simplicity(IntPoly{9, 0, 1, 0, 1}, Q(3)), SimplicityVerdict::splits_at(2));
    EXPECT_EQ(absolute_simplicity(IntPoly{9, 6, 1, 2, 1}, Q(3)), SimplicityVerdict::splits_at(3));
    EXPECT_EQ(absolute_simplicity(surface_poly(3, 8, 5), Q(5)), SimplicityVerdict::splits_at(6));
    EXPECT_EQ(absolute_simplicity(IntPoly{4, 2, 1, 1, 1}, Q(2)).name(), std::string("abs_simple"));
    EXPECT_THROW(absolute_simplicity(IntPoly{9, 0, 2, 0, 1}, Q(3)), error);
    // x^2 + 3 over F_3 is supersingular: the verdict is only a witness
    const SimplicityVerdict v = absolute_simplicity(IntPoly{3, 0, 1}, Q(3));
    EXPECT_EQ(v.kind, SimplicityVerdict::Kind::inconclusive);
    EXPECT_EQ(v.degree, 2u);
    try {
        absolute_simplicity(IntPoly{100, 0, 1}, Q(97));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::functional_equation_violated);
    }
}

TEST(WeilCore, SubfieldDegreeDivisibilityChain) {
    int checked = 0;
    while (checked < 60) {
        const u64 q = std::vector<u64>{2, 3, 4, 5, 7}[static_cast<std::size_t>(uniform(0, 4))];
        const i64 a = uniform(-8, 8), b = uniform(-20, 20);
        if (!is_surface_weil(a, b, Q(q)) || !is_surface_irreducible(a, b, Q(q))) continue;
        const IntPoly f = surface_poly(a, b, q);
        const unsigned d1 = static_cast<unsigned>(uniform(1, 6));
        const unsigned d2 = static_cast<unsigned>(uniform(1, 6));
        const unsigned s1 = subfield_degree(f, d1);
        const unsigned s12 = subfield_degree(f, d1 * d2);
        EXPECT_EQ(4 % s1, 0u);
        EXPECT_EQ(s1 % s12, 0u);
        ++checked;
    }
}
