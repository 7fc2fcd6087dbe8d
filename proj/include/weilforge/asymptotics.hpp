#pragma once

// Quantitative layer: certified rational enclosures of the constants that
// enter the density thresholds, the volume factor v_n, the thresholds
// (k, m, M) for a given epsilon, the surface counting bounds, and an
// exhaustive small-modulus check of the reduction-mod-m counting argument.

#include <algorithm>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "weilforge/error.hpp"
#include "weilforge/modpoly.hpp"
#include "weilforge/numth.hpp"
#include "weilforge/surd.hpp"

namespace weilforge {

/// Closed rational interval [lo, hi].
struct Interval {
    mpq_class lo;
    mpq_class hi;

    static Interval point(const mpq_class& v) { return {v, v}; }

    mpq_class width() const { return hi - lo; }
    mpq_class midpoint() const { return (lo + hi) / 2; }
    bool contains(const mpq_class& v) const { return lo <= v && v <= hi; }

    friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
    friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
    friend Interval operator*(const Interval& a, const Interval& b) {
        const mpq_class p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
        return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (sgn(b.lo) <= 0 && sgn(b.hi) >= 0) throw error(errc::invalid_argument, "interval division by an interval containing 0");
        return a * Interval{1 / b.hi, 1 / b.lo};
    }
    Interval pow(unsigned e) const {
        Interval r = point(1);
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }
};

namespace detail {

inline mpq_class dyadic(const mpz_class& num, unsigned bits) {
    mpz_class den = 1;
    den <<= bits;
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace detail

/// Enclosure of sqrt(x) for rational x >= 0 with width 2^-bits.
inline Interval sqrt_interval(const mpq_class& x, unsigned bits) {
    if (sgn(x) < 0) throw error(errc::invalid_argument, "sqrt of a negative rational");
    mpz_class scaled = x.get_num();
    scaled <<= 2 * bits;
    mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
    return {detail::dyadic(r, bits), detail::dyadic(r + 1, bits)};
}

/// Enclosure of exp(x) for rational 0 <= x <= 2 with width below 2^-bits.
inline Interval exp_interval(const mpq_class& x, unsigned bits) {
    if (sgn(x) < 0 || x > 2) throw error(errc::invalid_argument, "exp_interval supports 0 <= x <= 2");
    const mpq_class target = detail::dyadic(1, bits);
    mpq_class term = 1;
    mpq_class sum = 0;
    for (unsigned j = 1;; ++j) {
        sum += term;
        term *= x / j;
        // remaining tail sum_{i >= j} x^i/i! <= term / (1 - x/(j+1))
        const mpq_class denom = 1 - x / (j + 1);
        if (sgn(denom) > 0) {
            const mpq_class tail = term / denom;
            if (tail < target) return {sum, sum + tail};
        }
    }
}

/// v_n = (2^n / n!) * prod_{j=1}^{n} (2j/(2j-1))^(n+1-j).
inline mpq_class v_n(unsigned n) {
    if (n == 0) throw error(errc::invalid_argument, "v_n requires n >= 1");
    mpq_class v = 1;
    for (unsigned i = 1; i <= n; ++i) v *= mpq_class(2, i);
    for (unsigned j = 1; j <= n; ++j) {
        mpq_class ratio(2 * j, 2 * j - 1);
        ratio.canonicalize();
        for (unsigned e = 0; e < n + 1 - j; ++e) v *= ratio;
    }
    v.canonicalize();
    return v;
}

struct Constants {
    Interval c1;
    Interval c2;
    Interval c3;
    Interval G;
};

namespace detail {

inline Constants constants_at(unsigned n, unsigned bits) {
    const Interval s2 = sqrt_interval(2, bits);
    const Interval s3 = sqrt_interval(3, bits);
    const Interval one = Interval::point(1);
    Constants c;
    c.c1 = s3 * Interval::point(mpq_class(1, 6));
    const Interval e32 = exp_interval(mpq_class(3, 2), bits);
    const Interval cube = (one + s3 * Interval::point(mpq_class(1, 162))).pow(3);
    c.c2 = e32 * Interval::point(2) * (one + s2) * s3 * cube * Interval::point(mpq_class(1, 3));
    c.c3 = c.c2 / (one + s2);
    mpz_class six_pow;
    mpz_ui_pow_ui(six_pow.get_mpz_t(), 6, static_cast<unsigned long>(n) * n);
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), n - 1);
    mpq_class scale(six_pow * n * (n + 1), fact);
    scale.canonicalize();
    scale /= v_n(n);
    c.G = Interval::point(scale) * c.c1.pow(n) * c.c3;
    return c;
}

}  // namespace detail

/// Enclosures of c1, c2, c3 and G_n, each of width at most `precision`.
inline Constants constants_and_G(unsigned n, const mpq_class& precision) {
    if (n == 0) throw error(errc::invalid_argument, "constants_and_G requires n >= 1");
    if (sgn(precision) <= 0) throw error(errc::invalid_argument, "precision must be positive");
    for (unsigned bits = 64;; bits *= 2) {
        Constants c = detail::constants_at(n, bits);
        if (c.c1.width() <= precision && c.c2.width() <= precision && c.c3.width() <= precision &&
            c.G.width() <= precision)
            return c;
        if (bits > (1u << 20)) detail::internal_error("constants_and_G failed to converge");
    }
}

struct Thresholds {
    unsigned k = 0;
    mpz_class m;
    Interval M;  // M.hi is the certified upper bound
};

/// k: least k with (1 - 1/(2n))^k <= epsilon/8; m: product of the first k
/// primes; M = (8 G_n m / epsilon)^2.
inline Thresholds thresholds(unsigned n, const mpq_class& epsilon, const mpq_class& precision = mpq_class(1, 1000000)) {
    if (n < 2) throw error(errc::invalid_degree, "thresholds require n >= 2");
    if (sgn(epsilon) <= 0 || epsilon > 1) throw error(errc::invalid_epsilon, "epsilon must lie in (0, 1]");
    Thresholds t;
    mpz_class lhs = 8;              // 8 (2n-1)^k
    mpq_class rhs = epsilon;        // epsilon (2n)^k
    while (mpq_class(lhs) > rhs) {
        lhs *= 2 * n - 1;
        rhs *= 2 * n;
        ++t.k;
    }
    t.m = primorial(t.k);
    const Constants c = constants_and_G(n, precision);
    const mpq_class factor = mpq_class(8 * t.m) / epsilon;
    const Interval base = Interval::point(factor) * c.G;
    t.M = base * base;
    return t;
}

/// The surface counting bounds at q, each as u + v sqrt(q):
/// I_upper           = (32/3) r(q) q^(3/2) + 3473 q + 8359 q^(1/2)
/// O_simple_lower    = (32/3) r(q) q^(3/2) -    8 q - 8361 q^(1/2)
/// O_abs_simple_lower= (32/3) r(q) q^(3/2) -   12 q - 8376 q^(1/2)
/// with r(q) = phi(q)/q, so r(q) q^(3/2) = phi(q) sqrt(q).
struct SurfaceBounds {
    Surd i_upper;
    Surd o_simple_lower;
    Surd o_abs_simple_lower;
};

inline SurfaceBounds surface_bounds(const PrimePower& q) {
    const mpz_class qz = to_mpz(q.q);
    const mpq_class lead = mpq_class(32, 3) * mpq_class(to_mpz(q.q - q.q / q.p));
    return {Surd(qz, 3473 * mpq_class(qz), lead + 8359), Surd(qz, -8 * mpq_class(qz), lead - 8361),
            Surd(qz, -12 * mpq_class(qz), lead - 8376)};
}

/// (659/epsilon)^2.
inline mpq_class surface_threshold(const mpq_class& epsilon) {
    if (sgn(epsilon) <= 0 || epsilon > 1) throw error(errc::invalid_epsilon, "epsilon must lie in (0, 1]");
    const mpq_class t = mpq_class(659) / epsilon;
    return t * t;
}

// ---------------------------------------------------------------------------

struct PrimeReductionStats {
    u64 p = 0;
    u64 total = 0;       // p^n
    u64 irreducible = 0; // #A_{n,p}
    u64 linear_times_irreducible = 0;  // #B_{n,p}
    bool a_bound_holds = false;  // 1 - #A/p^n <= 1 - 1/(2n)
    bool b_bound_holds = false;  // 1 - #B/p^n <= 1 - 1/(2n-2)
};

struct ReductionReport {
    unsigned n = 0;
    std::vector<u64> primes;
    u64 modulus = 0;
    u64 total = 0;              // modulus^n
    u64 exhaustive_count = 0;   // polynomials meeting both conditions
    mpz_class formula_count;    // inclusion-exclusion over the CRT product
    mpq_class lower_bound;      // 1 - prod(1 - A/p^n) - prod(1 - B/p^n)
    std::vector<PrimeReductionStats> per_prime;

    bool formula_matches() const { return formula_count == mpz_class(to_mpz(exhaustive_count)); }
    bool lower_bound_holds() const { return mpq_class(to_mpz(exhaustive_count), to_mpz(total)) >= lower_bound; }
    bool per_prime_bounds_hold() const {
        return std::all_of(per_prime.begin(), per_prime.end(),
                           [](const PrimeReductionStats& s) { return s.a_bound_holds && s.b_bound_holds; });
    }
};

/// Exhaustive count of monic degree-n polynomials over Z/m (m the product
/// of `primes`) that are irreducible modulo some listed prime and
/// linear-times-irreducible modulo some listed prime.
inline ReductionReport reduction_verify(unsigned n, std::vector<u64> primes, u64 limit = 10'000'000) {
    if (n <= 2) throw error(errc::invalid_degree, "reduction_verify requires n > 2");
    if (primes.empty()) throw error(errc::invalid_argument, "reduction_verify requires at least one prime");
    std::sort(primes.begin(), primes.end());
    if (std::adjacent_find(primes.begin(), primes.end()) != primes.end())
        throw error(errc::invalid_argument, "primes must be distinct");
    u64 m = 1;
    for (u64 p : primes) {
        if (!is_prime(p)) throw error(errc::invalid_argument, std::to_string(p) + " is not prime");
        if (m > limit / p) throw error(errc::too_large, "modulus exceeds the exhaustive limit");
        m *= p;
    }
    const u64 total = detail::checked_power(m, n, limit);

    ReductionReport rep;
    rep.n = n;
    rep.primes = primes;
    rep.modulus = m;
    rep.total = total;

    // Per-prime classification tables indexed by the base-p digits of the
    // non-leading coefficients.
    std::vector<std::vector<unsigned char>> table;  // bit 0: A, bit 1: B
    for (u64 p : primes) {
        const u64 count = detail::checked_power(p, n, limit);
        std::vector<unsigned char> t(count);
        PrimeReductionStats st;
        st.p = p;
        st.total = count;
        for (u64 idx = 0; idx < count; ++idx) {
            const FactorPattern pat = factor_degree_pattern(detail::monic_from_index(p, n, idx));
            if (pat.is_irreducible()) {
                t[idx] |= 1;
                ++st.irreducible;
            } else if (pat.is_linear_times_irreducible()) {
                t[idx] |= 2;
                ++st.linear_times_irreducible;
            }
        }
        st.a_bound_holds = 2 * u64{n} * st.irreducible >= count;
        st.b_bound_holds = (2 * u64{n} - 2) * st.linear_times_irreducible >= count;
        rep.per_prime.push_back(st);
        table.push_back(std::move(t));
    }

    // Enumerate coefficient vectors over Z/m and reduce each modulo every prime.
    std::vector<u64> coeff(n, 0);
    u64 hits = 0;
    for (u64 idx = 0; idx < total; ++idx) {
        u64 rest = idx;
        for (unsigned i = 0; i < n; ++i) {
            coeff[i] = rest % m;
            rest /= m;
        }
        unsigned char seen = 0;
        for (std::size_t j = 0; j < primes.size(); ++j) {
            const u64 p = primes[j];
            u64 key = 0;
            for (unsigned i = n; i-- > 0;) key = key * p + coeff[i] % p;
            seen |= table[j][key];
        }
        if (seen == 3) ++hits;
    }
    rep.exhaustive_count = hits;

    mpz_class all = 1, not_a = 1, not_b = 1, neither = 1;
    mpq_class prob_not_a = 1, prob_not_b = 1;
    for (const auto& st : rep.per_prime) {
        all *= to_mpz(st.total);
        not_a *= to_mpz(st.total - st.irreducible);
        not_b *= to_mpz(st.total - st.linear_times_irreducible);
        neither *= to_mpz(st.total - st.irreducible - st.linear_times_irreducible);
        prob_not_a *= mpq_class(to_mpz(st.total - st.irreducible), to_mpz(st.total));
        prob_not_b *= mpq_class(to_mpz(st.total - st.linear_times_irreducible), to_mpz(st.total));
    }
    rep.formula_count = all - not_a - not_b + neither;
    rep.lower_bound = 1 - prob_not_a - prob_not_b;
    rep.lower_bound.canonicalize();
    return rep;
}

}  // namespace weilforge
