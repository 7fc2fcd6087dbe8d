#pragma once

// Polynomials over Z/mZ with a machine-word modulus. Field operations
// (division, gcd, factor-degree patterns) require a prime modulus; for
// composite moduli only coefficient reduction to a prime divisor is offered.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "weilforge/error.hpp"
#include "weilforge/numth.hpp"

namespace weilforge {

class ResiduePoly {
public:
    ResiduePoly() = default;
    explicit ResiduePoly(u64 modulus) : modulus_(modulus) { check_modulus(); }

    /// Coefficients in ascending degree; reduced into [0, modulus).
    ResiduePoly(u64 modulus, std::vector<u64> coeffs) : modulus_(modulus), coeffs_(std::move(coeffs)) {
        check_modulus();
        for (auto& c : coeffs_) c %= modulus_;
        trim();
    }

    /// Signed coefficients, reduced into [0, modulus).
    static ResiduePoly from_signed(u64 modulus, const std::vector<i64>& coeffs) {
        std::vector<u64> r(coeffs.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i) r[i] = reduce_signed(coeffs[i], modulus);
        return {modulus, std::move(r)};
    }

    static ResiduePoly monomial(u64 modulus, std::size_t degree, u64 c = 1) {
        std::vector<u64> v(degree + 1, 0);
        v[degree] = c;
        return {modulus, std::move(v)};
    }

    static u64 reduce_signed(i64 c, u64 m) {
        const i128 r = static_cast<i128>(c) % static_cast<i128>(m);
        return static_cast<u64>(r < 0 ? r + m : r);
    }

    u64 modulus() const noexcept { return modulus_; }
    const std::vector<u64>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }

    u64 operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
    u64 leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1 % modulus_; }
    bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

    /// Coefficient reduction to a divisor of the modulus (CRT component).
    ResiduePoly reduce(u64 divisor) const {
        if (divisor < 2 || modulus_ % divisor != 0)
            throw error(errc::invalid_argument, "reduction modulus must divide " + std::to_string(modulus_));
        return {divisor, coeffs_};
    }

    friend bool operator==(const ResiduePoly&, const ResiduePoly&) = default;

    friend ResiduePoly operator+(const ResiduePoly& a, const ResiduePoly& b) {
        const u64 m = a.modulus_;
        std::vector<u64> r(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) {
            const u64 s = a[i] + b[i];
            r[i] = s >= m || s < a[i] ? s - m : s;
        }
        return {m, std::move(r)};
    }

    friend ResiduePoly operator-(const ResiduePoly& a, const ResiduePoly& b) {
        const u64 m = a.modulus_;
        std::vector<u64> r(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + (m - b[i]);
        return {m, std::move(r)};
    }

    friend ResiduePoly operator*(const ResiduePoly& a, const ResiduePoly& b) {
        const u64 m = a.modulus_;
        if (a.is_zero() || b.is_zero()) return ResiduePoly(m);
        std::vector<u128> acc(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                acc[i + j] = (acc[i + j] + static_cast<u128>(a.coeffs_[i]) * b.coeffs_[j]) % m;
            }
        }
        std::vector<u64> r(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<u64>(acc[i]);
        return {m, std::move(r)};
    }

    ResiduePoly scaled(u64 c) const {
        std::vector<u64> r(coeffs_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = detail::mul_mod(coeffs_[i], c % modulus_, modulus_);
        return {modulus_, std::move(r)};
    }

    ResiduePoly derivative() const {
        if (coeffs_.size() <= 1) return ResiduePoly(modulus_);
        std::vector<u64> r(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) r[i - 1] = detail::mul_mod(coeffs_[i], i % modulus_, modulus_);
        return {modulus_, std::move(r)};
    }

    u64 eval(u64 x) const {
        u64 acc = 0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            acc = detail::mul_mod(acc, x, modulus_) + coeffs_[i];
            if (acc >= modulus_) acc -= modulus_;
        }
        return acc;
    }

    /// Ascending coefficients with a " mod m" suffix, e.g. "1,1,0,1 mod 2".
    std::string to_string() const {
        std::string s;
        if (coeffs_.empty()) s = "0";
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(coeffs_[i]);
        }
        return s + " mod " + std::to_string(modulus_);
    }

private:
    void check_modulus() const {
        if (modulus_ < 2) throw error(errc::invalid_argument, "modulus must be at least 2");
    }
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    u64 modulus_ = 2;
    std::vector<u64> coeffs_;
};

// ---------------------------------------------------------------------------
// Field arithmetic over F_p.

inline u64 inv_mod(u64 a, u64 p) {
    a %= p;
    if (a == 0) throw error(errc::invalid_argument, "inverse of zero mod " + std::to_string(p));
    i128 t = 0, new_t = 1;
    i128 r = p, new_r = a;
    while (new_r != 0) {
        const i128 quot = r / new_r;
        t -= quot * new_t;
        std::swap(t, new_t);
        r -= quot * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw error(errc::invalid_argument, "non-invertible residue mod " + std::to_string(p));
    return static_cast<u64>(t < 0 ? t + p : t);
}

inline ResiduePoly make_monic(const ResiduePoly& f) {
    if (f.is_zero()) return f;
    return f.scaled(inv_mod(f.leading(), f.modulus()));
}

/// Quotient and remainder; the divisor's leading coefficient must be a unit.
inline std::pair<ResiduePoly, ResiduePoly> divrem(const ResiduePoly& a, const ResiduePoly& b) {
    const u64 m = a.modulus();
    if (b.is_zero()) throw error(errc::invalid_argument, "polynomial division by zero");
    if (a.degree() < b.degree()) return {ResiduePoly(m), a};
    const u64 inv_lc = inv_mod(b.leading(), m);
    std::vector<u64> r = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    std::vector<u64> q(r.size() - db, 0);
    for (std::size_t k = r.size(); k-- > db;) {
        const u64 c = detail::mul_mod(r[k], inv_lc, m);
        q[k - db] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) {
            const u64 t = detail::mul_mod(c, bc[j], m);
            u64& slot = r[k - db + j];
            slot = slot >= t ? slot - t : slot + (m - t);
        }
    }
    r.resize(db);
    return {ResiduePoly(m, std::move(q)), ResiduePoly(m, std::move(r))};
}

inline ResiduePoly operator%(const ResiduePoly& a, const ResiduePoly& b) { return divrem(a, b).second; }
inline ResiduePoly operator/(const ResiduePoly& a, const ResiduePoly& b) { return divrem(a, b).first; }

/// Monic gcd (zero if both inputs are zero).
inline ResiduePoly gcd(ResiduePoly a, ResiduePoly b) {
    while (!b.is_zero()) {
        a = a % b;
        std::swap(a, b);
    }
    return make_monic(a);
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
inline std::tuple<ResiduePoly, ResiduePoly, ResiduePoly> xgcd(const ResiduePoly& a, const ResiduePoly& b) {
    const u64 m = a.modulus();
    ResiduePoly r0 = a, r1 = b;
    ResiduePoly s0(m, {1}), s1(m);
    ResiduePoly t0(m), t1(m, {1});
    while (!r1.is_zero()) {
        auto [qt, rem] = divrem(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        ResiduePoly s2 = s0 - qt * s1;
        ResiduePoly t2 = t0 - qt * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    const u64 inv = inv_mod(r0.leading(), m);
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

/// base^exp mod modulus_poly, exponent as a big integer.
inline ResiduePoly pow_mod(ResiduePoly base, const mpz_class& exp, const ResiduePoly& modulus_poly) {
    ResiduePoly result = ResiduePoly(base.modulus(), {1}) % modulus_poly;
    base = base % modulus_poly;
    const std::size_t bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = (result * result) % modulus_poly;
        if (mpz_tstbit(exp.get_mpz_t(), i)) result = (result * base) % modulus_poly;
    }
    return result;
}

inline ResiduePoly pow_mod(const ResiduePoly& base, u64 exp, const ResiduePoly& modulus_poly) {
    return pow_mod(base, to_mpz(exp), modulus_poly);
}

// ---------------------------------------------------------------------------
// Factorization shape.

/// Multiset of irreducible-factor degrees (with multiplicity), ascending.
struct FactorPattern {
    std::vector<unsigned> degrees;

    unsigned total_degree() const {
        unsigned s = 0;
        for (unsigned d : degrees) s += d;
        return s;
    }
    bool is_irreducible() const { return degrees.size() == 1; }

    /// Pattern {1, n-1}. For n = 2 this is any product of two linear
    /// factors, repeated ones included.
    bool is_linear_times_irreducible() const {
        return degrees.size() == 2 && degrees[0] == 1;
    }

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < degrees.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(degrees[i]);
        }
        return s + "}";
    }

    friend bool operator==(const FactorPattern&, const FactorPattern&) = default;
};

namespace detail {

inline void require_prime_modulus(const ResiduePoly& f) {
    if (!is_prime(f.modulus()))
        throw error(errc::invalid_argument, "operation requires a prime modulus, got " + std::to_string(f.modulus()));
}

// f(x) = h(x)^p with f' = 0 over F_p: coefficients of h are those of f at
// multiples of p (a^p = a on F_p).
inline ResiduePoly pth_root(const ResiduePoly& f) {
    const u64 p = f.modulus();
    std::vector<u64> r;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) r.push_back(f.coeffs()[i]);
    return {p, std::move(r)};
}

}  // namespace detail

/// Squarefree decomposition of a monic polynomial over F_p:
/// f = prod factor^multiplicity with pairwise coprime squarefree factors.
inline std::vector<std::pair<ResiduePoly, unsigned>> squarefree_decomposition(const ResiduePoly& f) {
    detail::require_prime_modulus(f);
    std::vector<std::pair<ResiduePoly, unsigned>> out;
    if (f.degree() < 1) return out;
    const u64 p = f.modulus();
    ResiduePoly c = gcd(f, f.derivative());
    ResiduePoly w = f / c;
    unsigned i = 1;
    while (!w.is_one()) {
        ResiduePoly y = gcd(w, c);
        ResiduePoly z = w / y;
        if (z.degree() > 0) out.emplace_back(make_monic(z), i);
        ++i;
        w = std::move(y);
        c = c / w;
    }
    if (c.degree() > 0) {
        for (auto& [g, e] : squarefree_decomposition(detail::pth_root(c))) {
            out.emplace_back(std::move(g), e * static_cast<unsigned>(p));
        }
    }
    return out;
}

/// Distinct-degree factorization of a squarefree monic polynomial over
/// F_p: pairs (D, product of all irreducible factors of degree D).
inline std::vector<std::pair<unsigned, ResiduePoly>> distinct_degree_factorization(ResiduePoly f) {
    detail::require_prime_modulus(f);
    const u64 p = f.modulus();
    std::vector<std::pair<unsigned, ResiduePoly>> out;
    const ResiduePoly x = ResiduePoly::monomial(p, 1);
    ResiduePoly h = x % f;
    for (unsigned d = 1; 2 * d <= static_cast<unsigned>(f.degree()); ++d) {
        h = pow_mod(h, p, f);
        ResiduePoly g = gcd(h - x, f);
        if (g.degree() > 0) {
            f = f / g;
            h = h % f;
            out.emplace_back(d, std::move(g));
        }
    }
    if (f.degree() > 0) out.emplace_back(static_cast<unsigned>(f.degree()), make_monic(f));
    return out;
}

/// Degrees of the irreducible factors of a monic f over F_p, with
/// multiplicity (no equal-degree splitting is performed).
inline FactorPattern factor_degree_pattern(const ResiduePoly& f) {
    detail::require_prime_modulus(f);
    if (f.degree() < 1) throw error(errc::invalid_degree, "factor_degree_pattern requires degree >= 1");
    if (!f.is_monic()) throw error(errc::not_monic, "factor_degree_pattern requires a monic polynomial");
    FactorPattern pat;
    for (const auto& [part, mult] : squarefree_decomposition(f)) {
        for (const auto& [d, prod] : distinct_degree_factorization(part)) {
            const unsigned count = static_cast<unsigned>(prod.degree()) / d;
            for (unsigned k = 0; k < count * mult; ++k) pat.degrees.push_back(d);
        }
    }
    std::sort(pat.degrees.begin(), pat.degrees.end());
    return pat;
}

inline bool is_irreducible_mod_p(const ResiduePoly& f) {
    detail::require_prime_modulus(f);
    if (f.degree() < 1) return false;
    const ResiduePoly g = make_monic(f);
    if (!gcd(g, g.derivative()).is_one()) return false;
    const auto parts = distinct_degree_factorization(g);
    return parts.size() == 1 && parts[0].first == static_cast<unsigned>(g.degree());
}

/// Equal-degree splitting (Cantor-Zassenhaus) of a squarefree monic f over
/// odd F_p all of whose irreducible factors have degree d. The RNG is
/// seeded deterministically so results are reproducible.
inline std::vector<ResiduePoly> equal_degree_split(const ResiduePoly& f, unsigned d, std::mt19937_64& rng) {
    const u64 p = f.modulus();
    if (p == 2) throw error(errc::invalid_argument, "equal_degree_split requires an odd prime");
    if (static_cast<unsigned>(f.degree()) == d) return {f};
    mpz_class e = 1;
    for (unsigned i = 0; i < d; ++i) e *= to_mpz(p);
    e = (e - 1) / 2;
    std::uniform_int_distribution<u64> dist(0, p - 1);
    for (;;) {
        std::vector<u64> rc(static_cast<std::size_t>(f.degree()));
        for (auto& c : rc) c = dist(rng);
        ResiduePoly a(p, std::move(rc));
        if (a.degree() < 1) continue;
        ResiduePoly g = gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            auto left = equal_degree_split(g, d, rng);
            auto right = equal_degree_split(f / g, d, rng);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        }
        ResiduePoly b = pow_mod(a, e, f) - ResiduePoly(p, {1});
        g = gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            auto left = equal_degree_split(g, d, rng);
            auto right = equal_degree_split(f / g, d, rng);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        }
    }
}

/// Complete factorization of a squarefree monic polynomial over odd F_p
/// into monic irreducibles, sorted by (degree, coefficients).
inline std::vector<ResiduePoly> factor_squarefree(const ResiduePoly& f, u64 seed = 0x5eed) {
    detail::require_prime_modulus(f);
    std::mt19937_64 rng(seed);
    std::vector<ResiduePoly> out;
    for (const auto& [d, prod] : distinct_degree_factorization(make_monic(f))) {
        for (auto& g : equal_degree_split(prod, d, rng)) out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end(), [](const ResiduePoly& a, const ResiduePoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return std::lexicographical_compare(a.coeffs().rbegin(), a.coeffs().rend(), b.coeffs().rbegin(), b.coeffs().rend());
    });
    return out;
}

// ---------------------------------------------------------------------------
// Exact counts.

/// #A_{n,p}: monic irreducible polynomials of degree n over F_p.
inline mpz_class count_irreducible(u64 p, unsigned n) {
    if (!is_prime(p)) throw error(errc::invalid_argument, std::to_string(p) + " is not prime");
    if (n == 0) throw error(errc::invalid_degree, "count_irreducible requires n >= 1");
    const mpz_class pz = to_mpz(p);
    mpz_class sum = 0;
    for (u64 d : divisors(n)) {
        const int mu = moebius(n / d);
        if (mu == 0) continue;
        mpz_class term;
        mpz_pow_ui(term.get_mpz_t(), pz.get_mpz_t(), d);
        if (mu > 0) sum += term;
        else sum -= term;
    }
    return sum / n;
}

namespace detail {

// Decodes index -> monic degree-n polynomial over F_p (low coefficients
// vary fastest).
inline ResiduePoly monic_from_index(u64 p, unsigned n, u64 index) {
    std::vector<u64> c(n + 1, 0);
    for (unsigned i = 0; i < n; ++i) {
        c[i] = index % p;
        index /= p;
    }
    c[n] = 1;
    return {p, std::move(c)};
}

inline u64 checked_power(u64 p, unsigned n, u64 limit) {
    u128 acc = 1;
    for (unsigned i = 0; i < n; ++i) {
        acc *= p;
        if (acc > limit) throw error(errc::too_large, "enumeration of " + std::to_string(p) + "^" + std::to_string(n) + " polynomials exceeds the feasibility guard");
    }
    return static_cast<u64>(acc);
}

}  // namespace detail

/// Exhaustive count of monic degree-n polynomials over F_p whose factor
/// pattern satisfies `pred`.
template <class Pred>
u64 count_by_pattern(u64 p, unsigned n, Pred pred, u64 limit = 100'000'000) {
    const u64 total = detail::checked_power(p, n, limit);
    u64 count = 0;
    for (u64 idx = 0; idx < total; ++idx) {
        if (pred(factor_degree_pattern(detail::monic_from_index(p, n, idx)))) ++count;
    }
    return count;
}

/// #B_{n,p}: monic degree-n polynomials over F_p that are a linear factor
/// times an irreducible. Closed form p * #A_{n-1,p} for n >= 3; n = 2 is
/// settled by enumeration (pattern {1,1}, repeated roots included).
inline mpz_class count_linear_times_irreducible(u64 p, unsigned n) {
    if (!is_prime(p)) throw error(errc::invalid_argument, std::to_string(p) + " is not prime");
    if (n < 2) throw error(errc::invalid_degree, "count_linear_times_irreducible requires n >= 2");
    if (n == 2) {
        return to_mpz(count_by_pattern(p, 2, [](const FactorPattern& pat) { return pat.is_linear_times_irreducible(); }));
    }
    return to_mpz(p) * count_irreducible(p, n - 1);
}

}  // namespace weilforge
