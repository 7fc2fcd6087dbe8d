#pragma once

// Weil polynomials: the correspondence f(x) = x^n g(x + q/x) with the real
// companion g, the Weil / ordinary predicates, and the decision procedure
// for absolute simplicity via the degrees of Q(pi^d).

#include <string>
#include <vector>

#include <gmpxx.h>

#include "weilforge/error.hpp"
#include "weilforge/intpoly.hpp"
#include "weilforge/numth.hpp"

namespace weilforge {

struct WeilPoly {
    IntPoly f;
    PrimePower q;
    unsigned n = 0;
};

/// x^n g(x + q/x) for monic g of degree n >= 1.
inline WeilPoly real_to_weil(const IntPoly& g, const PrimePower& q) {
    if (g.degree() < 1) throw error(errc::invalid_degree, "real companion must have degree >= 1");
    if (!g.is_monic()) throw error(errc::not_monic, "real companion must be monic");
    const unsigned n = static_cast<unsigned>(g.degree());
    const mpz_class qz = to_mpz(q.q);
    const IntPoly quad = IntPoly::monomial(2) + IntPoly::constant(qz);
    // sum_j g_j (x^2+q)^j x^(n-j)
    IntPoly f;
    IntPoly power{1};
    for (unsigned j = 0; j <= n; ++j) {
        if (sgn(g.coeffs()[j]) != 0) f = f + g.coeffs()[j] * (power * IntPoly::monomial(n - j));
        if (j < n) power = power * quad;
    }
    return {f, q, n};
}

/// True iff f is monic of even degree 2n and x^(2n) f(q/x) = q^n f(x).
inline bool satisfies_functional_equation(const IntPoly& f, const PrimePower& q) {
    if (!f.is_monic() || f.degree() < 2 || f.degree() % 2 != 0) return false;
    const unsigned n = static_cast<unsigned>(f.degree() / 2);
    const mpz_class qz = to_mpz(q.q);
    mpz_class qp = 1;
    for (unsigned k = 0; k <= n; ++k) {
        // coefficient of x^(n-k) equals q^k times the coefficient of x^(n+k)
        if (f.coeffs()[n - k] != qp * f.coeffs()[n + k]) return false;
        qp *= qz;
    }
    return true;
}

/// Inverse of real_to_weil.
inline IntPoly weil_to_real(const IntPoly& f, const PrimePower& q) {
    if (!satisfies_functional_equation(f, q))
        throw error(errc::functional_equation_violated,
                    "polynomial " + f.to_string() + " is not monic of even degree with the functional equation for q = " +
                        std::to_string(q.q));
    const unsigned n = static_cast<unsigned>(f.degree() / 2);
    const mpz_class qz = to_mpz(q.q);
    const IntPoly quad = IntPoly::monomial(2) + IntPoly::constant(qz);
    std::vector<IntPoly> powers{IntPoly{1}};
    for (unsigned j = 1; j <= n; ++j) powers.push_back(powers.back() * quad);
    std::vector<mpz_class> g(n + 1);
    IntPoly rest = f;
    for (unsigned j = n + 1; j-- > 0;) {
        g[j] = rest[n + j];
        if (sgn(g[j]) != 0) rest = rest - g[j] * (powers[j] * IntPoly::monomial(n - j));
    }
    if (!rest.is_zero()) detail::internal_error("functional equation held but the triangular inverse left a remainder");
    return IntPoly(std::move(g));
}

enum class RootInterval { closed, open };

/// True iff every complex root of monic g is real and lies in [-2 sqrt q, 2 sqrt q]
/// (or the open interval when requested).
inline bool is_real_weil(const IntPoly& g, const PrimePower& q, RootInterval interval = RootInterval::closed) {
    if (g.degree() < 1) throw error(errc::invalid_degree, "is_real_weil requires degree >= 1");
    if (!g.is_monic()) throw error(errc::not_monic, "is_real_weil requires a monic polynomial");
    const IntPoly s = squarefree_part(g);
    if (sturm_count(s) != static_cast<unsigned>(s.degree())) return false;

    // Squared-roots transform: G(x^2) = (-1)^m s(x) s(-x), so the roots of G
    // are the squares of the roots of s.
    const IntPoly even = s * s.reflected();
    std::vector<mpz_class> gc;
    for (std::size_t i = 0; i < even.size(); i += 2) gc.push_back(even.coeffs()[i]);
    IntPoly G(std::move(gc));
    if (s.degree() % 2 != 0) G = -G;
    const mpq_class four_q(to_mpz(4 * q.q));
    if (interval == RootInterval::open && G.sign_at(four_q) == 0) return false;
    return sturm_count(squarefree_part(G), four_q, std::nullopt) == 0;
}

/// Weil polynomial whose middle coefficient is coprime to q.
inline bool is_ordinary_weil(const IntPoly& f, const PrimePower& q) {
    const IntPoly g = weil_to_real(f, q);
    if (!is_real_weil(g, q)) return false;
    const unsigned n = static_cast<unsigned>(f.degree() / 2);
    return mpz_fdiv_ui(f.coeffs()[n].get_mpz_t(), q.p) != 0;
}

/// {d > 1 : d | 2n} together with {d > 1 : phi(d) | 2n}, ascending.
inline std::vector<unsigned> candidate_exponents(unsigned n) {
    if (n == 0) throw error(errc::invalid_argument, "candidate_exponents requires n >= 1");
    std::vector<unsigned> out;
    const u64 two_n = 2 * u64{n};
    const u64 limit = 8 * u64{n} * n;
    for (u64 d = 2; d <= limit; ++d) {
        if (two_n % d == 0 || two_n % euler_phi(d) == 0) out.push_back(static_cast<unsigned>(d));
    }
    return out;
}

/// Degree of Q(pi^d) for a root pi of the irreducible polynomial f.
inline unsigned subfield_degree(const IntPoly& f, unsigned d) {
    if (d == 0) throw error(errc::invalid_argument, "subfield_degree requires d >= 1");
    if (!f.is_monic()) throw error(errc::not_monic, "subfield_degree requires a monic polynomial");
    if (!is_irreducible_over_rationals(f)) throw error(errc::not_irreducible, f.to_string() + " is reducible over Q");
    return static_cast<unsigned>(squarefree_part(power_charpoly(f, d)).degree());
}

struct SimplicityVerdict {
    enum class Kind { absolutely_simple, splits, inconclusive };
    Kind kind = Kind::absolutely_simple;
    unsigned degree = 0;  // witness d for splits / inconclusive

    static SimplicityVerdict absolutely_simple() { return {}; }
    static SimplicityVerdict splits_at(unsigned d) { return {Kind::splits, d}; }
    static SimplicityVerdict inconclusive_at(unsigned d) { return {Kind::inconclusive, d}; }

    friend bool operator==(const SimplicityVerdict&, const SimplicityVerdict&) = default;

    const char* name() const {
        switch (kind) {
        case Kind::absolutely_simple: return "abs_simple";
        case Kind::splits: return "splits";
        case Kind::inconclusive: return "inconclusive";
        }
        return "unknown";
    }
};

/// Absolute-simplicity verdict for an irreducible Weil polynomial f.
///
/// For every candidate exponent d the characteristic polynomial of pi^d is
/// formed from the shared power sums of f; Q(pi^d) is a proper subfield
/// exactly when that polynomial has a repeated factor.
inline SimplicityVerdict absolute_simplicity(const IntPoly& f, const PrimePower& q) {
    const IntPoly g = weil_to_real(f, q);
    if (!is_real_weil(g, q)) throw error(errc::not_weil, f.to_string() + " has roots off the circle |x| = sqrt(q)");
    const bool ordinary = mpz_fdiv_ui(f.coeffs()[g.degree()].get_mpz_t(), q.p) != 0;
    if (!is_irreducible_over_rationals(f)) throw error(errc::not_irreducible, f.to_string() + " is reducible over Q");
    const unsigned two_n = static_cast<unsigned>(f.degree());
    const auto candidates = candidate_exponents(two_n / 2);
    const auto sums = newton_power_sums(f, std::size_t{candidates.back()} * two_n);
    std::vector<mpz_class> picked(two_n + 1);
    for (unsigned d : candidates) {
        for (unsigned j = 0; j <= two_n; ++j) picked[j] = sums[std::size_t{d} * j];
        if (!is_squarefree(from_power_sums(picked, two_n)))
            return ordinary ? SimplicityVerdict::splits_at(d) : SimplicityVerdict::inconclusive_at(d);
    }
    return SimplicityVerdict::absolutely_simple();
}

}  // namespace weilforge
