#pragma once

// Dense polynomials over Z with GMP coefficients.
//
// Everything here is exact: Sturm counts use integer pseudo-remainder
// chains and homogenized rational evaluation, power transforms go through
// Newton's identities, and the irreducibility test ends in a complete
// Hensel-lifting / factor-recombination search when modular sieving alone
// cannot decide.

#include <algorithm>
#include <bitset>
#include <cctype>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "weilforge/error.hpp"
#include "weilforge/modpoly.hpp"
#include "weilforge/numth.hpp"

namespace weilforge {

class IntPoly {
public:
    IntPoly() = default;

    /// Ascending coefficients.
    explicit IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

    IntPoly(std::initializer_list<long> coeffs) {
        c_.reserve(coeffs.size());
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static IntPoly from_i64(const std::vector<i64>& coeffs) {
        std::vector<mpz_class> c;
        c.reserve(coeffs.size());
        for (i64 v : coeffs) c.push_back(to_mpz(v));
        return IntPoly(std::move(c));
    }

    static IntPoly constant(const mpz_class& v) { return IntPoly(std::vector<mpz_class>{v}); }

    static IntPoly monomial(std::size_t degree, const mpz_class& c = 1) {
        std::vector<mpz_class> v(degree + 1);
        v[degree] = c;
        return IntPoly(std::move(v));
    }

    const std::vector<mpz_class>& coeffs() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    std::size_t size() const noexcept { return c_.size(); }

    /// Coefficient of x^i (zero beyond the degree).
    mpz_class operator[](std::size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }
    const mpz_class& leading() const {
        if (c_.empty()) throw error(errc::invalid_argument, "leading coefficient of the zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    bool is_constant() const { return c_.size() <= 1; }

    void set(std::size_t i, const mpz_class& v) {
        if (i >= c_.size()) c_.resize(i + 1);
        c_[i] = v;
        trim();
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<mpz_class> r(std::max(a.size(), b.size()));
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i < a.size()) r[i] += a.c_[i];
            if (i < b.size()) r[i] += b.c_[i];
        }
        return IntPoly(std::move(r));
    }

    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<mpz_class> r(std::max(a.size(), b.size()));
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i < a.size()) r[i] += a.c_[i];
            if (i < b.size()) r[i] -= b.c_[i];
        }
        return IntPoly(std::move(r));
    }

    IntPoly operator-() const {
        IntPoly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<mpz_class> r(a.size() + b.size() - 1);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (sgn(a.c_[i]) == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
        }
        return IntPoly(std::move(r));
    }

    friend IntPoly operator*(const mpz_class& s, const IntPoly& a) {
        IntPoly r = a;
        for (auto& v : r.c_) v *= s;
        r.trim();
        return r;
    }

    IntPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<mpz_class> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
        return IntPoly(std::move(r));
    }

    /// f(-x).
    IntPoly reflected() const {
        IntPoly r = *this;
        for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
        return r;
    }

    /// gcd of the coefficients (non-negative).
    mpz_class content() const {
        mpz_class g = 0;
        for (const auto& v : c_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }

    /// Content removed, leading coefficient made positive.
    IntPoly primitive_part() const {
        if (is_zero()) return {};
        mpz_class g = content();
        if (sgn(c_.back()) < 0) g = -g;
        IntPoly r = *this;
        for (auto& v : r.c_) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        return r;
    }

    mpz_class eval(const mpz_class& x) const {
        mpz_class acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) {
            acc *= x;
            acc += c_[i];
        }
        return acc;
    }

    /// Sign of f at a rational point, from the homogenized integer value
    /// den^deg * f(num/den).
    int sign_at(const mpq_class& x) const {
        if (c_.empty()) return 0;
        const mpz_class& num = x.get_num();
        const mpz_class& den = x.get_den();
        mpz_class acc = c_.back();
        mpz_class den_pow = 1;
        for (std::size_t i = c_.size() - 1; i-- > 0;) {
            den_pow *= den;
            acc *= num;
            mpz_addmul(acc.get_mpz_t(), c_[i].get_mpz_t(), den_pow.get_mpz_t());
        }
        return sgn(acc);
    }

    ResiduePoly mod(u64 p) const {
        std::vector<u64> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = mpz_fdiv_ui(c_[i].get_mpz_t(), p);
        return {p, std::move(r)};
    }

    /// Ascending comma-separated coefficients, e.g. "49,7,1,1,1".
    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ',';
            s += c_[i].get_str();
        }
        return s;
    }

    /// Human-readable descending form, e.g. "x^4 + x^3 + x^2 + 7*x + 49".
    std::string to_pretty() const;

    static IntPoly parse(std::string_view text);

private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }

    std::vector<mpz_class> c_;
};

inline std::string IntPoly::to_pretty() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (sgn(c_[i]) == 0) continue;
        mpz_class mag = abs(c_[i]);
        if (s.empty()) {
            if (sgn(c_[i]) < 0) s += "-";
        } else {
            s += sgn(c_[i]) < 0 ? " - " : " + ";
        }
        const bool unit = mag == 1 && i > 0;
        if (!unit) s += mag.get_str();
        if (i > 0) {
            if (!unit) s += "*";
            s += "x";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

inline IntPoly IntPoly::parse(std::string_view text) {
    std::vector<mpz_class> out;
    std::string token;
    auto flush = [&]() {
        std::string t;
        for (char ch : token) {
            if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
        }
        if (!t.empty() && t[0] == '+') t.erase(0, 1);
        if (t.empty()) throw error(errc::parse_error, "empty coefficient in polynomial \"" + std::string(text) + "\"");
        mpz_class v;
        if (v.set_str(t, 10) != 0) throw error(errc::parse_error, "bad coefficient \"" + t + "\"");
        out.push_back(v);
        token.clear();
    };
    for (char ch : text) {
        if (ch == ',') flush();
        else token += ch;
    }
    flush();
    return IntPoly(std::move(out));
}

// ---------------------------------------------------------------------------
// Division and gcd.

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r.
inline IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw error(errc::invalid_argument, "pseudo-division by zero");
    if (a.degree() < b.degree()) return a;
    std::vector<mpz_class> r = a.coeffs();
    const auto& bc = b.coeffs();
    const mpz_class& lb = bc.back();
    const std::size_t db = bc.size() - 1;
    long e = a.degree() - b.degree() + 1;
    mpz_class t;
    while (r.size() > db && !r.empty()) {
        const mpz_class lead = r.back();
        const std::size_t shift = r.size() - 1 - db;
        for (auto& v : r) v *= lb;
        for (std::size_t j = 0; j <= db; ++j) {
            mpz_mul(t.get_mpz_t(), lead.get_mpz_t(), bc[j].get_mpz_t());
            r[shift + j] -= t;
        }
        --e;
        while (!r.empty() && sgn(r.back()) == 0) r.pop_back();
    }
    if (e > 0) {
        mpz_class s;
        mpz_pow_ui(s.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
        for (auto& v : r) v *= s;
    }
    return IntPoly(std::move(r));
}

/// Division over Z by a divisor whose leading coefficient divides every
/// step; returns nullopt when the quotient is not integral or the remainder
/// is nonzero.
inline std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw error(errc::invalid_argument, "division by zero polynomial");
    if (a.is_zero()) return IntPoly{};
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<mpz_class> r = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    std::vector<mpz_class> q(r.size() - db);
    mpz_class t;
    for (std::size_t k = r.size(); k-- > db;) {
        if (sgn(r[k]) == 0) continue;
        if (!mpz_divisible_p(r[k].get_mpz_t(), bc.back().get_mpz_t())) return std::nullopt;
        mpz_divexact(q[k - db].get_mpz_t(), r[k].get_mpz_t(), bc.back().get_mpz_t());
        for (std::size_t j = 0; j <= db; ++j) {
            mpz_mul(t.get_mpz_t(), q[k - db].get_mpz_t(), bc[j].get_mpz_t());
            r[k - db + j] -= t;
        }
    }
    for (std::size_t i = 0; i < db; ++i) {
        if (sgn(r[i]) != 0) return std::nullopt;
    }
    return IntPoly(std::move(q));
}

/// gcd in Z[x] with positive leading coefficient (primitive PRS).
inline IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    mpz_class cont;
    mpz_gcd(cont.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
    IntPoly x = a.primitive_part();
    IntPoly y = b.primitive_part();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        IntPoly r = pseudo_remainder(x, y);
        x = std::move(y);
        y = r.is_zero() ? r : r.primitive_part();
    }
    if (x.degree() == 0) return IntPoly::constant(cont);
    return cont * x.primitive_part();
}

namespace detail {

// Smallest few primes p for which f mod p is squarefree of full degree;
// used for cheap modular certificates that gcd(f, f') is trivial.
inline bool squarefree_mod_some_prime(const IntPoly& f, int attempts) {
    static constexpr u64 probe[] = {1000003, 1000033, 1000037, 1000039, 1000081, 1000099};
    for (int i = 0; i < attempts && i < 6; ++i) {
        const u64 p = probe[i];
        if (mpz_fdiv_ui(f.leading().get_mpz_t(), p) == 0) continue;
        const ResiduePoly fp = f.mod(p);
        const ResiduePoly g = weilforge::gcd(fp, fp.derivative());
        if (g.degree() == 0) return true;
    }
    return false;
}

}  // namespace detail

/// True iff gcd(f, f') is constant.
inline bool is_squarefree(const IntPoly& f) {
    if (f.degree() < 1) return true;
    // deg gcd over Q is at most deg gcd mod p whenever p does not divide the
    // leading coefficient, so a trivial modular gcd certifies squarefreeness.
    if (detail::squarefree_mod_some_prime(f, 2)) return true;
    return gcd(f, f.derivative()).degree() == 0;
}

/// Primitive f / gcd(f, f') with positive leading coefficient.
inline IntPoly squarefree_part(const IntPoly& f) {
    if (f.is_zero()) throw error(errc::invalid_argument, "squarefree_part of the zero polynomial");
    if (f.degree() < 1) return IntPoly{1};
    const IntPoly pf = f.primitive_part();
    if (detail::squarefree_mod_some_prime(pf, 2)) return pf;
    const IntPoly g = gcd(pf, pf.derivative());
    if (g.degree() == 0) return pf;
    auto q = divide_exact(pf, g);
    if (!q) detail::internal_error("f / gcd(f, f') not exact");
    return q->primitive_part();
}

// ---------------------------------------------------------------------------
// Sturm sequences.

/// Unbounded endpoints are nullopt: nullopt as `lo` is -inf, as `hi` is +inf.
using Bound = std::optional<mpq_class>;

/// Sturm chain of a squarefree polynomial, each term scaled by a positive
/// rational so signs are those of the classical chain.
inline std::vector<IntPoly> sturm_sequence(const IntPoly& g) {
    std::vector<IntPoly> seq;
    seq.push_back(g.primitive_part());
    IntPoly d = g.derivative();
    if (d.is_zero()) return seq;
    seq.push_back(d.primitive_part());
    for (;;) {
        const IntPoly& a = seq[seq.size() - 2];
        const IntPoly& b = seq.back();
        IntPoly r = pseudo_remainder(a, b);
        if (r.is_zero()) break;
        const long e = a.degree() - b.degree() + 1;
        const bool flip = sgn(b.leading()) < 0 && (e % 2 != 0);
        // next = -rem(a, b) up to a positive factor
        std::vector<mpz_class> c = (flip ? r : -r).coeffs();
        const mpz_class cont = r.content();
        for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), cont.get_mpz_t());
        seq.emplace_back(std::move(c));
    }
    return seq;
}

namespace detail {

inline int sign_at_infinity(const IntPoly& f, bool positive) {
    const int s = sgn(f.leading());
    return (positive || f.degree() % 2 == 0) ? s : -s;
}

inline int sign_variations(const std::vector<int>& signs) {
    int count = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

inline int variations_at(const std::vector<IntPoly>& seq, const Bound& x, bool is_upper) {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const auto& f : seq) signs.push_back(x ? f.sign_at(*x) : sign_at_infinity(f, is_upper));
    return sign_variations(signs);
}

}  // namespace detail

/// Number of distinct real roots of squarefree g in (lo, hi].
inline unsigned sturm_count(const IntPoly& g, const Bound& lo = std::nullopt, const Bound& hi = std::nullopt) {
    if (g.is_zero()) throw error(errc::invalid_argument, "sturm_count of the zero polynomial");
    if (lo && hi && !(*lo < *hi)) throw error(errc::invalid_argument, "sturm_count requires lo < hi");
    if (!is_squarefree(g)) throw error(errc::not_squarefree, "sturm_count requires a squarefree polynomial: " + g.to_string());
    if (g.degree() < 1) return 0;
    const auto seq = sturm_sequence(g);
    const int v_lo = detail::variations_at(seq, lo, false);
    const int v_hi = detail::variations_at(seq, hi, true);
    return static_cast<unsigned>(v_lo - v_hi);
}

// ---------------------------------------------------------------------------
// Newton's identities and root-power transforms.

/// Power sums p_1..p_count of the roots of monic f (index 0 holds p_0 = deg f).
inline std::vector<mpz_class> newton_power_sums(const IntPoly& f, std::size_t count) {
    if (!f.is_monic() || f.degree() < 1) throw error(errc::not_monic, "power sums require a monic polynomial of degree >= 1");
    const std::size_t m = static_cast<std::size_t>(f.degree());
    // s[i] = coefficient of x^(m-i)
    std::vector<mpz_class> s(m + 1);
    for (std::size_t i = 0; i <= m; ++i) s[i] = f.coeffs()[m - i];
    std::vector<mpz_class> p(count + 1);
    p[0] = static_cast<unsigned long>(m);
    for (std::size_t k = 1; k <= count; ++k) {
        mpz_class acc = 0;
        const std::size_t top = std::min(k - 1, m);
        for (std::size_t i = 1; i <= top; ++i) mpz_addmul(acc.get_mpz_t(), s[i].get_mpz_t(), p[k - i].get_mpz_t());
        if (k <= m) acc += s[k] * static_cast<unsigned long>(k);
        p[k] = -acc;
    }
    return p;
}

/// Monic degree-m polynomial with the given power sums (sums[j] = p_j,
/// j = 1..m). Non-integral coefficients are an internal error.
inline IntPoly from_power_sums(const std::vector<mpz_class>& sums, std::size_t m) {
    if (sums.size() < m + 1) throw error(errc::invalid_argument, "not enough power sums");
    std::vector<mpz_class> S(m + 1);
    S[0] = 1;
    for (std::size_t k = 1; k <= m; ++k) {
        mpz_class acc = sums[k];
        for (std::size_t i = 1; i < k; ++i) mpz_addmul(acc.get_mpz_t(), S[i].get_mpz_t(), sums[k - i].get_mpz_t());
        if (!mpz_divisible_ui_p(acc.get_mpz_t(), static_cast<unsigned long>(k)))
            detail::internal_error("non-integral coefficient in inverse Newton identities");
        mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(k));
        S[k] = -acc;
    }
    std::vector<mpz_class> c(m + 1);
    for (std::size_t i = 0; i <= m; ++i) c[m - i] = S[i];
    return IntPoly(std::move(c));
}

/// Monic polynomial whose roots are the d-th powers of the roots of f
/// (with multiplicity).
inline IntPoly power_charpoly(const IntPoly& f, unsigned d) {
    if (d == 0) throw error(errc::invalid_argument, "power_charpoly requires d >= 1");
    if (!f.is_monic()) throw error(errc::not_monic, "power_charpoly requires a monic polynomial");
    if (d == 1) return f;
    const std::size_t m = static_cast<std::size_t>(f.degree());
    const auto p = newton_power_sums(f, m * d);
    std::vector<mpz_class> sums(m + 1);
    for (std::size_t j = 0; j <= m; ++j) sums[j] = p[j * d];
    return from_power_sums(sums, m);
}

// ---------------------------------------------------------------------------
// Irreducibility over the rationals.

namespace detail {

constexpr std::size_t kMaxIrreducibleDegree = 255;
using DegreeSet = std::bitset<kMaxIrreducibleDegree + 1>;

// Degrees of all sub-products of the factors in a pattern.
inline DegreeSet subset_sum_degrees(const FactorPattern& pat) {
    DegreeSet s;
    s[0] = true;
    for (unsigned d : pat.degrees) s |= s << d;
    return s;
}

// x -> x/lc scaled to a monic integer polynomial: F(x) = lc^(n-1) f(x/lc).
inline IntPoly monic_transform(const IntPoly& f) {
    if (f.is_monic()) return f;
    const std::size_t n = static_cast<std::size_t>(f.degree());
    const mpz_class& lc = f.leading();
    std::vector<mpz_class> c(n + 1);
    mpz_class lc_pow = 1;
    for (std::size_t i = n + 1; i-- > 0;) {
        // coefficient of x^i: f_i * lc^(n-1-i) for i < n, 1 for i = n
        if (i == n) {
            c[i] = 1;
            continue;
        }
        c[i] = f.coeffs()[i] * lc_pow;
        lc_pow *= lc;
    }
    return IntPoly(std::move(c));
}

inline IntPoly symmetric_mod(const IntPoly& a, const mpz_class& modulus) {
    std::vector<mpz_class> c = a.coeffs();
    const mpz_class half = modulus / 2;
    for (auto& v : c) {
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
        if (v > half) v -= modulus;
    }
    return IntPoly(std::move(c));
}

inline IntPoly lift_residue(const ResiduePoly& r) {
    std::vector<mpz_class> c;
    c.reserve(r.coeffs().size());
    for (u64 v : r.coeffs()) c.push_back(to_mpz(v));
    return IntPoly(std::move(c));
}

// Lifts the monic modular factor u of monic F (F = u*v mod p, gcd(u,v)=1)
// to a monic factor mod p^k, by linear Hensel steps.
inline IntPoly hensel_lift_factor(const IntPoly& F, const ResiduePoly& u0, unsigned k) {
    const u64 p = u0.modulus();
    const ResiduePoly v0 = F.mod(p) / u0;
    auto [g, s, t] = xgcd(u0, v0);
    if (!g.is_one()) internal_error("Hensel lifting on non-coprime factors");
    IntPoly u = lift_residue(u0);
    IntPoly v = lift_residue(v0);
    mpz_class pj = to_mpz(p);
    for (unsigned j = 1; j < k; ++j) {
        IntPoly e = F - u * v;
        std::vector<mpz_class> ec = e.coeffs();
        for (auto& c : ec) {
            if (!mpz_divisible_p(c.get_mpz_t(), pj.get_mpz_t())) internal_error("Hensel invariant violated");
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pj.get_mpz_t());
        }
        const ResiduePoly ebar = IntPoly(std::move(ec)).mod(p);
        const ResiduePoly du = (t * ebar) % u0;
        const ResiduePoly dv = (s * ebar) % v0;
        u = u + pj * lift_residue(du);
        v = v + pj * lift_residue(dv);
        pj *= to_mpz(p);
    }
    return u;
}

}  // namespace detail

/// Exact irreducibility in Q[x] for a nonzero polynomial of degree >= 1.
inline bool is_irreducible_over_rationals(const IntPoly& input) {
    if (input.is_zero() || input.degree() < 1)
        throw error(errc::invalid_degree, "irreducibility requires a polynomial of degree >= 1");
    if (input.degree() > static_cast<long>(detail::kMaxIrreducibleDegree))
        throw error(errc::too_large, "irreducibility test supports degree <= 255");
    const IntPoly f = input.primitive_part();
    if (f.degree() == 1) return true;
    if (!is_squarefree(f)) return false;
    const unsigned n = static_cast<unsigned>(f.degree());
    const IntPoly F = detail::monic_transform(f);

    // Modular sieve: each good prime restricts the possible degrees of a
    // rational factor to sub-sums of its factor-degree pattern.
    detail::DegreeSet possible;
    for (unsigned d = 1; d < n; ++d) possible[d] = true;
    u64 best_prime = 0;
    std::size_t best_count = SIZE_MAX;
    int good = 0;
    for (u64 p : primes_up_to(2000)) {
        const ResiduePoly Fp = F.mod(p);
        if (!weilforge::gcd(Fp, Fp.derivative()).is_one()) continue;
        const FactorPattern pat = factor_degree_pattern(Fp);
        if (pat.is_irreducible()) return true;
        possible &= detail::subset_sum_degrees(pat);
        if (possible.none()) return true;
        if (p != 2 && pat.degrees.size() < best_count) {
            best_count = pat.degrees.size();
            best_prime = p;
        }
        if (++good >= 10 && best_prime != 0) break;
    }
    if (best_prime == 0) detail::internal_error("no usable prime for a squarefree polynomial");

    // Recombination: a factor of degree <= n/2 is a product of lifted
    // modular factors, with coefficients bounded by 2^n * ||F||_2.
    const u64 p = best_prime;
    const auto factors = factor_squarefree(F.mod(p));
    mpz_class norm2 = 0;
    for (const auto& c : F.coeffs()) norm2 += c * c;
    mpz_class bound;
    mpz_sqrt(bound.get_mpz_t(), norm2.get_mpz_t());
    bound += 1;
    bound <<= n;
    const mpz_class target = 2 * bound;
    unsigned k = 1;
    mpz_class pk = to_mpz(p);
    while (pk <= target) {
        pk *= to_mpz(p);
        ++k;
    }
    std::vector<IntPoly> lifted;
    lifted.reserve(factors.size());
    for (const auto& u : factors) lifted.push_back(detail::hensel_lift_factor(F, u, k));

    const std::size_t r = lifted.size();
    std::vector<unsigned> deg(r);
    for (std::size_t i = 0; i < r; ++i) deg[i] = static_cast<unsigned>(lifted[i].degree());
    // Depth-first over subsets with total degree <= n/2.
    std::vector<std::size_t> chosen;
    bool found = false;
    auto dfs = [&](auto&& self, std::size_t start, unsigned total, const IntPoly& prod) -> void {
        if (found) return;
        if (total > 0 && possible[total]) {
            const IntPoly cand = detail::symmetric_mod(prod, pk);
            if (divide_exact(F, cand)) {
                found = true;
                return;
            }
        }
        for (std::size_t i = start; i < r && !found; ++i) {
            if (2 * (total + deg[i]) > n) continue;
            self(self, i + 1, total + deg[i], detail::symmetric_mod(prod * lifted[i], pk));
        }
    };
    dfs(dfs, 0, 0, IntPoly{1});
    return !found;
}

}  // namespace weilforge
