#pragma once

// Explicit construction of absolutely simple ordinary Weil polynomials in
// every dimension n >= 2 from modified Chebyshev polynomials.

#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "weilforge/error.hpp"
#include "weilforge/intpoly.hpp"
#include "weilforge/modpoly.hpp"
#include "weilforge/numth.hpp"
#include "weilforge/surd.hpp"
#include "weilforge/weilcore.hpp"

namespace weilforge {

/// Exported T_i: T_0 = 1, T_1 = x, T_{i+1} = x T_i - 2 T_{i-1}, where the
/// recurrence starts from 2 (the value 2 * t_0) rather than the exported T_0.
inline IntPoly chebyshev_T(unsigned i) {
    if (i == 0) return IntPoly{1};
    IntPoly prev{2};
    IntPoly cur{0, 1};
    const IntPoly x{0, 1};
    for (unsigned k = 1; k < i; ++k) {
        IntPoly next = x * cur - mpz_class(2) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Coefficients (ascending) of 2 * 2^(i/2) * t_i(x / 2^(3/2)) in Q(sqrt 2),
/// t_i the classical Chebyshev polynomial.
inline std::vector<Surd> chebyshev_T_from_definition(unsigned i) {
    std::vector<mpz_class> prev{1}, cur{0, 1};
    if (i == 0) cur = prev;
    for (unsigned k = 1; k < i; ++k) {
        std::vector<mpz_class> next(cur.size() + 1);
        for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += 2 * cur[j];
        for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    std::vector<Surd> out;
    for (std::size_t k = 0; k < cur.size(); ++k) {
        // weight 2^(1 + (i - 3k)/2) = 2^(e/2) with e = 2 + i - 3k
        const long e = 2 + static_cast<long>(i) - 3 * static_cast<long>(k);
        const long half = (e >= 0 ? e : e - 1) / 2;  // floor(e/2)
        mpq_class w = 1;
        if (half >= 0) w = mpq_class(mpz_class(1) << static_cast<unsigned>(half));
        else w = mpq_class(mpz_class(1), mpz_class(1) << static_cast<unsigned>(-half));
        const bool odd = (e - 2 * half) == 1;
        out.emplace_back(mpz_class(2), odd ? mpq_class(0) : w * mpq_class(cur[k]), odd ? w * mpq_class(cur[k]) : mpq_class(0));
    }
    return out;
}

/// Sum_{i=7}^{n-1} |a_i| / 2^(i/2) + |a_n| / (2 * 2^(n/2)) < 1, exactly.
/// `weights` holds a_7..a_n.
inline bool robinson_check(const std::vector<i64>& weights) {
    if (weights.empty()) return true;
    const unsigned n = static_cast<unsigned>(6 + weights.size());
    Surd sum(mpz_class(2));
    for (unsigned i = 7; i <= n; ++i) {
        const i64 a = weights[i - 7];
        const mpz_class mag = to_mpz(a < 0 ? -a : a);
        // 1/2^(i/2): 2^(-i/2) for even i, 2^(-(i+1)/2) * sqrt 2 for odd i
        const unsigned shift = (i + 1) / 2;
        mpq_class w(mpz_class(1), mpz_class(1) << shift);
        if (i == n) w /= 2;
        sum = sum + (i % 2 == 0 ? Surd(mpz_class(2), w * mpq_class(mag), 0) : Surd(mpz_class(2), 0, w * mpq_class(mag)));
    }
    return (sum - Surd(mpz_class(2), 1, 0)).sign() < 0;
}

// ---------------------------------------------------------------------------
// Stored base polynomials.

namespace detail {

inline IntPoly sparse_poly(std::initializer_list<std::pair<unsigned, long>> terms) {
    unsigned top = 0;
    for (auto [e, c] : terms) top = std::max(top, e);
    std::vector<mpz_class> v(top + 1);
    for (auto [e, c] : terms) v[e] += c;
    return IntPoly(std::move(v));
}

}  // namespace detail

/// Table polynomial g of degree n for 3 <= n <= 9.
inline IntPoly table1_polynomial(unsigned n) {
    using detail::sparse_poly;
    switch (n) {
    case 3: return sparse_poly({{3, 1}, {1, -5}, {0, 1}});
    case 4: return sparse_poly({{4, 1}, {2, -6}, {1, -1}, {0, 1}});
    case 5: return sparse_poly({{5, 1}, {3, -10}, {2, 1}, {1, 20}, {0, 1}});
    case 6: return sparse_poly({{6, 1}, {4, -12}, {2, 34}, {1, 1}, {0, -1}});
    case 7: return sparse_poly({{7, 1}, {5, -14}, {3, 56}, {2, -2}, {1, -57}, {0, 1}});
    case 8: return sparse_poly({{8, 1}, {6, -16}, {4, 81}, {3, 1}, {2, -129}, {0, 1}});
    case 9: return sparse_poly({{9, 1}, {7, -18}, {5, 108}, {4, 1}, {3, -240}, {2, -9}, {1, 147}, {0, 1}});
    default: throw error(errc::invalid_degree, "stored g exists only for 3 <= n <= 9");
    }
}

struct BasePair {
    ResiduePoly g2;  // over F_2
    ResiduePoly g3;  // over F_3
};

/// Stored (g2, g3) for 10 <= n <= 18.
inline BasePair table2_pair(unsigned n) {
    using detail::sparse_poly;
    IntPoly g2, g3;
    switch (n) {
    case 10:
        g2 = sparse_poly({{10, 1}, {3, 1}, {0, 1}});
        g3 = sparse_poly({{10, 1}, {8, 1}, {6, -1}, {4, -1}, {2, 1}, {1, 1}, {0, 1}});
        break;
    case 11:
        g2 = sparse_poly({{11, 1}, {2, 1}, {0, 1}});
        g3 = sparse_poly({{11, 1}, {9, -1}, {7, -1}, {5, -1}, {0, 1}});
        break;
    case 12:
        g2 = sparse_poly({{12, 1}, {3, 1}, {0, 1}});
        g3 = sparse_poly({{12, 1}, {6, 1}, {2, -1}, {1, 1}, {0, 1}});
        break;
    case 13:
        g2 = sparse_poly({{13, 1}, {5, 1}, {2, 1}, {1, 1}, {0, 1}});
        g3 = sparse_poly({{13, 1}, {11, 1}, {9, -1}, {2, 1}, {0, 1}});
        break;
    case 14:
        g2 = sparse_poly({{14, 1}, {5, 1}, {0, 1}});
        g3 = sparse_poly({{14, 1}, {12, -1}, {10, -1}, {2, 1}, {1, 1}, {0, 1}});
        break;
    case 15:
        g2 = sparse_poly({{15, 1}, {1, 1}, {0, 1}});
        g3 = sparse_poly({{15, 1}, {9, -1}, {1, 1}, {0, 1}});
        break;
    case 16:
        g2 = sparse_poly({{16, 1}, {6, 1}, {2, 1}, {1, 1}, {0, 1}});
        g3 = sparse_poly({{16, 1}, {14, 1}, {12, -1}, {10, 1}, {2, 1}, {1, 1}, {0, -1}});
        break;
    case 17:
        g2 = sparse_poly({{17, 1}, {3, 1}, {0, 1}});
        g3 = sparse_poly({{17, 1}, {15, -1}, {13, -1}, {11, 1}, {3, 1}, {2, 1}, {0, 1}});
        break;
    case 18:
        g2 = sparse_poly({{18, 1}, {3, 1}, {0, 1}});
        g3 = sparse_poly({{18, 1}, {2, 1}, {1, 1}, {0, -1}});
        break;
    default: throw error(errc::invalid_degree, "stored (g2, g3) exist only for 10 <= n <= 18");
    }
    return {g2.mod(2), g3.mod(3)};
}

/// True iff the coefficients of x^(n-1)..x^(n-6) of r agree with T_n mod p.
inline bool matches_chebyshev_top(const ResiduePoly& r, unsigned n) {
    const ResiduePoly t = chebyshev_T(n).mod(r.modulus());
    if (r.degree() != static_cast<long>(n)) return false;
    for (unsigned k = 1; k <= 6 && k <= n; ++k) {
        if (r[n - k] != t[n - k]) return false;
    }
    return true;
}

/// Conditions on (g2, g3): g2 irreducible, g3 linear times irreducible with
/// nonzero constant term, both matching the top of T_n.
inline bool is_valid_base_pair(const BasePair& b, unsigned n) {
    return b.g2.modulus() == 2 && b.g3.modulus() == 3 && b.g2.is_monic() && b.g3.is_monic() &&
           matches_chebyshev_top(b.g2, n) && matches_chebyshev_top(b.g3, n) && is_irreducible_mod_p(b.g2) &&
           factor_degree_pattern(b.g3).is_linear_times_irreducible() && b.g3[0] != 0;
}

namespace detail {

inline ResiduePoly search_g2(unsigned n) {
    const unsigned free = n - 6;  // coefficients of x^0..x^(n-7)
    if (free >= 63) throw error(errc::too_large, "search space too large");
    const u64 total = u64{1} << free;
    std::vector<u64> c(n + 1, 0);
    c[n] = 1;
    for (u64 idx = 0; idx < total; ++idx) {
        for (unsigned j = 0; j < free; ++j) c[j] = (idx >> j) & 1;
        ResiduePoly r(2, c);
        if (is_irreducible_mod_p(r)) return r;
    }
    throw error(errc::search_exhausted, "no irreducible g2 of degree " + std::to_string(n));
}

inline ResiduePoly search_g3(unsigned n) {
    const ResiduePoly t = chebyshev_T(n).mod(3);
    // h monic of degree n-1 with (x - 1) h matching t in degrees n-1..n-6:
    // h_{n-2} = t_{n-1} + 1, h_{n-k-1} = t_{n-k} + h_{n-k}.
    std::vector<u64> h(n, 0);
    h[n - 1] = 1;
    for (unsigned k = 1; k <= 6; ++k) h[n - k - 1] = (t[n - k] + h[n - k]) % 3;
    const unsigned free = n - 7;  // h_0..h_{n-8}
    u64 total = 1;
    for (unsigned j = 0; j < free; ++j) {
        if (total > (u64{1} << 40)) throw error(errc::too_large, "search space too large");
        total *= 3;
    }
    const ResiduePoly x_minus_1(3, {2, 1});
    for (u64 idx = 0; idx < total; ++idx) {
        u64 rest = idx;
        for (unsigned j = 0; j < free; ++j) {
            h[j] = rest % 3;
            rest /= 3;
        }
        ResiduePoly hp(3, h);
        if (is_irreducible_mod_p(hp)) return x_minus_1 * hp;
    }
    throw error(errc::search_exhausted, "no admissible g3 of degree " + std::to_string(n));
}

inline std::optional<BasePair> read_cached_pair(const std::filesystem::path& file, unsigned n) {
    std::ifstream in(file);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        unsigned m = 0;
        std::string s2, s3;
        if (!(ls >> m >> s2 >> s3) || m != n) continue;
        try {
            BasePair b{IntPoly::parse(s2).mod(2), IntPoly::parse(s3).mod(3)};
            if (is_valid_base_pair(b, n)) return b;
        } catch (const error&) {
        }
    }
    return std::nullopt;
}

inline std::string residue_coeff_string(const ResiduePoly& r) {
    std::string s;
    for (std::size_t i = 0; i < r.coeffs().size(); ++i) {
        if (i) s += ',';
        s += std::to_string(r.coeffs()[i]);
    }
    return s;
}

}  // namespace detail

/// (g2, g3) for n >= 10: stored for n <= 18, otherwise the first hit of a
/// lexicographic search (low-degree coefficients varying fastest), reusing
/// and extending an on-disk cache when `cache_dir` is given.
inline BasePair base_pair(unsigned n, const std::optional<std::filesystem::path>& cache_dir = std::nullopt) {
    if (n < 10) throw error(errc::invalid_degree, "(g2, g3) are defined for n >= 10");
    if (n <= 18) return table2_pair(n);
    std::filesystem::path file;
    if (cache_dir) {
        file = *cache_dir / "base_polynomials.txt";
        if (auto hit = detail::read_cached_pair(file, n)) return *hit;
    }
    BasePair b{detail::search_g2(n), detail::search_g3(n)};
    if (!is_valid_base_pair(b, n)) detail::internal_error("searched base pair fails validation");
    if (cache_dir) {
        std::filesystem::create_directories(*cache_dir);
        std::ofstream out(file, std::ios::app);
        out << n << ' ' << detail::residue_coeff_string(b.g2) << ' ' << detail::residue_coeff_string(b.g3) << '\n';
    }
    return b;
}

struct Assembly {
    std::vector<i64> a;  // a_7..a_n
    IntPoly g;
};

/// g = T_n + sum_{i=7}^{n} a_i T_{n-i} with g = g2 mod 2, g = g3 mod 3 and
/// constant term coprime to q.
inline Assembly assemble_g(unsigned n, const BasePair& base, const PrimePower& q) {
    if (n < 10) throw error(errc::invalid_degree, "assemble_g requires n >= 10");
    if (!is_valid_base_pair(base, n)) throw error(errc::invalid_argument, "base pair does not satisfy the mod 2 / mod 3 conditions");
    std::vector<IntPoly> T(n + 1);
    for (unsigned i = 0; i <= n; ++i) T[i] = chebyshev_T(i);
    Assembly out;
    IntPoly g = T[n];
    for (unsigned i = 7; i <= n; ++i) {
        const unsigned deg = n - i;
        const long r2 = static_cast<long>((base.g2[deg] + 2 - mpz_fdiv_ui(g[deg].get_mpz_t(), 2)) % 2);
        const long r3 = static_cast<long>((base.g3[deg] + 3 - mpz_fdiv_ui(g[deg].get_mpz_t(), 3)) % 3);
        // the residue mod 6 with the given residues mod 2 and 3, shifted into {-2, ..., 3}
        long a = (3 * r2 + 4 * r3) % 6;
        if (a > 3) a -= 6;
        out.a.push_back(a);
        if (a != 0) g = g + mpz_class(a) * T[deg];
    }
    if (mpz_fdiv_ui(g[0].get_mpz_t(), q.p) == 0) {
        i64& an = out.a.back();
        const i64 shift = an >= 0 ? -6 : 6;
        an += shift;
        g = g + IntPoly::constant(to_mpz(shift));
    }
    out.g = std::move(g);
    return out;
}

// ---------------------------------------------------------------------------

/// Hypotheses (1)-(5) for g and f = x^n g(x + q/x):
/// (1) f is not x^(2n) + a x^n + q^n, (2) the roots of g are real of
/// absolute value < 2 sqrt(q), (3) gcd(g(0), q) = 1, (4) g is irreducible
/// modulo some prime p1, (5) g is linear times irreducible modulo some p2.
struct HypothesisCheck {
    std::array<bool, 5> flags{};
    u64 p1 = 0;
    u64 p2 = 0;

    bool all() const {
        for (bool b : flags) {
            if (!b) return false;
        }
        return true;
    }
    int first_failure() const {
        for (int k = 0; k < 5; ++k) {
            if (!flags[static_cast<std::size_t>(k)]) return k + 1;
        }
        return 0;
    }
};

inline HypothesisCheck check_hypotheses(const IntPoly& g, const IntPoly& f, const PrimePower& q, u64 prime_limit = 200) {
    HypothesisCheck h;
    const unsigned n = static_cast<unsigned>(g.degree());
    bool other = false;
    for (unsigned i = 1; i < 2 * n; ++i) {
        if (i != n && sgn(f[i]) != 0) other = true;
    }
    h.flags[0] = other;
    h.flags[1] = is_real_weil(g, q, RootInterval::open);
    h.flags[2] = mpz_fdiv_ui(g[0].get_mpz_t(), q.p) != 0;
    for (u64 p : primes_up_to(prime_limit)) {
        const FactorPattern pat = factor_degree_pattern(g.mod(p));
        if (h.p1 == 0 && pat.is_irreducible()) h.p1 = p;
        if (h.p2 == 0 && pat.is_linear_times_irreducible()) h.p2 = p;
        if (h.p1 && h.p2) break;
    }
    h.flags[3] = h.p1 != 0;
    h.flags[4] = h.p2 != 0;
    return h;
}

struct ConstructionReport {
    unsigned n = 0;
    PrimePower q;
    std::optional<BasePair> base;  // n >= 10 only
    std::vector<i64> a;            // a_7..a_n, n >= 10 only
    IntPoly g;
    IntPoly f;
    HypothesisCheck hypotheses;
    std::optional<SimplicityVerdict> verdict;  // computed only when all hypotheses hold

    bool success() const {
        return hypotheses.all() && verdict && verdict->kind == SimplicityVerdict::Kind::absolutely_simple;
    }
};

/// Runs the construction and every check without throwing on a failed
/// hypothesis.
inline ConstructionReport construction_report(unsigned n, const PrimePower& q,
                                              const std::optional<std::filesystem::path>& cache_dir = std::nullopt) {
    if (n < 2) throw error(errc::invalid_degree, "construction requires n >= 2");
    ConstructionReport r;
    r.n = n;
    r.q = q;
    if (n == 2) {
        r.g = IntPoly(std::vector<mpz_class>{1 - 2 * to_mpz(q.q), 1, 1});
    } else if (n <= 9) {
        r.g = table1_polynomial(n);
    } else {
        r.base = base_pair(n, cache_dir);
        Assembly as = assemble_g(n, *r.base, q);
        r.a = std::move(as.a);
        r.g = std::move(as.g);
    }
    r.f = real_to_weil(r.g, q).f;
    r.hypotheses = check_hypotheses(r.g, r.f, q);
    if (r.hypotheses.all()) r.verdict = absolute_simplicity(r.f, q);
    return r;
}

/// As construction_report, but a failed hypothesis raises hypothesis_failed
/// naming the hypothesis.
inline ConstructionReport construct_absolutely_simple(unsigned n, const PrimePower& q,
                                                      const std::optional<std::filesystem::path>& cache_dir = std::nullopt) {
    ConstructionReport r = construction_report(n, q, cache_dir);
    if (const int k = r.hypotheses.first_failure())
        throw error(errc::hypothesis_failed, "hypothesis " + std::to_string(k) + " failed for n = " + std::to_string(n) + ", q = " + std::to_string(q.q));
    if (!r.success())
        detail::internal_error("constructed polynomial is not absolutely simple");
    return r;
}

}  // namespace weilforge
