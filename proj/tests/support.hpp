#pragma once

#include <random>
#include <vector>

#include "weilforge/weilforge.hpp"

namespace wftest {

using namespace weilforge;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240611);
    return gen;
}

inline i64 uniform(i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng()); }

/// Random monic integer polynomial of the given degree, coefficients in [-bound, bound].
inline IntPoly random_monic(unsigned degree, i64 bound) {
    std::vector<i64> c(degree + 1);
    for (unsigned i = 0; i < degree; ++i) c[i] = uniform(-bound, bound);
    c[degree] = 1;
    return IntPoly::from_i64(c);
}

inline IntPoly linear(i64 root) { return IntPoly::from_i64({-root, 1}); }

/// Product of (x - r) over the given integer roots.
inline IntPoly from_roots(const std::vector<i64>& roots) {
    IntPoly f{1};
    for (i64 r : roots) f = f * linear(r);
    return f;
}

inline bool naive_is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

/// Brute-force irreducibility over F_p: no monic factor of degree <= n/2.
inline bool naive_irreducible_mod_p(const ResiduePoly& f) {
    const unsigned n = static_cast<unsigned>(f.degree());
    const u64 p = f.modulus();
    for (unsigned d = 1; 2 * d <= n; ++d) {
        u64 count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (u64 idx = 0; idx < count; ++idx) {
            std::vector<u64> c(d + 1, 0);
            u64 rest = idx;
            for (unsigned i = 0; i < d; ++i) {
                c[i] = rest % p;
                rest /= p;
            }
            c[d] = 1;
            if ((f % ResiduePoly(p, c)).is_zero()) return false;
        }
    }
    return n >= 1;
}

}  // namespace wftest
