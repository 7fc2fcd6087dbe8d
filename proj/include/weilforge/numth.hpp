#pragma once

// Elementary number theory on machine integers: primality, prime-power
// recognition, Euler phi, Moebius, and a cached prime table.

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "weilforge/error.hpp"

namespace weilforge {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// q = p^e with p prime.
struct PrimePower {
    u64 q = 0;
    u64 p = 0;
    unsigned e = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

inline mpz_class to_mpz(u64 v) {
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
    return z;
}

inline mpz_class to_mpz(i64 v) {
    mpz_class z = to_mpz(static_cast<u64>(v < 0 ? -static_cast<i128>(v) : v));
    return v < 0 ? mpz_class(-z) : z;
}

namespace detail {

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

inline bool miller_rabin_witness(u64 n, u64 a, u64 d, int r) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace detail

/// Deterministic for every 64-bit input (first twelve primes as witnesses).
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : small) {
        if (!detail::miller_rabin_witness(n, a, d, r)) return false;
    }
    return true;
}

/// floor(sqrt(n)).
inline u64 isqrt(u64 n) {
    if (n == 0) return 0;
    u64 x = static_cast<u64>(__builtin_sqrtl(static_cast<long double>(n)));
    while (static_cast<u128>(x) * x > n) --x;
    while (static_cast<u128>(x + 1) * (x + 1) <= n) ++x;
    return x;
}

/// floor(sqrt(n)) for 128-bit n (n >= 0).
inline u128 isqrt128(u128 n) {
    if (n == 0) return 0;
    u128 x = static_cast<u128>(__builtin_sqrtl(static_cast<long double>(n)));
    while (x * x > n) --x;
    while ((x + 1) * (x + 1) <= n) ++x;
    return x;
}

inline bool is_square(i128 n) {
    if (n < 0) return false;
    const u128 r = isqrt128(static_cast<u128>(n));
    return r * r == static_cast<u128>(n);
}

/// floor(n^(1/k)) for k >= 1.
inline u64 iroot(u64 n, unsigned k) {
    if (k == 1 || n < 2) return n;
    auto pow_le = [n, k](u64 x) {
        u128 acc = 1;
        for (unsigned i = 0; i < k; ++i) {
            acc *= x;
            if (acc > n) return false;
        }
        return true;
    };
    u64 lo = 1;
    u64 hi = std::min<u64>(n, u64{1} << (64 / k + 1));
    while (lo < hi) {
        const u64 mid = lo + (hi - lo + 1) / 2;
        if (pow_le(mid)) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

inline PrimePower parse_prime_power(u64 q) {
    if (q < 2) throw error(errc::not_a_prime_power, std::to_string(q) + " is not a prime power");
    if (is_prime(q)) return {q, q, 1};
    for (unsigned e = 63; e >= 2; --e) {
        const u64 r = iroot(q, e);
        if (r < 2) continue;
        u128 acc = 1;
        for (unsigned i = 0; i < e; ++i) acc *= r;
        if (acc == q && is_prime(r)) return {q, r, e};
    }
    throw error(errc::not_a_prime_power, std::to_string(q) + " is not a prime power");
}

/// Arbitrary-precision entry point; anything at or above 2^64 is rejected.
inline PrimePower parse_prime_power(const mpz_class& q) {
    if (sgn(q) <= 0) throw error(errc::not_a_prime_power, q.get_str() + " is not a prime power");
    if (mpz_sizeinbase(q.get_mpz_t(), 2) > 64)
        throw error(errc::out_of_range, "q = " + q.get_str() + " exceeds 2^64");
    u64 v = 0;
    mpz_export(&v, nullptr, -1, sizeof v, 0, 0, q.get_mpz_t());
    return parse_prime_power(v);
}

namespace detail {

struct Factorization {
    std::vector<std::pair<u64, unsigned>> factors;
};

inline Factorization trial_factor(u64 n) {
    Factorization out;
    auto take = [&](u64 p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.factors.emplace_back(p, e);
    };
    take(2);
    take(3);
    for (u64 p = 5; p <= n / p; p += 6) {
        take(p);
        take(p + 2);
    }
    if (n > 1) out.factors.emplace_back(n, 1);
    return out;
}

}  // namespace detail

inline u64 euler_phi(u64 n) {
    if (n == 0) throw error(errc::invalid_argument, "euler_phi(0)");
    u64 result = n;
    for (auto [p, e] : detail::trial_factor(n).factors) result = result / p * (p - 1);
    return result;
}

inline int moebius(u64 n) {
    if (n == 0) throw error(errc::invalid_argument, "moebius(0)");
    int sign = 1;
    for (auto [p, e] : detail::trial_factor(n).factors) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

inline std::vector<u64> divisors(u64 n) {
    std::vector<u64> out{1};
    for (auto [p, e] : detail::trial_factor(n).factors) {
        const std::size_t base = out.size();
        u64 pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

// Incrementally extended segmented sieve shared by the whole process.
class PrimeTable {
public:
    static PrimeTable& instance() {
        static PrimeTable table;
        return table;
    }

    std::vector<u64> first(std::size_t k) {
        std::lock_guard lock(mutex_);
        while (primes_.size() < k) extend();
        return {primes_.begin(), primes_.begin() + static_cast<std::ptrdiff_t>(k)};
    }

    std::vector<u64> up_to(u64 bound) {
        std::lock_guard lock(mutex_);
        while (limit_ < bound) extend();
        auto end = std::upper_bound(primes_.begin(), primes_.end(), bound);
        return {primes_.begin(), end};
    }

private:
    void extend() {
        const u64 lo = limit_ + 1;
        const u64 hi = std::max<u64>(2 * limit_, 1024);
        std::vector<bool> composite(hi - lo + 1, false);
        for (u64 p = 2; p * p <= hi; ++p) {
            if (!is_prime(p)) continue;
            u64 start = std::max(p * p, (lo + p - 1) / p * p);
            for (u64 m = start; m <= hi; m += p) composite[m - lo] = true;
        }
        for (u64 v = std::max<u64>(lo, 2); v <= hi; ++v) {
            if (!composite[v - lo]) primes_.push_back(v);
        }
        limit_ = hi;
    }

    std::mutex mutex_;
    std::vector<u64> primes_;
    u64 limit_ = 1;
};

}  // namespace detail

inline std::vector<u64> first_primes(std::size_t k) {
    if (k == 0) throw error(errc::invalid_argument, "first_primes requires k >= 1");
    return detail::PrimeTable::instance().first(k);
}

inline std::vector<u64> primes_up_to(u64 bound) { return detail::PrimeTable::instance().up_to(bound); }

/// Product of the first k primes.
inline mpz_class primorial(std::size_t k) {
    mpz_class m = 1;
    for (u64 p : first_primes(k)) m *= to_mpz(p);
    return m;
}

/// All prime powers q with lo <= q <= hi, ascending.
inline std::vector<PrimePower> prime_powers_in(u64 lo, u64 hi) {
    std::vector<PrimePower> out;
    for (u64 p : primes_up_to(hi)) {
        u64 q = p;
        unsigned e = 1;
        for (;;) {
            if (q >= lo) out.push_back({q, p, e});
            if (q > hi / p) break;
            q *= p;
            ++e;
        }
    }
    std::sort(out.begin(), out.end(), [](const PrimePower& x, const PrimePower& y) { return x.q < y.q; });
    return out;
}

}  // namespace weilforge
