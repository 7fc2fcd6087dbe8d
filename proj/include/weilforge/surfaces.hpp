#pragma once

// Abelian surfaces: f = x^4 + a x^3 + b x^2 + a q x + q^2.
//
// All predicates below are exact integer tests. Square roots of q never
// appear; inequalities such as b + 2q >= 2|a| sqrt(q) are squared after
// checking signs.

#include <array>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <gmpxx.h>

#include "weilforge/asymptotics.hpp"
#include "weilforge/error.hpp"
#include "weilforge/intpoly.hpp"
#include "weilforge/numth.hpp"
#include "weilforge/weilcore.hpp"

namespace weilforge {

struct SurfaceParams {
    i64 a = 0;
    i64 b = 0;
    PrimePower q;
};

enum class SurfaceClass { absolutely_simple, splits_quadratic, splits_cubic, splits_quartic, splits_sextic };

/// Degree of the extension over which the surface splits; 0 when absolutely simple.
constexpr unsigned splitting_degree(SurfaceClass c) {
    switch (c) {
    case SurfaceClass::absolutely_simple: return 0;
    case SurfaceClass::splits_quadratic: return 2;
    case SurfaceClass::splits_cubic: return 3;
    case SurfaceClass::splits_quartic: return 4;
    case SurfaceClass::splits_sextic: return 6;
    }
    return 0;
}

constexpr const char* class_name(SurfaceClass c) {
    return c == SurfaceClass::absolutely_simple ? "abs_simple" : "splits";
}

inline IntPoly surface_poly(i64 a, i64 b, u64 q) {
    const mpz_class qz = to_mpz(q);
    return IntPoly(std::vector<mpz_class>{qz * qz, to_mpz(a) * qz, to_mpz(b), to_mpz(a), 1});
}

inline IntPoly surface_poly(const SurfaceParams& s) { return surface_poly(s.a, s.b, s.q.q); }

namespace detail {

constexpr u64 kSurfaceMaxQ = u64{1} << 40;

inline void check_surface_q(const PrimePower& q) {
    if (q.q > kSurfaceMaxQ) throw error(errc::out_of_range, "surface routines support q <= 2^40");
}

}  // namespace detail

/// The real companion x^2 + a x + (b - 2q) has both roots in [-2 sqrt q, 2 sqrt q]:
/// discriminant a^2 - 4b + 8q >= 0, vertex |a|/2 <= 2 sqrt q, and
/// g(+-2 sqrt q) >= 0, i.e. b + 2q >= 2|a| sqrt q.
inline bool is_surface_weil(i64 a, i64 b, const PrimePower& q) {
    detail::check_surface_q(q);
    const i128 Q = static_cast<i128>(q.q);
    const i128 A = a;
    if (A * A > 16 * Q) return false;   // |a| <= 4 sqrt q < 2^23 from here on
    const i128 B = b;
    if (4 * B > A * A + 8 * Q) return false;
    if (B + 2 * Q < 0) return false;
    return (B + 2 * Q) * (B + 2 * Q) >= 4 * A * A * Q;
}

inline bool is_surface_ordinary(i64 b, const PrimePower& q) {
    const i64 p = static_cast<i64>(q.p);
    return b % p != 0;
}

/// Irreducibility over Q of a Weil quartic with the surface shape. The
/// roots lie on |x| = sqrt q, so a rational quadratic factor either
/// collects a conjugate pair pi, q/pi (then g is reducible, i.e. the
/// discriminant a^2 - 4b + 8q is a square), or consists of the real roots
/// +-sqrt(q), which forces a = 0 and b = -2q.
inline bool is_surface_irreducible(i64 a, i64 b, const PrimePower& q) {
    const i128 Q = static_cast<i128>(q.q);
    const i128 disc = static_cast<i128>(a) * a - 4 * static_cast<i128>(b) + 8 * Q;
    if (is_square(disc)) return false;
    if (a == 0 && is_square(-(static_cast<i128>(b) + 2 * Q))) return false;
    return true;
}

/// Classification without precondition checks (caller guarantees a simple
/// ordinary Weil polynomial).
inline SurfaceClass classify_surface_unchecked(i64 a, i64 b, const PrimePower& q) {
    const i128 A2 = static_cast<i128>(a) * a;
    const i128 B = b;
    const i128 Q = static_cast<i128>(q.q);
    if (a == 0) return SurfaceClass::splits_quadratic;
    if (A2 == Q + B) return SurfaceClass::splits_cubic;
    if (A2 == 2 * B) return SurfaceClass::splits_quartic;
    if (A2 == 3 * B - 3 * Q) return SurfaceClass::splits_sextic;
    return SurfaceClass::absolutely_simple;
}

inline SurfaceClass classify_surface(const SurfaceParams& s) {
    if (!is_surface_weil(s.a, s.b, s.q))
        throw error(errc::not_weil, "(a, b) = (" + std::to_string(s.a) + ", " + std::to_string(s.b) + ") is not a Weil polynomial for q = " + std::to_string(s.q.q));
    if (!is_surface_ordinary(s.b, s.q))
        throw error(errc::not_ordinary, "b = " + std::to_string(s.b) + " is not coprime to q = " + std::to_string(s.q.q));
    if (!is_surface_irreducible(s.a, s.b, s.q))
        throw error(errc::not_simple, "x^4 + a x^3 + b x^2 + a q x + q^2 is reducible for (a, b) = (" + std::to_string(s.a) + ", " + std::to_string(s.b) + ")");
    return classify_surface_unchecked(s.a, s.b, s.q);
}

/// E = #{t : t^2 < 4q, gcd(t, q) = 1}.
inline u64 count_ordinary_elliptic(const PrimePower& q) {
    detail::check_surface_q(q);
    u64 t = isqrt(4 * q.q);
    if (t * t == 4 * q.q) --t;  // strict inequality
    // t ranges over [-t, t]; drop multiples of p (including 0)
    const u64 multiples = t / q.p;
    return 2 * (t - multiples);
}

/// Largest |a| that can occur: a^2 <= 16 q.
inline i64 surface_a_bound(const PrimePower& q) {
    detail::check_surface_q(q);
    return static_cast<i64>(isqrt(16 * q.q));
}

/// b-range [lo, hi] of Weil polynomials for a given a:
/// lo = ceil(2|a| sqrt q) - 2q, hi = floor(a^2/4) + 2q.
inline std::pair<i64, i64> surface_b_range(i64 a, const PrimePower& q) {
    const u64 A = static_cast<u64>(a < 0 ? -a : a);
    const u64 four_a2q = 4 * A * A * q.q;
    u64 r = isqrt(four_a2q);
    if (r * r < four_a2q) ++r;
    const i64 Q = static_cast<i64>(q.q);
    return {static_cast<i64>(r) - 2 * Q, static_cast<i64>(A * A / 4) + 2 * Q};
}

/// Calls visit(a, b) for every ordinary simple surface isogeny class with
/// a_lo <= a <= a_hi, in increasing (a, b) order.
template <class Visit>
void enumerate_ordinary_simple_surfaces(const PrimePower& q, i64 a_lo, i64 a_hi, Visit&& visit) {
    const i64 bound = surface_a_bound(q);
    a_lo = std::max(a_lo, -bound);
    a_hi = std::min(a_hi, bound);
    const i64 p = static_cast<i64>(q.p);
    for (i64 a = a_lo; a <= a_hi; ++a) {
        if (static_cast<i128>(a) * a > 16 * static_cast<i128>(q.q)) continue;
        const auto [lo, hi] = surface_b_range(a, q);
        for (i64 b = lo; b <= hi; ++b) {
            if (b % p == 0) continue;
            if (!is_surface_irreducible(a, b, q)) continue;
            visit(a, b);
        }
    }
}

template <class Visit>
void enumerate_ordinary_simple_surfaces(const PrimePower& q, Visit&& visit) {
    const i64 bound = surface_a_bound(q);
    enumerate_ordinary_simple_surfaces(q, -bound, bound, std::forward<Visit>(visit));
}

/// Counts over a range of a; partial tallies merge by addition.
struct SurfaceTally {
    u64 simple_ordinary = 0;
    u64 abs_simple_ordinary = 0;
    std::array<u64, 7> split_by_degree{};  // indexed by 2, 3, 4, 6
    u64 non_abs_simple_nonzero_a = 0;

    void add(i64 a, SurfaceClass c) {
        ++simple_ordinary;
        const unsigned d = splitting_degree(c);
        if (d == 0) {
            ++abs_simple_ordinary;
        } else {
            ++split_by_degree[d];
            if (a != 0) ++non_abs_simple_nonzero_a;
        }
    }

    SurfaceTally& operator+=(const SurfaceTally& o) {
        simple_ordinary += o.simple_ordinary;
        abs_simple_ordinary += o.abs_simple_ordinary;
        for (std::size_t i = 0; i < split_by_degree.size(); ++i) split_by_degree[i] += o.split_by_degree[i];
        non_abs_simple_nonzero_a += o.non_abs_simple_nonzero_a;
        return *this;
    }

    friend bool operator==(const SurfaceTally&, const SurfaceTally&) = default;
};

inline SurfaceTally surface_tally(const PrimePower& q, i64 a_lo, i64 a_hi) {
    SurfaceTally t;
    enumerate_ordinary_simple_surfaces(q, a_lo, a_hi, [&](i64 a, i64 b) { t.add(a, classify_surface_unchecked(a, b, q)); });
    return t;
}

/// An integer count compared with a bound u + v sqrt(q).
struct BoundCheck {
    Surd bound;
    bool positive = false;   // bound > 0
    bool satisfied = false;  // the inequality named by the field holds
};

struct SurfaceCensus {
    PrimePower q;
    u64 elliptic_ordinary = 0;
    SurfaceTally tally;
    mpz_class reducible_ordinary;  // E(E+1)/2
    SurfaceBounds bounds;
    BoundCheck simple_exceeds_lower;      // O_simple > O_simple_lower
    BoundCheck abs_simple_exceeds_lower;  // O_abs > O_abs_simple_lower
    BoundCheck ordinary_below_upper;      // E(E+1)/2 + O_simple <= I_upper
    bool non_abs_simple_within_15_sqrt_q = false;  // count^2 <= 225 q
    bool elliptic_within_4_sqrt_q = false;         // E^2 <= 16 q
};

/// Evaluates the bound comparisons for a finished tally.
inline SurfaceCensus finish_census(const PrimePower& q, const SurfaceTally& tally) {
    SurfaceCensus c;
    c.q = q;
    c.tally = tally;
    c.elliptic_ordinary = count_ordinary_elliptic(q);
    const mpz_class E = to_mpz(c.elliptic_ordinary);
    c.reducible_ordinary = E * (E + 1) / 2;
    c.bounds = surface_bounds(q);
    const mpz_class qz = to_mpz(q.q);
    auto count = [&](const mpz_class& v) { return Surd(qz, mpq_class(v), 0); };

    c.simple_exceeds_lower.bound = c.bounds.o_simple_lower;
    c.simple_exceeds_lower.positive = c.bounds.o_simple_lower.sign() > 0;
    c.simple_exceeds_lower.satisfied = c.bounds.o_simple_lower < count(to_mpz(tally.simple_ordinary));

    c.abs_simple_exceeds_lower.bound = c.bounds.o_abs_simple_lower;
    c.abs_simple_exceeds_lower.positive = c.bounds.o_abs_simple_lower.sign() > 0;
    c.abs_simple_exceeds_lower.satisfied = c.bounds.o_abs_simple_lower < count(to_mpz(tally.abs_simple_ordinary));

    c.ordinary_below_upper.bound = c.bounds.i_upper;
    c.ordinary_below_upper.positive = c.bounds.i_upper.sign() > 0;
    c.ordinary_below_upper.satisfied = !(c.bounds.i_upper < count(c.reducible_ordinary + to_mpz(tally.simple_ordinary)));

    const mpz_class nonabs = to_mpz(tally.non_abs_simple_nonzero_a);
    c.non_abs_simple_within_15_sqrt_q = nonabs * nonabs <= 225 * qz;
    c.elliptic_within_4_sqrt_q = E * E <= 16 * qz;
    return c;
}

/// Splits [-A, A] into `parts` contiguous a-intervals (part i of parts).
inline std::pair<i64, i64> census_partition(const PrimePower& q, unsigned parts, unsigned i) {
    if (parts == 0 || i >= parts) throw error(errc::invalid_argument, "bad census partition index");
    const i64 bound = surface_a_bound(q);
    const i64 width = 2 * bound + 1;
    const i64 lo = -bound + width * static_cast<i64>(i) / static_cast<i64>(parts);
    const i64 hi = -bound + width * static_cast<i64>(i + 1) / static_cast<i64>(parts) - 1;
    return {lo, hi};
}

/// Full census, partitions evaluated on up to `jobs` threads. The result is
/// independent of `jobs`.
inline SurfaceCensus surface_census(const PrimePower& q, unsigned jobs = 1) {
    constexpr unsigned kParts = 64;
    std::vector<SurfaceTally> partial(kParts);
    jobs = std::max(1u, std::min(jobs, kParts));
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w]() {
            for (unsigned i = w; i < kParts; i += jobs) {
                const auto [lo, hi] = census_partition(q, kParts, i);
                partial[i] = surface_tally(q, lo, hi);
            }
        });
    }
    for (auto& t : workers) t.join();
    SurfaceTally total;
    for (const auto& t : partial) total += t;
    return finish_census(q, total);
}

}  // namespace weilforge
