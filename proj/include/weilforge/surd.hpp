#pragma once

#include <cmath>
#include <string>

#include <gmpxx.h>

#include "weilforge/error.hpp"

namespace weilforge {

/// Exact element u + v*sqrt(d) of Q(sqrt d) for a fixed non-negative
/// integer radicand d (not required to be squarefree).
class Surd {
public:
    Surd() = default;
    explicit Surd(const mpz_class& radicand, const mpq_class& u = 0, const mpq_class& v = 0)
        : d_(radicand), u_(u), v_(v) {
        if (sgn(d_) < 0) throw error(errc::invalid_argument, "Surd radicand must be non-negative");
    }

    const mpz_class& radicand() const noexcept { return d_; }
    const mpq_class& rational_part() const noexcept { return u_; }
    const mpq_class& surd_part() const noexcept { return v_; }

    /// Sign of u + v sqrt(d), decided by comparing u^2 with v^2 d when the
    /// two parts have opposite signs.
    int sign() const {
        const int su = sgn(u_);
        const int sv = sgn(d_) == 0 ? 0 : sgn(v_);
        if (sv == 0) return su;
        if (su == 0 || su == sv) return sv;
        const mpq_class lhs = u_ * u_;
        const mpq_class rhs = v_ * v_ * mpq_class(d_);
        if (lhs == rhs) return 0;
        return lhs > rhs ? su : sv;
    }

    friend Surd operator+(const Surd& a, const Surd& b) {
        check_same(a, b);
        return Surd(a.d_, a.u_ + b.u_, a.v_ + b.v_);
    }
    friend Surd operator-(const Surd& a, const Surd& b) {
        check_same(a, b);
        return Surd(a.d_, a.u_ - b.u_, a.v_ - b.v_);
    }
    Surd operator-() const { return Surd(d_, -u_, -v_); }
    friend Surd operator*(const Surd& a, const Surd& b) {
        check_same(a, b);
        return Surd(a.d_, a.u_ * b.u_ + a.v_ * b.v_ * mpq_class(a.d_), a.u_ * b.v_ + a.v_ * b.u_);
    }
    friend Surd operator*(const mpq_class& s, const Surd& a) { return Surd(a.d_, s * a.u_, s * a.v_); }

    Surd abs() const { return sign() < 0 ? -*this : *this; }

    friend bool operator<(const Surd& a, const Surd& b) { return (a - b).sign() < 0; }
    friend bool operator==(const Surd& a, const Surd& b) { return (a - b).sign() == 0; }

    /// Floating-point approximation, for display only.
    double approx() const { return u_.get_d() + v_.get_d() * std::sqrt(d_.get_d()); }

    std::string to_string() const { return u_.get_str() + " + " + v_.get_str() + "*sqrt(" + d_.get_str() + ")"; }

private:
    static void check_same(const Surd& a, const Surd& b) {
        if (a.d_ != b.d_) throw error(errc::invalid_argument, "Surd arithmetic across different radicands");
    }

    mpz_class d_ = 0;
    mpq_class u_ = 0;
    mpq_class v_ = 0;
};

}  // namespace weilforge
