#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <type_traits>
#include <utility>

#include "zinbiel/errors.hpp"

namespace zinbiel {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Canonical text form "p" or "p/q" (q > 0, gcd-reduced by cpp_rational).
inline std::string format_rational(const Rational& x) {
    std::string s = numerator(x).str();
    if (denominator(x) != 1) {
        s += "/" + denominator(x).str();
    }
    return s;
}

/// Largest k with k^2 | m, found by small-prime trial division. Remaining
/// factor is square-checked once more so perfect squares always fold fully.
inline void extract_square_part(const Int& m, Int& square_root_part, Int& rest) {
    square_root_part = 1;
    rest = m;
    for (Int p = 2; p * p <= rest && p < 100000; ++p) {
        while (rest % (p * p) == 0) {
            rest /= p * p;
            square_root_part *= p;
        }
    }
    Int s = sqrt(rest);
    if (s * s == rest) {
        square_root_part *= s;
        rest = 1;
    }
}

/// True iff x is the square of a rational; the root (>= 0) is written to *root.
inline bool rational_square_root(const Rational& x, Rational* root = nullptr) {
    if (x < 0) return false;
    Int pn = sqrt(numerator(x));
    Int pd = sqrt(denominator(x));
    if (pn * pn != numerator(x) || pd * pd != denominator(x)) return false;
    if (root) *root = Rational(pn, pd);
    return true;
}

/// Exact scalar a + b*sqrt(r): a, b rational, r a positive non-square integer
/// radicand (r = 0 and b = 0 for plain rationals). A value context uses a
/// single radicand; mixing two different ones raises ExtensionMismatch.
class Scalar {
public:
    Scalar() = default;
    template <class T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
    Scalar(T v) : a_(static_cast<long long>(v)) {}   // NOLINT: implicit by design
    Scalar(const Int& v) : a_(v) {}                  // NOLINT
    Scalar(Rational v) : a_(std::move(v)) {}         // NOLINT
    Scalar(Rational a, Rational b, Rational r)
        : a_(std::move(a)), b_(std::move(b)), r_(std::move(r)) {
        normalize();
    }

    /// Exact square root of a non-negative rational; rational when x is a
    /// perfect square, otherwise a pure sqrt(r) multiple with integer radicand.
    static Scalar sqrt_of(const Rational& x) {
        if (x < 0) {
            throw NotRepresentable("square root of negative rational " + format_rational(x) +
                                   " is not representable with a positive radicand");
        }
        if (x == 0) return Scalar(0);
        // sqrt(p/q) = sqrt(p*q) / q
        Int m = numerator(x) * denominator(x);
        Int k, rest;
        extract_square_part(m, k, rest);
        if (rest == 1) return Scalar(Rational(k, denominator(x)));
        return Scalar(Rational(0), Rational(k, denominator(x)), Rational(rest));
    }

    const Rational& rational_part() const { return a_; }
    const Rational& extension_coeff() const { return b_; }
    const Rational& radicand() const { return r_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    /// Rational value of a pure rational scalar; throws on extension entries.
    const Rational& as_rational() const {
        if (!is_rational()) {
            throw ExtensionMismatch("scalar " + str() + " is not rational");
        }
        return a_;
    }

    Scalar operator-() const {
        Scalar out;
        out.a_ = -a_;
        out.b_ = -b_;
        out.r_ = r_;
        return out;
    }

    Scalar& operator+=(const Scalar& o) {
        Rational r = common_radicand(o);
        a_ += o.a_;
        b_ += o.b_;
        r_ = std::move(r);
        if (b_ == 0) r_ = 0;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) { return *this += -o; }

    Scalar& operator*=(const Scalar& o) {
        Rational r = common_radicand(o);
        Rational a = a_ * o.a_ + b_ * o.b_ * r;
        Rational b = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(a);
        b_ = std::move(b);
        r_ = std::move(r);
        if (b_ == 0) r_ = 0;
        return *this;
    }

    Scalar inverse() const {
        if (is_zero()) throw DivisionByZero();
        if (is_rational()) {
            Scalar out;
            out.a_ = Rational(denominator(a_), numerator(a_));
            return out;
        }
        // 1/(a + b sqrt r) = (a - b sqrt r)/(a^2 - b^2 r); the norm is nonzero
        // because r is not a rational square.
        Rational norm = a_ * a_ - b_ * b_ * r_;
        Scalar out;
        out.a_ = a_ / norm;
        out.b_ = -b_ / norm;
        out.r_ = r_;
        return out;
    }

    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

    friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
    friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
    friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
    friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.r_ == y.r_);
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    std::string str() const {
        if (is_rational()) return format_rational(a_);
        std::string root = "sqrt(" + format_rational(r_) + ")";
        std::string ext;
        if (b_ == 1) {
            ext = root;
        } else if (b_ == -1) {
            ext = "-" + root;
        } else {
            ext = format_rational(b_) + "*" + root;
        }
        if (a_ == 0) return ext;
        if (b_ > 0) return format_rational(a_) + "+" + ext;
        return format_rational(a_) + ext;
    }

private:
    // Rewrites the radicand as a positive non-square integer and folds
    // degenerate extensions back into the rational part.
    void normalize() {
        if (b_ == 0 || r_ == 0) {
            b_ = 0;
            r_ = 0;
            return;
        }
        if (r_ < 0) {
            throw NotRepresentable("negative radicand " + format_rational(r_));
        }
        if (denominator(r_) != 1) {
            // b sqrt(p/q) = (b/q) sqrt(p q)
            b_ /= Rational(denominator(r_));
            r_ = Rational(numerator(r_) * denominator(r_));
        }
        Int k, rest;
        extract_square_part(numerator(r_), k, rest);
        if (rest == 1) {
            a_ += b_ * Rational(k);
            b_ = 0;
            r_ = 0;
            return;
        }
        b_ *= Rational(k);
        r_ = Rational(rest);
    }

    Rational common_radicand(const Scalar& o) const {
        if (b_ == 0) return o.r_;
        if (o.b_ == 0) return r_;
        if (r_ != o.r_) {
            throw ExtensionMismatch("cannot combine sqrt(" + format_rational(r_) +
                                    ") with sqrt(" + format_rational(o.r_) + ")");
        }
        return r_;
    }

    Rational a_ = 0;
    Rational b_ = 0;
    Rational r_ = 0;
};

} // namespace zinbiel
