#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <string>

#include "infprob/errors.hpp"

namespace infprob {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Exact Gaussian rational p/q + i*r/s. Purely real pipelines carry a zero
// imaginary part; the commutator's factor i stays exact.
class Scalar {
public:
    Scalar() = default;
    Scalar(int v) : re_(v) {}                    // NOLINT(google-explicit-constructor)
    Scalar(long long v) : re_(v) {}              // NOLINT(google-explicit-constructor)
    Scalar(Rat re) : re_(std::move(re)) {}       // NOLINT(google-explicit-constructor)
    Scalar(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar i() { return Scalar(Rat(0), Rat(1)); }

    const Rat& real() const { return re_; }
    const Rat& imag() const { return im_; }
    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    Scalar& operator+=(const Scalar& o) { re_ += o.re_; im_ += o.im_; return *this; }
    Scalar& operator-=(const Scalar& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    Scalar& operator*=(const Scalar& o) {
        Rat re = re_ * o.re_ - im_ * o.im_;
        im_ = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        Rat n = o.re_ * o.re_ + o.im_ * o.im_;
        if (n == 0) throw PreconditionError("division by zero scalar");
        Rat re = (re_ * o.re_ + im_ * o.im_) / n;
        im_ = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(re);
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend Scalar operator-(const Scalar& a) { return Scalar(-a.re_, -a.im_); }
    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar pow(long long e) const;
    double to_double() const;

    // Canonical rendering: "p/q" (q omitted when 1); complex values as
    // "p/q+r/si". parse() accepts the same forms.
    std::string str() const;
    static Scalar parse(const std::string& text);

private:
    Rat re_{0};
    Rat im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

std::string rat_str(const Rat& r);
Rat rat_parse(const std::string& text);

// Exact element p + q*sqrt(s) of a real quadratic field, with square-free
// integer s > 1 (s = 1 and q = 0 for plain rationals). Used for atom data
// that genuinely needs a root; arithmetic stays inside one field.
class Quad {
public:
    Quad() = default;
    Quad(int v) : p_(v) {}          // NOLINT(google-explicit-constructor)
    Quad(Rat p) : p_(std::move(p)) {} // NOLINT(google-explicit-constructor)
    Quad(Rat p, Rat q, Int s);

    // sqrt of a nonnegative rational, with the square part extracted.
    static Quad sqrt_of(const Rat& x);

    const Rat& p() const { return p_; }
    const Rat& q() const { return q_; }
    const Int& s() const { return s_; }

    bool is_zero() const { return p_ == 0 && q_ == 0; }
    bool is_rational() const { return q_ == 0; }
    Rat rational_value() const;
    Quad conjugate() const { return Quad(p_, -q_, s_); }
    double to_double() const;

    Quad& operator+=(const Quad& o);
    Quad& operator-=(const Quad& o);
    Quad& operator*=(const Quad& o);
    Quad& operator/=(const Quad& o);
    friend Quad operator+(Quad a, const Quad& b) { return a += b; }
    friend Quad operator-(Quad a, const Quad& b) { return a -= b; }
    friend Quad operator*(Quad a, const Quad& b) { return a *= b; }
    friend Quad operator/(Quad a, const Quad& b) { return a /= b; }
    friend Quad operator-(const Quad& a) { return Quad(-a.p_, -a.q_, a.s_); }
    friend bool operator==(const Quad& a, const Quad& b) {
        return a.p_ == b.p_ && a.q_ == b.q_ && a.s_ == b.s_;
    }
    friend bool operator!=(const Quad& a, const Quad& b) { return !(a == b); }

    Quad pow(long long e) const;
    std::string str() const;

private:
    void align(const Quad& o); // adopt o's field when this is rational
    Rat p_{0};
    Rat q_{0};
    Int s_{1};
};

std::ostream& operator<<(std::ostream& os, const Quad& q);

} // namespace infprob
