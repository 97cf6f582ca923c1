#include "infprob/scalar.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace infprob {

Scalar Scalar::pow(long long e) const {
    if (e < 0) return Scalar(1) / pow(-e);
    Scalar base = *this, acc = 1;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

double Scalar::to_double() const {
    return static_cast<double>(re_);
}

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

Rat rat_parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + text + "'");
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw ParseError("bad rational '" + text + "'");
    }
}

std::string Scalar::str() const {
    if (im_ == 0) return rat_str(re_);
    std::string out = rat_str(re_);
    if (im_ > 0) out += '+';
    out += rat_str(im_);
    out += 'i';
    return out;
}

Scalar Scalar::parse(const std::string& text) {
    if (text.empty()) throw ParseError("empty scalar");
    if (text.back() == 'i') {
        std::string body = text.substr(0, text.size() - 1);
        // split at the sign separating real and imaginary parts (skip index 0)
        for (size_t k = body.size(); k-- > 1;) {
            if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '/') {
                Rat re = rat_parse(body.substr(0, k));
                std::string im = body.substr(k);
                if (im == "+") im = "1";
                if (im == "-") im = "-1";
                return Scalar(re, rat_parse(im));
            }
        }
        if (body.empty() || body == "+") return Scalar(Rat(0), Rat(1));
        if (body == "-") return Scalar(Rat(0), Rat(-1));
        return Scalar(Rat(0), rat_parse(body));
    }
    return Scalar(rat_parse(text));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.str();
}

Quad::Quad(Rat p, Rat q, Int s) : p_(std::move(p)), q_(std::move(q)), s_(std::move(s)) {
    if (s_ < 1) throw PreconditionError("quadratic field radicand must be positive");
    if (q_ == 0) s_ = 1;
    if (s_ == 1) { // sqrt(1) = 1
        p_ += q_;
        q_ = 0;
    }
}

Quad Quad::sqrt_of(const Rat& x) {
    if (x < 0) throw PreconditionError("sqrt of negative rational");
    if (x == 0) return Quad();
    // sqrt(u/v) = sqrt(u*v)/v; pull out the largest square factor of u*v.
    Int uv = numerator(x) * denominator(x);
    Int square(1);
    for (Int d(2); d * d <= uv; ++d) {
        while (uv % (d * d) == 0) {
            uv /= d * d;
            square *= d;
        }
    }
    return Quad(Rat(0), Rat(square, denominator(x)), uv);
}

Rat Quad::rational_value() const {
    if (q_ != 0) throw PreconditionError("value is irrational");
    return p_;
}

double Quad::to_double() const {
    return static_cast<double>(p_) +
           static_cast<double>(q_) * std::sqrt(static_cast<double>(s_));
}

void Quad::align(const Quad& o) {
    if (o.q_ == 0 || s_ == o.s_) return;
    if (q_ == 0)
        s_ = o.s_;
    else
        throw PreconditionError("arithmetic across distinct quadratic fields");
}

Quad& Quad::operator+=(const Quad& o) {
    align(o);
    p_ += o.p_;
    q_ += o.q_;
    if (q_ == 0) s_ = 1;
    return *this;
}

Quad& Quad::operator-=(const Quad& o) {
    align(o);
    p_ -= o.p_;
    q_ -= o.q_;
    if (q_ == 0) s_ = 1;
    return *this;
}

Quad& Quad::operator*=(const Quad& o) {
    align(o);
    Rat p = p_ * o.p_ + q_ * o.q_ * Rat(s_);
    q_ = p_ * o.q_ + q_ * o.p_;
    p_ = std::move(p);
    if (q_ == 0) s_ = 1;
    return *this;
}

Quad& Quad::operator/=(const Quad& o) {
    align(o);
    // norm p^2 - q^2 s vanishes only at zero for square-free s
    Rat norm = o.p_ * o.p_ - o.q_ * o.q_ * Rat(s_);
    if (o.is_zero() || norm == 0) throw PreconditionError("division by zero");
    *this *= o.conjugate();
    p_ /= norm;
    q_ /= norm;
    if (q_ == 0) s_ = 1;
    return *this;
}

Quad Quad::pow(long long e) const {
    if (e < 0) return Quad(Rat(1)) / pow(-e);
    Quad base = *this, acc(Rat(1));
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

std::string Quad::str() const {
    if (q_ == 0) return rat_str(p_);
    std::ostringstream os;
    if (p_ != 0) os << rat_str(p_) << (q_ > 0 ? "+" : "");
    os << rat_str(q_) << "*sqrt(" << s_ << ")";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Quad& q) {
    return os << q.str();
}

} // namespace infprob
