#pragma once

#include "infprob/scalar.hpp"

namespace infprob {

// Dual-number pair (standard part, infinitesimal part). Multiplication
// follows (a,a')*(b,b') = (ab, ab' + a'b), i.e. the 2x2 upper-triangular
// matrix algebra [[a, a'], [0, a]].
struct InfScalar {
    Scalar std_part{0};
    Scalar inf_part{0};

    InfScalar() = default;
    InfScalar(Scalar s) : std_part(std::move(s)) {} // NOLINT(google-explicit-constructor)
    InfScalar(int v) : std_part(v) {}               // NOLINT(google-explicit-constructor)
    InfScalar(Scalar s, Scalar d) : std_part(std::move(s)), inf_part(std::move(d)) {}

    InfScalar& operator+=(const InfScalar& o) {
        std_part += o.std_part;
        inf_part += o.inf_part;
        return *this;
    }
    InfScalar& operator-=(const InfScalar& o) {
        std_part -= o.std_part;
        inf_part -= o.inf_part;
        return *this;
    }
    InfScalar& operator*=(const InfScalar& o) {
        inf_part = std_part * o.inf_part + inf_part * o.std_part;
        std_part *= o.std_part;
        return *this;
    }

    friend InfScalar operator+(InfScalar a, const InfScalar& b) { return a += b; }
    friend InfScalar operator-(InfScalar a, const InfScalar& b) { return a -= b; }
    friend InfScalar operator*(InfScalar a, const InfScalar& b) { return a *= b; }
    friend InfScalar operator-(const InfScalar& a) {
        return InfScalar(-a.std_part, -a.inf_part);
    }
    friend bool operator==(const InfScalar& a, const InfScalar& b) {
        return a.std_part == b.std_part && a.inf_part == b.inf_part;
    }
    friend bool operator!=(const InfScalar& a, const InfScalar& b) { return !(a == b); }

    InfScalar pow(long long e) const {
        InfScalar base = *this, acc = InfScalar(Scalar(1));
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }
};

} // namespace infprob
