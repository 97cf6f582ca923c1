#pragma once

#include <vector>

#include "infprob/cumulants.hpp"
#include "infprob/scalar.hpp"

namespace infprob {

// Variable kind. Z series live in powers of z (R, r, psi, eta); Z_INV series
// live in powers of t = 1/z (G, g). Operations reject mixed kinds.
enum class SeriesKind { Z, Z_INV };

// Truncated formal power series in t, where t is z or 1/z depending on kind.
// Coefficients t^0..t^order are trusted; arithmetic tracks the trusted window
// (min under ring operations and composition with valuation >= 1 inner).
class TruncatedSeries {
public:
    TruncatedSeries(SeriesKind kind, int order, std::vector<Scalar> tcoeffs = {});

    SeriesKind kind() const { return kind_; }
    int order() const { return order_; }
    Scalar t_coeff(int k) const;
    void set_t_coeff(int k, Scalar v);
    int valuation() const; // order()+1 when identically zero on the window

    TruncatedSeries truncated(int order) const;
    TruncatedSeries shift(int k) const; // multiply by t^k; k < 0 needs valuation >= -k

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    TruncatedSeries operator-() const;
    TruncatedSeries scaled(const Scalar& c) const;
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

    // d/dz with the chain rule for t = 1/z (dt/dz = -t^2).
    TruncatedSeries derivative_z() const;

    // this(inner); this must be Z-kind, inner must have valuation >= 1.
    // Result takes inner's kind.
    TruncatedSeries compose(const TruncatedSeries& inner) const;

    // 1/this; requires a nonzero t^0 coefficient.
    TruncatedSeries reciprocal() const;

    // Compositional inverse; Z-kind with zero constant and nonzero linear term.
    TruncatedSeries reversion() const;

    // z-exponent window for rendering: [lowest_z_exp, lowest_z_exp + order].
    int lowest_z_exp() const;
    std::vector<Scalar> z_coeffs_ascending() const;

private:
    SeriesKind kind_;
    int order_;
    std::vector<Scalar> c_; // c_[k] is the t^k coefficient, size order_+1
};

// G(z) = sum_{n=0..N} m_n z^-(n+1), with m_0 = 1 implicitly.
TruncatedSeries cauchy_from_moments(const Sequence& m, int N);

// R(z) = sum_{n=0..N-1} kappa_{n+1} z^n.
TruncatedSeries r_from_moments(const Sequence& m, int N);

// psi(z) = sum_{n=1..N} m_n z^n.
TruncatedSeries psi_from_moments(const Sequence& m, int N);

// g(z) = sum_{n=1..N} m'_n z^-(n+1)  (m'_0 = 0).
TruncatedSeries inf_g_from_inf_moments(const Sequence& mprime, int N);

// r(z) = sum_{n=1..N} kappa'_n z^(n-1), kappa' from the infinitesimal transform.
TruncatedSeries inf_r(const Sequence& m, const Sequence& mprime, int N);

// eta = psi / (1 + psi); coefficients are the Boolean cumulants.
TruncatedSeries eta_from_psi(const TruncatedSeries& psi, int N);

// Coefficients tau_0..tau_N of -G'/G = sum tau_n z^-(n+1); tau_0 = 1.
Sequence spectral_shift_series(const Sequence& m, int N);

} // namespace infprob
