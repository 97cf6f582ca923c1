#pragma once

#include "infprob/distributions.hpp"
#include "infprob/infscalar.hpp"
#include "infprob/series.hpp"

namespace infprob {

// Inputs for the free anticommutator p = x1 x2 + x2 x1 and commutator
// q = i(x1 x2 - x2 x1), where x1 and x2 are infinitesimally free and x2 is
// infinitesimal (all plain moments zero).
struct FreePolyInput {
    Scalar m1; // m_1(x1)
    Scalar m2; // m_2(x1)
    Sequence x2_inf_moments;
};

// m'_n(p) = (alpha^n + beta^n) m'_n(x2) with alpha, beta = m1 +- sqrt(m2).
// Power sums of alpha, beta are computed by the Newton recurrence, so the
// arithmetic never leaves the rationals.
Sequence anticommutator_inf_law(const FreePolyInput& in, int N);

// m'_n(q) = 2 omega^n m'_n(x2) for even n and 0 for odd n, omega^2 = kappa_2(x1).
Sequence commutator_inf_law(const FreePolyInput& in, int N);

// The g-transform of either law: sum m'_n z^-(n+1).
inline TruncatedSeries inf_law_g_series(const Sequence& inf_moments, int N) {
    return inf_g_from_inf_moments(inf_moments, N);
}

// sum over compositions k_1+...+k_r = n of (-1)^{k_2+k_4+...}, in closed form
// (-1)^{floor(r/2)} C(n/2-1, floor((r-1)/2)); n even, 1 <= r <= n.
Int alternating_sign_sum(int n, int r);

// Boolean polynomial g = a x1 x2 + b x2 x1 with x1, x2 Boolean independent.
struct BooleanPolyInput {
    Scalar a{1}, b{1};
    Scalar beta1_x1, beta2_x1, beta1_x2, beta2_x2;
    // infinitesimal Boolean cumulants, zero when absent
    Scalar beta1p_x1, beta2p_x1, beta1p_x2, beta2p_x2;

    Scalar d() const { return a * b * beta2_x1 * beta2_x2; }
    Scalar beta1_p() const { return Scalar(2) * beta1_x1 * beta1_x2; }
    Scalar beta2_p() const {
        return beta1_x1 * beta1_x1 * beta2_x2 + beta1_x2 * beta1_x2 * beta2_x1;
    }
    Scalar beta1p_p() const {
        return Scalar(2) * (beta1p_x1 * beta1_x2 + beta1_x1 * beta1p_x2);
    }
    Scalar beta2p_p() const {
        return Scalar(2) * beta1_x1 * beta1p_x1 * beta2_x2 +
               beta1_x1 * beta1_x1 * beta2p_x2 +
               Scalar(2) * beta1_x2 * beta1p_x2 * beta2_x1 +
               beta1_x2 * beta1_x2 * beta2p_x1;
    }
    Scalar alpha1() const { return (a + b) * beta1_x1 * beta1_x2; }
    Scalar alpha2() const { return a * b * beta2_p(); }
};

// Generic-ring form of the Boolean cumulant law; with R = InfScalar this is
// the dual-number lift whose infinitesimal parts are the primed cumulants.
template <typename R>
std::vector<R> boolean_poly_cumulants_ring(const R& a, const R& b, const R& b1x1,
                                           const R& b2x1, const R& b1x2, const R& b2x2,
                                           int N) {
    R d = a * b * b2x1 * b2x2;
    R odd_pref = (a + b) * b1x1 * b1x2;
    R even_pref = a * b * (b2x1 * b1x2 * b1x2 + b2x2 * b1x1 * b1x1);
    std::vector<R> out;
    out.reserve(static_cast<size_t>(N));
    for (int n = 1; n <= N; ++n) {
        if (n % 2 == 1)
            out.push_back(odd_pref * d.pow((n - 1) / 2));
        else
            out.push_back(even_pref * d.pow((n - 2) / 2));
    }
    return out;
}

Sequence boolean_poly_cumulants(const BooleanPolyInput& in, int N);

struct BooleanPolyLaw {
    Sequence m;
    AtomicMeasure atoms; // two atoms at theta_1, theta_2 (zero-location atoms
                         // dropped when their weight numerator vanishes)
};

// Moments via the rational three-term recurrence m_{k+2} = alpha1 m_{k+1} +
// (d + alpha2) m_k, which equals the closed two-atom form; the atoms are
// emitted exactly in the quadratic field of omega = sqrt(alpha1^2 + 4(d+alpha2)).
BooleanPolyLaw boolean_poly_moments(const BooleanPolyInput& in, int N);

struct GammaState {
    Sequence gamma_o;
    Sequence gamma_e;
};

// The interval-partition first-block split: gamma_e[k+1] = (a2/a1) gamma_o[k],
// gamma_o[k+1] = a1 m_k + d (a1/a2) gamma_e[k]; m_k = gamma_o[k] + gamma_e[k].
GammaState gamma_recurrence(const BooleanPolyInput& in, int N);

// Infinitesimal Boolean cumulants of g: the closed form matching the
// dual-number lift (boolean_poly_cumulants_ring over InfScalar).
Sequence inf_boolean_poly_cumulants(const BooleanPolyInput& in, int N);

} // namespace infprob
