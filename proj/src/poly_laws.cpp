#include "infprob/poly_laws.hpp"

namespace infprob {

namespace {

Scalar seq_at(const Sequence& s, int k) {
    if (k < 1 || k > static_cast<int>(s.size())) return Scalar(0);
    return s[k - 1];
}

} // namespace

Sequence anticommutator_inf_law(const FreePolyInput& in, int N) {
    // p_n = alpha^n + beta^n: p_0 = 2, p_1 = 2 m1, p_n = 2 m1 p_{n-1} - (m1^2 - m2) p_{n-2}
    Scalar e1 = Scalar(2) * in.m1;
    Scalar e2 = in.m1 * in.m1 - in.m2;
    Sequence out;
    Scalar prev2(2), prev1 = e1;
    for (int n = 1; n <= N; ++n) {
        Scalar pn = n == 1 ? prev1 : e1 * prev1 - e2 * prev2;
        if (n > 1) {
            prev2 = prev1;
            prev1 = pn;
        }
        out.push_back(pn * seq_at(in.x2_inf_moments, n));
    }
    return out;
}

Sequence commutator_inf_law(const FreePolyInput& in, int N) {
    Scalar var = in.m2 - in.m1 * in.m1; // kappa_2(x1) = omega^2
    Sequence out;
    Scalar pw(1);
    for (int n = 1; n <= N; ++n) {
        if (n % 2 == 1) {
            out.push_back(Scalar(0));
        } else {
            pw *= var; // omega^n = var^{n/2}
            out.push_back(Scalar(2) * pw * seq_at(in.x2_inf_moments, n));
        }
    }
    return out;
}

Int alternating_sign_sum(int n, int r) {
    if (n <= 0 || n % 2 != 0) throw PreconditionError("n must be a positive even integer");
    if (r < 1 || r > n) throw PreconditionError("r must satisfy 1 <= r <= n");
    int top = n / 2 - 1;
    int bot = (r - 1) / 2;
    Int binom(1);
    if (bot > top) {
        binom = 0;
    } else {
        for (int k = 1; k <= bot; ++k) binom = binom * (top - k + 1) / k;
    }
    return (r / 2) % 2 == 0 ? binom : -binom;
}

Sequence boolean_poly_cumulants(const BooleanPolyInput& in, int N) {
    return boolean_poly_cumulants_ring<Scalar>(in.a, in.b, in.beta1_x1, in.beta2_x1,
                                               in.beta1_x2, in.beta2_x2, N);
}

namespace {

Rat real_rat(const Scalar& s, const char* what) {
    if (!s.is_real()) throw PreconditionError(std::string(what) + " must be real");
    return s.real();
}

} // namespace

BooleanPolyLaw boolean_poly_moments(const BooleanPolyInput& in, int N) {
    Scalar a1 = in.alpha1(), a2 = in.alpha2(), d = in.d();
    BooleanPolyLaw out;
    // rational recurrence for the moments
    Scalar prev2(0), prev1(0);
    for (int k = 1; k <= N; ++k) {
        Scalar mk;
        if (k == 1)
            mk = a1;
        else if (k == 2)
            mk = a1 * a1 + a2;
        else
            mk = a1 * prev1 + (d + a2) * prev2;
        prev2 = prev1;
        prev1 = mk;
        out.m.push_back(mk);
    }
    // exact atoms in the field of omega
    Rat ra1 = real_rat(a1, "alpha1");
    Rat ra2 = real_rat(a2, "alpha2");
    Rat rd = real_rat(d, "d");
    Rat omega2 = ra1 * ra1 + 4 * (rd + ra2);
    if (omega2 == 0) throw DegenerateRootError("omega = 0: coincident roots");
    if (omega2 < 0)
        throw DegenerateRootError("omega^2 < 0: roots are not real");
    Quad omega = Quad::sqrt_of(omega2);
    Quad half(Rat(1, 2));
    Quad theta[2] = {(Quad(ra1) + omega) * half, (Quad(ra1) - omega) * half};
    Quad sign[2] = {Quad(1), Quad(-1)};
    for (int i = 0; i < 2; ++i) {
        Quad numer = Quad(ra1) * theta[i] + Quad(ra2);
        if (theta[i].is_zero()) {
            if (numer.is_zero()) continue; // removable: the atom carries no mass
            throw DegenerateRootError("atom at zero with nonvanishing weight numerator");
        }
        out.atoms.add(theta[i], sign[i] * numer / (omega * theta[i]));
    }
    return out;
}

GammaState gamma_recurrence(const BooleanPolyInput& in, int N) {
    Scalar a1 = in.alpha1(), a2 = in.alpha2(), d = in.d();
    if (a1.is_zero() || a2.is_zero())
        throw PreconditionError("gamma recurrence needs alpha1 != 0 and alpha2 != 0");
    GammaState st;
    Scalar go = a1, ge(0);
    for (int k = 1; k <= N; ++k) {
        st.gamma_o.push_back(go);
        st.gamma_e.push_back(ge);
        Scalar mk = go + ge;
        Scalar next_ge = (a2 / a1) * go;
        Scalar next_go = a1 * mk + d * (a1 / a2) * ge;
        go = next_go;
        ge = next_ge;
    }
    return st;
}

Sequence inf_boolean_poly_cumulants(const BooleanPolyInput& in, int N) {
    // (1,2)-entry of the dual-number law. Note the halved beta_1(p), beta'_1(p)
    // in the odd branch: the odd prefactor is (a+b) beta_1(x1) beta_1(x2)
    // = (a+b) beta_1(p)/2, and its derivation is (a+b) beta'_1(p)/2.
    Scalar D = in.beta2_x1 * in.beta2_x2;
    Scalar Dp = in.beta2_x1 * in.beta2p_x2 + in.beta2p_x1 * in.beta2_x2;
    Scalar ab = in.a * in.b;
    Scalar apb = in.a + in.b;
    Scalar half(Rat(1, 2));
    Sequence out;
    for (int n = 1; n <= N; ++n) {
        Scalar term;
        if (n % 2 == 0) {
            int e = (n - 2) / 2;
            term = ab.pow(n / 2) * in.beta2p_p() * D.pow(e);
            if (e >= 1)
                term += ab.pow(n / 2) * Scalar(e) * in.beta2_p() * Dp * D.pow(e - 1);
        } else {
            int e = (n - 1) / 2;
            term = apb * ab.pow(e) * (in.beta1p_p() * half) * D.pow(e);
            if (e >= 1)
                term += apb * ab.pow(e) * Scalar(e) * (in.beta1_p() * half) * Dp *
                        D.pow(e - 1);
        }
        out.push_back(term);
    }
    return out;
}

} // namespace infprob
