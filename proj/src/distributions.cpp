#include "infprob/distributions.hpp"

namespace infprob {

void AtomicMeasure::add(Quad location, Quad weight) {
    for (auto& a : atoms_) {
        if (a.t == location) {
            a.w += weight;
            return;
        }
    }
    atoms_.push_back(Atom{std::move(location), std::move(weight)});
}

Quad AtomicMeasure::total_mass() const {
    Quad out;
    for (const auto& a : atoms_) out += a.w;
    return out;
}

Quad AtomicMeasure::moment(int n) const {
    if (n < 0) throw PreconditionError("negative moment order");
    Quad out;
    for (const auto& a : atoms_) out += a.w * a.t.pow(n);
    return out;
}

AtomicMeasure AtomicMeasure::dilated(const Quad& c) const {
    AtomicMeasure out;
    for (const auto& a : atoms_) out.add(c * a.t, a.w);
    return out;
}

namespace {

Rat real_rat(const Scalar& s, const char* what) {
    if (!s.is_real()) throw PreconditionError(std::string(what) + " must be real");
    return s.real();
}

bool backing_matches(const AtomicMeasure& mu, const Sequence& seq, bool zeroth_is_one) {
    Quad m0 = mu.moment(0);
    if (zeroth_is_one && m0 != Quad(1)) return false;
    for (int n = 1; n <= static_cast<int>(seq.size()); ++n) {
        if (!seq[n - 1].is_real()) return false;
        if (mu.moment(n) != Quad(seq[n - 1].real())) return false;
    }
    return true;
}

} // namespace

bool InfDistribution::backings_consistent() const {
    if (m_atoms && !backing_matches(*m_atoms, m, true)) return false;
    if (mp_atoms && !backing_matches(*mp_atoms, mp, false)) return false;
    return true;
}

InfDistribution dilate(const InfDistribution& d, const Scalar& c) {
    InfDistribution out;
    Scalar p(1);
    out.m.reserve(d.m.size());
    out.mp.reserve(d.mp.size());
    for (size_t n = 0; n < d.m.size() || n < d.mp.size(); ++n) {
        p *= c;
        if (n < d.m.size()) out.m.push_back(p * d.m[n]);
        if (n < d.mp.size()) out.mp.push_back(p * d.mp[n]);
    }
    Quad qc(real_rat(c, "dilation factor"));
    if (d.m_atoms) out.m_atoms = d.m_atoms->dilated(qc);
    if (d.mp_atoms) out.mp_atoms = d.mp_atoms->dilated(qc);
    return out;
}

InfDistribution free_convolve(const InfDistribution& d1, const InfDistribution& d2,
                              int N) {
    if (d1.order() < N || d2.order() < N)
        throw IncompleteMarginalError("convolution inputs shorter than requested order");
    Sequence mp1 = d1.mp, mp2 = d2.mp;
    mp1.resize(d1.m.size(), Scalar(0));
    mp2.resize(d2.m.size(), Scalar(0));
    auto k1 = inf_cumulants_from_moments(d1.m, mp1, N);
    auto k2 = inf_cumulants_from_moments(d2.m, mp2, N);
    Sequence kappa(N), kappap(N);
    for (int n = 0; n < N; ++n) {
        kappa[n] = k1.plain[n] + k2.plain[n];
        kappap[n] = k1.primed[n] + k2.primed[n];
    }
    auto back = inf_moments_from_cumulants(kappa, kappap, N);
    InfDistribution out;
    out.m = std::move(back.plain);
    out.mp = std::move(back.primed);
    return out;
}

AtomicMeasure anticommutator_target(const AtomicMeasure& nu_prime, const Scalar& m1,
                                    const Scalar& m2) {
    Rat r1 = real_rat(m1, "m1");
    Rat r2 = real_rat(m2, "m2");
    if (r2 < 0) throw PreconditionError("m2 must be nonnegative");
    Quad root = Quad::sqrt_of(r2);
    Quad alpha = Quad(r1) + root;
    Quad beta = Quad(r1) - root;
    AtomicMeasure out;
    for (const auto& a : nu_prime.atoms()) out.add(alpha * a.t, a.w);
    for (const auto& a : nu_prime.atoms()) out.add(beta * a.t, a.w);
    return out;
}

} // namespace infprob
