#pragma once

#include <optional>
#include <vector>

#include "infprob/cumulants.hpp"
#include "infprob/scalar.hpp"

namespace infprob {

struct Atom {
    Quad t; // location
    Quad w; // weight, may be negative (signed measures)
};

// Finite signed atomic measure with pairwise distinct locations. Locations
// and weights live in a single quadratic field so moments stay exact.
class AtomicMeasure {
public:
    AtomicMeasure() = default;

    // Merges into an existing atom at the same location; zero-weight atoms
    // are kept (callers may carry them deliberately).
    void add(Quad location, Quad weight);

    const std::vector<Atom>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }
    Quad total_mass() const;
    Quad moment(int n) const; // sum w_i t_i^n, n >= 0

    AtomicMeasure dilated(const Quad& c) const; // t_i -> c t_i, weights kept

private:
    std::vector<Atom> atoms_;
};

// Moment-pair view of an infinitesimal law (m_0 = 1, m'_0 = 0 implicit),
// optionally backed by atomic measures reproducing the sequences.
struct InfDistribution {
    Sequence m;
    Sequence mp;
    std::optional<AtomicMeasure> m_atoms;
    std::optional<AtomicMeasure> mp_atoms;

    int order() const { return static_cast<int>(m.size()); }

    // true when every stored atomic backing reproduces its sequence exactly
    bool backings_consistent() const;
};

// m_n -> c^n m_n and m'_n -> c^n m'_n; atoms dilated with weights unchanged.
InfDistribution dilate(const InfDistribution& d, const Scalar& c);

// Free additive convolution of infinitesimal laws: both kappa and kappa'
// sequences add; moments recovered by the inverse transform. Atomic backings
// are dropped (the convolution is generally not atomic).
InfDistribution free_convolve(const InfDistribution& d1, const InfDistribution& d2,
                              int N);

// The anticommutator's infinitesimal law as a measure: the dilations of
// nu_prime by alpha = m1 + sqrt(m2) and beta = m1 - sqrt(m2), summed. Its
// n-th moment is (alpha^n + beta^n) * moment_n(nu_prime).
AtomicMeasure anticommutator_target(const AtomicMeasure& nu_prime, const Scalar& m1,
                                    const Scalar& m2);

} // namespace infprob
