#pragma once

#include <functional>
#include <string>
#include <vector>

#include "infprob/cumulants.hpp"
#include "infprob/partition.hpp"

namespace infprob {

// Alternating *-cumulants kappa_{2n}(a, a*, ...) = alpha_n and
// kappa_{2n}(a*, a, ...) = beta_n, with their infinitesimal companions.
struct DeterminingSequences {
    Sequence alpha, beta;   // n >= 1, the 2n-th alternating cumulants
    Sequence alphap, betap; // primed versions
};

// Joint *-cumulant tables for one variable, keyed by the epsilon string of
// the tuple (+1 for the letter, -1 for its star).
struct StarTables {
    std::function<Scalar(const EpsilonString&)> kappa;
    std::function<Scalar(const EpsilonString&)> kappap;
};

// Tables of an (infinitesimally) R-diagonal element: only even alternating
// strings are nonzero, valued by the determining sequences.
StarTables rdiag_star_tables(const DeterminingSequences& ds);

// Tables of a self-adjoint element: stars are immaterial.
StarTables selfadjoint_star_tables(const Sequence& kappa, const Sequence& kappap);

// kappa'_n of the alternating tuple (c, c*, c, c*, ...) for c = x1 x2 with x1
// centered, x2 infinitesimal, infinitesimally free: kappa'_n(x2) kappa_2(x1)^{n/2}
// for even n, 0 for odd n. x2_inf_cumulants holds kappa'_n(x2) (= m'_n(x2)).
Sequence inf_rdiag_alternating_cumulants(const Scalar& kappa2_x1,
                                         const Sequence& x2_inf_cumulants, int N,
                                         const Scalar& m1_x1 = Scalar(0));

// Same data evaluated on an arbitrary epsilon pattern: zero unless the
// pattern is even and alternating.
Scalar inf_rdiag_pattern_cumulant(const Scalar& kappa2_x1,
                                  const Sequence& x2_inf_cumulants,
                                  const EpsilonString& eps,
                                  const Scalar& m1_x1 = Scalar(0));

enum class SquareKind { AAstar, AstarA };

// kappa'_n(aa*, ..., aa*) (or a*a) from the determining sequences: the sum
// over NC(n) of alpha'_{|V1|} prod beta_{|Vj|} + alpha_{|V1|} sum_j beta'_{|Vj|}
// prod_{l != j} beta_{|Vl|}, where V1 is the block containing 1; the a*a kind
// swaps the alpha and beta roles.
Sequence inf_cumulants_of_square(const DeterminingSequences& ds, SquareKind kind,
                                 int N);

struct ClosureReport {
    bool closed = true;
    long long checked = 0;
    std::vector<std::string> failures; // description of each offending tuple
};

// Computes the joint *-cumulants (kappa, kappa') of c = ab from the tables of
// *-infinitesimally-free a and b via products-as-arguments, and reports
// whether every odd or non-alternating entry vanishes for lengths <= N.
ClosureReport check_inf_rdiag_closure(const StarTables& a, const StarTables& b, int N);

// The joint *-cumulant of (c^{(eps_1)}, ..., c^{(eps_n)}) for c = ab.
InfScalar product_star_cumulant(const StarTables& a, const StarTables& b,
                                const EpsilonString& eps);

} // namespace infprob
