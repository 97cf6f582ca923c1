#pragma once

#include <map>
#include <vector>

#include "infprob/infscalar.hpp"
#include "infprob/partition.hpp"
#include "infprob/scalar.hpp"

namespace infprob {

// Sequences are 1-indexed by convention: seq[0] holds the order-1 entry.
using Sequence = std::vector<Scalar>;

// Symbolic argument tuple for multilinear functionals.
using Tuple = std::vector<int>;

// n-linear functionals f_n given as a single closure dispatching on tuple
// length. Tables must be total on the tuples queried.
struct MultiFunctional {
    std::function<Scalar(const Tuple&)> f;
    Scalar operator()(const Tuple& args) const { return f(args); }
};

// Shared, guarded cache of NC(n) enumerations and their Moebius-to-top
// tables; identical results whether hit or recomputed.
const std::vector<Partition>& nc_partitions(int n);
const std::unordered_map<std::string, long long>& nc_mobius_to_top(int n);

// f_pi: product over blocks of f_{|V|} applied to the restricted tuple.
Scalar kappa_pi(const Partition& pi, const MultiFunctional& f, const Tuple& args);

// The derivation: sum over blocks V of the product where exactly V uses f'.
Scalar partial_kappa_pi(const Partition& pi, const MultiFunctional& f,
                        const MultiFunctional& fprime, const Tuple& args);

// Single-variable moment <-> cumulant transforms (exact, mutual inverses).
Sequence free_cumulants_from_moments(const Sequence& m, int order);
Sequence moments_from_free_cumulants(const Sequence& kappa, int order);
Sequence boolean_cumulants_from_moments(const Sequence& m, int order);
Sequence moments_from_boolean_cumulants(const Sequence& beta, int order);

struct InfSequencePair {
    Sequence plain;  // kappa_n or m_n
    Sequence primed; // kappa'_n or m'_n
};

// kappa via the plain transform, kappa' via the Moebius sum over NC(n) of
// the derivation of phi_pi.
InfSequencePair inf_cumulants_from_moments(const Sequence& m, const Sequence& mprime,
                                           int order);
InfSequencePair inf_moments_from_cumulants(const Sequence& kappa,
                                           const Sequence& kappap, int order);

// Cumulants with products as arguments: sum over pi in the class with
// pi v (grouping interval partition) = 1_n. group_ends = 1 <= i_1 < ... <
// i_m = n are the last index of each factor.
Scalar cumulants_of_products(PartitionClass cls, const MultiFunctional& kappa_table,
                             const std::vector<int>& group_ends, const Tuple& args);
InfScalar inf_cumulants_of_products(PartitionClass cls,
                                    const MultiFunctional& kappa_table,
                                    const MultiFunctional& kappa_prime_table,
                                    const std::vector<int>& group_ends,
                                    const Tuple& args);

// Per-variable moment data; free-cumulant tables derived lazily.
class MarginalSpec {
public:
    void set_marginal(int symbol, Sequence moments, Sequence inf_moments = {});
    bool has(int symbol) const { return data_.count(symbol) != 0; }

    Scalar moment(int symbol, int k) const;     // m_0 = 1 implicitly
    Scalar inf_moment(int symbol, int k) const; // m'_0 = 0 implicitly
    Scalar kappa(int symbol, int k) const;
    Scalar kappa_prime(int symbol, int k) const;
    int order(int symbol) const;

private:
    struct Entry {
        Sequence m, mp;
        mutable Sequence kappa, kappap; // lazily filled, together
        mutable bool derived = false;
    };
    const Entry& entry(int symbol) const;
    void derive(const Entry& e) const;
    std::map<int, Entry> data_;
};

// (phi(word), phi'(word)) for a family that is infinitesimally free across
// symbols, via the vanishing of mixed kappa and kappa'.
InfScalar eval_free_word(const MarginalSpec& marginals, const std::vector<int>& word,
                         bool infinitesimal = true);

// (phi, phi') for Boolean independent symbols: runs collapse to marginal
// moments, phi factorizes, phi' follows the Leibniz rule.
InfScalar eval_boolean_word(const MarginalSpec& marginals, const std::vector<int>& word,
                            bool infinitesimal = true);

} // namespace infprob
