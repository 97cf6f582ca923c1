#pragma once

// Definition-level reference implementations used to cross-check the library.
// Everything here is written as an explicit partition sum or word expansion
// and shares only the partition lattice (enumeration, Moebius tables) with
// the production code, so an agreement is a genuine two-path check.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "infprob/infscalar.hpp"
#include "infprob/partition.hpp"
#include "infprob/scalar.hpp"

namespace infprob::oracles {

using Seq = std::vector<Scalar>;
using Word = std::vector<int>;

// Joint cumulant table on letter tuples carrying (plain, primed) values.
using CumulantTable = std::function<InfScalar(const Word&)>;

// (phi(word), phi'(word)) for a family whose joint cumulants are given by the
// table: first-block recursion over noncrossing partitions with memoized
// contiguous subwords. The dual-number ring makes the derivation automatic.
InfScalar word_moment(const Word& word, const CumulantTable& table);

// Joint cumulant of products kappa_n(w_1,...,w_n) (primed value in the inf
// part): Moebius sum over NC(n) of products of word moments of concatenated
// blocks.
InfScalar product_cumulant(const std::vector<Word>& factor_words,
                           const CumulantTable& table);

// Single-variable transforms as explicit lattice sums over a generic ring
// (Scalar for plain sequences, InfScalar for dual-number pairs).
template <typename R>
std::vector<R> free_cumulants(const std::vector<R>& m, int order) {
    std::vector<R> out;
    for (int n = 1; n <= order; ++n) {
        const auto mob = mobius_nc_to_top(n);
        R total = R(Scalar(0));
        for_each_partition(n, PartitionClass::NONCROSSING, [&](const Partition& pi) {
            R prod = R(Scalar(static_cast<long long>(mob.at(pi.key()))));
            for (const auto& blk : pi.blocks()) prod = prod * m[blk.size() - 1];
            total += prod;
        });
        out.push_back(total);
    }
    return out;
}

template <typename R>
std::vector<R> free_moments(const std::vector<R>& kappa, int order) {
    std::vector<R> out;
    for (int n = 1; n <= order; ++n) {
        R total = R(Scalar(0));
        for_each_partition(n, PartitionClass::NONCROSSING, [&](const Partition& pi) {
            R prod = R(Scalar(1));
            for (const auto& blk : pi.blocks()) prod = prod * kappa[blk.size() - 1];
            total += prod;
        });
        out.push_back(total);
    }
    return out;
}

template <typename R>
std::vector<R> boolean_cumulants(const std::vector<R>& m, int order) {
    std::vector<R> out;
    for (int n = 1; n <= order; ++n) {
        R total = R(Scalar(0));
        for_each_partition(n, PartitionClass::INTERVAL, [&](const Partition& pi) {
            R prod = R(Scalar(pi.num_blocks() % 2 == 1 ? 1 : -1));
            for (const auto& blk : pi.blocks()) prod = prod * m[blk.size() - 1];
            total += prod;
        });
        out.push_back(total);
    }
    return out;
}

template <typename R>
std::vector<R> boolean_moments(const std::vector<R>& beta, int order) {
    std::vector<R> out;
    for (int n = 1; n <= order; ++n) {
        R total = R(Scalar(0));
        for_each_partition(n, PartitionClass::INTERVAL, [&](const Partition& pi) {
            R prod = R(Scalar(1));
            for (const auto& blk : pi.blocks()) prod = prod * beta[blk.size() - 1];
            total += prod;
        });
        out.push_back(total);
    }
    return out;
}

// phi'(p^n) for p = x1 x2 + x2 x1 (anticommutator = true) or q = i(x1 x2 -
// x2 x1): full 2^n sign-word expansion, each word evaluated through the
// first-block recursion. x1 carries the given free cumulants (no primed
// part); x2 is infinitesimal, so kappa'_k(x2) = x2_inf_moments[k-1] and its
// plain cumulants vanish; mixed blocks vanish.
Scalar poly_inf_moment(int n, const Seq& kappa_x1, const Seq& x2_inf_moments,
                       bool anticommutator);

// Composition enumeration of sum over k_1+...+k_r = n of (-1)^{k_2+k_4+...}.
Int alternating_sign_sum_brute(int n, int r);

// Word functional for Boolean independent symbols: maximal runs of equal
// symbols collapse to marginal moments, marginal(symbol, run_length).
InfScalar boolean_word_moment(const Word& word,
                              const std::function<InfScalar(int, int)>& marginal);

// Moments of g = a x1 x2 + b x2 x1 for Boolean independent x1, x2 with
// Boolean cumulants beta1, beta2 (higher ones zero), all dual-number valued:
// 2^k sign-word expansion with run collapse, marginal moments from the
// interval-partition sum.
std::vector<InfScalar> boolean_poly_moments(const InfScalar& a, const InfScalar& b,
                                            const InfScalar& b1x1, const InfScalar& b2x1,
                                            const InfScalar& b1x2, const InfScalar& b2x2,
                                            int N);

// Small random rationals for fuzz inputs; denominators stay tiny so exact
// arithmetic does not blow up.
Rat random_rat(std::mt19937_64& rng, int num_bound = 9, int den_bound = 4);
Seq random_seq(std::mt19937_64& rng, int len, int num_bound = 9, int den_bound = 4);

} // namespace infprob::oracles
