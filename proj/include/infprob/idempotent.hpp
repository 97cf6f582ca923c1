#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "infprob/cumulants.hpp"
#include "infprob/partition.hpp"

namespace infprob {

// Token word over an infinitesimal idempotent j, its complement 1 - j, and
// algebra letters (ids >= 0).
constexpr int kJ = -1;
constexpr int kJPerp = -2;
using JWord = std::vector<int>;

// Word functional over algebra letters: phi(letters) and optionally
// phi'(letters). phi' is only needed to evaluate words with no j at all.
struct IdempotentModel {
    Scalar phi_prime_j{1}; // phi'(j), must be nonzero for psi
    std::function<Scalar(const std::vector<int>&)> phi;
    std::function<Scalar(const std::vector<int>&)> phi_prime; // may be empty

    // memoized multivariate free cumulants of the algebra
    Scalar algebra_kappa(const std::vector<int>& letters) const;

private:
    mutable std::map<std::vector<int>, Scalar> kappa_cache_;
};

// phi'(word) via the infinitesimal moment-cumulant sum: j's plain cumulants
// vanish, kappa'_n(j,...,j) = phi'(j), mixed (kappa, kappa') vanish by
// infinitesimal freeness, and 1 - j expands by linearity.
Scalar eval_inf_word_with_idempotent(const JWord& word, const IdempotentModel& model);

// psi(word) = phi'(word j) / phi'(j).
Scalar psi_state(const JWord& word, const IdempotentModel& model);

// Multivariate Boolean cumulant from moments: sum over I(k) with signs.
Scalar boolean_cumulant_multi(const std::function<Scalar(const std::vector<int>&)>& phi,
                              const std::vector<int>& letters);

// Product of multivariate Boolean cumulants over the blocks of sigma
// (elements taken in increasing position order within each block).
Scalar beta_sigma(const std::function<Scalar(const std::vector<int>&)>& phi,
                  const Partition& sigma, const std::vector<int>& letters);

// (n-1) phi(a_1...a_n) - sum over cyclic interval partitions of
// (-1)^{#sigma} phi_sigma.
Scalar beta_tilde(const std::function<Scalar(const std::vector<int>&)>& phi,
                  const std::vector<int>& letters);

// Closed forms for phi'(j^{(eps_1)} a_1 ... j^{(eps_n)} a_n [j]) where
// j^{(-1)} = j and j^{(+1)} = 1 - j. Without a trailing j: phi'(j)
// beta_{sigma_eps} when some eps_l = -1 (a leading plus run wraps onto the
// last block), else phi'(a_1...a_n) - phi'(j) beta~_n. With a trailing j:
// phi'(j) beta_{sigma_eps} when eps_1 = -1 (interval blocks, no wrap), else 0.
Scalar closed_form_inf_moment(const EpsilonString& eps, const std::vector<int>& letters,
                              const IdempotentModel& model, bool trailing_j);

struct IndependenceReport {
    bool holds = true;
    long long checked = 0;
    std::vector<std::string> failures;
};

// Checks psi(x_{i_1} ... x_{i_m}) = psi(x_{i_1}) ... psi(x_{i_m}) over all
// index sequences with consecutive indices distinct and concatenated token
// length <= max_len; algebra_elements[i] lists the candidate words of the
// i-th algebra.
IndependenceReport verify_boolean_independence(
    const IdempotentModel& model, const std::vector<std::vector<JWord>>& algebra_elements,
    int max_len);

// Checks the middle-extraction identities psi(c_0 x_1 c_1 ... x_n c_n) =
// psi(c_k) psi(same word with c_k removed) for every position k, words built
// from b_elements and single-letter c's. swap_roles extracts the x's instead
// (a negative control: monotone independence is asymmetric).
IndependenceReport verify_monotone_independence(const IdempotentModel& model,
                                                const std::vector<JWord>& b_elements,
                                                const std::vector<int>& c_letters,
                                                int max_n, bool swap_roles = false);

} // namespace infprob
