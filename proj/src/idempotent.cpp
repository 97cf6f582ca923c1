#include "infprob/idempotent.hpp"

#include <algorithm>
#include <cstdint>

namespace infprob {

Scalar IdempotentModel::algebra_kappa(const std::vector<int>& letters) const {
    auto it = kappa_cache_.find(letters);
    if (it != kappa_cache_.end()) return it->second;
    int k = static_cast<int>(letters.size());
    MultiFunctional f{phi};
    const auto& mob = nc_mobius_to_top(k);
    Scalar total(0);
    for (const auto& sigma : nc_partitions(k))
        total += Scalar(Int(mob.at(sigma.key()))) * kappa_pi(sigma, f, letters);
    kappa_cache_.emplace(letters, total);
    return total;
}

namespace {

// Collapses runs of equal j-symbols (j and 1 - j are idempotent). Returns
// false when the word contains j (1-j) or (1-j) j, which are zero.
bool normalize_j_runs(const JWord& in, JWord& out) {
    out.clear();
    for (int tok : in) {
        if (!out.empty() && out.back() < 0 && tok < 0) {
            if (out.back() != tok) return false;
            continue;
        }
        out.push_back(tok);
    }
    return true;
}

// phi' of a word over {j, letters}: sum over NC partitions whose j-positions
// form exactly one block, the letter blocks valued by free cumulants.
Scalar eval_branch(const JWord& tokens, const IdempotentModel& model) {
    int n = static_cast<int>(tokens.size());
    if (n == 0) return Scalar(0); // phi'(1) = 0
    std::vector<int> jset;
    for (int i = 0; i < n; ++i)
        if (tokens[i] == kJ) jset.push_back(i + 1);
    if (jset.empty()) {
        if (!model.phi_prime)
            throw PreconditionError("phi' of the algebra is required for j-free words");
        return model.phi_prime(tokens);
    }
    Scalar total(0);
    for (const auto& pi : nc_partitions(n)) {
        const auto& blocks = pi.blocks();
        int jblock = pi.block_index_of(jset[0]);
        if (blocks[jblock] != jset) continue;
        Scalar term = model.phi_prime_j;
        for (int b = 0; b < pi.num_blocks() && !term.is_zero(); ++b) {
            if (b == jblock) continue;
            std::vector<int> letters;
            letters.reserve(blocks[b].size());
            for (int pos : blocks[b]) letters.push_back(tokens[pos - 1]);
            term *= model.algebra_kappa(letters);
        }
        total += term;
    }
    return total;
}

} // namespace

Scalar eval_inf_word_with_idempotent(const JWord& word, const IdempotentModel& model) {
    JWord base;
    if (!normalize_j_runs(word, base)) return Scalar(0);
    std::vector<int> perp_positions;
    for (int i = 0; i < static_cast<int>(base.size()); ++i)
        if (base[i] == kJPerp) perp_positions.push_back(i);
    int p = static_cast<int>(perp_positions.size());
    if (p > 30) throw SizeLimitError("too many 1 - j factors to expand");
    Scalar total(0);
    JWord branch;
    for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
        branch.clear();
        int js = 0;
        size_t next = 0;
        for (int i = 0; i < static_cast<int>(base.size()); ++i) {
            if (base[i] != kJPerp) {
                branch.push_back(base[i]);
                continue;
            }
            bool take_j = (mask >> next) & 1u;
            ++next;
            if (take_j) {
                branch.push_back(kJ);
                ++js;
            } // else the unit factor: drop the token
        }
        Scalar value = eval_branch(branch, model);
        total += js % 2 == 0 ? value : -value;
    }
    return total;
}

Scalar psi_state(const JWord& word, const IdempotentModel& model) {
    if (model.phi_prime_j.is_zero())
        throw PreconditionError("psi requires phi'(j) != 0");
    JWord with_j = word;
    with_j.push_back(kJ);
    return eval_inf_word_with_idempotent(with_j, model) / model.phi_prime_j;
}

Scalar boolean_cumulant_multi(const std::function<Scalar(const std::vector<int>&)>& phi,
                              const std::vector<int>& letters) {
    int k = static_cast<int>(letters.size());
    MultiFunctional f{phi};
    Scalar total(0);
    for_each_partition(k, PartitionClass::INTERVAL, [&](const Partition& sigma) {
        Scalar v = kappa_pi(sigma, f, letters);
        total += sigma.num_blocks() % 2 == 1 ? v : -v;
    });
    return total;
}

Scalar beta_sigma(const std::function<Scalar(const std::vector<int>&)>& phi,
                  const Partition& sigma, const std::vector<int>& letters) {
    if (sigma.n() != static_cast<int>(letters.size()))
        throw PreconditionError("partition size does not match the tuple");
    Scalar total(1);
    for (const auto& block : sigma.blocks()) {
        std::vector<int> sub;
        sub.reserve(block.size());
        for (int pos : block) sub.push_back(letters[pos - 1]);
        total *= boolean_cumulant_multi(phi, sub);
        if (total.is_zero()) break;
    }
    return total;
}

Scalar beta_tilde(const std::function<Scalar(const std::vector<int>&)>& phi,
                  const std::vector<int>& letters) {
    int n = static_cast<int>(letters.size());
    MultiFunctional f{phi};
    Scalar total = Scalar(n - 1) * phi(letters);
    for_each_partition(n, PartitionClass::CYCLIC_INTERVAL, [&](const Partition& sigma) {
        Scalar v = kappa_pi(sigma, f, letters);
        total -= sigma.num_blocks() % 2 == 0 ? v : -v;
    });
    return total;
}

Scalar closed_form_inf_moment(const EpsilonString& eps, const std::vector<int>& letters,
                              const IdempotentModel& model, bool trailing_j) {
    if (eps.size() != letters.size())
        throw PreconditionError("epsilon string and letter tuple differ in length");
    bool has_minus = std::find(eps.begin(), eps.end(), -1) != eps.end();
    if (trailing_j) {
        // leading 1 - j against a trailing j cancels: the unit branch and the
        // j branch factor over the same letter runs, so the value is zero
        if (eps[0] == 1) return Scalar(0);
        return model.phi_prime_j * beta_sigma(model.phi, sigma_from_epsilon(eps), letters);
    }
    if (has_minus) {
        if (eps[0] == -1)
            return model.phi_prime_j *
                   beta_sigma(model.phi, sigma_from_epsilon(eps), letters);
        // leading plus run: the wrapped block is not an ordinary Boolean
        // cumulant; sum over the strings below eps (extra -1's at plus
        // positions), signed by their count, each valued as phi_sigma
        std::vector<int> plus_pos;
        for (int l = 0; l < static_cast<int>(eps.size()); ++l)
            if (eps[l] == 1) plus_pos.push_back(l);
        int p = static_cast<int>(plus_pos.size());
        if (p > 30) throw SizeLimitError("epsilon string too long to expand");
        MultiFunctional f{model.phi};
        Scalar total(0);
        EpsilonString sub = eps;
        for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
            int flips = 0;
            for (int t = 0; t < p; ++t) {
                bool flip = (mask >> t) & 1u;
                sub[plus_pos[t]] = flip ? -1 : 1;
                flips += flip ? 1 : 0;
            }
            Scalar v = kappa_pi(sigma_from_epsilon(sub), f, letters);
            total += flips % 2 == 0 ? v : -v;
        }
        return model.phi_prime_j * total;
    }
    if (!model.phi_prime)
        throw PreconditionError("the all-(1-j) closed form needs phi' of the algebra");
    return model.phi_prime(letters) - model.phi_prime_j * beta_tilde(model.phi, letters);
}

namespace {

std::string word_desc(const std::vector<std::pair<int, int>>& picks) {
    std::string s;
    for (auto [alg, elem] : picks) {
        if (!s.empty()) s += ' ';
        s += 'x' + std::to_string(alg) + '[' + std::to_string(elem) + ']';
    }
    return s;
}

} // namespace

IndependenceReport verify_boolean_independence(
    const IdempotentModel& model, const std::vector<std::vector<JWord>>& algebra_elements,
    int max_len) {
    IndependenceReport report;
    std::vector<std::pair<int, int>> picks; // (algebra, element index)
    JWord concat;
    Scalar psi_product(1);
    std::function<void()> extend = [&]() {
        if (picks.size() >= 2) {
            ++report.checked;
            Scalar lhs = psi_state(concat, model);
            if (lhs != psi_product) {
                report.holds = false;
                report.failures.push_back(word_desc(picks) + ": psi=" + lhs.str() +
                                          " product=" + psi_product.str());
            }
        }
        for (int alg = 0; alg < static_cast<int>(algebra_elements.size()); ++alg) {
            if (!picks.empty() && picks.back().first == alg) continue;
            for (int e = 0; e < static_cast<int>(algebra_elements[alg].size()); ++e) {
                const JWord& w = algebra_elements[alg][e];
                if (concat.size() + w.size() > static_cast<size_t>(max_len)) continue;
                size_t old = concat.size();
                concat.insert(concat.end(), w.begin(), w.end());
                Scalar old_prod = psi_product;
                psi_product *= psi_state(w, model);
                picks.emplace_back(alg, e);
                extend();
                picks.pop_back();
                psi_product = old_prod;
                concat.resize(old);
            }
        }
    };
    extend();
    return report;
}

IndependenceReport verify_monotone_independence(const IdempotentModel& model,
                                                const std::vector<JWord>& b_elements,
                                                const std::vector<int>& c_letters,
                                                int max_n, bool swap_roles) {
    IndependenceReport report;
    int nb = static_cast<int>(b_elements.size());
    int nc = static_cast<int>(c_letters.size());
    for (int n = 1; n <= max_n; ++n) {
        std::vector<int> xs(n, 0), cs(n + 1, 0);
        auto run_case = [&]() {
            // word = c_0 x_1 c_1 ... x_n c_n, pieces[2i] = {c_i}, pieces[2i+1] = x_{i+1}
            std::vector<JWord> pieces;
            for (int i = 0; i <= n; ++i) {
                pieces.push_back(JWord{c_letters[cs[i]]});
                if (i < n) pieces.push_back(b_elements[xs[i]]);
            }
            auto glue = [&](int skip) {
                JWord w;
                for (int i = 0; i < static_cast<int>(pieces.size()); ++i)
                    if (i != skip) w.insert(w.end(), pieces[i].begin(), pieces[i].end());
                return w;
            };
            Scalar full = psi_state(glue(-1), model);
            for (int i = 0; i < static_cast<int>(pieces.size()); ++i) {
                bool is_c = i % 2 == 0;
                if (is_c == swap_roles) continue;
                ++report.checked;
                Scalar rhs = psi_state(pieces[i], model) * psi_state(glue(i), model);
                if (full != rhs) {
                    report.holds = false;
                    report.failures.push_back(
                        "n=" + std::to_string(n) + " extract piece " + std::to_string(i) +
                        ": psi=" + full.str() + " split=" + rhs.str());
                }
            }
        };
        // odometer over all x and c choices
        std::vector<int>* dials[2] = {&xs, &cs};
        int limits[2] = {nb, nc};
        std::function<void(int, int)> spin = [&](int d, int pos) {
            if (d == 2) {
                run_case();
                return;
            }
            if (pos == static_cast<int>(dials[d]->size())) {
                spin(d + 1, 0);
                return;
            }
            for (int v = 0; v < limits[d]; ++v) {
                (*dials[d])[pos] = v;
                spin(d, pos + 1);
            }
        };
        spin(0, 0);
    }
    return report;
}

} // namespace infprob
