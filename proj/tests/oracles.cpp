#include "oracles.hpp"

#include <map>
#include <utility>

namespace infprob::oracles {

namespace {

struct WordEval {
    const Word& w;
    const CumulantTable& table;
    std::map<std::pair<int, int>, InfScalar> memo;

    // moment of the contiguous subword [s, e); the block of position s is
    // chosen as a subset of the remaining positions, the gaps between chosen
    // positions stay contiguous, so noncrossing partitions are generated
    // exactly once
    InfScalar eval(int s, int e) {
        if (s >= e) return InfScalar(Scalar(1));
        auto key = std::make_pair(s, e);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        int rest = e - s - 1;
        InfScalar total(Scalar(0));
        Word block;
        std::vector<std::pair<int, int>> gaps;
        for (std::uint64_t mask = 0; mask < (1ULL << rest); ++mask) {
            block.assign(1, w[s]);
            gaps.clear();
            int gap_start = s + 1;
            for (int k = 0; k < rest; ++k) {
                if (mask & (1ULL << k)) {
                    int pos = s + 1 + k;
                    gaps.emplace_back(gap_start, pos);
                    block.push_back(w[pos]);
                    gap_start = pos + 1;
                }
            }
            gaps.emplace_back(gap_start, e);
            InfScalar kv = table(block);
            if (kv == InfScalar(Scalar(0))) continue;
            for (const auto& [gs, ge] : gaps) kv *= eval(gs, ge);
            total += kv;
        }
        memo.emplace(key, total);
        return total;
    }
};

} // namespace

InfScalar word_moment(const Word& word, const CumulantTable& table) {
    if (word.empty()) return InfScalar(Scalar(1));
    if (word.size() > 24) throw SizeLimitError("oracle word too long");
    WordEval ev{word, table, {}};
    return ev.eval(0, static_cast<int>(word.size()));
}

namespace {

const std::unordered_map<std::string, long long>& mobius_table(int n) {
    static std::map<int, std::unordered_map<std::string, long long>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, mobius_nc_to_top(n)).first;
    return it->second;
}

} // namespace

InfScalar product_cumulant(const std::vector<Word>& factor_words,
                           const CumulantTable& table) {
    int n = static_cast<int>(factor_words.size());
    const auto& mob = mobius_table(n);
    std::map<Word, InfScalar> block_memo;
    InfScalar total(Scalar(0));
    for_each_partition(n, PartitionClass::NONCROSSING, [&](const Partition& pi) {
        InfScalar prod(Scalar(static_cast<long long>(mob.at(pi.key()))));
        for (const auto& blk : pi.blocks()) {
            Word concat;
            for (int e : blk)
                concat.insert(concat.end(), factor_words[e - 1].begin(),
                              factor_words[e - 1].end());
            auto it = block_memo.find(concat);
            if (it == block_memo.end())
                it = block_memo.emplace(concat, word_moment(concat, table)).first;
            prod *= it->second;
        }
        total += prod;
    });
    return total;
}

namespace {

Scalar seq_at(const Seq& s, int k) {
    if (k < 1 || k > static_cast<int>(s.size())) return Scalar(0);
    return s[k - 1];
}

} // namespace

Scalar poly_inf_moment(int n, const Seq& kappa_x1, const Seq& x2_inf_moments,
                       bool anticommutator) {
    CumulantTable table = [&](const Word& t) {
        for (int x : t)
            if (x != t[0]) return InfScalar(Scalar(0));
        int len = static_cast<int>(t.size());
        if (t[0] == 0) return InfScalar(seq_at(kappa_x1, len), Scalar(0));
        return InfScalar(Scalar(0), seq_at(x2_inf_moments, len));
    };
    InfScalar total(Scalar(0));
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        Word w;
        int minus = 0;
        for (int k = 0; k < n; ++k) {
            if (mask & (1ULL << k)) {
                w.push_back(1);
                w.push_back(0);
                ++minus;
            } else {
                w.push_back(0);
                w.push_back(1);
            }
        }
        InfScalar v = word_moment(w, table);
        if (!anticommutator && minus % 2 == 1) v = -v;
        total += v;
    }
    Scalar coeff = anticommutator ? Scalar(1) : Scalar::i().pow(n);
    return (InfScalar(coeff) * total).inf_part;
}

Int alternating_sign_sum_brute(int n, int r) {
    long long total = 0;
    std::vector<int> parts(r);
    std::function<void(int, int)> rec = [&](int idx, int rem) {
        if (idx == r - 1) {
            parts[idx] = rem;
            int even_sum = 0;
            for (int i = 1; i < r; i += 2) even_sum += parts[i];
            total += even_sum % 2 == 0 ? 1 : -1;
            return;
        }
        for (int v = 1; v <= rem - (r - 1 - idx); ++v) {
            parts[idx] = v;
            rec(idx + 1, rem - v);
        }
    };
    rec(0, n);
    return Int(total);
}

InfScalar boolean_word_moment(const Word& word,
                              const std::function<InfScalar(int, int)>& marginal) {
    InfScalar out(Scalar(1));
    size_t i = 0;
    while (i < word.size()) {
        size_t j = i;
        while (j < word.size() && word[j] == word[i]) ++j;
        out *= marginal(word[i], static_cast<int>(j - i));
        i = j;
    }
    return out;
}

std::vector<InfScalar> boolean_poly_moments(const InfScalar& a, const InfScalar& b,
                                            const InfScalar& b1x1, const InfScalar& b2x1,
                                            const InfScalar& b1x2, const InfScalar& b2x2,
                                            int N) {
    // marginal moments from the interval-partition sum; Boolean cumulants
    // beyond order 2 are zero, longest run in the expansion is 2 but higher
    // moments are filled anyway for safety
    int max_run = 2 * N;
    std::vector<InfScalar> beta_x1{b1x1, b2x1}, beta_x2{b1x2, b2x2};
    beta_x1.resize(max_run, InfScalar(Scalar(0)));
    beta_x2.resize(max_run, InfScalar(Scalar(0)));
    std::vector<InfScalar> m_x1 = boolean_moments(beta_x1, max_run);
    std::vector<InfScalar> m_x2 = boolean_moments(beta_x2, max_run);
    auto marginal = [&](int symbol, int len) {
        return symbol == 0 ? m_x1[len - 1] : m_x2[len - 1];
    };
    std::vector<InfScalar> out;
    for (int k = 1; k <= N; ++k) {
        InfScalar mk(Scalar(0));
        for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
            Word w;
            InfScalar coeff(Scalar(1));
            for (int f = 0; f < k; ++f) {
                if (mask & (1ULL << f)) {
                    coeff *= b;
                    w.push_back(1);
                    w.push_back(0);
                } else {
                    coeff *= a;
                    w.push_back(0);
                    w.push_back(1);
                }
            }
            mk += coeff * boolean_word_moment(w, marginal);
        }
        out.push_back(mk);
    }
    return out;
}

Rat random_rat(std::mt19937_64& rng, int num_bound, int den_bound) {
    std::uniform_int_distribution<int> num(-num_bound, num_bound);
    std::uniform_int_distribution<int> den(1, den_bound);
    return Rat(num(rng), den(rng));
}

Seq random_seq(std::mt19937_64& rng, int len, int num_bound, int den_bound) {
    Seq out;
    for (int i = 0; i < len; ++i) out.push_back(Scalar(random_rat(rng, num_bound, den_bound)));
    return out;
}

} // namespace infprob::oracles
