#include "infprob/cumulants.hpp"

#include <mutex>
#include <shared_mutex>

namespace infprob {

namespace {

std::shared_mutex cache_mutex;
std::unordered_map<int, std::vector<Partition>> nc_cache;
std::unordered_map<int, std::unordered_map<std::string, long long>> mobius_cache;

template <typename Map, typename Maker>
const typename Map::mapped_type& cached(Map& map, int n, Maker make) {
    {
        std::shared_lock lock(cache_mutex);
        auto it = map.find(n);
        if (it != map.end()) return it->second;
    }
    auto value = make();
    std::unique_lock lock(cache_mutex);
    return map.try_emplace(n, std::move(value)).first->second;
}

} // namespace

const std::vector<Partition>& nc_partitions(int n) {
    return cached(nc_cache, n,
                  [&] { return enumerate_partitions(n, PartitionClass::NONCROSSING); });
}

const std::unordered_map<std::string, long long>& nc_mobius_to_top(int n) {
    return cached(mobius_cache, n, [&] { return mobius_nc_to_top(n); });
}

Scalar kappa_pi(const Partition& pi, const MultiFunctional& f, const Tuple& args) {
    if (pi.n() != static_cast<int>(args.size()))
        throw DimensionError("kappa_pi: partition size does not match tuple");
    Scalar out(1);
    Tuple sub;
    for (const auto& block : pi.blocks()) {
        sub.clear();
        for (int e : block) sub.push_back(args[e - 1]);
        out *= f(sub);
    }
    return out;
}

Scalar partial_kappa_pi(const Partition& pi, const MultiFunctional& f,
                        const MultiFunctional& fprime, const Tuple& args) {
    if (pi.n() != static_cast<int>(args.size()))
        throw DimensionError("partial_kappa_pi: partition size does not match tuple");
    int b = pi.num_blocks();
    std::vector<Scalar> plain(b), primed(b);
    Tuple sub;
    for (int bi = 0; bi < b; ++bi) {
        sub.clear();
        for (int e : pi.blocks()[bi]) sub.push_back(args[e - 1]);
        plain[bi] = f(sub);
        primed[bi] = fprime(sub);
    }
    Scalar out(0);
    for (int v = 0; v < b; ++v) {
        Scalar term = primed[v];
        for (int w = 0; w < b; ++w)
            if (w != v) term *= plain[w];
        out += term;
    }
    return out;
}

namespace {

Scalar seq_at(const Sequence& s, int k) { // 1-indexed, 0 beyond the stored range
    if (k < 1 || k > static_cast<int>(s.size())) return Scalar(0);
    return s[k - 1];
}

} // namespace

// m_n = sum_{s=1}^{n} kappa_s * [t^{n-s}] M(t)^s where M(t) = 1 + sum m_j t^j.
// The block of element 1 has size s; its gaps carry independent moments.
Sequence moments_from_free_cumulants(const Sequence& kappa, int order) {
    Sequence m;
    for (int n = 1; n <= order; ++n) {
        // gaps[s][k] = [t^k] M(t)^s with M over already computed m
        std::vector<std::vector<Scalar>> gaps(n, std::vector<Scalar>(n, Scalar(0)));
        for (int k = 0; k < n; ++k) gaps[0][k] = k == 0 ? Scalar(1) : Scalar(0);
        for (int s = 1; s < n; ++s)
            for (int k = 0; k < n; ++k) {
                gaps[s][k] = gaps[s - 1][k];
                for (int j = 1; j <= k; ++j)
                    gaps[s][k] += m[j - 1] * gaps[s - 1][k - j];
            }
        Scalar mn(0);
        for (int s = 1; s <= n; ++s)
            mn += seq_at(kappa, s) * (s == n ? Scalar(1) : gaps[s][n - s]);
        m.push_back(mn);
    }
    return m;
}

Sequence free_cumulants_from_moments(const Sequence& m, int order) {
    if (static_cast<int>(m.size()) < order)
        throw IncompleteMarginalError("need moments up to order " + std::to_string(order));
    Sequence kappa;
    for (int n = 1; n <= order; ++n) {
        std::vector<std::vector<Scalar>> gaps(n, std::vector<Scalar>(n, Scalar(0)));
        for (int k = 0; k < n; ++k) gaps[0][k] = k == 0 ? Scalar(1) : Scalar(0);
        for (int s = 1; s < n; ++s)
            for (int k = 0; k < n; ++k) {
                gaps[s][k] = gaps[s - 1][k];
                for (int j = 1; j <= k; ++j)
                    gaps[s][k] += m[j - 1] * gaps[s - 1][k - j];
            }
        Scalar rest(0);
        for (int s = 1; s < n; ++s) rest += kappa[s - 1] * gaps[s][n - s];
        kappa.push_back(m[n - 1] - rest);
    }
    return kappa;
}

Sequence moments_from_boolean_cumulants(const Sequence& beta, int order) {
    Sequence m;
    for (int n = 1; n <= order; ++n) {
        Scalar mn(0);
        for (int k = 1; k <= n; ++k)
            mn += seq_at(beta, k) * (k == n ? Scalar(1) : m[n - k - 1]);
        m.push_back(mn);
    }
    return m;
}

Sequence boolean_cumulants_from_moments(const Sequence& m, int order) {
    if (static_cast<int>(m.size()) < order)
        throw IncompleteMarginalError("need moments up to order " + std::to_string(order));
    Sequence beta;
    for (int n = 1; n <= order; ++n) {
        Scalar rest(0);
        for (int k = 1; k < n; ++k) rest += beta[k - 1] * m[n - k - 1];
        beta.push_back(m[n - 1] - rest);
    }
    return beta;
}

namespace {

// sum over blocks V of m'_{|V|} prod_{W != V} m_{|W|}
Scalar partial_moment_pi(const Partition& pi, const Sequence& m, const Sequence& mp) {
    int b = pi.num_blocks();
    Scalar out(0);
    for (int v = 0; v < b; ++v) {
        Scalar term = seq_at(mp, static_cast<int>(pi.blocks()[v].size()));
        if (term.is_zero()) continue;
        for (int w = 0; w < b; ++w)
            if (w != v) term *= seq_at(m, static_cast<int>(pi.blocks()[w].size()));
        out += term;
    }
    return out;
}

} // namespace

InfSequencePair inf_cumulants_from_moments(const Sequence& m, const Sequence& mprime,
                                           int order) {
    InfSequencePair out;
    out.plain = free_cumulants_from_moments(m, order);
    for (int n = 1; n <= order; ++n) {
        const auto& mu = nc_mobius_to_top(n);
        Scalar kp(0);
        for (const auto& pi : nc_partitions(n)) {
            long long coeff = mu.at(pi.key());
            Scalar term = partial_moment_pi(pi, m, mprime);
            kp += Scalar(coeff) * term;
        }
        out.primed.push_back(kp);
    }
    return out;
}

InfSequencePair inf_moments_from_cumulants(const Sequence& kappa, const Sequence& kappap,
                                           int order) {
    InfSequencePair out;
    out.plain = moments_from_free_cumulants(kappa, order);
    for (int n = 1; n <= order; ++n) {
        Scalar mp(0);
        for (const auto& pi : nc_partitions(n))
            mp += partial_moment_pi(pi, kappa, kappap);
        out.primed.push_back(mp);
    }
    return out;
}

namespace {

Partition grouping_partition(const std::vector<int>& group_ends, int n) {
    if (group_ends.empty() || group_ends.back() != n)
        throw PreconditionError("grouping must end at the last argument");
    std::vector<std::vector<int>> blocks;
    int start = 1;
    for (int end : group_ends) {
        if (end < start) throw PreconditionError("grouping indices must increase");
        std::vector<int> blk;
        for (int e = start; e <= end; ++e) blk.push_back(e);
        blocks.push_back(std::move(blk));
        start = end + 1;
    }
    return Partition(n, std::move(blocks));
}

} // namespace

Scalar cumulants_of_products(PartitionClass cls, const MultiFunctional& kappa_table,
                             const std::vector<int>& group_ends, const Tuple& args) {
    int n = static_cast<int>(args.size());
    Partition grouping = grouping_partition(group_ends, n);
    Scalar out(0);
    for_each_partition(n, cls, [&](const Partition& pi) {
        if (join(pi, grouping).num_blocks() != 1) return;
        out += kappa_pi(pi, kappa_table, args);
    });
    return out;
}

InfScalar inf_cumulants_of_products(PartitionClass cls,
                                    const MultiFunctional& kappa_table,
                                    const MultiFunctional& kappa_prime_table,
                                    const std::vector<int>& group_ends,
                                    const Tuple& args) {
    int n = static_cast<int>(args.size());
    Partition grouping = grouping_partition(group_ends, n);
    InfScalar out;
    for_each_partition(n, cls, [&](const Partition& pi) {
        if (join(pi, grouping).num_blocks() != 1) return;
        out.std_part += kappa_pi(pi, kappa_table, args);
        out.inf_part += partial_kappa_pi(pi, kappa_table, kappa_prime_table, args);
    });
    return out;
}

void MarginalSpec::set_marginal(int symbol, Sequence moments, Sequence inf_moments) {
    Entry e;
    e.m = std::move(moments);
    e.mp = std::move(inf_moments);
    data_[symbol] = std::move(e);
}

const MarginalSpec::Entry& MarginalSpec::entry(int symbol) const {
    auto it = data_.find(symbol);
    if (it == data_.end())
        throw IncompleteMarginalError("no marginal for symbol " + std::to_string(symbol));
    return it->second;
}

void MarginalSpec::derive(const Entry& e) const {
    if (e.derived) return;
    int ord = static_cast<int>(e.m.size());
    Sequence mp = e.mp;
    mp.resize(e.m.size(), Scalar(0));
    auto pair = inf_cumulants_from_moments(e.m, mp, ord);
    e.kappa = std::move(pair.plain);
    e.kappap = std::move(pair.primed);
    e.derived = true;
}

Scalar MarginalSpec::moment(int symbol, int k) const {
    if (k == 0) return Scalar(1);
    const Entry& e = entry(symbol);
    if (k < 0 || k > static_cast<int>(e.m.size()))
        throw IncompleteMarginalError("moment order " + std::to_string(k) +
                                      " missing for symbol " + std::to_string(symbol));
    return e.m[k - 1];
}

Scalar MarginalSpec::inf_moment(int symbol, int k) const {
    if (k == 0) return Scalar(0);
    const Entry& e = entry(symbol);
    if (k < 0 || k > static_cast<int>(e.m.size()))
        throw IncompleteMarginalError("inf moment order " + std::to_string(k) +
                                      " missing for symbol " + std::to_string(symbol));
    if (k > static_cast<int>(e.mp.size())) return Scalar(0);
    return e.mp[k - 1];
}

Scalar MarginalSpec::kappa(int symbol, int k) const {
    const Entry& e = entry(symbol);
    derive(e);
    if (k < 1 || k > static_cast<int>(e.kappa.size()))
        throw IncompleteMarginalError("cumulant order " + std::to_string(k) +
                                      " missing for symbol " + std::to_string(symbol));
    return e.kappa[k - 1];
}

Scalar MarginalSpec::kappa_prime(int symbol, int k) const {
    const Entry& e = entry(symbol);
    derive(e);
    if (k < 1 || k > static_cast<int>(e.kappap.size()))
        throw IncompleteMarginalError("inf cumulant order " + std::to_string(k) +
                                      " missing for symbol " + std::to_string(symbol));
    return e.kappap[k - 1];
}

int MarginalSpec::order(int symbol) const {
    return static_cast<int>(entry(symbol).m.size());
}

InfScalar eval_free_word(const MarginalSpec& marginals, const std::vector<int>& word,
                         bool infinitesimal) {
    if (word.empty()) throw PreconditionError("empty word");
    int n = static_cast<int>(word.size());
    InfScalar out;
    // mixed kappa and kappa' vanish: only partitions below ker(word) count
    for (const auto& pi : nc_partitions(n)) {
        bool mono = true;
        Scalar plain(1);
        for (const auto& block : pi.blocks()) {
            int sym = word[block[0] - 1];
            for (int e : block)
                if (word[e - 1] != sym) {
                    mono = false;
                    break;
                }
            if (!mono) break;
            plain *= marginals.kappa(sym, static_cast<int>(block.size()));
        }
        if (!mono) continue;
        out.std_part += plain;
        if (!infinitesimal) continue;
        for (size_t v = 0; v < pi.blocks().size(); ++v) {
            const auto& vb = pi.blocks()[v];
            Scalar term = marginals.kappa_prime(word[vb[0] - 1],
                                                static_cast<int>(vb.size()));
            if (term.is_zero()) continue;
            for (size_t w = 0; w < pi.blocks().size(); ++w) {
                if (w == v) continue;
                const auto& wb = pi.blocks()[w];
                term *= marginals.kappa(word[wb[0] - 1], static_cast<int>(wb.size()));
            }
            out.inf_part += term;
        }
    }
    return out;
}

InfScalar eval_boolean_word(const MarginalSpec& marginals, const std::vector<int>& word,
                            bool infinitesimal) {
    if (word.empty()) throw PreconditionError("empty word");
    // collapse runs of the same symbol to a single marginal moment
    std::vector<std::pair<int, int>> runs; // (symbol, length)
    for (int sym : word) {
        if (!runs.empty() && runs.back().first == sym)
            ++runs.back().second;
        else
            runs.emplace_back(sym, 1);
    }
    InfScalar out(Scalar(1));
    std::vector<Scalar> vals(runs.size());
    for (size_t k = 0; k < runs.size(); ++k) {
        vals[k] = marginals.moment(runs[k].first, runs[k].second);
        out.std_part *= vals[k];
    }
    if (infinitesimal) {
        Scalar inf(0);
        for (size_t j = 0; j < runs.size(); ++j) {
            Scalar term = marginals.inf_moment(runs[j].first, runs[j].second);
            if (term.is_zero()) continue;
            for (size_t k = 0; k < runs.size(); ++k)
                if (k != j) term *= vals[k];
            inf += term;
        }
        out.inf_part = inf;
    } else {
        out.inf_part = Scalar(0);
    }
    return out;
}

} // namespace infprob
