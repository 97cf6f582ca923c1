#include "infprob/partition.hpp"

#include <algorithm>
#include <numeric>

namespace infprob {

Partition::Partition(int n, std::vector<std::vector<int>> blocks)
    : n_(n), blocks_(std::move(blocks)) {
    if (n <= 0) throw PreconditionError("partition ground set must be nonempty");
    for (auto& b : blocks_) {
        if (b.empty()) throw PreconditionError("empty block");
        std::sort(b.begin(), b.end());
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    block_of_.assign(n + 1, -1);
    for (int bi = 0; bi < static_cast<int>(blocks_.size()); ++bi) {
        for (int e : blocks_[bi]) {
            if (e < 1 || e > n || block_of_[e] != -1)
                throw PreconditionError("blocks must partition {1..n}");
            block_of_[e] = bi;
        }
    }
    for (int e = 1; e <= n; ++e)
        if (block_of_[e] == -1) throw PreconditionError("blocks must cover {1..n}");
}

Partition Partition::singletons(int n) {
    std::vector<std::vector<int>> blocks(n);
    for (int e = 1; e <= n; ++e) blocks[e - 1] = {e};
    return Partition(n, std::move(blocks));
}

Partition Partition::full(int n) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 1);
    return Partition(n, {std::move(all)});
}

bool Partition::is_noncrossing() const {
    // a < b < c < d with a,c in one block and b,d in another
    for (int b = 1; b <= n_; ++b) {
        for (int c = b + 1; c <= n_; ++c) {
            if (block_of_[b] == block_of_[c]) continue;
            // is there a < b in block_of_[c] and d > c in block_of_[b]?
            bool a_found = false, d_found = false;
            for (int a = 1; a < b && !a_found; ++a)
                a_found = block_of_[a] == block_of_[c];
            if (!a_found) continue;
            for (int d = c + 1; d <= n_ && !d_found; ++d)
                d_found = block_of_[d] == block_of_[b];
            if (d_found) return false;
        }
    }
    return true;
}

bool Partition::is_interval() const {
    for (const auto& b : blocks_)
        if (b.back() - b.front() + 1 != static_cast<int>(b.size())) return false;
    return true;
}

bool Partition::is_cyclic_interval() const {
    // every block is an interval on the circle (n adjacent to 1); at most one
    // block may wrap
    int wrapping = 0;
    for (const auto& b : blocks_) {
        if (b.back() - b.front() + 1 == static_cast<int>(b.size())) continue;
        // must be a suffix run plus a prefix run
        int k = 0;
        while (k + 1 < static_cast<int>(b.size()) && b[k + 1] == b[k] + 1) ++k;
        ++k; // prefix run length
        int m = static_cast<int>(b.size());
        bool suffix_ok = b.back() == n_;
        for (int t = k; t + 1 < m; ++t)
            if (b[t + 1] != b[t] + 1) suffix_ok = false;
        if (!suffix_ok || b.front() != 1) return false;
        ++wrapping;
    }
    return wrapping <= 1;
}

bool Partition::in_class(PartitionClass cls) const {
    switch (cls) {
        case PartitionClass::ALL: return true;
        case PartitionClass::NONCROSSING: return is_noncrossing();
        case PartitionClass::INTERVAL: return is_interval();
        case PartitionClass::CYCLIC_INTERVAL: return is_cyclic_interval();
    }
    return false;
}

std::string Partition::key() const {
    std::string k(static_cast<size_t>(n_), '\0');
    for (int e = 1; e <= n_; ++e) k[e - 1] = static_cast<char>(block_of_[e]);
    return k;
}

int PartitionCaps::for_class(PartitionClass cls) const {
    switch (cls) {
        case PartitionClass::ALL: return all;
        case PartitionClass::NONCROSSING: return noncrossing;
        case PartitionClass::INTERVAL: return interval;
        case PartitionClass::CYCLIC_INTERVAL: return cyclic_interval;
    }
    return 0;
}

namespace {

// Non-crossing partitions of the run elems[lo..hi): the block of the first
// element picks later members; the gaps recurse independently.
void nc_recurse(const std::vector<int>& elems, size_t lo, size_t hi,
                std::vector<std::vector<int>>& acc,
                const std::function<void()>& emit) {
    if (lo >= hi) {
        emit();
        return;
    }
    // choose the block of elems[lo] as an increasing subset; iterate by
    // backtracking: members[k] are indices into elems
    std::vector<size_t> members{lo};
    std::function<void(size_t)> extend = [&](size_t from) {
        // close the block here: gaps between consecutive members, then tail
        {
            std::vector<int> block;
            for (size_t m : members) block.push_back(elems[m]);
            acc.push_back(std::move(block));
            std::function<void(size_t)> do_gap = [&](size_t gi) {
                if (gi + 1 < members.size()) {
                    nc_recurse(elems, members[gi] + 1, members[gi + 1], acc,
                               [&] { do_gap(gi + 1); });
                } else {
                    nc_recurse(elems, members.back() + 1, hi, acc, emit);
                }
            };
            do_gap(0);
            acc.pop_back();
        }
        for (size_t next = from; next < hi; ++next) {
            members.push_back(next);
            extend(next + 1);
            members.pop_back();
        }
    };
    extend(lo + 1);
}

void enumerate_nc(int n, const std::function<void(const Partition&)>& visit) {
    std::vector<int> elems(n);
    std::iota(elems.begin(), elems.end(), 1);
    std::vector<std::vector<int>> acc;
    nc_recurse(elems, 0, static_cast<size_t>(n), acc,
               [&] { visit(Partition(n, acc)); });
}

void enumerate_all(int n, const std::function<void(const Partition&)>& visit) {
    // restricted growth strings
    std::vector<int> rgs(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int maxid) {
        if (pos == n) {
            std::vector<std::vector<int>> blocks(maxid);
            for (int e = 0; e < n; ++e) blocks[rgs[e]].push_back(e + 1);
            visit(Partition(n, std::move(blocks)));
            return;
        }
        for (int id = 0; id <= maxid; ++id) {
            rgs[pos] = id;
            rec(pos + 1, std::max(maxid, id + 1));
        }
    };
    rec(0, 0);
}

void enumerate_interval(int n, const std::function<void(const Partition&)>& visit) {
    // cut set over positions 1..n-1
    for (std::uint64_t cuts = 0; cuts < (1ULL << (n - 1)); ++cuts) {
        std::vector<std::vector<int>> blocks;
        std::vector<int> cur{1};
        for (int e = 2; e <= n; ++e) {
            if (cuts & (1ULL << (e - 2))) {
                blocks.push_back(cur);
                cur.clear();
            }
            cur.push_back(e);
        }
        blocks.push_back(cur);
        visit(Partition(n, std::move(blocks)));
    }
}

void enumerate_cyclic(int n, const std::function<void(const Partition&)>& visit) {
    if (n == 1) {
        visit(Partition::full(1));
        return;
    }
    // sigma_eps over all sign strings; the n+1 strings with <= 1 minus all
    // map to 1_n, keep only the one with eps_1 = -1
    std::vector<Partition> out;
    for (std::uint64_t bits = 0; bits < (1ULL << n); ++bits) {
        EpsilonString eps(n);
        int minus = 0;
        for (int k = 0; k < n; ++k) {
            eps[k] = (bits & (1ULL << k)) ? -1 : 1;
            if (eps[k] == -1) ++minus;
        }
        if (minus == 0 || (minus == 1 && eps[0] != -1)) continue;
        Partition p = sigma_from_epsilon(eps);
        out.push_back(std::move(p));
    }
    for (const auto& p : out) visit(p);
}

} // namespace

std::uint64_t for_each_partition(int n, PartitionClass cls,
                                 const std::function<void(const Partition&)>& visit,
                                 const PartitionCaps& caps) {
    if (n < 1) throw PreconditionError("n must be >= 1");
    int cap = caps.for_class(cls);
    if (n > cap)
        throw SizeLimitError("partition enumeration for n=" + std::to_string(n) +
                             " exceeds the configured cap " + std::to_string(cap));
    std::uint64_t count = 0;
    auto counted = [&](const Partition& p) {
        ++count;
        visit(p);
    };
    switch (cls) {
        case PartitionClass::NONCROSSING: enumerate_nc(n, counted); break;
        case PartitionClass::ALL: enumerate_all(n, counted); break;
        case PartitionClass::INTERVAL: enumerate_interval(n, counted); break;
        case PartitionClass::CYCLIC_INTERVAL: enumerate_cyclic(n, counted); break;
    }
    return count;
}

std::vector<Partition> enumerate_partitions(int n, PartitionClass cls,
                                            const PartitionCaps& caps) {
    std::vector<Partition> out;
    for_each_partition(n, cls, [&](const Partition& p) { out.push_back(p); }, caps);
    std::sort(out.begin(), out.end(),
              [](const Partition& a, const Partition& b) { return a.key() < b.key(); });
    return out;
}

Partition kernel(const std::vector<long long>& labels) {
    if (labels.empty()) throw PreconditionError("kernel of empty tuple");
    int n = static_cast<int>(labels.size());
    std::unordered_map<long long, std::vector<int>> groups;
    for (int k = 0; k < n; ++k) groups[labels[k]].push_back(k + 1);
    std::vector<std::vector<int>> blocks;
    blocks.reserve(groups.size());
    for (auto& [_, b] : groups) blocks.push_back(std::move(b));
    return Partition(n, std::move(blocks));
}

Partition join(const Partition& a, const Partition& b) {
    if (a.n() != b.n()) throw DimensionError("join of partitions of different [n]");
    int n = a.n();
    std::vector<int> parent(n + 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
    for (const auto* p : {&a, &b})
        for (const auto& blk : p->blocks())
            for (size_t k = 1; k < blk.size(); ++k) unite(blk[0], blk[k]);
    std::unordered_map<int, std::vector<int>> groups;
    for (int e = 1; e <= n; ++e) groups[find(e)].push_back(e);
    std::vector<std::vector<int>> blocks;
    for (auto& [_, blk] : groups) blocks.push_back(std::move(blk));
    return Partition(n, std::move(blocks));
}

bool leq(const Partition& fine, const Partition& coarse) {
    if (fine.n() != coarse.n())
        throw DimensionError("leq of partitions of different [n]");
    const auto& id = coarse.block_of();
    for (const auto& blk : fine.blocks())
        for (size_t k = 1; k < blk.size(); ++k)
            if (id[blk[k]] != id[blk[0]]) return false;
    return true;
}

namespace {

// mu on [sigma, pi] inside NC(n) via mu(sigma, tau) = -sum_{sigma<=rho<tau}.
long long mobius_interval_nc(const std::vector<Partition>& interval,
                             std::unordered_map<std::string, long long>& memo,
                             const Partition& sigma, const Partition& tau) {
    if (sigma == tau) return 1;
    auto it = memo.find(tau.key());
    if (it != memo.end()) return it->second;
    long long total = 0;
    for (const auto& rho : interval) {
        if (rho == tau) continue;
        if (leq(rho, tau))
            total += mobius_interval_nc(interval, memo, sigma, rho);
    }
    memo[tau.key()] = -total;
    return -total;
}

} // namespace

long long mobius_nc(const Partition& sigma, const Partition& pi) {
    if (sigma.n() != pi.n()) throw DimensionError("mobius_nc dimension mismatch");
    if (!sigma.is_noncrossing() || !pi.is_noncrossing())
        throw PreconditionError("mobius_nc arguments must be non-crossing");
    if (!leq(sigma, pi)) throw OrderError("mobius_nc: sigma is not <= pi");
    std::vector<Partition> interval;
    for_each_partition(sigma.n(), PartitionClass::NONCROSSING, [&](const Partition& tau) {
        if (leq(sigma, tau) && leq(tau, pi)) interval.push_back(tau);
    });
    std::unordered_map<std::string, long long> memo;
    return mobius_interval_nc(interval, memo, sigma, pi);
}

std::unordered_map<std::string, long long> mobius_nc_to_top(int n) {
    std::vector<Partition> all = enumerate_partitions(n, PartitionClass::NONCROSSING);
    // coarsest first
    std::sort(all.begin(), all.end(), [](const Partition& a, const Partition& b) {
        return a.num_blocks() < b.num_blocks();
    });
    std::unordered_map<std::string, long long> mu;
    for (const auto& pi : all) {
        long long total = 0;
        for (const auto& tau : all) {
            if (tau.num_blocks() >= pi.num_blocks() && tau != pi) continue;
            if (tau == pi) continue;
            if (leq(pi, tau)) total += mu.at(tau.key());
        }
        mu[pi.key()] = pi.num_blocks() == 1 ? 1 : -total;
    }
    return mu;
}

long long mobius_interval(const Partition& sigma, const Partition& tau) {
    if (!sigma.is_interval() || !tau.is_interval())
        throw PreconditionError("mobius_interval arguments must be interval partitions");
    if (!leq(sigma, tau)) throw OrderError("mobius_interval: sigma is not <= tau");
    int diff = sigma.num_blocks() - tau.num_blocks();
    return diff % 2 == 0 ? 1 : -1;
}

Partition sigma_from_epsilon(const EpsilonString& eps) {
    if (eps.empty()) throw PreconditionError("empty epsilon string");
    for (int e : eps)
        if (e != 1 && e != -1) throw PreconditionError("epsilon entries must be +-1");
    int n = static_cast<int>(eps.size());
    std::vector<std::vector<int>> blocks;
    std::vector<int>* current = nullptr;
    for (int l = 1; l <= n; ++l) {
        if (eps[l - 1] == -1 || current == nullptr) {
            blocks.emplace_back();
            current = &blocks.back();
        }
        current->push_back(l);
    }
    // a leading run of +1 wraps onto the block opened by the last -1
    if (eps[0] == 1 && blocks.size() > 1) {
        auto& last = blocks.back();
        auto& first = blocks.front();
        last.insert(last.end(), first.begin(), first.end());
        blocks.erase(blocks.begin());
    }
    return Partition(n, std::move(blocks));
}

} // namespace infprob
