#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "infprob/errors.hpp"

namespace infprob {

enum class PartitionClass { ALL, NONCROSSING, INTERVAL, CYCLIC_INTERVAL };

// Set partition of {1,...,n}. Canonical form: blocks sorted by their minimum
// element, elements within a block ascending.
class Partition {
public:
    Partition() = default;
    Partition(int n, std::vector<std::vector<int>> blocks);

    static Partition singletons(int n); // 0_n
    static Partition full(int n);       // 1_n

    int n() const { return n_; }
    int num_blocks() const { return static_cast<int>(blocks_.size()); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    const std::vector<int>& block_of() const { return block_of_; } // 1-based, [1..n]
    int block_index_of(int element) const { return block_of_[element]; }

    bool is_noncrossing() const;
    bool is_interval() const;
    bool is_cyclic_interval() const;
    bool in_class(PartitionClass cls) const;

    // Canonical encoding (block-id sequence), usable as a hash key and for
    // the deterministic enumeration order.
    std::string key() const;

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.n_ == b.n_ && a.block_of_ == b.block_of_;
    }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }

private:
    int n_ = 0;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> block_of_; // block_of_[e] = index into blocks_, entry 0 unused
};

struct PartitionCaps {
    int noncrossing = 16;
    int interval = 16;
    int cyclic_interval = 16;
    int all = 12;

    int for_class(PartitionClass cls) const;
};

// Streaming enumeration, deterministic order (lexicographic on the canonical
// block encoding). Returns the number of partitions visited.
std::uint64_t for_each_partition(int n, PartitionClass cls,
                                 const std::function<void(const Partition&)>& visit,
                                 const PartitionCaps& caps = {});

std::vector<Partition> enumerate_partitions(int n, PartitionClass cls,
                                            const PartitionCaps& caps = {});

// ker(j): r ~ s iff labels[r] == labels[s] (labels 0-indexed, partition of [len]).
Partition kernel(const std::vector<long long>& labels);

// Smallest common coarsening in the full partition lattice.
Partition join(const Partition& a, const Partition& b);

// true iff every block of fine is contained in a block of coarse.
bool leq(const Partition& fine, const Partition& coarse);

// Moebius function of NC(n) on the interval [sigma, pi], by memoized
// recursive zeta-inversion.
long long mobius_nc(const Partition& sigma, const Partition& pi);

// Moebius values mu(pi, 1_n) for every pi in NC(n), keyed by Partition::key().
std::unordered_map<std::string, long long> mobius_nc_to_top(int n);

// Moebius function of the interval-partition lattice: (-1)^(#sigma - #tau).
long long mobius_interval(const Partition& sigma, const Partition& tau);

// Entries are +1/-1.
using EpsilonString = std::vector<int>;

// Notation: each l with eps[l] = -1 starts a new block; a leading run of +1
// wraps around to the block opened by the last -1 (cyclic interval). All +1
// gives 1_n.
Partition sigma_from_epsilon(const EpsilonString& eps);

} // namespace infprob
