#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "infprob/idempotent.hpp"
#include "infprob/scalar.hpp"

namespace infprob {

// Haar-conjugated finite-N model: A is a fixed-rank deterministic matrix
// (eigenvalues embedded as a diagonal corner), B is deterministic with a
// prescribed full spectrum and gets conjugated by a fresh Haar unitary per
// sample. Eigenvalues are exact rationals so theory values stay exact.
struct EnsembleSpec {
    int n_dim = 0;           // matrix size N
    std::vector<Rat> a_eigs; // nonzero eigenvalues of A, rank fixed in N
    std::vector<Rat> b_eigs; // all N eigenvalues of B
    int samples = 0;
    std::uint64_t seed = 0;
};

enum class PolyKind { Commutator, Anticommutator };

struct EstimatorResult {
    std::string id; // polynomial or word identifier
    int order = 0;
    double mean = 0;
    double stderr_ = 0;
    double theory = 0;
    double zscore = 0;
    double max_imag_residue = 0; // largest |Im| seen in a per-sample trace
};

// Counter-based per-sample substream seeds: identical (seed, index) give
// identical streams regardless of how samples are sharded across threads.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

// QR of an i.i.d. complex Gaussian matrix with the phase correction
// (column j scaled by R_jj/|R_jj|), the standard exact-Haar construction.
Eigen::MatrixXcd sample_haar_unitary(int n_dim, std::uint64_t stream_seed);

// For each sample forms M = poly(A, U B U*) and records Tr(M^k), k = 1..max
// order; aggregates mean/stderr across samples in index order and attaches
// the exact theory values (commutator / anticommutator infinitesimal laws
// fed with tr-moments of B and Tr-moments of A).
std::vector<EstimatorResult> estimate_inf_moments(const EnsembleSpec& spec,
                                                  PolyKind kind, int max_order,
                                                  int threads = 1);

// psi-hat(word) = E[Tr(word * j)] with j the rank-1 projection onto the first
// coordinate and the word's letters all realized as U B U*; theory is the
// exact psi value of the idempotent model built from B's tr-moments.
std::vector<EstimatorResult> estimate_boolean_bridge(const EnsembleSpec& spec,
                                                     const std::vector<JWord>& words,
                                                     int threads = 1);

} // namespace infprob
