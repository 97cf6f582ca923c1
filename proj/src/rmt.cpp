#include "infprob/rmt.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <thread>

#include "infprob/poly_laws.hpp"

namespace infprob {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double rat_to_double(const Rat& r) {
    return static_cast<double>(r);
}

void validate(const EnsembleSpec& spec) {
    if (spec.n_dim < 1) throw PreconditionError("matrix size must be positive");
    if (spec.samples < 2) throw PreconditionError("need at least 2 samples for a stderr");
    if (static_cast<int>(spec.b_eigs.size()) != spec.n_dim)
        throw DimensionError("B must declare exactly N eigenvalues");
    if (static_cast<int>(spec.a_eigs.size()) >= spec.n_dim)
        throw PreconditionError("the finite-rank part must have rank < N");
}

Eigen::MatrixXcd diag_embed(const std::vector<Rat>& eigs, int n_dim) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_dim, n_dim);
    for (int i = 0; i < static_cast<int>(eigs.size()); ++i)
        m(i, i) = rat_to_double(eigs[i]);
    return m;
}

// Runs fn(sample_index) across a thread pool; per-sample outputs land in
// slots indexed by sample, so the reduction order never depends on threads.
void run_samples(int samples, int threads, const std::function<void(int)>& fn) {
    if (threads < 1) threads = 1;
    if (threads == 1) {
        for (int s = 0; s < samples; ++s) fn(s);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&]() {
            for (int s = next.fetch_add(1); s < samples; s = next.fetch_add(1)) fn(s);
        });
    for (auto& th : pool) th.join();
}

EstimatorResult aggregate(const std::string& id, int order,
                          const std::vector<double>& values, double theory,
                          double residue) {
    int s = static_cast<int>(values.size());
    double mean = 0;
    for (double v : values) mean += v;
    mean /= s;
    double var = 0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= (s - 1);
    double se = std::sqrt(var / s);
    double diff = mean - theory;
    double z = se > 0 ? diff / se
                      : (diff == 0 ? 0.0 : std::numeric_limits<double>::infinity());
    return EstimatorResult{id, order, mean, se, theory, z, residue};
}

} // namespace

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

Eigen::MatrixXcd sample_haar_unitary(int n_dim, std::uint64_t stream_seed) {
    if (n_dim < 1) throw PreconditionError("matrix size must be positive");
    std::mt19937_64 rng(stream_seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd g(n_dim, n_dim);
    for (int i = 0; i < n_dim; ++i)
        for (int j = 0; j < n_dim; ++j) {
            double re = gauss(rng);
            double im = gauss(rng);
            g(i, j) = std::complex<double>(re, im);
        }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd u = qr.householderQ();
    Eigen::VectorXcd diag = qr.matrixQR().diagonal();
    for (int j = 0; j < n_dim; ++j) {
        std::complex<double> r = diag(j);
        double a = std::abs(r);
        u.col(j) *= (a > 0 ? r / a : std::complex<double>(1, 0));
    }
    return u;
}

std::vector<EstimatorResult> estimate_inf_moments(const EnsembleSpec& spec,
                                                  PolyKind kind, int max_order,
                                                  int threads) {
    validate(spec);
    if (max_order < 1 || max_order > 8)
        throw SizeLimitError("estimated orders must lie in 1..8");

    // exact theory: x1 = B via its tr-moments, x2 = A via Tr-moments
    Rat m1(0), m2(0);
    for (const Rat& b : spec.b_eigs) {
        m1 += b;
        m2 += b * b;
    }
    m1 /= spec.n_dim;
    m2 /= spec.n_dim;
    Sequence a_tr;
    std::vector<Rat> apw(spec.a_eigs.begin(), spec.a_eigs.end());
    for (int n = 1; n <= max_order; ++n) {
        Rat p(0);
        for (size_t i = 0; i < apw.size(); ++i) {
            if (n > 1) apw[i] *= spec.a_eigs[i];
            p += apw[i];
        }
        a_tr.push_back(Scalar(p));
    }
    FreePolyInput in{Scalar(m1), Scalar(m2), a_tr};
    Sequence theory_seq = kind == PolyKind::Commutator
                              ? commutator_inf_law(in, max_order)
                              : anticommutator_inf_law(in, max_order);

    const int n_dim = spec.n_dim;
    const int rank = static_cast<int>(spec.a_eigs.size());
    Eigen::VectorXd a_diag = Eigen::VectorXd::Zero(n_dim);
    for (int i = 0; i < rank; ++i) a_diag(i) = rat_to_double(spec.a_eigs[i]);
    Eigen::VectorXd b_eig(n_dim);
    for (int i = 0; i < n_dim; ++i) b_eig(i) = rat_to_double(spec.b_eigs[i]);
    std::vector<std::vector<double>> traces(spec.samples,
                                            std::vector<double>(max_order, 0.0));
    const std::complex<double> unit_i(0, 1);
    run_samples(spec.samples, threads, [&](int s) {
        if (rank == 0) return; // A = 0: every polynomial vanishes
        Eigen::MatrixXcd u = sample_haar_unitary(n_dim, substream_seed(spec.seed, s));
        auto apply_b = [&](const Eigen::MatrixXcd& x) {
            return Eigen::MatrixXcd(
                u * (b_eig.asDiagonal() * (u.adjoint() * x)));
        };
        auto apply_a = [&](const Eigen::MatrixXcd& x) {
            return Eigen::MatrixXcd(a_diag.asDiagonal() * x);
        };
        // range(BA + AB) lies in span{e_1..e_r, B e_1..B e_r} and that span is
        // M-invariant, so the nonzero spectrum survives the compression
        Eigen::MatrixXcd span(n_dim, 2 * rank);
        span.leftCols(rank) =
            Eigen::MatrixXcd::Identity(n_dim, n_dim).leftCols(rank);
        span.rightCols(rank) = apply_b(span.leftCols(rank));
        Eigen::HouseholderQR<Eigen::MatrixXcd> basis_qr(span);
        Eigen::MatrixXcd q = basis_qr.householderQ() *
                             Eigen::MatrixXcd::Identity(n_dim, 2 * rank);
        Eigen::MatrixXcd mq = kind == PolyKind::Commutator
                                  ? Eigen::MatrixXcd(unit_i * (apply_b(apply_a(q)) -
                                                               apply_a(apply_b(q))))
                                  : Eigen::MatrixXcd(apply_b(apply_a(q)) +
                                                     apply_a(apply_b(q)));
        Eigen::MatrixXcd m = q.adjoint() * mq;
        double drift = (m - m.adjoint()).norm();
        if (drift > 1e-10 * (1.0 + m.norm()))
            throw PreconditionError("sample matrix drifted from Hermitian");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m,
                                                           Eigen::EigenvaluesOnly);
        const Eigen::VectorXd& ev = es.eigenvalues();
        for (int n = 1; n <= max_order; ++n) {
            double t = 0;
            for (int k = 0; k < 2 * rank; ++k) t += std::pow(ev(k), n);
            traces[s][n - 1] = t;
        }
    });

    std::string id = kind == PolyKind::Commutator ? "comm" : "anticomm";
    std::vector<EstimatorResult> out;
    std::vector<double> column(spec.samples);
    for (int n = 1; n <= max_order; ++n) {
        for (int s = 0; s < spec.samples; ++s) column[s] = traces[s][n - 1];
        out.push_back(
            aggregate(id, n, column, theory_seq[n - 1].to_double(), 0.0));
    }
    return out;
}

namespace {

std::string word_id(const JWord& word) {
    std::string id;
    for (int tok : word) {
        if (!id.empty()) id += '.';
        if (tok == kJ)
            id += 'j';
        else if (tok == kJPerp)
            id += "jperp";
        else
            id += 'a' + std::to_string(tok);
    }
    return id;
}

} // namespace

std::vector<EstimatorResult> estimate_boolean_bridge(const EnsembleSpec& spec,
                                                     const std::vector<JWord>& words,
                                                     int threads) {
    validate(spec);
    if (spec.n_dim < 2)
        throw PreconditionError("rank-1 j needs N >= 2 to stay a strict corner");
    for (const JWord& w : words)
        for (int tok : w)
            if (tok > 0)
                throw PreconditionError("bridge words use the single letter a0");

    // exact theory from B's tr-moments
    std::vector<Rat> pw(spec.b_eigs.begin(), spec.b_eigs.end());
    Sequence b_moments;
    for (int k = 1; k <= 16; ++k) {
        Rat mk(0);
        for (int i = 0; i < spec.n_dim; ++i) {
            if (k > 1) pw[i] *= spec.b_eigs[i];
            mk += pw[i];
        }
        b_moments.push_back(Scalar(mk / spec.n_dim));
    }
    IdempotentModel model;
    model.phi_prime_j = Scalar(1); // Tr of a rank-1 projection
    model.phi = [b_moments](const std::vector<int>& w) {
        if (w.empty()) return Scalar(1);
        if (w.size() > b_moments.size())
            throw IncompleteMarginalError("bridge word longer than the moment table");
        return b_moments[w.size() - 1];
    };

    Eigen::MatrixXcd b_diag = diag_embed(spec.b_eigs, spec.n_dim);
    std::vector<std::vector<double>> vals(
        spec.samples, std::vector<double>(words.size()));
    std::vector<std::vector<double>> residues(
        spec.samples, std::vector<double>(words.size()));
    run_samples(spec.samples, threads, [&](int s) {
        Eigen::MatrixXcd u = sample_haar_unitary(spec.n_dim, substream_seed(spec.seed, s));
        Eigen::MatrixXcd a = u * b_diag * u.adjoint();
        for (size_t w = 0; w < words.size(); ++w) {
            // psi-hat = Tr(word * j) = <word e_1, e_1>
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(spec.n_dim);
            v(0) = 1;
            for (auto it = words[w].rbegin(); it != words[w].rend(); ++it) {
                if (*it == kJ) {
                    std::complex<double> first = v(0);
                    v.setZero();
                    v(0) = first;
                } else if (*it == kJPerp) {
                    v(0) = 0;
                } else {
                    v = a * v;
                }
            }
            std::complex<double> t = v(0);
            vals[s][w] = t.real();
            residues[s][w] = std::abs(t.imag());
            if (residues[s][w] > 1e-8)
                throw PreconditionError("bridge trace drifted off the real axis");
        }
    });

    std::vector<EstimatorResult> out;
    std::vector<double> column(spec.samples);
    for (size_t w = 0; w < words.size(); ++w) {
        double residue = 0;
        for (int s = 0; s < spec.samples; ++s) {
            column[s] = vals[s][w];
            residue = std::max(residue, residues[s][w]);
        }
        double theory = psi_state(words[w], model).to_double();
        out.push_back(aggregate(word_id(words[w]),
                                static_cast<int>(words[w].size()), column, theory,
                                residue));
    }
    return out;
}

} // namespace infprob
