#include "infprob/rdiagonal.hpp"

namespace infprob {

namespace {

Scalar seq_at(const Sequence& s, int k) {
    if (k < 1 || k > static_cast<int>(s.size())) return Scalar(0);
    return s[k - 1];
}

bool alternating(const EpsilonString& eps) {
    if (eps.size() % 2 != 0) return false;
    for (size_t i = 0; i + 1 < eps.size(); ++i)
        if (eps[i] + eps[i + 1] != 0) return false;
    return true;
}

} // namespace

StarTables rdiag_star_tables(const DeterminingSequences& ds) {
    auto lookup = [](const Sequence& first_plus, const Sequence& first_minus,
                     const EpsilonString& eps) {
        if (!alternating(eps)) return Scalar(0);
        int n = static_cast<int>(eps.size()) / 2;
        return eps[0] == 1 ? seq_at(first_plus, n) : seq_at(first_minus, n);
    };
    StarTables t;
    t.kappa = [=, alpha = ds.alpha, beta = ds.beta](const EpsilonString& eps) {
        return lookup(alpha, beta, eps);
    };
    t.kappap = [=, alphap = ds.alphap, betap = ds.betap](const EpsilonString& eps) {
        return lookup(alphap, betap, eps);
    };
    return t;
}

StarTables selfadjoint_star_tables(const Sequence& kappa, const Sequence& kappap) {
    StarTables t;
    t.kappa = [kappa](const EpsilonString& eps) {
        return seq_at(kappa, static_cast<int>(eps.size()));
    };
    t.kappap = [kappap](const EpsilonString& eps) {
        return seq_at(kappap, static_cast<int>(eps.size()));
    };
    return t;
}

Sequence inf_rdiag_alternating_cumulants(const Scalar& kappa2_x1,
                                         const Sequence& x2_inf_cumulants, int N,
                                         const Scalar& m1_x1) {
    if (!m1_x1.is_zero())
        throw PreconditionError("x1 must be centered (m_1(x1) = 0)");
    Sequence out;
    Scalar pw(1);
    for (int n = 1; n <= N; ++n) {
        if (n % 2 == 1) {
            out.push_back(Scalar(0));
        } else {
            pw *= kappa2_x1;
            out.push_back(seq_at(x2_inf_cumulants, n) * pw);
        }
    }
    return out;
}

Scalar inf_rdiag_pattern_cumulant(const Scalar& kappa2_x1,
                                  const Sequence& x2_inf_cumulants,
                                  const EpsilonString& eps, const Scalar& m1_x1) {
    if (!m1_x1.is_zero())
        throw PreconditionError("x1 must be centered (m_1(x1) = 0)");
    if (!alternating(eps)) return Scalar(0);
    int n = static_cast<int>(eps.size());
    return seq_at(x2_inf_cumulants, n) * kappa2_x1.pow(n / 2);
}

Sequence inf_cumulants_of_square(const DeterminingSequences& ds, SquareKind kind,
                                 int N) {
    const Sequence& first = kind == SquareKind::AAstar ? ds.alpha : ds.beta;
    const Sequence& rest = kind == SquareKind::AAstar ? ds.beta : ds.alpha;
    const Sequence& firstp = kind == SquareKind::AAstar ? ds.alphap : ds.betap;
    const Sequence& restp = kind == SquareKind::AAstar ? ds.betap : ds.alphap;
    Sequence out;
    for (int n = 1; n <= N; ++n) {
        Scalar total(0);
        for (const auto& pi : nc_partitions(n)) {
            // canonical block order puts the block containing 1 first
            int b = pi.num_blocks();
            std::vector<int> sizes(b);
            for (int j = 0; j < b; ++j) sizes[j] = static_cast<int>(pi.blocks()[j].size());
            Scalar tail(1);
            for (int j = 1; j < b; ++j) tail *= seq_at(rest, sizes[j]);
            total += seq_at(firstp, sizes[0]) * tail;
            for (int j = 1; j < b; ++j) {
                Scalar term = seq_at(first, sizes[0]) * seq_at(restp, sizes[j]);
                if (term.is_zero()) continue;
                for (int l = 1; l < b; ++l)
                    if (l != j) term *= seq_at(rest, sizes[l]);
                total += term;
            }
        }
        out.push_back(total);
    }
    return out;
}

namespace {

// letters: 0 = a, 1 = a*, 2 = b, 3 = b*
MultiFunctional star_functional(const StarTables& a, const StarTables& b, bool primed) {
    return MultiFunctional{[&a, &b, primed](const Tuple& args) {
        int var = args[0] / 2;
        EpsilonString eps;
        eps.reserve(args.size());
        for (int letter : args) {
            if (letter / 2 != var) return Scalar(0); // mixed cumulants vanish
            eps.push_back(letter % 2 == 0 ? 1 : -1);
        }
        const StarTables& t = var == 0 ? a : b;
        return primed ? t.kappap(eps) : t.kappa(eps);
    }};
}

} // namespace

InfScalar product_star_cumulant(const StarTables& a, const StarTables& b,
                                const EpsilonString& eps) {
    // c^{(+1)} = ab, c^{(-1)} = b* a*
    Tuple word;
    std::vector<int> group_ends;
    for (int e : eps) {
        if (e == 1) {
            word.push_back(0);
            word.push_back(2);
        } else {
            word.push_back(3);
            word.push_back(1);
        }
        group_ends.push_back(static_cast<int>(word.size()));
    }
    MultiFunctional f = star_functional(a, b, false);
    MultiFunctional fp = star_functional(a, b, true);
    return inf_cumulants_of_products(PartitionClass::NONCROSSING, f, fp, group_ends,
                                     word);
}

ClosureReport check_inf_rdiag_closure(const StarTables& a, const StarTables& b, int N) {
    ClosureReport report;
    for (int n = 1; n <= N; ++n) {
        for (std::uint64_t bits = 0; bits < (1ULL << n); ++bits) {
            EpsilonString eps(n);
            for (int k = 0; k < n; ++k) eps[k] = (bits & (1ULL << k)) ? -1 : 1;
            bool alt = n % 2 == 0;
            for (int k = 0; alt && k + 1 < n; ++k) alt = eps[k] + eps[k + 1] == 0;
            if (alt) continue; // alternating entries are allowed to be anything
            InfScalar v = product_star_cumulant(a, b, eps);
            ++report.checked;
            if (v != InfScalar(Scalar(0))) {
                report.closed = false;
                std::string desc = "eps=";
                for (int e : eps) desc += e == 1 ? '+' : '-';
                desc += " kappa=" + v.std_part.str() + " kappa'=" + v.inf_part.str();
                report.failures.push_back(std::move(desc));
            }
        }
    }
    return report;
}

} // namespace infprob
