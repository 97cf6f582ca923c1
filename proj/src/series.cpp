#include "infprob/series.hpp"

#include <algorithm>

namespace infprob {

namespace {

void require_same_kind(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.kind() != b.kind())
        throw PreconditionError("series operation on mixed variable kinds");
}

} // namespace

TruncatedSeries::TruncatedSeries(SeriesKind kind, int order, std::vector<Scalar> tcoeffs)
    : kind_(kind), order_(order), c_(std::move(tcoeffs)) {
    if (order < 0) throw PreconditionError("series order must be >= 0");
    if (static_cast<int>(c_.size()) > order_ + 1)
        throw PreconditionError("more coefficients than the truncation order allows");
    c_.resize(static_cast<size_t>(order_) + 1, Scalar(0));
}

Scalar TruncatedSeries::t_coeff(int k) const {
    if (k < 0 || k > order_) throw OrderError("coefficient outside trusted window");
    return c_[k];
}

void TruncatedSeries::set_t_coeff(int k, Scalar v) {
    if (k < 0 || k > order_) throw OrderError("coefficient outside trusted window");
    c_[k] = std::move(v);
}

int TruncatedSeries::valuation() const {
    for (int k = 0; k <= order_; ++k)
        if (!c_[k].is_zero()) return k;
    return order_ + 1;
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
    if (order > order_) throw OrderError("cannot extend the trusted window");
    std::vector<Scalar> c(c_.begin(), c_.begin() + order + 1);
    return TruncatedSeries(kind_, order, std::move(c));
}

TruncatedSeries TruncatedSeries::shift(int k) const {
    if (k < 0 && valuation() < -k)
        throw PreconditionError("shift below valuation");
    int new_order = order_ + k;
    if (new_order < 0) throw OrderError("shift empties the trusted window");
    std::vector<Scalar> c(static_cast<size_t>(new_order) + 1, Scalar(0));
    for (int j = 0; j <= order_; ++j) {
        int t = j + k;
        if (t >= 0 && t <= new_order) c[t] = c_[j];
    }
    return TruncatedSeries(kind_, new_order, std::move(c));
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_kind(a, b);
    int order = std::min(a.order_, b.order_);
    std::vector<Scalar> c(static_cast<size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) c[k] = a.c_[k] + b.c_[k];
    return TruncatedSeries(a.kind_, order, std::move(c));
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a + (-b);
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_kind(a, b);
    // trusted orders add valuations: error O(t^{Na+1}) * O(t^{vb}) etc.
    int order = std::min(a.order_ + b.valuation(), b.order_ + a.valuation());
    order = std::min(order, a.order_ + b.order_);
    std::vector<Scalar> c(static_cast<size_t>(order) + 1, Scalar(0));
    for (int i = 0; i <= a.order_; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (int j = 0; j <= b.order_ && i + j <= order; ++j)
            c[i + j] += a.c_[i] * b.c_[j];
    }
    return TruncatedSeries(a.kind_, order, std::move(c));
}

TruncatedSeries TruncatedSeries::operator-() const {
    std::vector<Scalar> c(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) c[k] = -c_[k];
    return TruncatedSeries(kind_, order_, std::move(c));
}

TruncatedSeries TruncatedSeries::scaled(const Scalar& s) const {
    std::vector<Scalar> c(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) c[k] = c_[k] * s;
    return TruncatedSeries(kind_, order_, std::move(c));
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.kind_ == b.kind_ && a.order_ == b.order_ && a.c_ == b.c_;
}

TruncatedSeries TruncatedSeries::derivative_z() const {
    if (kind_ == SeriesKind::Z) {
        if (order_ == 0) return TruncatedSeries(kind_, 0);
        std::vector<Scalar> c(static_cast<size_t>(order_), Scalar(0));
        for (int k = 1; k <= order_; ++k) c[k - 1] = c_[k] * Scalar(k);
        return TruncatedSeries(kind_, order_ - 1, std::move(c));
    }
    // t = 1/z: d/dz t^k = -k t^{k+1}
    std::vector<Scalar> c(static_cast<size_t>(order_) + 2, Scalar(0));
    for (int k = 1; k <= order_; ++k) c[k + 1] = -(c_[k] * Scalar(k));
    return TruncatedSeries(kind_, order_ + 1, std::move(c));
}

TruncatedSeries TruncatedSeries::compose(const TruncatedSeries& inner) const {
    if (kind_ != SeriesKind::Z)
        throw PreconditionError("only z-kind series compose on the outside");
    if (inner.valuation() < 1)
        throw PreconditionError("inner series must have zero constant term");
    int order = std::min(order_, inner.order_);
    TruncatedSeries acc(inner.kind_, order);
    // Horner over the outer coefficients
    for (int k = order_; k >= 0; --k) {
        acc = acc * inner;
        if (acc.order_ > order) acc = acc.truncated(order);
        acc.set_t_coeff(0, acc.t_coeff(0) + c_[k]);
    }
    return acc;
}

TruncatedSeries TruncatedSeries::reciprocal() const {
    if (c_[0].is_zero())
        throw PreconditionError("reciprocal needs a nonzero constant term");
    std::vector<Scalar> r(static_cast<size_t>(order_) + 1, Scalar(0));
    r[0] = Scalar(1) / c_[0];
    for (int k = 1; k <= order_; ++k) {
        Scalar acc(0);
        for (int j = 1; j <= k; ++j) acc += c_[j] * r[k - j];
        r[k] = -(acc / c_[0]);
    }
    return TruncatedSeries(kind_, order_, std::move(r));
}

TruncatedSeries TruncatedSeries::reversion() const {
    if (kind_ != SeriesKind::Z) throw PreconditionError("reversion is for z-kind series");
    if (!c_[0].is_zero() || order_ < 1 || c_[1].is_zero())
        throw PreconditionError("reversion needs zero constant and nonzero linear term");
    TruncatedSeries h(SeriesKind::Z, order_);
    h.set_t_coeff(1, Scalar(1) / c_[1]);
    for (int j = 2; j <= order_; ++j) {
        TruncatedSeries e = compose(h);
        h.set_t_coeff(j, h.t_coeff(j) - e.t_coeff(j) / c_[1]);
    }
    return h;
}

int TruncatedSeries::lowest_z_exp() const {
    return kind_ == SeriesKind::Z ? 0 : -order_;
}

std::vector<Scalar> TruncatedSeries::z_coeffs_ascending() const {
    if (kind_ == SeriesKind::Z) return c_;
    std::vector<Scalar> out(c_.rbegin(), c_.rend());
    return out;
}

TruncatedSeries cauchy_from_moments(const Sequence& m, int N) {
    if (N < 1) throw PreconditionError("order must be >= 1");
    TruncatedSeries g(SeriesKind::Z_INV, N + 1);
    g.set_t_coeff(1, Scalar(1)); // m_0 = 1
    for (int n = 1; n <= N; ++n)
        g.set_t_coeff(n + 1, n <= static_cast<int>(m.size()) ? m[n - 1] : Scalar(0));
    return g;
}

TruncatedSeries r_from_moments(const Sequence& m, int N) {
    Sequence kappa = free_cumulants_from_moments(m, N);
    TruncatedSeries r(SeriesKind::Z, N - 1 >= 0 ? N - 1 : 0);
    for (int n = 1; n <= N; ++n) r.set_t_coeff(n - 1, kappa[n - 1]);
    return r;
}

TruncatedSeries psi_from_moments(const Sequence& m, int N) {
    TruncatedSeries psi(SeriesKind::Z, N);
    for (int n = 1; n <= N && n <= static_cast<int>(m.size()); ++n)
        psi.set_t_coeff(n, m[n - 1]);
    return psi;
}

TruncatedSeries inf_g_from_inf_moments(const Sequence& mprime, int N) {
    TruncatedSeries g(SeriesKind::Z_INV, N + 1);
    for (int n = 1; n <= N && n <= static_cast<int>(mprime.size()); ++n)
        g.set_t_coeff(n + 1, mprime[n - 1]);
    return g;
}

TruncatedSeries inf_r(const Sequence& m, const Sequence& mprime, int N) {
    auto pair = inf_cumulants_from_moments(m, mprime, N);
    TruncatedSeries r(SeriesKind::Z, N - 1 >= 0 ? N - 1 : 0);
    for (int n = 1; n <= N; ++n) r.set_t_coeff(n - 1, pair.primed[n - 1]);
    return r;
}

TruncatedSeries eta_from_psi(const TruncatedSeries& psi, int N) {
    if (psi.kind() != SeriesKind::Z || psi.valuation() < 1)
        throw PreconditionError("psi must be a z-kind series with zero constant term");
    TruncatedSeries p = psi.order() > N ? psi.truncated(N) : psi;
    TruncatedSeries one_plus = p;
    one_plus.set_t_coeff(0, p.t_coeff(0) + Scalar(1));
    return (p * one_plus.reciprocal()).truncated(std::min(N, p.order()));
}

Sequence spectral_shift_series(const Sequence& m, int N) {
    // -G'/G = t * (sum_k k c_k t^{k-1}) / (sum_k c_k t^{k-1}); tau_n needs m_n only
    TruncatedSeries g = cauchy_from_moments(m, std::max(N, 1)); // c_k on t^k, k >= 1
    int order = g.order();
    TruncatedSeries num(SeriesKind::Z_INV, order - 1), den(SeriesKind::Z_INV, order - 1);
    for (int k = 1; k <= order; ++k) {
        num.set_t_coeff(k - 1, g.t_coeff(k) * Scalar(k));
        den.set_t_coeff(k - 1, g.t_coeff(k));
    }
    TruncatedSeries ratio = (num * den.reciprocal()).shift(1); // tau_n on t^{n+1}
    Sequence tau;
    for (int n = 0; n <= N; ++n) tau.push_back(ratio.t_coeff(n + 1));
    return tau;
}

} // namespace infprob
