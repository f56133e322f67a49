#include "cohn/series.hpp"

#include <cmath>

namespace cohn {

namespace {

struct Idx {
    int i, j, k;
};

constexpr std::array<Idx, TSeries::kTerms> make_idx_table() {
    std::array<Idx, TSeries::kTerms> t{};
    int n = 0;
    for (int d = 0; d <= TSeries::kMaxDeg; ++d)
        for (int i = d; i >= 0; --i)
            for (int j = d - i; j >= 0; --j)
                t[n++] = {i, j, d - i - j};
    return t;
}

constexpr auto kIdx = make_idx_table();

constexpr int kOffset[5] = {0, 1, 4, 10, 20}; // first slot of each total degree

int slot(int i, int j, int k) {
    const int d = i + j + k;
    int n = kOffset[d];
    // mirror the enumeration order in make_idx_table
    for (int ii = d; ii > i; --ii) n += d - ii + 1;
    n += (d - i) - j;
    return n;
}

bool is_zero(const Interval& v) { return v.lo == 0.0 && v.hi == 0.0; }

} // namespace

TSeries TSeries::constant(const Interval& c, int deg) {
    TSeries s(deg);
    s.c_[0] = c;
    return s;
}

TSeries TSeries::variable(const Interval& c, Var v, int deg) {
    TSeries s(deg);
    s.c_[0] = c;
    if (deg >= 1) {
        int i = v == Var::ds ? 1 : 0;
        int j = v == Var::dp ? 1 : 0;
        int k = v == Var::dt ? 1 : 0;
        s.c_[slot(i, j, k)] = Interval(1.0);
    }
    return s;
}

const Interval& TSeries::coeff(int i, int j, int k) const { return c_[slot(i, j, k)]; }
Interval& TSeries::coeff(int i, int j, int k) { return c_[slot(i, j, k)]; }

bool TSeries::is_constant() const {
    for (int n = 1; n < kTerms; ++n)
        if (!is_zero(c_[n])) return false;
    return true;
}

TSeries operator+(const TSeries& a, const TSeries& b) {
    TSeries r(std::min(a.deg_, b.deg_));
    for (int n = 0; n < TSeries::kTerms; ++n) {
        const Idx& ix = kIdx[n];
        if (ix.i + ix.j + ix.k > r.deg_) break;
        r.c_[n] = a.c_[n] + b.c_[n];
    }
    return r;
}

TSeries operator-(const TSeries& a, const TSeries& b) {
    TSeries r(std::min(a.deg_, b.deg_));
    for (int n = 0; n < TSeries::kTerms; ++n) {
        const Idx& ix = kIdx[n];
        if (ix.i + ix.j + ix.k > r.deg_) break;
        r.c_[n] = a.c_[n] - b.c_[n];
    }
    return r;
}

TSeries operator-(const TSeries& a) {
    TSeries r(a.deg_);
    for (int n = 0; n < TSeries::kTerms; ++n) r.c_[n] = -a.c_[n];
    return r;
}

TSeries operator*(const TSeries& a, const TSeries& b) {
    TSeries r(std::min(a.deg_, b.deg_));
    for (int na = 0; na < TSeries::kTerms; ++na) {
        const Idx& ia = kIdx[na];
        const int da = ia.i + ia.j + ia.k;
        if (da > r.deg_) break;
        if (is_zero(a.c_[na])) continue;
        for (int nb = 0; nb < TSeries::kTerms; ++nb) {
            const Idx& ib = kIdx[nb];
            const int db = ib.i + ib.j + ib.k;
            if (da + db > r.deg_) break;
            if (is_zero(b.c_[nb])) continue;
            int ns = slot(ia.i + ib.i, ia.j + ib.j, ia.k + ib.k);
            r.c_[ns] = r.c_[ns] + a.c_[na] * b.c_[nb];
        }
    }
    return r;
}

TSeries operator+(const TSeries& a, double c) { return a + TSeries::constant(Interval(c), a.deg_); }
TSeries operator-(const TSeries& a, double c) { return a + (-c); }
TSeries operator-(double c, const TSeries& a) { return TSeries::constant(Interval(c), a.deg_) - a; }

TSeries operator*(const TSeries& a, const Interval& c) {
    TSeries r(a.deg_);
    for (int n = 0; n < TSeries::kTerms; ++n) r.c_[n] = a.c_[n] * c;
    return r;
}

TSeries compose_analytic(const TSeries& u,
                         const std::array<Interval, TSeries::kMaxDeg + 1>& cm) {
    const int deg = u.deg_;
    TSeries w = u;
    w.c_[0] = Interval(0.0); // displacement from the constant term
    TSeries r = TSeries::constant(cm[0], deg);
    TSeries wp = TSeries::constant(Interval(1.0), deg);
    for (int m = 1; m <= deg; ++m) {
        wp = wp * w;
        r = r + wp * cm[m];
    }
    return r;
}

TSeries exp_s(const TSeries& u) {
    Interval e = exp_iv(u.c_[0]);
    std::array<Interval, TSeries::kMaxDeg + 1> cm{e, e, e * Interval(0.5),
                                                  e * Interval(1.0 / 6.0)};
    return compose_analytic(u, cm);
}

TSeries log_s(const TSeries& u) {
    const Interval& u0 = u.c_[0];
    if (u0.lo <= 0.0) throw DomainError("log_s: constant term touches zero");
    Interval r = Interval(1.0) / u0;
    Interval r2 = r * r;
    std::array<Interval, TSeries::kMaxDeg + 1> cm{log_iv(u0), r, -r2 * Interval(0.5),
                                                  r2 * r * Interval(1.0 / 3.0)};
    return compose_analytic(u, cm);
}

TSeries recip_s(const TSeries& u) {
    const Interval& u0 = u.c_[0];
    Interval r = Interval(1.0) / u0;
    Interval r2 = r * r;
    std::array<Interval, TSeries::kMaxDeg + 1> cm{r, -r2, r2 * r, -r2 * r2};
    return compose_analytic(u, cm);
}

TSeries pow_s(const TSeries& u, const TSeries& v) {
    const Interval& u0 = u.c_[0];
    if (u0.lo > 0.0) return exp_s(v * log_s(u));
    if (u0.lo >= 0.0 && v.is_constant() && v.c_[0].lo > 0.0) {
        // x^e with e a fixed positive exponent interval: the m-th Taylor
        // coefficient is C(e,m) x^(e-m), which stays enclosable at x = 0
        // as long as e - m remains positive for every tracked order.
        const Interval e = v.c_[0];
        std::array<Interval, TSeries::kMaxDeg + 1> cm{};
        Interval binom(1.0);
        for (int m = 0; m <= u.deg_; ++m) {
            if (m > 0) binom = binom * (e - double(m - 1)) / double(m);
            Interval em = e - double(m);
            if (m == 0)
                cm[m] = pow_iv(u0, e);
            else if (em.lo > 0.0 || u0.lo > 0.0)
                cm[m] = binom * pow_iv(u0, em);
            else
                throw DomainError("pow_s: derivative unbounded at zero base");
        }
        return compose_analytic(u, cm);
    }
    throw DomainError("pow_s: base constant term not positive");
}

TSeries substitute_dt(const TSeries& f, const TSeries& w) {
    const int deg = std::min(f.deg_, w.deg_);
    TSeries r(deg);
    TSeries wp = TSeries::constant(Interval(1.0), deg); // w^k
    for (int k = 0; k <= deg; ++k) {
        if (k > 0) wp = wp * w;
        for (int n = 0; n < TSeries::kTerms; ++n) {
            const Idx& ix = kIdx[n];
            if (ix.k != k || ix.i + ix.j + ix.k > f.deg_) continue;
            if (is_zero(f.c_[n])) continue;
            // term f_(i,j,k) ds^i dp^j w^k
            for (int nw = 0; nw < TSeries::kTerms; ++nw) {
                const Idx& iw = kIdx[nw];
                if (iw.k != 0) continue;
                const int dtot = ix.i + iw.i + ix.j + iw.j;
                if (dtot > deg) continue;
                if (is_zero(wp.c_[nw])) continue;
                int ns = slot(ix.i + iw.i, ix.j + iw.j, 0);
                r.c_[ns] = r.c_[ns] + f.c_[n] * wp.c_[nw];
            }
        }
    }
    return r;
}

TSeries formal_derivative(const TSeries& f, TSeries::Var v) {
    TSeries r(std::max(f.deg_ - 1, 0));
    for (int n = 0; n < TSeries::kTerms; ++n) {
        const Idx& ix = kIdx[n];
        int i = ix.i, j = ix.j, k = ix.k;
        switch (v) {
            case TSeries::Var::ds: i = ix.i + 1; break;
            case TSeries::Var::dp: j = ix.j + 1; break;
            case TSeries::Var::dt: k = ix.k + 1; break;
        }
        if (i + j + k > TSeries::kMaxDeg) continue;
        int mult = v == TSeries::Var::ds ? i : (v == TSeries::Var::dp ? j : k);
        r.c_[n] = f.c_[slot(i, j, k)] * Interval(double(mult));
    }
    return r;
}

} // namespace cohn
