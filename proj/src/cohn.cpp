#include "cohn/cohn.hpp"

#include <cmath>
#include <utility>

namespace cohn {

namespace {

const Interval kTauBracket{0.0, 0.36};
constexpr int kMaxIter = 100;
constexpr int kMaxNewton = 60;

Interval minus_inv(const Interval& p) { return Interval(-1.0) / p; }

// (1 + x^p)^(-1/p); the a0/b0 atom.
Interval outer_pow(const Interval& x, const Interval& p) {
    return pow_iv(Interval(1.0) + pow_iv(x, p), minus_inv(p));
}

void require_p(const Interval& p, double min_lo) {
    if (!(p.lo > min_lo)) throw DomainError("p must exceed 1");
    if (p.lo > p.hi) throw DomainError("malformed p interval");
}

} // namespace

Interval sigma_p(const Interval& p) {
    require_p(p, 1.0 - 1e-15); // accepts the p = 1 limit
    MonotoneDescriptor f{
        [](double q, double) {
            Interval qi(q);
            Interval base = pow_iv(Interval(2.0), qi) - 1.0;
            if (base.lo <= 0.0) base.lo = 0.0;
            if (base.hi <= 0.0) return Interval(0.0);
            // near p = 1 the base may touch zero after widening
            Interval pos{std::max(base.lo, 1e-300), base.hi};
            Interval r = pow_iv(pos, Interval(1.0) / qi);
            if (base.lo == 0.0) r.lo = 0.0;
            return r;
        },
        +1, +1};
    return monotone_eval(f, p, Interval(0.0));
}

Box make_box(const Interval& p, const Interval& sigma, bool clip, bool* clipped) {
    if (clipped) *clipped = false;
    if (!(p.lo > 1.0)) throw InvalidRegion("p must exceed 1");
    if (!(sigma.lo >= 1.0)) throw InvalidRegion("sigma must be at least 1");
    // conservative admissibility: sigma_p is increasing in p
    double bound = sigma_p(Interval(p.lo)).lo;
    Interval s = sigma;
    if (s.hi > bound) {
        if (!clip || s.lo > bound)
            throw InvalidRegion("sigma range exceeds sigma_p");
        s.hi = bound;
        if (clipped) *clipped = true;
    }
    return Box{p, s};
}

TauEnclosure tau_p_enclose(const Interval& p, double tol) {
    require_p(p, 1.0);
    if (!(tol > 0.0)) throw DomainError("tol must be positive");

    TauEnclosure out;
    Interval t = kTauBracket;
    Interval inv_p = Interval(1.0) / p;
    Interval half_pow = pow_iv(Interval(2.0), -inv_p);

    for (int i = 0; i < kMaxIter; ++i) {
        double w0 = width(t);
        Interval next = 1.0 - half_pow * pow_iv(Interval(1.0) + pow_iv(t, p), inv_p);
        auto isect = intersect(next, kTauBracket);
        if (!isect) throw InconsistencyError("tau_p iteration left [0, 0.36]");
        t = *isect;
        ++out.iterations;
        if (width(t) > w0 - tol) {
            out.converged = true;
            break;
        }
    }

    // Newton polish on psi(t) = 2(1-t)^p - 1 - t^p.
    for (int i = 0; i < kMaxNewton; ++i) {
        Interval dpsi = -p * (2.0 * pow_iv(1.0 - t, p - 1.0) + pow_iv(t, p - 1.0));
        if (dpsi.contains(0.0)) break;
        double m = midpoint(t);
        Interval psi_m =
            2.0 * pow_iv(Interval(1.0 - m), p) - 1.0 - pow_iv(Interval(m), p);
        Interval n = Interval(m) - psi_m / dpsi;
        auto isect = intersect(n, t);
        if (!isect) throw InconsistencyError("tau_p Newton step emptied bracket");
        if (width(*isect) > width(t) - tol) break;
        t = *isect;
    }

    // residual must still straddle zero
    Interval resid = 2.0 * pow_iv(1.0 - t, p) - 1.0 - pow_iv(t, p);
    if (!resid.contains(0.0))
        throw InconsistencyError("tau_p residual excludes zero");

    out.tau = t;
    return out;
}

namespace {

// One application of the corrected tau fixed-point map, in interval form.
Interval tau_map(const Interval& p, const Interval& sigma, const Interval& t) {
    Interval a0 = outer_pow(sigma, p);
    Interval b0_inv = pow_iv(Interval(1.0) + pow_iv(t, p), Interval(1.0) / p);
    Interval A = Interval(1.0) / b0_inv - a0;
    Interval Apow = pow_iv(A, p); // throws if A may be nonpositive
    Interval inner = Interval(1.0) - Apow;
    Interval B = pow_iv(inner, Interval(1.0) / p);
    return b0_inv * (B - sigma * a0);
}

// Phi = A^p + B^p - 1 at the point tau = m over the box.
Interval phi_at(const Interval& p, const Interval& sigma, double m) {
    Interval a0 = outer_pow(sigma, p);
    Interval b0 = outer_pow(Interval(m), p);
    Interval A = b0 - a0;
    Interval B = sigma * a0 + Interval(m) * b0;
    return pow_iv(A, p) + pow_iv(B, p) - 1.0;
}

// dPhi/dtau over the tau interval: p b1 (B^(p-1) - tau^(p-1) A^(p-1)).
Interval phi_tau(const Interval& p, const Interval& sigma, const Interval& t) {
    Interval a0 = outer_pow(sigma, p);
    Interval b0 = outer_pow(t, p);
    Interval b1 = pow_iv(Interval(1.0) + pow_iv(t, p), minus_inv(p) - 1.0);
    Interval A = b0 - a0;
    Interval B = sigma * a0 + t * b0;
    Interval t1 = pow_iv(t, p - 1.0);
    return p * b1 * (pow_iv(B, p - 1.0) - t1 * pow_iv(A, p - 1.0));
}

} // namespace

TauEnclosure tau_enclose(const Box& box, double tol) {
    require_p(box.p, 1.0);
    if (!(tol > 0.0)) throw DomainError("tol must be positive");

    TauEnclosure out;
    Interval t = kTauBracket;

    for (int i = 0; i < kMaxIter; ++i) {
        double w0 = width(t);
        Interval next;
        try {
            next = tau_map(box.p, box.sigma, t);
        } catch (const DomainError&) {
            // wide intermediate left the map's domain; keep the bracket
            t = kTauBracket;
            out.converged = false;
            break;
        }
        auto isect = intersect(next, kTauBracket);
        if (!isect) throw InconsistencyError("tau iteration left [0, 0.36]");
        t = *isect;
        ++out.iterations;
        if (width(t) > w0 - tol) {
            out.converged = true;
            break;
        }
    }

    // Interval Newton refinement; every root of Phi(p, sigma, .) in t for
    // any (p, sigma) in the box stays inside the contracted interval.
    for (int i = 0; i < kMaxNewton; ++i) {
        Interval dphi;
        try {
            dphi = phi_tau(box.p, box.sigma, t);
        } catch (const DomainError&) {
            break;
        }
        if (dphi.contains(0.0)) break;
        double m = midpoint(t);
        Interval phi_m;
        try {
            phi_m = phi_at(box.p, box.sigma, m);
        } catch (const DomainError&) {
            break;
        }
        Interval n = Interval(m) - phi_m / dphi;
        auto isect = intersect(n, t);
        if (!isect) throw InconsistencyError("tau Newton step emptied bracket");
        if (width(*isect) > width(t) - tol) break;
        t = *isect;
        out.converged = true;
    }

    out.tau = t;
    return out;
}

CohnAtoms atoms(const Box& box, const Interval& tau) {
    const Interval& p = box.p;
    const Interval& s = box.sigma;
    CohnAtoms at;
    Interval sp = pow_iv(s, p);
    Interval tp = pow_iv(tau, p);
    for (int i = 0; i < 4; ++i) {
        Interval e = p - double(i);
        at.s[i] = pow_iv(s, e);
        at.t[i] = pow_iv(tau, e); // may throw for i >= 2 near tau = 0
        Interval ei = minus_inv(p) - double(i);
        at.a[i] = pow_iv(Interval(1.0) + sp, ei);
        at.b[i] = pow_iv(Interval(1.0) + tp, ei);
    }
    at.A = at.b[0] - at.a[0];
    at.B = tau * at.b[0] + s * at.a[0];
    for (int i = 0; i < 4; ++i) {
        Interval e = p - double(i);
        at.alpha[i] = pow_iv(at.A, e);
        at.beta[i] = pow_iv(at.B, e);
    }
    return at;
}

Interval delta_enclose(const Box& box, const Interval& tau) {
    Interval a0 = outer_pow(box.sigma, box.p);
    Interval b0 = outer_pow(tau, box.p);
    return (tau + box.sigma) * b0 * a0;
}

Interval delta_enclose(const Box& box) {
    return delta_enclose(box, tau_enclose(box).tau);
}

std::pair<Interval, Interval> delta_endpoints(const Interval& p) {
    require_p(p, 1.0);
    Interval tp = tau_p_enclose(p).tau;
    Interval at_one =
        pow_iv(Interval(2.0), Interval(-2.0) / p) * (1.0 + tp) / (1.0 - tp);
    Interval at_sigma_p = sigma_p(p) * Interval(0.5);
    return {at_one, at_sigma_p};
}

Interval minkowski_constant(const Interval& p) {
    auto [d1, dsp] = delta_endpoints(p);
    Interval dmin{std::min(d1.lo, dsp.lo), std::min(d1.hi, dsp.hi)};
    return pow_iv(dmin, -p * Interval(0.5));
}

} // namespace cohn
