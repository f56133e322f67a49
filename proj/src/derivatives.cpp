#include "cohn/derivatives.hpp"

#include "cohn/series.hpp"

namespace cohn {

namespace {

using Var = TSeries::Var;

struct CohnSeries {
    TSeries phi;
    TSeries delta;
};

// Series of Phi and Delta in (ds, dp, dt) around the box. with_dp = false
// freezes p (constant exponent), which also admits tau enclosures that
// touch zero as long as every tracked derivative order stays below p.
CohnSeries build_series(const Interval& p, const Interval& sigma,
                        const Interval& tau, int deg, bool with_dp) {
    TSeries S = TSeries::variable(sigma, Var::ds, deg);
    TSeries P = with_dp ? TSeries::variable(p, Var::dp, deg)
                        : TSeries::constant(p, deg);
    TSeries T = TSeries::variable(tau, Var::dt, deg);

    TSeries neg_inv_p = -recip_s(P);
    TSeries a0 = pow_s(pow_s(S, P) + 1.0, neg_inv_p); // (1 + S^P)^(-1/P)
    TSeries b0 = pow_s(pow_s(T, P) + 1.0, neg_inv_p);
    TSeries A = b0 - a0;
    TSeries B = T * b0 + S * a0;

    CohnSeries out{pow_s(A, P) + pow_s(B, P) - 1.0, (T + S) * b0 * a0};
    return out;
}

// Solve Phi(p, sigma, tau0 + w(ds,dp)) = 0 for the tau series w, order by
// order: at order m only the constant coefficient of Phi_tau multiplies
// the new unknowns, so w_k = -[Phi(., w_<m)]_k / Phi_tau.
TSeries solve_tau_series(const TSeries& phi) {
    const int deg = phi.deg();
    Interval phi_t0 = phi.coeff(0, 0, 1);
    if (phi_t0.contains(0.0))
        throw SingularityError("Phi_tau encloses zero on this box");

    TSeries w(deg);
    for (int m = 1; m <= deg; ++m) {
        TSeries resid = substitute_dt(phi, w);
        for (int i = 0; i <= m; ++i) {
            int j = m - i;
            if (j > deg) continue;
            w.coeff(i, j, 0) = -resid.coeff(i, j, 0) / phi_t0;
        }
    }
    return w;
}

Interval checked_tau(const Box& box, bool need_positive) {
    Interval tau = tau_enclose(box).tau;
    if (need_positive && !(tau.lo > 0.0))
        throw DomainError("tau enclosure touches zero; box too close to sigma_p");
    return tau;
}

// Delta as a series in (ds, dp) along the constraint manifold.
TSeries delta_composed(const Box& box, const Interval& tau, int deg, bool with_dp) {
    CohnSeries cs = build_series(box.p, box.sigma, tau, deg, with_dp);
    TSeries w = solve_tau_series(cs.phi);
    return substitute_dt(cs.delta, w);
}

// g = Delta_sigma Phi_tau - Delta_tau Phi_sigma as a series in (ds, dp).
TSeries g_composed(const Box& box, const Interval& tau, int deg, bool with_dp) {
    CohnSeries cs = build_series(box.p, box.sigma, tau, deg + 1, with_dp);
    TSeries g = formal_derivative(cs.delta, Var::ds) * formal_derivative(cs.phi, Var::dt)
              - formal_derivative(cs.delta, Var::dt) * formal_derivative(cs.phi, Var::ds);
    TSeries w = solve_tau_series(cs.phi);
    return substitute_dt(g, w);
}

Box midpoint_box(const Box& box) {
    return Box{Interval(midpoint(box.p)), Interval(midpoint(box.sigma))};
}

bool is_point(const Box& box) {
    return width(box.p) == 0.0 && width(box.sigma) == 0.0;
}

// Mean value form: f(box) is contained in
//   f(mid) + f_p(box) (p - p_m) + f_sigma(box) (sigma - sigma_m).
// Direct interval evaluation over a box overestimates by a large constant
// times the box width; the centered form shrinks like width times the
// gradient magnitude, which is what lets the bisection verifier terminate.
Interval centered(const Interval& f0, const Interval& gp, const Interval& gs,
                  const Box& box) {
    Interval r = f0 + gs * (box.sigma - Interval(midpoint(box.sigma)));
    if (width(box.p) > 0.0)
        r = r + gp * (box.p - Interval(midpoint(box.p)));
    return r;
}

// Combine a raw enclosure with a mean value form produced by `mv`; both
// enclose the true range, so the intersection does too. Any domain or
// singularity failure in the centered path falls back to the raw result.
template <typename MV>
Interval tighten(const Interval& raw, const Box& box, MV&& mv) {
    if (is_point(box)) return raw;
    try {
        if (auto t = intersect(raw, mv())) return *t;
    } catch (const DomainError&) {
    } catch (const SingularityError&) {
    }
    return raw;
}

} // namespace

DerivativeSet derivatives_enclose(const Box& box) {
    Interval tau = checked_tau(box, /*need_positive=*/true);
    CohnSeries cs = build_series(box.p, box.sigma, tau, 3, /*with_dp=*/true);
    TSeries w = solve_tau_series(cs.phi);
    TSeries d = substitute_dt(cs.delta, w);

    DerivativeSet out;
    out.delta = d.coeff(0, 0, 0);
    // tighten the value with the direct assembly; both enclose it
    if (auto tight = intersect(out.delta, delta_enclose(box, tau)))
        out.delta = *tight;
    out.d_sigma = d.coeff(1, 0, 0);
    out.d_sigma2 = d.coeff(2, 0, 0) * 2.0;
    out.d_p = d.coeff(0, 1, 0);
    out.d_sigma_p = d.coeff(1, 1, 0);
    out.d_sigma2_p = d.coeff(2, 1, 0) * 2.0;
    return out;
}

Interval g_enclose(const Box& box) {
    Interval tau = tau_enclose(box).tau;
    CohnSeries cs = build_series(box.p, box.sigma, tau, 1, /*with_dp=*/false);
    Interval d_s = cs.delta.coeff(1, 0, 0);
    Interval d_t = cs.delta.coeff(0, 0, 1);
    Interval p_s = cs.phi.coeff(1, 0, 0);
    Interval p_t = cs.phi.coeff(0, 0, 1);
    Interval raw = d_s * p_t - d_t * p_s;
    return tighten(raw, box, [&] {
        bool wp = width(box.p) > 0.0;
        Interval f0 = g_enclose(midpoint_box(box));
        TSeries g = g_composed(box, tau, 1, wp);
        return centered(f0, g.coeff(0, 1, 0), g.coeff(1, 0, 0), box);
    });
}

Interval h_enclose(const Box& box) {
    Interval tau = tau_enclose(box).tau;
    CohnSeries cs = build_series(box.p, box.sigma, tau, 2, /*with_dp=*/false);

    TSeries d_s = formal_derivative(cs.delta, Var::ds);
    TSeries d_t = formal_derivative(cs.delta, Var::dt);
    TSeries p_s = formal_derivative(cs.phi, Var::ds);
    TSeries p_t = formal_derivative(cs.phi, Var::dt);
    TSeries g = d_s * p_t - d_t * p_s;

    Interval phi_s0 = cs.phi.coeff(1, 0, 0);
    Interval phi_t0 = cs.phi.coeff(0, 0, 1);
    if (phi_t0.contains(0.0))
        throw SingularityError("Phi_tau encloses zero on this box");
    Interval tau_s = -phi_s0 / phi_t0;
    Interval raw = g.coeff(1, 0, 0) + g.coeff(0, 0, 1) * tau_s;
    return tighten(raw, box, [&] {
        bool wp = width(box.p) > 0.0;
        Interval f0 = h_enclose(midpoint_box(box));
        TSeries gc = g_composed(box, tau, 2, wp);
        return centered(f0, gc.coeff(1, 1, 0), gc.coeff(2, 0, 0) * 2.0, box);
    });
}

Interval delta_refined(const Box& box) {
    Interval tau = tau_enclose(box).tau;
    Interval raw = delta_enclose(box, tau);
    return tighten(raw, box, [&] {
        bool wp = width(box.p) > 0.0;
        Interval f0 = delta_enclose(midpoint_box(box));
        TSeries d = delta_composed(box, tau, 1, wp);
        return centered(f0, d.coeff(0, 1, 0), d.coeff(1, 0, 0), box);
    });
}

Interval l0_enclose(const Box& box) {
    return delta_refined(box) - delta_endpoints(box.p).first;
}

Interval l1_enclose(const Box& box) {
    return delta_refined(box) - delta_endpoints(box.p).second;
}

namespace {

Interval sigma_deriv(const Box& box, int order) {
    Interval tau = tau_enclose(box).tau;
    CohnSeries cs = build_series(box.p, box.sigma, tau, order, /*with_dp=*/false);
    TSeries w = solve_tau_series(cs.phi);
    TSeries d = substitute_dt(cs.delta, w);
    Interval raw = order == 1 ? d.coeff(1, 0, 0) : d.coeff(2, 0, 0) * 2.0;
    return tighten(raw, box, [&] {
        bool wp = width(box.p) > 0.0;
        Interval f0 = sigma_deriv(midpoint_box(box), order);
        TSeries dc = delta_composed(box, tau, order + 1, wp);
        Interval gp = order == 1 ? dc.coeff(1, 1, 0) : dc.coeff(2, 1, 0) * 2.0;
        Interval gs = order == 1 ? dc.coeff(2, 0, 0) * 2.0 : dc.coeff(3, 0, 0) * 6.0;
        return centered(f0, gp, gs, box);
    });
}

} // namespace

Interval d_sigma_enclose(const Box& box) { return sigma_deriv(box, 1); }
Interval d_sigma2_enclose(const Box& box) { return sigma_deriv(box, 2); }

Interval d_sigma2_at_sigma1(const Interval& p) {
    Interval tau = tau_p_enclose(p).tau; // tau(p, 1) = tau_p
    CohnSeries cs = build_series(p, Interval(1.0), tau, 2, /*with_dp=*/false);
    TSeries w = solve_tau_series(cs.phi);
    TSeries d = substitute_dt(cs.delta, w);
    return d.coeff(2, 0, 0) * 2.0;
}

Interval d_sigma2_at_sigmap(const Interval& p) {
    if (!(p.lo > 2.0))
        throw DomainError("sigma_p slice derivatives require p > 2");
    Interval sp = sigma_p(p);
    // tau vanishes identically on sigma = sigma_p: there A = 1/2 and
    // B = sigma_p/2, so Phi = 2^-p (1 + sigma_p^p) - 1 = 0 exactly. Using
    // the exact zero keeps the fractional powers of the tau series from
    // blowing up (eps^(p-2) is order one for p near 2).
    CohnSeries cs = build_series(p, sp, Interval(0.0), 2, /*with_dp=*/false);
    TSeries w = solve_tau_series(cs.phi);
    TSeries d = substitute_dt(cs.delta, w);
    return d.coeff(2, 0, 0) * 2.0;
}

} // namespace cohn
