#pragma once

#include "cohn/cohn.hpp"

namespace cohn {

// Enclosures of Delta and its partial derivatives
// Delta'_s, Delta''_ss, Delta'_p, Delta''_sp, Delta'''_ssp on a box.
struct DerivativeSet {
    Interval delta;
    Interval d_sigma;
    Interval d_sigma2;
    Interval d_p;
    Interval d_sigma_p;
    Interval d_sigma2_p;
};

// Implicit differentiation of Phi(p, sigma, tau) = A^p + B^p - 1 = 0:
// the tau(p, sigma) Taylor coefficients are solved order by order from
// the series of Phi, then substituted into the series of Delta. Throws
// SingularityError when the Phi_tau enclosure contains 0 and DomainError
// when the tau enclosure touches 0 (boxes hugging the sigma_p curve).
DerivativeSet derivatives_enclose(const Box& box);

// g(p, sigma) = Delta_s Phi_t - Delta_t Phi_s (partials of the
// three-argument forms). Since Phi_t > 0 on the domain, g has the same
// sign as the total derivative dDelta/dsigma.
Interval g_enclose(const Box& box);

// h = dg/dsigma, the total sigma-derivative of g along tau(p, sigma).
Interval h_enclose(const Box& box);

// Delta over a box, tightened by a mean value form; falls back to the
// direct assembly when the centered evaluation is unavailable.
Interval delta_refined(const Box& box);

// l0 = Delta(p, sigma) - Delta(p, 1);  l1 = Delta(p, sigma) - Delta(p, sigma_p).
Interval l0_enclose(const Box& box);
Interval l1_enclose(const Box& box);

// sigma-direction derivatives alone, via the frozen-p series; cheaper
// than the full set and tolerant of tau enclosures touching zero when the
// tracked order stays below p.
Interval d_sigma_enclose(const Box& box);
Interval d_sigma2_enclose(const Box& box);

// Delta''_ss restricted to the slice sigma = 1 (tau = tau_p there).
Interval d_sigma2_at_sigma1(const Interval& p);

// Delta''_ss restricted to sigma = sigma_p, where tau = 0: uses the
// reduced-order series with constant exponent, valid for p > 2.
Interval d_sigma2_at_sigmap(const Interval& p);

} // namespace cohn
