#pragma once

#include "cohn/interval.hpp"

namespace cohn {

// Rectangle [p.lo, p.hi] x [sigma.lo, sigma.hi] in the (p, sigma)
// parameter plane. Valid boxes satisfy p.lo > 1, sigma.lo >= 1 and
// sigma.hi <= lower bound of sigma_p(p.lo); sub-boxes of a valid box are
// automatically valid since sigma_p is increasing in p.
struct Box {
    Interval p;
    Interval sigma;
};

// sigma_p = (2^p - 1)^(1/p); increasing in p, evaluated at corners.
// Accepts p.lo >= 1 (sigma_1 = 1 is the limit value).
Interval sigma_p(const Interval& p);

// Checked constructor; throws InvalidRegion. Boxes whose sigma range
// crosses the sigma_p curve are clipped when clip = true.
Box make_box(const Interval& p, const Interval& sigma, bool clip = false,
             bool* clipped = nullptr);

struct TauEnclosure {
    Interval tau{0.0, 0.36};
    int iterations = 0;
    bool converged = false;
};

// Enclosure of tau_p, the root of 2(1-t)^p = 1 + t^p in [0, 0.36]
// (algorithm TPV): interval fixed-point iteration from the initial
// bracket, intersection with the bracket, then interval Newton polish.
TauEnclosure tau_p_enclose(const Interval& p, double tol = 1e-15);

// Enclosure of tau(p, sigma) over the box (algorithm TAUV): the
// two-sided iteration realized as the natural interval extension of
//   t <- (1+t^p)^(1/p) ((1 - A^p)^(1/p) - sigma (1+sigma^p)^(-1/p)),
// intersected with [0, 0.36] each step, then interval Newton on
// Phi = A^p + B^p - 1.
TauEnclosure tau_enclose(const Box& box, double tol = 1e-15);

// The elementary subexpressions from which Delta and its derivatives are
// rationally assembled.
struct CohnAtoms {
    Interval s[4]; // sigma^(p-i)
    Interval t[4]; // tau^(p-i)
    Interval a[4]; // (1+sigma^p)^(-i-1/p)
    Interval b[4]; // (1+tau^p)^(-i-1/p)
    Interval A, B;
    Interval alpha[4]; // A^(p-i)
    Interval beta[4];  // B^(p-i)
};

// All atoms on the box at the given tau enclosure. Throws DomainError
// when an atom is not enclosable (tau^(p-i) with nonpositive exponent and
// tau touching zero).
CohnAtoms atoms(const Box& box, const Interval& tau);

// Delta(p, sigma) = (tau + sigma)(1+tau^p)^(-1/p)(1+sigma^p)^(-1/p).
Interval delta_enclose(const Box& box);
Interval delta_enclose(const Box& box, const Interval& tau);

// (Delta(p,1), Delta(p,sigma_p)) through the closed forms
//   Delta(p,1)       = 2^(-2/p) (1+tau_p)/(1-tau_p),
//   Delta(p,sigma_p) = (2^p-1)^(1/p) / 2.
std::pair<Interval, Interval> delta_endpoints(const Interval& p);

// Enclosure of the Minkowski constant c(p) = Delta(D_p)^(-p/2), with
// Delta(D_p) taken as min(Delta(p,1), Delta(p,sigma_p)). The
// identification of the critical determinant with the endpoint minimum
// is the (unproven) Minkowski conjecture; results are
// conjecture-conditional.
Interval minkowski_constant(const Interval& p);

} // namespace cohn
