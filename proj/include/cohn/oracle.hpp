#pragma once

#include "cohn/errors.hpp"

namespace cohn::oracle {

// The oracle deliberately uses plain floating point, no intervals, so
// agreement with the enclosure path is evidence rather than tautology.
struct OracleConfig {
    double fp_tol = 1e-15;  // fixed-point convergence threshold
    double fd_step = 1e-6;  // finite-difference step
    int grid_n = 512;       // parallelogram search resolution
    bool parallel = true;   // OpenMP over the search grid
};

double sigma_p(double p);

// Root of 2(1-t)^p = 1 + t^p by the fixed-point iteration
// t <- 1 - 2^(-1/p) (1 + t^p)^(1/p).
double tau_p_point(double p, const OracleConfig& cfg = {});

// Fixed point of the corrected tau iteration; residual |A^p+B^p-1| is
// checked against 10 * fp_tol.
double tau_point(double p, double sigma, const OracleConfig& cfg = {});

double delta_point(double p, double sigma, const OracleConfig& cfg = {});

enum class DerivId { d_sigma, d_sigma2, d_p, d_sigma_p, d_sigma2_p };

// Central finite differences of delta_point.
double fd_derivative(DerivId which, double p, double sigma,
                     const OracleConfig& cfg = {});

// Minimum area of a parallelogram with one vertex at the origin and the
// other three on |x|^p + |y|^p = 1: grid over the first vertex angle,
// bisection for the second vertex, local refinement around the winner.
double min_parallelogram_area(double p, const OracleConfig& cfg = {});

} // namespace cohn::oracle
