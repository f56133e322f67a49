#include "cohn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace cohn::oracle {

namespace {

constexpr int kMaxFixedPoint = 10000;
constexpr double kPi = 3.14159265358979323846;

double outer_pow(double x, double p) {
    return std::pow(1.0 + std::pow(x, p), -1.0 / p);
}

} // namespace

double sigma_p(double p) { return std::pow(std::pow(2.0, p) - 1.0, 1.0 / p); }

double tau_p_point(double p, const OracleConfig& cfg) {
    if (!(p > 1.0)) throw DomainError("p must exceed 1");
    double t = 0.2;
    double scale = std::pow(2.0, -1.0 / p);
    for (int i = 0; i < kMaxFixedPoint; ++i) {
        double next = 1.0 - scale * std::pow(1.0 + std::pow(t, p), 1.0 / p);
        if (std::abs(next - t) < cfg.fp_tol) return next;
        t = next;
    }
    throw ConvergenceError("tau_p fixed point did not converge");
}

double tau_point(double p, double sigma, const OracleConfig& cfg) {
    if (!(p > 1.0)) throw DomainError("p must exceed 1");
    double a0 = outer_pow(sigma, p);
    double t = 0.18;
    for (int i = 0; i < kMaxFixedPoint; ++i) {
        double b0 = outer_pow(t, p);
        double A = b0 - a0;
        double inner = 1.0 - std::pow(A, p);
        if (!(A > 0.0) || !(inner > 0.0))
            throw DomainError("tau iteration left its domain");
        double next = (std::pow(inner, 1.0 / p) - sigma * a0) / b0;
        next = std::clamp(next, 0.0, 0.36);
        if (std::abs(next - t) < cfg.fp_tol) {
            t = next;
            double b = outer_pow(t, p);
            double resid =
                std::pow(b - a0, p) + std::pow(sigma * a0 + t * b, p) - 1.0;
            if (std::abs(resid) > 10.0 * std::max(cfg.fp_tol, 1e-15))
                throw ConvergenceError("tau fixed point residual too large");
            return t;
        }
        t = next;
    }
    throw ConvergenceError("tau fixed point did not converge");
}

double delta_point(double p, double sigma, const OracleConfig& cfg) {
    double t = tau_point(p, sigma, cfg);
    return (t + sigma) * outer_pow(t, p) * outer_pow(sigma, p);
}

double fd_derivative(DerivId which, double p, double sigma,
                     const OracleConfig& cfg) {
    const double h = cfg.fd_step;
    auto d = [&](double pp, double ss) { return delta_point(pp, ss, cfg); };
    switch (which) {
        case DerivId::d_sigma:
            return (d(p, sigma + h) - d(p, sigma - h)) / (2.0 * h);
        case DerivId::d_sigma2:
            return (d(p, sigma + h) - 2.0 * d(p, sigma) + d(p, sigma - h)) / (h * h);
        case DerivId::d_p:
            return (d(p + h, sigma) - d(p - h, sigma)) / (2.0 * h);
        case DerivId::d_sigma_p:
            return (d(p + h, sigma + h) - d(p + h, sigma - h) - d(p - h, sigma + h) +
                    d(p - h, sigma - h)) /
                   (4.0 * h * h);
        case DerivId::d_sigma2_p: {
            auto d2s = [&](double pp) {
                return (d(pp, sigma + h) - 2.0 * d(pp, sigma) + d(pp, sigma - h)) /
                       (h * h);
            };
            return (d2s(p + h) - d2s(p - h)) / (2.0 * h);
        }
    }
    throw OracleError("unknown derivative id");
}

namespace {

// Point on |x|^p + |y|^p = 1 at curve parameter theta.
void curve_point(double p, double theta, double& x, double& y) {
    double c = std::cos(theta), s = std::sin(theta);
    x = std::copysign(std::pow(std::abs(c), 2.0 / p), c);
    y = std::copysign(std::pow(std::abs(s), 2.0 / p), s);
}

double curve_norm(double p, double x, double y) {
    return std::pow(std::abs(x), p) + std::pow(std::abs(y), p);
}

// Minimal area over second-vertex placements for a fixed first vertex;
// returns NaN when no on-curve second vertex is found.
double min_area_for_theta1(double p, double theta1) {
    double x1, y1;
    curve_point(p, theta1, x1, y1);
    auto on_curve_defect = [&](double theta2) {
        double x2, y2;
        curve_point(p, theta2, x2, y2);
        return curve_norm(p, x1 + x2, y1 + y2) - 1.0;
    };

    constexpr int kScan = 96;
    const double lo = theta1 + 1e-9, hi = theta1 + kPi - 1e-9;
    double best = std::numeric_limits<double>::quiet_NaN();
    double prev_t = lo, prev_f = on_curve_defect(lo);
    for (int i = 1; i <= kScan; ++i) {
        double t = lo + (hi - lo) * double(i) / kScan;
        double f = on_curve_defect(t);
        if (prev_f == 0.0 || (prev_f < 0.0) != (f < 0.0)) {
            double a = prev_t, b = t;
            double fa = prev_f;
            for (int it = 0; it < 80; ++it) { // bisection: robustness over speed
                double m = 0.5 * (a + b);
                double fm = on_curve_defect(m);
                if ((fa < 0.0) == (fm < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            double x2, y2;
            curve_point(p, 0.5 * (a + b), x2, y2);
            double area = std::abs(x1 * y2 - x2 * y1);
            if (area > 1e-9 && (std::isnan(best) || area < best)) best = area;
        }
        prev_t = t;
        prev_f = f;
    }
    return best;
}

} // namespace

double min_parallelogram_area(double p, const OracleConfig& cfg) {
    if (!(p >= 1.0)) throw DomainError("p must be at least 1");
    const int n = std::max(cfg.grid_n, 8);
    // every parallelogram can be rotated so its first vertex angle lies
    // in [0, pi/2) (the curve is invariant under quarter turns)
    std::vector<double> area(n);
    std::vector<double> theta(n);
    for (int i = 0; i < n; ++i) theta[i] = (kPi / 2.0) * double(i) / n;

#pragma omp parallel for schedule(static) if (cfg.parallel)
    for (int i = 0; i < n; ++i) area[i] = min_area_for_theta1(p, theta[i]);

    int failures = 0;
    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    for (int i = 0; i < n; ++i) {
        if (std::isnan(area[i])) {
            ++failures;
            continue;
        }
        if (area[i] < best) {
            best = area[i];
            best_theta = theta[i];
        }
    }
    if (failures * 10 > n)
        throw OracleError("parallelogram search: too many root-find failures");

    // local refinement by ternary search around the grid winner
    double a = best_theta - (kPi / 2.0) / n, b = best_theta + (kPi / 2.0) / n;
    for (int it = 0; it < 60; ++it) {
        double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
        double f1 = min_area_for_theta1(p, m1);
        double f2 = min_area_for_theta1(p, m2);
        if (std::isnan(f1) || std::isnan(f2)) break;
        if (f1 < f2)
            b = m2;
        else
            a = m1;
        best = std::min({best, f1, f2});
    }
    return best;
}

} // namespace cohn::oracle
