#include "cohn/interval.hpp"

#include <cmath>

namespace cohn {

namespace {

void check_finite(double v) {
    if (!std::isfinite(v)) throw DomainError("interval endpoint overflow");
}

// u^v at a point, u > 0, via exp(v log u). The widening budget covers the
// ~1 ulp libm errors amplified through exp: abs error of the exponent is
// about 2 ulp(arg), which exp turns into 2|arg| ulps of the result.
Interval point_pow(double u, double v) {
    if (u == 1.0 || v == 0.0) return Interval(1.0);
    if (v == std::rint(v) && std::abs(v) <= 64.0) {
        long n = static_cast<long>(v);
        Interval r = powi_iv(Interval(u), n >= 0 ? n : -n);
        return n >= 0 ? r : Interval(1.0) / r;
    }
    double arg = v * std::log(u);
    double r = std::exp(arg);
    check_finite(r);
    int ulps = 3 + static_cast<int>(2.0 * std::abs(arg));
    double lo = detail::down_ulps(r, ulps);
    double hi = detail::up_ulps(r, ulps);
    if (r > 0 && lo < 0) lo = 0.0;
    return {lo, hi};
}

} // namespace

Interval exp_iv(const Interval& x) {
    double lo = detail::down_ulps(std::exp(x.lo), 2);
    double hi = detail::up_ulps(std::exp(x.hi), 2);
    check_finite(hi);
    return {std::max(lo, 0.0), hi};
}

Interval log_iv(const Interval& x) {
    if (x.lo <= 0.0) throw DomainError("log of interval touching zero");
    return {detail::down_ulps(std::log(x.lo), 2), detail::up_ulps(std::log(x.hi), 2)};
}

Interval powi_iv(Interval a, long n) {
    Interval r(1.0);
    while (n > 0) {
        if (n & 1) r = r * a;
        a = a * a;
        n >>= 1;
    }
    return r;
}

Interval pow_iv(const Interval& x, const Interval& y) {
    // u^v is monotone in each argument for the other fixed, so the range
    // over a box is attained at corners.
    if (x.lo > 0.0) {
        Interval r = point_pow(x.lo, y.lo);
        r = hull(r, point_pow(x.lo, y.hi));
        r = hull(r, point_pow(x.hi, y.lo));
        r = hull(r, point_pow(x.hi, y.hi));
        return r;
    }
    if (x.lo >= 0.0 && y.lo > 0.0) {
        // 0^v = 0 for v > 0; upper corner from the positive part.
        if (x.hi == 0.0) return Interval(0.0);
        Interval upper = hull(point_pow(x.hi, y.lo), point_pow(x.hi, y.hi));
        return {0.0, std::max(upper.hi, 0.0)};
    }
    throw DomainError("pow: nonpositive base with general exponent");
}

Interval monotone_eval(const MonotoneDescriptor& f, const Interval& x,
                       const Interval& y) {
    const double x_min = f.sign_x > 0 ? x.lo : x.hi;
    const double x_max = f.sign_x > 0 ? x.hi : x.lo;
    const double y_min = f.sign_y > 0 ? y.lo : y.hi;
    const double y_max = f.sign_y > 0 ? y.hi : y.lo;
    Interval at_min = f.eval(x_min, y_min);
    Interval at_max = f.eval(x_max, y_max);
    return {at_min.lo, at_max.hi};
}

} // namespace cohn
