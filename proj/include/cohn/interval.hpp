#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "cohn/errors.hpp"

namespace cohn {

namespace detail {

inline double next_up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

inline double next_down(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

inline double up_ulps(double x, int n) {
    for (int i = 0; i < n; ++i) x = next_up(x);
    return x;
}

inline double down_ulps(double x, int n) {
    for (int i = 0; i < n; ++i) x = next_down(x);
    return x;
}

} // namespace detail

// Closed interval [lo, hi] with finite endpoints. Every operation widens
// its result outward, so containment holds without directed-rounding
// control: x in X, y in Y  =>  x op y in X op Y.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    explicit Interval(double v) : lo(v), hi(v) {}
    Interval(double l, double h) : lo(l), hi(h) {
        if (!(std::isfinite(l) && std::isfinite(h)) || l > h)
            throw DomainError("malformed interval endpoints");
    }

    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
};

inline double width(const Interval& a) { return a.hi - a.lo; }

inline double midpoint(const Interval& a) {
    double m = 0.5 * (a.lo + a.hi);
    if (!std::isfinite(m)) m = 0.5 * a.lo + 0.5 * a.hi;
    return std::clamp(m, a.lo, a.hi);
}

inline Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

// Empty intersection is a value, not an error: the tau iteration uses it
// to signal that an initial bracket was provably wrong.
inline std::optional<Interval> intersect(const Interval& a, const Interval& b) {
    double lo = std::max(a.lo, b.lo);
    double hi = std::min(a.hi, b.hi);
    if (lo > hi) return std::nullopt;
    return Interval{lo, hi};
}

inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

inline Interval operator+(const Interval& a, const Interval& b) {
    return {detail::next_down(a.lo + b.lo), detail::next_up(a.hi + b.hi)};
}

inline Interval operator-(const Interval& a, const Interval& b) {
    return {detail::next_down(a.lo - b.hi), detail::next_up(a.hi - b.lo)};
}

inline Interval operator*(const Interval& a, const Interval& b) {
    const double p1 = a.lo * b.lo, p2 = a.lo * b.hi;
    const double p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {detail::next_down(std::min({p1, p2, p3, p4})),
            detail::next_up(std::max({p1, p2, p3, p4}))};
}

inline Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo <= 0.0 && 0.0 <= b.hi)
        throw DomainError("division by interval containing zero");
    const double q1 = a.lo / b.lo, q2 = a.lo / b.hi;
    const double q3 = a.hi / b.lo, q4 = a.hi / b.hi;
    return {detail::next_down(std::min({q1, q2, q3, q4})),
            detail::next_up(std::max({q1, q2, q3, q4}))};
}

inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }
inline Interval operator/(double a, const Interval& b) { return Interval(a) / b; }

// Enclosures of the elementary transcendentals; the underlying libm calls
// are faithful to within ~1 ulp, widened to 2 per endpoint.
Interval exp_iv(const Interval& x);
Interval log_iv(const Interval& x);

// Enclosure of {u^v : u in x, v in y}. Requires x.lo > 0 in general, or
// x.lo >= 0 with y.lo > 0 (monotone closure of the positive-base branch).
Interval pow_iv(const Interval& x, const Interval& y);

// Enclosure of a^n for integer n >= 0 by binary exponentiation; tighter
// than the exp/log route for exact small powers.
Interval powi_iv(Interval a, long n);

// A pointwise evaluator together with its declared monotonicity signs.
// The caller contract is that the function really is monotone in each
// argument with these signs over the queried box.
struct MonotoneDescriptor {
    std::function<Interval(double, double)> eval; // pointwise enclosure
    int sign_x = +1;
    int sign_y = +1;
};

// Optimal-up-to-rounding evaluation of a coordinatewise monotone function:
// pick the two corners selected by the signs.
Interval monotone_eval(const MonotoneDescriptor& f, const Interval& x,
                       const Interval& y);

} // namespace cohn
