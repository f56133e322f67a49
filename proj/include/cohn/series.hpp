#pragma once

#include <array>

#include "cohn/interval.hpp"

namespace cohn {

// Truncated interval power series in three formal variables
//   ds (sigma displacement), dp (p displacement), dt (tau displacement),
// total degree <= 3. Coefficient (i,j,k) encloses the corresponding mixed
// partial derivative divided by i!j!k!, taken at any point whose
// coordinates lie in the constant terms. All arithmetic is exact on the
// formal side (coefficients up to `deg` depend only on operand
// coefficients up to `deg`), so containment is inherited from the
// interval operations.
class TSeries {
public:
    static constexpr int kMaxDeg = 3;
    static constexpr int kTerms = 20; // multi-indices with i+j+k <= 3

    enum class Var { ds = 0, dp = 1, dt = 2 };

    explicit TSeries(int deg = kMaxDeg) : deg_(deg) {}

    static TSeries constant(const Interval& c, int deg = kMaxDeg);
    // c + (the chosen formal variable)
    static TSeries variable(const Interval& c, Var v, int deg = kMaxDeg);

    int deg() const { return deg_; }
    const Interval& coeff(int i, int j, int k) const;
    Interval& coeff(int i, int j, int k);

    bool is_constant() const;

    friend TSeries operator+(const TSeries& a, const TSeries& b);
    friend TSeries operator-(const TSeries& a, const TSeries& b);
    friend TSeries operator-(const TSeries& a);
    friend TSeries operator*(const TSeries& a, const TSeries& b);

    friend TSeries operator+(const TSeries& a, double c);
    friend TSeries operator-(const TSeries& a, double c);
    friend TSeries operator-(double c, const TSeries& a);
    friend TSeries operator*(const TSeries& a, const Interval& c);

    // f(u) for analytic f, given cm[m] enclosing f^(m)(constant term)/m!.
    friend TSeries compose_analytic(const TSeries& u,
                                    const std::array<Interval, kMaxDeg + 1>& cm);

    friend TSeries exp_s(const TSeries& u);
    friend TSeries log_s(const TSeries& u);   // constant term > 0
    friend TSeries recip_s(const TSeries& u); // constant term excludes 0

    // u^v. Positive constant term routes through exp(v log u); a base
    // whose constant term touches zero is accepted only for a constant
    // positive exponent, via the real-power derivative coefficients.
    friend TSeries pow_s(const TSeries& u, const TSeries& v);

    // Substitute dt := w(ds, dp), where w has no dt dependence and no
    // constant term.
    friend TSeries substitute_dt(const TSeries& f, const TSeries& w);

    // Formal partial derivative; drops the tracked degree by one.
    friend TSeries formal_derivative(const TSeries& f, Var v);

private:
    int deg_;
    std::array<Interval, kTerms> c_{};
};

} // namespace cohn
