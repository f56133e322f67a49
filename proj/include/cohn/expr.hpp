#pragma once

#include <memory>

#include "cohn/interval.hpp"

namespace cohn {

// Rational expression tree in two variables; rational_eval is its natural
// interval extension.
struct Expr {
    enum class Kind { Const, VarX, VarY, Add, Sub, Mul, Div };

    Kind kind = Kind::Const;
    double value = 0.0;
    std::shared_ptr<const Expr> left, right;
};

using ExprPtr = std::shared_ptr<const Expr>;

inline ExprPtr expr_const(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Const;
    e->value = v;
    return e;
}

inline ExprPtr expr_x() {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::VarX;
    return e;
}

inline ExprPtr expr_y() {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::VarY;
    return e;
}

inline ExprPtr expr_node(Expr::Kind k, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->left = std::move(a);
    e->right = std::move(b);
    return e;
}

inline ExprPtr operator+(ExprPtr a, ExprPtr b) { return expr_node(Expr::Kind::Add, std::move(a), std::move(b)); }
inline ExprPtr operator-(ExprPtr a, ExprPtr b) { return expr_node(Expr::Kind::Sub, std::move(a), std::move(b)); }
inline ExprPtr operator*(ExprPtr a, ExprPtr b) { return expr_node(Expr::Kind::Mul, std::move(a), std::move(b)); }
inline ExprPtr operator/(ExprPtr a, ExprPtr b) { return expr_node(Expr::Kind::Div, std::move(a), std::move(b)); }

inline Interval rational_eval(const Expr& e, const Interval& x, const Interval& y) {
    switch (e.kind) {
        case Expr::Kind::Const: return Interval(e.value);
        case Expr::Kind::VarX: return x;
        case Expr::Kind::VarY: return y;
        case Expr::Kind::Add: return rational_eval(*e.left, x, y) + rational_eval(*e.right, x, y);
        case Expr::Kind::Sub: return rational_eval(*e.left, x, y) - rational_eval(*e.right, x, y);
        case Expr::Kind::Mul: return rational_eval(*e.left, x, y) * rational_eval(*e.right, x, y);
        case Expr::Kind::Div: return rational_eval(*e.left, x, y) / rational_eval(*e.right, x, y);
    }
    throw DomainError("rational_eval: bad expression node");
}

inline Interval rational_eval(const ExprPtr& e, const Interval& x, const Interval& y) {
    return rational_eval(*e, x, y);
}

} // namespace cohn
