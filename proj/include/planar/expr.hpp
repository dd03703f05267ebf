#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "planar/dual.hpp"
#include "planar/geometry.hpp"
#include "planar/interval.hpp"

namespace planar {

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

enum class ExprKind {
    Constant,
    VarX,
    VarY,
    Param,
    Neg,
    Sin,
    Cos,
    Exp,
    Sqrt,
    Add,
    Sub,
    Mul,
    Div,
    PowInt,
};

/// Expression tree over variables x,y and named parameters. Parameters are
/// resolved to indices at parse time; pow exponents are non-negative integer
/// literals so dual and interval evaluation stay total.
struct ExprAst {
    ExprKind kind = ExprKind::Constant;
    double value = 0.0;    // Constant
    int param_index = -1;  // Param
    int exponent = 0;      // PowInt
    std::vector<std::unique_ptr<ExprAst>> children;
};

using ExprPtr = std::unique_ptr<ExprAst>;

/// Number of children required by a node kind.
int expr_arity(ExprKind kind);

/// Checks arity, parameter indices, and exponent signs over the whole tree.
/// Throws Error on the first violation.
void expr_validate(const ExprAst& node, std::size_t param_count);

/// Parses a single arithmetic expression. Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := ('+'|'-') factor | power
///   power  := atom ('^' uint)*
///   atom   := number | 'x' | 'y' | param | fn '(' expr ')' | '(' expr ')'
/// with fn one of sin, cos, exp, sqrt. Whitespace is insignificant.
/// param_names supplies the identifiers allowed as parameter references;
/// their indices in that vector become the Param node indices.
/// position_offset shifts reported error positions (for callers parsing a
/// substring of a larger source).
ExprPtr parse_expression(const std::string& src,
                         const std::vector<std::string>& param_names,
                         std::size_t position_offset = 0);

/// Deep copy of an expression tree.
ExprPtr expr_clone(const ExprAst& node);

template <class T>
struct ExprConst {
    static T make(double c) { return T(c); }
};

template <class S>
struct ExprConst<Dual2<S>> {
    static Dual2<S> make(double c) { return Dual2<S>(S(c)); }
};

/// Evaluates the tree at (x,y). T ranges over double, Interval, and Dual2 of
/// either; the same code path yields values, derivatives, and enclosures.
/// Interval division by a zero-containing divisor throws EnclosureError.
template <class T>
T expr_eval(const ExprAst& n, const T& x, const T& y,
            const std::vector<double>& params) {
    using std::cos;
    using std::exp;
    using std::sin;
    using std::sqrt;
    switch (n.kind) {
        case ExprKind::Constant:
            return ExprConst<T>::make(n.value);
        case ExprKind::VarX:
            return x;
        case ExprKind::VarY:
            return y;
        case ExprKind::Param:
            return ExprConst<T>::make(params.at(std::size_t(n.param_index)));
        case ExprKind::Neg:
            return -expr_eval(*n.children[0], x, y, params);
        case ExprKind::Sin:
            return sin(expr_eval(*n.children[0], x, y, params));
        case ExprKind::Cos:
            return cos(expr_eval(*n.children[0], x, y, params));
        case ExprKind::Exp:
            return exp(expr_eval(*n.children[0], x, y, params));
        case ExprKind::Sqrt:
            return sqrt(expr_eval(*n.children[0], x, y, params));
        case ExprKind::Add:
            return expr_eval(*n.children[0], x, y, params) +
                   expr_eval(*n.children[1], x, y, params);
        case ExprKind::Sub:
            return expr_eval(*n.children[0], x, y, params) -
                   expr_eval(*n.children[1], x, y, params);
        case ExprKind::Mul:
            return expr_eval(*n.children[0], x, y, params) *
                   expr_eval(*n.children[1], x, y, params);
        case ExprKind::Div:
            return expr_eval(*n.children[0], x, y, params) /
                   expr_eval(*n.children[1], x, y, params);
        case ExprKind::PowInt:
            return pow_int(expr_eval(*n.children[0], x, y, params), n.exponent);
    }
    throw Error("corrupt expression node");
}

}  // namespace planar
