#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "polcheck/model/state.h"

namespace polcheck::lang {

enum class ExprOp {
    IntLiteral,
    RealLiteral,
    BoolLiteral,
    Variable,  // reads state feature `index`
    Constant,  // named integer constant, value resolved into `int_value`
    Negate,
    Not,
    Add,
    Sub,
    Mul,
    Div,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
    Min,
    Max,
};

enum class ExprType { Int, Real, Bool };

/// Expression tree of the modeling language. Identifiers are resolved at
/// parse time, so evaluation never looks anything up by name.
struct Expr {
    ExprOp op = ExprOp::BoolLiteral;
    std::int64_t int_value = 0;
    double real_value = 0.0;
    bool bool_value = false;
    std::string name;
    std::size_t index = 0;
    std::vector<Expr> operands;

    static Expr integer(std::int64_t v);
    static Expr real(double v);
    static Expr boolean(bool v);
    static Expr variable(std::string name, std::size_t index);
    static Expr constant(std::string name, std::int64_t value);
    static Expr unary(ExprOp op, Expr operand);
    static Expr binary(ExprOp op, Expr lhs, Expr rhs);

    bool operator==(const Expr&) const = default;
};

/// Static type; integer-only operands make Add/Sub/Mul/Div integer-typed.
ExprType type_of(const Expr& e);

bool references_variables(const Expr& e);

/// Integer semantics: "/" truncates toward zero, division by zero throws.
std::int64_t evaluate_int(const Expr& e, const model::FactoredState& state);
bool evaluate_bool(const Expr& e, const model::FactoredState& state);
/// Real semantics: "/" is real division. Used for probabilities and rewards.
double evaluate_real(const Expr& e, const model::FactoredState& state);

/// Canonical text with the minimal parentheses needed to parse back to the
/// same tree.
std::string to_string(const Expr& e);

}  // namespace polcheck::lang
