#include "polcheck/lang/expression.h"

#include <algorithm>
#include <cmath>

#include "common/lexer.h"
#include "polcheck/lang/symbolic_model.h"

namespace polcheck::lang {

Expr Expr::integer(std::int64_t v) {
    Expr e;
    e.op = ExprOp::IntLiteral;
    e.int_value = v;
    return e;
}

Expr Expr::real(double v) {
    Expr e;
    e.op = ExprOp::RealLiteral;
    e.real_value = v;
    return e;
}

Expr Expr::boolean(bool v) {
    Expr e;
    e.op = ExprOp::BoolLiteral;
    e.bool_value = v;
    return e;
}

Expr Expr::variable(std::string name, std::size_t index) {
    Expr e;
    e.op = ExprOp::Variable;
    e.name = std::move(name);
    e.index = index;
    return e;
}

Expr Expr::constant(std::string name, std::int64_t value) {
    Expr e;
    e.op = ExprOp::Constant;
    e.name = std::move(name);
    e.int_value = value;
    return e;
}

Expr Expr::unary(ExprOp op, Expr operand) {
    Expr e;
    e.op = op;
    e.operands.push_back(std::move(operand));
    return e;
}

Expr Expr::binary(ExprOp op, Expr lhs, Expr rhs) {
    Expr e;
    e.op = op;
    e.operands.push_back(std::move(lhs));
    e.operands.push_back(std::move(rhs));
    return e;
}

namespace {

bool is_comparison(ExprOp op) {
    return op == ExprOp::Eq || op == ExprOp::Ne || op == ExprOp::Lt || op == ExprOp::Le || op == ExprOp::Gt ||
           op == ExprOp::Ge;
}

[[noreturn]] void type_mismatch(const char* what) {
    throw LangError(LangErrc::TypeError, std::string("expression evaluated in the wrong type context: ") + what);
}

}  // namespace

ExprType type_of(const Expr& e) {
    switch (e.op) {
        case ExprOp::IntLiteral:
        case ExprOp::Variable:
        case ExprOp::Constant:
            return ExprType::Int;
        case ExprOp::RealLiteral:
            return ExprType::Real;
        case ExprOp::BoolLiteral:
        case ExprOp::Not:
        case ExprOp::And:
        case ExprOp::Or:
            return ExprType::Bool;
        case ExprOp::Negate:
            return type_of(e.operands[0]);
        case ExprOp::Add:
        case ExprOp::Sub:
        case ExprOp::Mul:
        case ExprOp::Div:
        case ExprOp::Min:
        case ExprOp::Max: {
            const auto a = type_of(e.operands[0]);
            const auto b = type_of(e.operands[1]);
            if (a == ExprType::Bool || b == ExprType::Bool) return ExprType::Bool;  // rejected by the parser
            return (a == ExprType::Real || b == ExprType::Real) ? ExprType::Real : ExprType::Int;
        }
        default:
            if (is_comparison(e.op)) return ExprType::Bool;
            return ExprType::Bool;
    }
}

bool references_variables(const Expr& e) {
    if (e.op == ExprOp::Variable) return true;
    return std::any_of(e.operands.begin(), e.operands.end(), [](const Expr& c) { return references_variables(c); });
}

std::int64_t evaluate_int(const Expr& e, const model::FactoredState& state) {
    switch (e.op) {
        case ExprOp::IntLiteral:
        case ExprOp::Constant:
            return e.int_value;
        case ExprOp::Variable:
            return state[e.index];
        case ExprOp::Negate:
            return -evaluate_int(e.operands[0], state);
        case ExprOp::Add:
            return evaluate_int(e.operands[0], state) + evaluate_int(e.operands[1], state);
        case ExprOp::Sub:
            return evaluate_int(e.operands[0], state) - evaluate_int(e.operands[1], state);
        case ExprOp::Mul:
            return evaluate_int(e.operands[0], state) * evaluate_int(e.operands[1], state);
        case ExprOp::Div: {
            const auto d = evaluate_int(e.operands[1], state);
            if (d == 0) throw LangError(LangErrc::EvaluationError, "integer division by zero in '" + to_string(e) + "'");
            return evaluate_int(e.operands[0], state) / d;
        }
        case ExprOp::Min:
            return std::min(evaluate_int(e.operands[0], state), evaluate_int(e.operands[1], state));
        case ExprOp::Max:
            return std::max(evaluate_int(e.operands[0], state), evaluate_int(e.operands[1], state));
        default:
            type_mismatch("integer");
    }
}

bool evaluate_bool(const Expr& e, const model::FactoredState& state) {
    switch (e.op) {
        case ExprOp::BoolLiteral:
            return e.bool_value;
        case ExprOp::Not:
            return !evaluate_bool(e.operands[0], state);
        case ExprOp::And:
            return evaluate_bool(e.operands[0], state) && evaluate_bool(e.operands[1], state);
        case ExprOp::Or:
            return evaluate_bool(e.operands[0], state) || evaluate_bool(e.operands[1], state);
        case ExprOp::Eq:
            return evaluate_int(e.operands[0], state) == evaluate_int(e.operands[1], state);
        case ExprOp::Ne:
            return evaluate_int(e.operands[0], state) != evaluate_int(e.operands[1], state);
        case ExprOp::Lt:
            return evaluate_int(e.operands[0], state) < evaluate_int(e.operands[1], state);
        case ExprOp::Le:
            return evaluate_int(e.operands[0], state) <= evaluate_int(e.operands[1], state);
        case ExprOp::Gt:
            return evaluate_int(e.operands[0], state) > evaluate_int(e.operands[1], state);
        case ExprOp::Ge:
            return evaluate_int(e.operands[0], state) >= evaluate_int(e.operands[1], state);
        default:
            type_mismatch("boolean");
    }
}

double evaluate_real(const Expr& e, const model::FactoredState& state) {
    switch (e.op) {
        case ExprOp::IntLiteral:
        case ExprOp::Constant:
            return static_cast<double>(e.int_value);
        case ExprOp::RealLiteral:
            return e.real_value;
        case ExprOp::Variable:
            return static_cast<double>(state[e.index]);
        case ExprOp::Negate:
            return -evaluate_real(e.operands[0], state);
        case ExprOp::Add:
            return evaluate_real(e.operands[0], state) + evaluate_real(e.operands[1], state);
        case ExprOp::Sub:
            return evaluate_real(e.operands[0], state) - evaluate_real(e.operands[1], state);
        case ExprOp::Mul:
            return evaluate_real(e.operands[0], state) * evaluate_real(e.operands[1], state);
        case ExprOp::Div: {
            const double d = evaluate_real(e.operands[1], state);
            if (d == 0.0) throw LangError(LangErrc::EvaluationError, "division by zero in '" + to_string(e) + "'");
            return evaluate_real(e.operands[0], state) / d;
        }
        case ExprOp::Min:
            return std::min(evaluate_real(e.operands[0], state), evaluate_real(e.operands[1], state));
        case ExprOp::Max:
            return std::max(evaluate_real(e.operands[0], state), evaluate_real(e.operands[1], state));
        default:
            type_mismatch("numeric");
    }
}

namespace {

// Binding strength, loosest first.
int precedence(ExprOp op) {
    switch (op) {
        case ExprOp::Or:
            return 1;
        case ExprOp::And:
            return 2;
        case ExprOp::Not:
            return 3;
        case ExprOp::Eq:
        case ExprOp::Ne:
        case ExprOp::Lt:
        case ExprOp::Le:
        case ExprOp::Gt:
        case ExprOp::Ge:
            return 4;
        case ExprOp::Add:
        case ExprOp::Sub:
            return 5;
        case ExprOp::Mul:
        case ExprOp::Div:
            return 6;
        case ExprOp::Negate:
            return 7;
        default:
            return 8;
    }
}

const char* spelling(ExprOp op) {
    switch (op) {
        case ExprOp::Or: return "|";
        case ExprOp::And: return "&";
        case ExprOp::Eq: return "=";
        case ExprOp::Ne: return "!=";
        case ExprOp::Lt: return "<";
        case ExprOp::Le: return "<=";
        case ExprOp::Gt: return ">";
        case ExprOp::Ge: return ">=";
        case ExprOp::Add: return "+";
        case ExprOp::Sub: return "-";
        case ExprOp::Mul: return "*";
        case ExprOp::Div: return "/";
        default: return "?";
    }
}

void print(const Expr& e, std::string& out);

void print_at(const Expr& e, int min_precedence, std::string& out) {
    if (precedence(e.op) < min_precedence) {
        out += '(';
        print(e, out);
        out += ')';
    } else {
        print(e, out);
    }
}

void print(const Expr& e, std::string& out) {
    switch (e.op) {
        case ExprOp::IntLiteral:
            if (e.int_value < 0) {
                out += "(-" + std::to_string(-e.int_value) + ")";
            } else {
                out += std::to_string(e.int_value);
            }
            return;
        case ExprOp::RealLiteral:
            out += detail::format_real(e.real_value);
            return;
        case ExprOp::BoolLiteral:
            out += e.bool_value ? "true" : "false";
            return;
        case ExprOp::Variable:
        case ExprOp::Constant:
            out += e.name;
            return;
        case ExprOp::Negate:
            out += '-';
            print_at(e.operands[0], 7, out);
            return;
        case ExprOp::Not:
            out += '!';
            print_at(e.operands[0], 3, out);
            return;
        case ExprOp::Min:
        case ExprOp::Max:
            out += e.op == ExprOp::Min ? "min(" : "max(";
            print(e.operands[0], out);
            out += ", ";
            print(e.operands[1], out);
            out += ')';
            return;
        default: {
            const int p = precedence(e.op);
            const bool comparison = p == 4;
            print_at(e.operands[0], comparison ? p + 1 : p, out);
            out += ' ';
            out += spelling(e.op);
            out += ' ';
            print_at(e.operands[1], p + 1, out);
            return;
        }
    }
}

}  // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
}

}  // namespace polcheck::lang
