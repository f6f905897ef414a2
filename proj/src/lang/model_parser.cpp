#include "polcheck/lang/model_parser.h"

#include <fstream>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "common/lexer.h"

namespace polcheck::lang {

namespace {

using detail::Token;
using detail::TokenKind;

class ModelParser {
public:
    explicit ModelParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    SymbolicModel parse() {
        expect_keyword("mdp");
        while (is_keyword("const")) parse_constant();
        while (is_keyword("var")) parse_variable();
        while (is_keyword("action")) parse_command();
        while (is_keyword("label")) parse_label();
        while (is_keyword("reward")) parse_reward();
        if (peek().kind != TokenKind::End) {
            syntax_error("expected 'const', 'var', 'action', 'label' or 'reward' in declaration order");
        }
        return SymbolicModel(std::move(constants_), std::move(variables_), std::move(commands_), std::move(labels_),
                             std::move(rewards_));
    }

private:
    enum class Scope { ConstantsOnly, StateVariables };

    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[i];
    }
    const Token& next() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }

    bool is_symbol(std::string_view s, std::size_t ahead = 0) const {
        return peek(ahead).kind == TokenKind::Symbol && peek(ahead).text == s;
    }
    bool is_keyword(std::string_view s) const { return peek().kind == TokenKind::Identifier && peek().text == s; }

    static std::string describe(const Token& t) {
        switch (t.kind) {
            case TokenKind::End: return "end of input";
            case TokenKind::String: return "\"" + t.text + "\"";
            default: return "'" + t.text + "'";
        }
    }

    [[noreturn]] void syntax_error(const std::string& expected) const {
        throw LangError(LangErrc::SyntaxError, expected + ", found " + describe(peek()), peek().line, peek().column);
    }
    [[noreturn]] static void error_at(const Token& t, LangErrc kind, const std::string& message) {
        throw LangError(kind, message, t.line, t.column);
    }

    void expect_symbol(std::string_view s) {
        if (!is_symbol(s)) syntax_error("expected '" + std::string(s) + "'");
        next();
    }
    void expect_keyword(std::string_view s) {
        if (!is_keyword(s)) syntax_error("expected '" + std::string(s) + "'");
        next();
    }
    const Token& expect_identifier() {
        if (peek().kind != TokenKind::Identifier || is_reserved(peek().text)) syntax_error("expected identifier");
        return next();
    }

    static bool is_reserved(const std::string& s) {
        static const char* const kReserved[] = {"mdp",    "const", "int",  "var",   "init", "action",
                                                "label",  "reward", "true", "false", "min",  "max"};
        for (const char* r : kReserved) {
            if (s == r) return true;
        }
        return false;
    }

    void declare_name(const Token& t, LangErrc kind) {
        if (!declared_.insert(t.text).second) {
            error_at(t, kind, "'" + t.text + "' is already declared");
        }
    }

    model::Value parse_constant_int() {
        const Token& start = peek();
        Expr e = parse_additive(Scope::ConstantsOnly);
        if (type_of(e) != ExprType::Int) error_at(start, LangErrc::TypeError, "expected an integer constant expression");
        return evaluate_int(e, model::FactoredState{});
    }

    void parse_constant() {
        expect_keyword("const");
        expect_keyword("int");
        const Token& name = expect_identifier();
        declare_name(name, LangErrc::DuplicateDeclaration);
        expect_symbol("=");
        const auto value = parse_constant_int();
        expect_symbol(";");
        constant_values_[name.text] = value;
        constants_.push_back({name.text, value});
    }

    void parse_variable() {
        expect_keyword("var");
        const Token& name = expect_identifier();
        declare_name(name, LangErrc::DuplicateVariable);
        expect_symbol(":");
        expect_symbol("[");
        const auto lower = parse_constant_int();
        expect_symbol("..");
        const auto upper = parse_constant_int();
        expect_symbol("]");
        expect_keyword("init");
        const auto init = parse_constant_int();
        expect_symbol(";");
        if (lower > upper) error_at(name, LangErrc::BoundViolation, "variable '" + name.text + "' has an empty range");
        if (init < lower || init > upper) {
            error_at(name, LangErrc::BoundViolation,
                     "initial value " + std::to_string(init) + " of '" + name.text + "' lies outside [" +
                         std::to_string(lower) + ".." + std::to_string(upper) + "]");
        }
        variable_index_[name.text] = variables_.size();
        variables_.push_back({name.text, lower, upper, init});
    }

    void parse_command() {
        expect_keyword("action");
        const Token& name = expect_identifier();
        if (variable_index_.count(name.text) || constant_values_.count(name.text)) {
            error_at(name, LangErrc::DuplicateDeclaration, "action name '" + name.text + "' clashes with a declaration");
        }
        expect_symbol(":");
        Command cmd;
        cmd.action = name.text;
        cmd.guard = parse_typed(Scope::StateVariables, ExprType::Bool, "guard");
        expect_symbol("->");
        cmd.branches.push_back(parse_branch());
        while (is_symbol("+")) {
            next();
            cmd.branches.push_back(parse_branch());
        }
        expect_symbol(";");
        double sum = 0.0;
        for (const auto& b : cmd.branches) {
            const double p = evaluate_real(b.probability, model::FactoredState{});
            if (!(p > 0.0) || p > 1.0 + model::kProbabilityTolerance) {
                error_at(name, LangErrc::ProbabilitySumError,
                         "probability " + to_string(b.probability) + " of action '" + name.text + "' is outside (0,1]");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > model::kProbabilityTolerance) {
            error_at(name, LangErrc::ProbabilitySumError, "branch probabilities of action '" + name.text +
                                                              "' sum to " + std::to_string(sum) + ", not 1");
        }
        commands_.push_back(std::move(cmd));
    }

    Branch parse_branch() {
        Branch b;
        const Token& start = peek();
        b.probability = parse_additive(Scope::ConstantsOnly);
        if (type_of(b.probability) == ExprType::Bool) {
            error_at(start, LangErrc::TypeError, "probability must be numeric");
        }
        expect_symbol(":");
        expect_symbol("(");
        b.updates.push_back(parse_update());
        while (is_symbol("&")) {
            next();
            b.updates.push_back(parse_update());
        }
        expect_symbol(")");
        return b;
    }

    Update parse_update() {
        const Token& name = expect_identifier();
        auto it = variable_index_.find(name.text);
        if (it == variable_index_.end()) {
            error_at(name, LangErrc::UndeclaredIdentifier, "undeclared variable '" + name.text + "'");
        }
        expect_symbol("'");
        expect_symbol("=");
        const Token& start = peek();
        Update u;
        u.variable = name.text;
        u.variable_index = it->second;
        u.value = parse_additive(Scope::StateVariables);
        if (type_of(u.value) != ExprType::Int) {
            error_at(start, LangErrc::TypeError, "update of '" + name.text + "' must be an integer expression");
        }
        return u;
    }

    void parse_label() {
        expect_keyword("label");
        if (peek().kind != TokenKind::String) syntax_error("expected quoted label name");
        const Token& name = next();
        expect_symbol("=");
        Expr cond = parse_typed(Scope::StateVariables, ExprType::Bool, "label condition");
        expect_symbol(";");
        labels_.push_back({name.text, std::move(cond)});
    }

    void parse_reward() {
        expect_keyword("reward");
        const Token& name = expect_identifier();
        expect_symbol(":");
        RewardDecl r;
        r.action = name.text;
        r.guard = parse_typed(Scope::StateVariables, ExprType::Bool, "reward guard");
        expect_symbol(":");
        const Token& start = peek();
        r.value = parse_additive(Scope::StateVariables);
        if (type_of(r.value) == ExprType::Bool) error_at(start, LangErrc::TypeError, "reward value must be numeric");
        expect_symbol(";");
        bool known = false;
        for (const auto& c : commands_) known = known || c.action == name.text;
        if (!known) error_at(name, LangErrc::UndeclaredIdentifier, "reward for undeclared action '" + name.text + "'");
        rewards_.push_back(std::move(r));
    }

    Expr parse_typed(Scope scope, ExprType expected, const char* what) {
        const Token& start = peek();
        Expr e = parse_or(scope);
        if (type_of(e) != expected) {
            error_at(start, LangErrc::TypeError, std::string(what) + " has the wrong type");
        }
        return e;
    }

    // Operand type checks happen as each node is built, so type_of() on the
    // finished tree is trustworthy.
    Expr make_logical(ExprOp op, Expr lhs, Expr rhs, const Token& at) {
        if (type_of(lhs) != ExprType::Bool || type_of(rhs) != ExprType::Bool) {
            error_at(at, LangErrc::TypeError, "operands of '" + at.text + "' must be boolean");
        }
        return Expr::binary(op, std::move(lhs), std::move(rhs));
    }
    Expr make_arith(ExprOp op, Expr lhs, Expr rhs, const Token& at) {
        if (type_of(lhs) == ExprType::Bool || type_of(rhs) == ExprType::Bool) {
            error_at(at, LangErrc::TypeError, "operands of '" + at.text + "' must be numeric");
        }
        return Expr::binary(op, std::move(lhs), std::move(rhs));
    }

    Expr parse_or(Scope scope) {
        Expr lhs = parse_and(scope);
        while (is_symbol("|")) {
            const Token& op = next();
            lhs = make_logical(ExprOp::Or, std::move(lhs), parse_and(scope), op);
        }
        return lhs;
    }

    Expr parse_and(Scope scope) {
        Expr lhs = parse_not(scope);
        while (is_symbol("&")) {
            const Token& op = next();
            lhs = make_logical(ExprOp::And, std::move(lhs), parse_not(scope), op);
        }
        return lhs;
    }

    Expr parse_not(Scope scope) {
        if (is_symbol("!")) {
            const Token& op = next();
            Expr operand = parse_not(scope);
            if (type_of(operand) != ExprType::Bool) error_at(op, LangErrc::TypeError, "operand of '!' must be boolean");
            return Expr::unary(ExprOp::Not, std::move(operand));
        }
        return parse_comparison(scope);
    }

    Expr parse_comparison(Scope scope) {
        Expr lhs = parse_additive(scope);
        static const std::pair<const char*, ExprOp> kOps[] = {{"=", ExprOp::Eq},  {"!=", ExprOp::Ne},
                                                              {"<", ExprOp::Lt},  {"<=", ExprOp::Le},
                                                              {">", ExprOp::Gt},  {">=", ExprOp::Ge}};
        for (const auto& [sym, op] : kOps) {
            if (is_symbol(sym)) {
                const Token& at = next();
                Expr rhs = parse_additive(scope);
                if (type_of(lhs) != ExprType::Int || type_of(rhs) != ExprType::Int) {
                    error_at(at, LangErrc::TypeError, "operands of '" + at.text + "' must be integers");
                }
                return Expr::binary(op, std::move(lhs), std::move(rhs));
            }
        }
        return lhs;
    }

    Expr parse_additive(Scope scope) {
        Expr lhs = parse_multiplicative(scope);
        while (is_symbol("+") || is_symbol("-")) {
            // In a command, "+" after ")" separates branches; that case never
            // reaches here because branches end with ')'.
            const Token& op = next();
            lhs = make_arith(op.text == "+" ? ExprOp::Add : ExprOp::Sub, std::move(lhs), parse_multiplicative(scope),
                             op);
        }
        return lhs;
    }

    Expr parse_multiplicative(Scope scope) {
        Expr lhs = parse_unary(scope);
        while (is_symbol("*") || is_symbol("/")) {
            const Token& op = next();
            lhs = make_arith(op.text == "*" ? ExprOp::Mul : ExprOp::Div, std::move(lhs), parse_unary(scope), op);
        }
        return lhs;
    }

    Expr parse_unary(Scope scope) {
        if (is_symbol("-")) {
            const Token& op = next();
            Expr operand = parse_unary(scope);
            if (type_of(operand) == ExprType::Bool) error_at(op, LangErrc::TypeError, "operand of '-' must be numeric");
            return Expr::unary(ExprOp::Negate, std::move(operand));
        }
        return parse_primary(scope);
    }

    Expr parse_primary(Scope scope) {
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::Integer:
                next();
                return Expr::integer(t.int_value);
            case TokenKind::Real:
                next();
                return Expr::real(t.real_value);
            case TokenKind::Identifier: {
                if (t.text == "true" || t.text == "false") {
                    next();
                    return Expr::boolean(t.text == "true");
                }
                if (t.text == "min" || t.text == "max") {
                    const Token& fn = next();
                    expect_symbol("(");
                    Expr a = parse_or(scope);
                    expect_symbol(",");
                    Expr b = parse_or(scope);
                    expect_symbol(")");
                    return make_arith(fn.text == "min" ? ExprOp::Min : ExprOp::Max, std::move(a), std::move(b), fn);
                }
                next();
                if (auto c = constant_values_.find(t.text); c != constant_values_.end()) {
                    return Expr::constant(t.text, c->second);
                }
                if (auto v = variable_index_.find(t.text); v != variable_index_.end()) {
                    if (scope == Scope::ConstantsOnly) {
                        error_at(t, LangErrc::TypeError,
                                 "variable '" + t.text + "' used where only constants are allowed");
                    }
                    return Expr::variable(t.text, v->second);
                }
                error_at(t, LangErrc::UndeclaredIdentifier, "undeclared identifier '" + t.text + "'");
            }
            default:
                break;
        }
        if (is_symbol("(")) {
            next();
            Expr inner = parse_or(scope);
            expect_symbol(")");
            return inner;
        }
        syntax_error("expected expression");
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;

    std::set<std::string> declared_;
    std::map<std::string, model::Value> constant_values_;
    std::map<std::string, std::size_t> variable_index_;

    std::vector<ConstantDecl> constants_;
    std::vector<VariableDecl> variables_;
    std::vector<Command> commands_;
    std::vector<LabelDecl> labels_;
    std::vector<RewardDecl> rewards_;
};

}  // namespace

SymbolicModel parse_model(std::string_view text) {
    detail::LexError lex_error{0, 0, {}};
    auto tokens = detail::tokenize(text, &lex_error);
    if (lex_error.line != 0) {
        throw LangError(LangErrc::SyntaxError, lex_error.message, lex_error.line, lex_error.column);
    }
    return ModelParser(std::move(tokens)).parse();
}

SymbolicModel parse_model_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LangError(LangErrc::SyntaxError, "cannot open model file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_model(buf.str());
    } catch (const LangError& e) {
        throw LangError(e.kind(), e.message(), e.line(), e.column(), path.string());
    }
}

}  // namespace polcheck::lang
