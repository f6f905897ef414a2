#include "polcheck/pctl/pctl_parser.h"

#include <fstream>
#include <sstream>

#include "common/lexer.h"

namespace polcheck::pctl {

PctlError::PctlError(PctlErrc kind, const std::string& message, std::size_t line, std::size_t column)
    : KindedError<PctlErrc>(kind, line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + message
                                           : message),
      line_(line),
      column_(column) {}

namespace {

using detail::Token;
using detail::TokenKind;

class PctlParser {
public:
    PctlParser(std::vector<Token> tokens, std::size_t line_offset, std::vector<std::string>* warnings)
        : tokens_(std::move(tokens)), line_offset_(line_offset), warnings_(warnings) {}

    StateFormula parse() {
        StateFormula f = parse_and();
        if (peek().kind != TokenKind::End) syntax_error("expected end of formula");
        return f;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }
    bool is_symbol(std::string_view s) const { return peek().kind == TokenKind::Symbol && peek().text == s; }
    bool is_word(std::string_view s) const { return peek().kind == TokenKind::Identifier && peek().text == s; }

    [[noreturn]] void fail(PctlErrc kind, const std::string& message, const Token& at) const {
        throw PctlError(kind, message, at.line + line_offset_, at.column);
    }
    [[noreturn]] void syntax_error(const std::string& expected) const {
        const Token& t = peek();
        std::string found = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
        fail(PctlErrc::SyntaxError, expected + ", found " + found, t);
    }
    void expect_symbol(std::string_view s) {
        if (!is_symbol(s)) syntax_error("expected '" + std::string(s) + "'");
        next();
    }

    StateFormula parse_and() {
        StateFormula lhs = parse_unary();
        while (is_symbol("&")) {
            next();
            lhs = StateFormula::make_and(std::move(lhs), parse_unary());
        }
        return lhs;
    }

    StateFormula parse_unary() {
        if (is_symbol("!")) {
            next();
            return StateFormula::make_not(parse_unary());
        }
        if (is_word("true")) {
            next();
            return StateFormula::make_true();
        }
        if (peek().kind == TokenKind::String) {
            return StateFormula::make_atom(next().text);
        }
        if (is_symbol("(")) {
            next();
            StateFormula inner = parse_and();
            expect_symbol(")");
            return inner;
        }
        if (is_word("P") || is_word("Pmax") || is_word("Pmin")) {
            return parse_prob();
        }
        syntax_error("expected state formula");
    }

    StateFormula parse_prob() {
        const Token& op = next();
        Quantifier q = Quantifier::Plain;
        if (op.text == "Pmax") q = Quantifier::Max;
        if (op.text == "Pmin") q = Quantifier::Min;

        std::optional<Comparator> cmp;
        std::optional<double> threshold;
        if (is_symbol("=?")) {
            next();
        } else {
            if (is_symbol("<=")) cmp = Comparator::LessEqual;
            else if (is_symbol(">=")) cmp = Comparator::GreaterEqual;
            else if (is_symbol("<")) cmp = Comparator::Less;
            else if (is_symbol(">")) cmp = Comparator::Greater;
            else syntax_error("expected '=?' or a comparison after '" + op.text + "'");
            next();
            bool negative = false;
            if (is_symbol("-")) {
                negative = true;
                next();
            }
            const Token& num = peek();
            if (num.kind != TokenKind::Integer && num.kind != TokenKind::Real) syntax_error("expected threshold");
            next();
            const double p = negative ? -num.real_value : num.real_value;
            if (!(p >= 0.0 && p <= 1.0)) {
                fail(PctlErrc::ThresholdOutOfRange, "threshold " + num.text + " lies outside [0,1]", num);
            }
            threshold = p;
        }
        expect_symbol("[");
        PathFormula path = parse_path();
        expect_symbol("]");
        return StateFormula::make_prob(std::move(path), q, cmp, threshold);
    }

    // Returns the normalized bound, if any.
    std::optional<std::pair<StepBound, std::uint64_t>> parse_bound() {
        if (!is_symbol("<=") && !is_symbol("<")) return std::nullopt;
        const bool strict = next().text == "<";
        if (is_symbol("-")) {
            const Token& minus = next();
            fail(PctlErrc::NegativeBound, "step bound must be nonnegative", minus);
        }
        const Token& t = peek();
        if (t.kind != TokenKind::Integer) syntax_error("expected integer step bound");
        next();
        const auto t_value = static_cast<std::uint64_t>(t.int_value);
        if (!strict) return std::pair{StepBound::LessEqual, t_value};
        if (t_value == 0) {
            if (warnings_ != nullptr) {
                warnings_->push_back(std::to_string(t.line + line_offset_) + ":" + std::to_string(t.column) +
                                     ": step bound '<0' leaves no steps; the path formula can never hold");
            }
            return std::pair{StepBound::Less, std::uint64_t{0}};
        }
        return std::pair{StepBound::LessEqual, t_value - 1};
    }

    PathFormula parse_path() {
        if (is_word("X")) {
            next();
            return PathFormula::next(parse_and());
        }
        if (is_word("F")) {
            next();
            auto bound = parse_bound();
            StateFormula target = parse_and();
            if (bound) {
                return PathFormula::bounded_until(StateFormula::make_true(), std::move(target), bound->second,
                                                  bound->first);
            }
            return PathFormula::eventually(std::move(target));
        }
        StateFormula lhs = parse_and();
        if (!is_word("U")) syntax_error("expected 'U'");
        next();
        auto bound = parse_bound();
        StateFormula rhs = parse_and();
        if (bound) return PathFormula::bounded_until(std::move(lhs), std::move(rhs), bound->second, bound->first);
        return PathFormula::until(std::move(lhs), std::move(rhs));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::size_t line_offset_;
    std::vector<std::string>* warnings_;
};

std::vector<Token> lex(std::string_view text, std::size_t line_offset) {
    detail::LexError err{0, 0, {}};
    auto tokens = detail::tokenize(text, &err);
    if (err.line != 0) throw PctlError(PctlErrc::SyntaxError, err.message, err.line + line_offset, err.column);
    return tokens;
}

}  // namespace

StateFormula parse_pctl(std::string_view text, std::vector<std::string>* warnings) {
    return PctlParser(lex(text, 0), 0, warnings).parse();
}

std::vector<Property> parse_property_file_text(std::string_view text, std::vector<std::string>* warnings) {
    std::vector<Property> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(start, end - start);
        ++line_no;
        auto tokens = lex(line, line_no - 1);
        if (tokens.size() > 1) {
            Property p;
            p.formula = PctlParser(std::move(tokens), line_no - 1, warnings).parse();
            p.text = pretty_print(p.formula);
            p.line = line_no;
            out.push_back(std::move(p));
        }
        if (end == text.size()) break;
        start = end + 1;
    }
    return out;
}

std::vector<Property> parse_property_file(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw PctlError(PctlErrc::SyntaxError, "cannot open property file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_property_file_text(buf.str(), warnings);
}

}  // namespace polcheck::pctl
