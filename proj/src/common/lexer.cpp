#include "common/lexer.h"

#include <array>
#include <cctype>
#include <charconv>
#include <system_error>

namespace polcheck::detail {

namespace {

// Longest symbols first so that maximal munch works by simple prefix test.
constexpr std::array<std::string_view, 24> kSymbols = {
    "->", "..", "<=", ">=", "!=", "=?", "'", "(", ")", "[", "]", ":", ";",
    "+",  "-",  "*",  "/",  "&",  "|",  "!", "=", "<", ">", ",",
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<Token> tokenize(std::string_view text, LexError* error) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    std::size_t line = 1;
    std::size_t col = 1;

    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto fail = [&](std::string message) {
        if (error != nullptr) *error = LexError{line, col, std::move(message)};
        return tokens;
    };

    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }

        Token tok;
        tok.line = line;
        tok.column = col;

        if (is_ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && is_ident_char(text[j])) ++j;
            tok.kind = TokenKind::Identifier;
            tok.text = std::string(text.substr(i, j - i));
            advance(j - i);
        } else if (is_digit(c)) {
            std::size_t j = i;
            while (j < text.size() && is_digit(text[j])) ++j;
            bool real = false;
            // "1..4" is a range, not a real literal.
            if (j + 1 < text.size() && text[j] == '.' && is_digit(text[j + 1])) {
                real = true;
                ++j;
                while (j < text.size() && is_digit(text[j])) ++j;
            }
            if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
                if (k < text.size() && is_digit(text[k])) {
                    real = true;
                    j = k;
                    while (j < text.size() && is_digit(text[j])) ++j;
                }
            }
            tok.text = std::string(text.substr(i, j - i));
            if (real) {
                tok.kind = TokenKind::Real;
                auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), tok.real_value);
                if (ec != std::errc()) return fail("malformed number '" + tok.text + "'");
            } else {
                tok.kind = TokenKind::Integer;
                auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), tok.int_value);
                if (ec != std::errc()) return fail("integer literal out of range '" + tok.text + "'");
                tok.real_value = static_cast<double>(tok.int_value);
            }
            advance(j - i);
        } else if (c == '"') {
            std::size_t j = i + 1;
            while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
            if (j >= text.size() || text[j] != '"') return fail("unterminated string literal");
            tok.kind = TokenKind::String;
            tok.text = std::string(text.substr(i + 1, j - i - 1));
            advance(j - i + 1);
        } else {
            bool matched = false;
            for (auto sym : kSymbols) {
                if (text.substr(i, sym.size()) == sym) {
                    tok.kind = TokenKind::Symbol;
                    tok.text = std::string(sym);
                    advance(sym.size());
                    matched = true;
                    break;
                }
            }
            if (!matched) return fail(std::string("unexpected character '") + c + "'");
        }
        tokens.push_back(std::move(tok));
    }

    Token end;
    end.kind = TokenKind::End;
    end.line = line;
    end.column = col;
    tokens.push_back(end);
    return tokens;
}

std::string format_real(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    std::string s(buf.data(), ptr);
    if (s.find_first_of(".eE") == std::string::npos && s.find_first_of("ni") == std::string::npos) {
        s += ".0";
    }
    return s;
}

}  // namespace polcheck::detail
