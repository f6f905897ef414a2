#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace polcheck::detail {

enum class TokenKind { Identifier, Integer, Real, String, Symbol, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;  // identifier name, symbol spelling, unquoted string, or literal spelling
    std::int64_t int_value = 0;
    double real_value = 0.0;
    std::size_t line = 1;
    std::size_t column = 1;
};

struct LexError {
    std::size_t line;
    std::size_t column;
    std::string message;
};

/// Splits `text` into tokens shared by the model and property languages.
/// "//" starts a comment running to end of line. On malformed input the
/// returned vector ends early and `error` is filled.
std::vector<Token> tokenize(std::string_view text, LexError* error);

/// Shortest decimal spelling that parses back to `value` and always lexes as
/// a real literal (contains '.' or an exponent).
std::string format_real(double value);

}  // namespace polcheck::detail
