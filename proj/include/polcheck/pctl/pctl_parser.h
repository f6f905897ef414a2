#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "polcheck/error.h"
#include "polcheck/pctl/formula.h"

namespace polcheck::pctl {

enum class PctlErrc { SyntaxError, ThresholdOutOfRange, NegativeBound };

class PctlError : public KindedError<PctlErrc> {
public:
    PctlError(PctlErrc kind, const std::string& message, std::size_t line = 0, std::size_t column = 0);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Parses one state formula in PRISM-style concrete syntax, e.g.
/// P=? [ F<=100 "coll" ]. Sugar is expanded: F a -> true U a, and a strict
/// step bound "<t" becomes "<=t-1" for t >= 1. A vacuous "<0" bound is kept
/// and reported through `warnings`.
StateFormula parse_pctl(std::string_view text, std::vector<std::string>* warnings = nullptr);

struct Property {
    std::string text;
    StateFormula formula;
    std::size_t line = 0;
};

/// One formula per non-empty line; "//" comments are ignored.
std::vector<Property> parse_property_file_text(std::string_view text, std::vector<std::string>* warnings = nullptr);
std::vector<Property> parse_property_file(const std::filesystem::path& path,
                                          std::vector<std::string>* warnings = nullptr);

}  // namespace polcheck::pctl
