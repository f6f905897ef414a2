#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polcheck/box.h"

namespace polcheck::pctl {

enum class Comparator { Less, Greater, LessEqual, GreaterEqual };
enum class Quantifier { Plain, Max, Min };
enum class StepBound { Less, LessEqual };

struct PathFormula;

/// State formula: true | "atom" | a & b | !a | P[min|max](⋈p | =?) [ path ].
struct StateFormula {
    enum class Kind { True, Atom, And, Not, Prob };

    Kind kind = Kind::True;
    std::string atom;
    std::vector<StateFormula> operands;  // And: 2, Not: 1
    std::optional<Comparator> comparator;
    std::optional<double> threshold;
    Quantifier quantifier = Quantifier::Plain;
    std::optional<Box<PathFormula>> path;  // Prob only

    static StateFormula make_true();
    static StateFormula make_atom(std::string name);
    static StateFormula make_and(StateFormula lhs, StateFormula rhs);
    static StateFormula make_not(StateFormula operand);
    /// P=? when comparator is empty.
    static StateFormula make_prob(PathFormula path, Quantifier q = Quantifier::Plain,
                                  std::optional<Comparator> cmp = std::nullopt,
                                  std::optional<double> threshold = std::nullopt);

    bool is_query() const { return kind == Kind::Prob && !comparator.has_value(); }

    bool operator==(const StateFormula&) const = default;
};

/// Path formula: X a | a U b | a U<=t b (also "<t"). "F a" is stored as
/// "true U a".
struct PathFormula {
    enum class Kind { Next, Until, BoundedUntil };

    Kind kind = Kind::Next;
    std::vector<StateFormula> operands;  // Next: 1, Until*: 2
    StepBound bound_kind = StepBound::LessEqual;
    std::uint64_t bound = 0;

    static PathFormula next(StateFormula operand);
    static PathFormula until(StateFormula lhs, StateFormula rhs);
    static PathFormula bounded_until(StateFormula lhs, StateFormula rhs, std::uint64_t bound,
                                     StepBound kind = StepBound::LessEqual);
    static PathFormula eventually(StateFormula target);
    static PathFormula bounded_eventually(StateFormula target, std::uint64_t bound);

    bool operator==(const PathFormula&) const = default;
};

/// Canonical text; parse_pctl(pretty_print(f)) == f.
std::string pretty_print(const StateFormula& f);
std::string pretty_print(const PathFormula& f);

/// Atom names referenced anywhere in the formula, sorted and unique.
std::vector<std::string> atoms_of(const StateFormula& f);

/// Copy with the quantifier of the outermost P operator replaced.
StateFormula with_outer_quantifier(const StateFormula& f, Quantifier q);

}  // namespace polcheck::pctl
