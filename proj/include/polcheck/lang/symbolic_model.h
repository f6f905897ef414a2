#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "polcheck/error.h"
#include "polcheck/lang/expression.h"
#include "polcheck/model/distribution.h"
#include "polcheck/model/state.h"

namespace polcheck::lang {

enum class LangErrc {
    SyntaxError,
    UndeclaredIdentifier,
    BoundViolation,
    DuplicateVariable,
    DuplicateDeclaration,
    TypeError,
    ProbabilitySumError,
    StateOutOfBounds,
    ActionNotEnabled,
    MultipleCommandsEnabled,
    EvaluationError,
};

class LangError : public KindedError<LangErrc> {
public:
    LangError(LangErrc kind, const std::string& message, std::size_t line = 0, std::size_t column = 0,
              const std::string& source = {});

    /// Message without the "source:line:column: " prefix.
    const std::string& message() const noexcept { return message_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

struct ConstantDecl {
    std::string name;
    model::Value value = 0;
    bool operator==(const ConstantDecl&) const = default;
};

struct VariableDecl {
    std::string name;
    model::Value lower = 0;
    model::Value upper = 0;
    model::Value init = 0;
    bool operator==(const VariableDecl&) const = default;
};

struct Update {
    std::string variable;
    std::size_t variable_index = 0;
    Expr value;
    bool operator==(const Update&) const = default;
};

struct Branch {
    Expr probability;
    std::vector<Update> updates;
    bool operator==(const Branch&) const = default;
};

struct Command {
    std::string action;
    Expr guard;
    std::vector<Branch> branches;
    bool operator==(const Command&) const = default;
};

struct LabelDecl {
    std::string name;
    Expr condition;
    bool operator==(const LabelDecl&) const = default;
};

struct RewardDecl {
    std::string action;
    Expr guard;
    Expr value;
    bool operator==(const RewardDecl&) const = default;
};

/// A guarded-command MDP. Acts as an on-demand successor oracle: nothing is
/// enumerated until a builder asks for it. Immutable after construction.
class SymbolicModel {
public:
    /// Expects resolved expressions (as produced by parse_model). Re-checks the
    /// structural invariants: unique names, bounds, branch probability sums.
    SymbolicModel(std::vector<ConstantDecl> constants, std::vector<VariableDecl> variables,
                  std::vector<Command> commands, std::vector<LabelDecl> labels, std::vector<RewardDecl> rewards);

    const std::vector<ConstantDecl>& constants() const { return constants_; }
    const std::vector<VariableDecl>& variables() const { return variables_; }
    const std::vector<Command>& commands() const { return commands_; }
    const std::vector<LabelDecl>& labels() const { return labels_; }
    const std::vector<RewardDecl>& rewards() const { return rewards_; }

    /// Distinct action names in order of first declaration.
    const std::vector<std::string>& action_names() const { return action_names_; }
    const std::vector<std::string>& variable_names() const { return variable_names_; }
    std::optional<std::size_t> action_index(const std::string& name) const;

    /// Command indices declared for the action with index `action`.
    const std::vector<std::size_t>& commands_for(std::size_t action) const { return commands_by_action_[action]; }

    bool operator==(const SymbolicModel& other) const;

private:
    std::vector<ConstantDecl> constants_;
    std::vector<VariableDecl> variables_;
    std::vector<Command> commands_;
    std::vector<LabelDecl> labels_;
    std::vector<RewardDecl> rewards_;

    std::vector<std::string> action_names_;
    std::vector<std::string> variable_names_;
    std::vector<std::vector<std::size_t>> commands_by_action_;
};

model::FactoredState initial_state(const SymbolicModel& m);

bool in_bounds(const SymbolicModel& m, const model::FactoredState& s);

/// Indices into action_names() of actions with a true guard, declaration order.
std::vector<std::size_t> enabled_action_indices(const SymbolicModel& m, const model::FactoredState& s);
std::vector<std::string> enabled_actions(const SymbolicModel& m, const model::FactoredState& s);

/// Successor distribution of the unique enabled command for the action.
/// Duplicate successor states are merged.
model::Distribution<model::FactoredState> successors(const SymbolicModel& m, const model::FactoredState& s,
                                                     std::size_t action);
model::Distribution<model::FactoredState> successors(const SymbolicModel& m, const model::FactoredState& s,
                                                     const std::string& action);

/// Labels whose condition holds in `s`, declaration order.
std::vector<std::string> labels_of(const SymbolicModel& m, const model::FactoredState& s);

/// Sum of all reward items matching (s, action).
double reward_of(const SymbolicModel& m, const model::FactoredState& s, std::size_t action);

std::string pretty_print(const SymbolicModel& m);

}  // namespace polcheck::lang
