#include "polcheck/lang/symbolic_model.h"

#include <cmath>
#include <sstream>
#include <unordered_set>

namespace polcheck::lang {

namespace {

std::string located(const std::string& message, std::size_t line, std::size_t column, const std::string& source) {
    std::string prefix = source.empty() ? std::string() : source + ":";
    if (line > 0) prefix += std::to_string(line) + ":" + std::to_string(column) + ":";
    return prefix.empty() ? message : prefix + " " + message;
}

}  // namespace

LangError::LangError(LangErrc kind, const std::string& message, std::size_t line, std::size_t column,
                     const std::string& source)
    : KindedError<LangErrc>(kind, located(message, line, column, source)),
      message_(message),
      line_(line),
      column_(column) {}

SymbolicModel::SymbolicModel(std::vector<ConstantDecl> constants, std::vector<VariableDecl> variables,
                             std::vector<Command> commands, std::vector<LabelDecl> labels,
                             std::vector<RewardDecl> rewards)
    : constants_(std::move(constants)),
      variables_(std::move(variables)),
      commands_(std::move(commands)),
      labels_(std::move(labels)),
      rewards_(std::move(rewards)) {
    std::unordered_set<std::string> names;
    for (const auto& c : constants_) {
        if (!names.insert(c.name).second) {
            throw LangError(LangErrc::DuplicateDeclaration, "constant '" + c.name + "' declared twice");
        }
    }
    for (const auto& v : variables_) {
        if (!names.insert(v.name).second) {
            throw LangError(LangErrc::DuplicateVariable, "variable '" + v.name + "' declared twice");
        }
        if (v.lower > v.upper) {
            throw LangError(LangErrc::BoundViolation, "variable '" + v.name + "' has an empty range");
        }
        if (v.init < v.lower || v.init > v.upper) {
            throw LangError(LangErrc::BoundViolation, "initial value of '" + v.name + "' lies outside its range");
        }
        variable_names_.push_back(v.name);
    }

    const model::FactoredState no_state;
    for (const auto& cmd : commands_) {
        if (cmd.branches.empty()) {
            throw LangError(LangErrc::SyntaxError, "command for action '" + cmd.action + "' has no branches");
        }
        double sum = 0.0;
        for (const auto& b : cmd.branches) {
            if (references_variables(b.probability)) {
                throw LangError(LangErrc::TypeError, "probability '" + to_string(b.probability) +
                                                         "' references a variable; only constants are allowed");
            }
            const double p = evaluate_real(b.probability, no_state);
            if (!(p > 0.0) || p > 1.0 + model::kProbabilityTolerance) {
                throw LangError(LangErrc::ProbabilitySumError, "probability '" + to_string(b.probability) +
                                                                   "' of action '" + cmd.action +
                                                                   "' is outside (0,1]");
            }
            sum += p;
            std::unordered_set<std::size_t> assigned;
            for (const auto& u : b.updates) {
                if (u.variable_index >= variables_.size() || variables_[u.variable_index].name != u.variable) {
                    throw LangError(LangErrc::UndeclaredIdentifier, "update of unknown variable '" + u.variable + "'");
                }
                if (!assigned.insert(u.variable_index).second) {
                    throw LangError(LangErrc::DuplicateDeclaration,
                                    "variable '" + u.variable + "' updated twice in one branch");
                }
            }
        }
        if (std::abs(sum - 1.0) > model::kProbabilityTolerance) {
            std::ostringstream os;
            os.precision(17);
            os << "branch probabilities of action '" << cmd.action << "' sum to " << sum;
            throw LangError(LangErrc::ProbabilitySumError, os.str());
        }

        auto idx = action_index(cmd.action);
        if (!idx) {
            idx = action_names_.size();
            action_names_.push_back(cmd.action);
            commands_by_action_.emplace_back();
        }
        commands_by_action_[*idx].push_back(static_cast<std::size_t>(&cmd - commands_.data()));
    }

    std::unordered_set<std::string> label_names;
    for (const auto& l : labels_) {
        if (!label_names.insert(l.name).second) {
            throw LangError(LangErrc::DuplicateDeclaration, "label \"" + l.name + "\" declared twice");
        }
    }
    for (const auto& r : rewards_) {
        if (!action_index(r.action)) {
            throw LangError(LangErrc::UndeclaredIdentifier, "reward refers to undeclared action '" + r.action + "'");
        }
    }
}

std::optional<std::size_t> SymbolicModel::action_index(const std::string& name) const {
    for (std::size_t i = 0; i < action_names_.size(); ++i) {
        if (action_names_[i] == name) return i;
    }
    return std::nullopt;
}

bool SymbolicModel::operator==(const SymbolicModel& other) const {
    return constants_ == other.constants_ && variables_ == other.variables_ && commands_ == other.commands_ &&
           labels_ == other.labels_ && rewards_ == other.rewards_;
}

model::FactoredState initial_state(const SymbolicModel& m) {
    std::vector<model::Value> values;
    values.reserve(m.variables().size());
    for (const auto& v : m.variables()) values.push_back(v.init);
    return model::FactoredState(std::move(values));
}

bool in_bounds(const SymbolicModel& m, const model::FactoredState& s) {
    const auto& vars = m.variables();
    if (s.size() != vars.size()) return false;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (s[i] < vars[i].lower || s[i] > vars[i].upper) return false;
    }
    return true;
}

namespace {

void require_in_bounds(const SymbolicModel& m, const model::FactoredState& s) {
    if (!in_bounds(m, s)) {
        throw LangError(LangErrc::StateOutOfBounds,
                        "state " + s.to_string(m.variable_names()) + " lies outside the declared variable ranges");
    }
}

}  // namespace

std::vector<std::size_t> enabled_action_indices(const SymbolicModel& m, const model::FactoredState& s) {
    require_in_bounds(m, s);
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < m.action_names().size(); ++a) {
        for (auto c : m.commands_for(a)) {
            if (evaluate_bool(m.commands()[c].guard, s)) {
                out.push_back(a);
                break;
            }
        }
    }
    return out;
}

std::vector<std::string> enabled_actions(const SymbolicModel& m, const model::FactoredState& s) {
    std::vector<std::string> out;
    for (auto a : enabled_action_indices(m, s)) out.push_back(m.action_names()[a]);
    return out;
}

model::Distribution<model::FactoredState> successors(const SymbolicModel& m, const model::FactoredState& s,
                                                     std::size_t action) {
    require_in_bounds(m, s);
    if (action >= m.action_names().size()) {
        throw LangError(LangErrc::ActionNotEnabled, "unknown action index " + std::to_string(action));
    }
    const std::string& name = m.action_names()[action];
    const Command* chosen = nullptr;
    for (auto c : m.commands_for(action)) {
        const Command& cmd = m.commands()[c];
        if (evaluate_bool(cmd.guard, s)) {
            if (chosen != nullptr) {
                throw LangError(LangErrc::MultipleCommandsEnabled, "more than one command for action '" + name +
                                                                       "' is enabled in state " +
                                                                       s.to_string(m.variable_names()));
            }
            chosen = &cmd;
        }
    }
    if (chosen == nullptr) {
        throw LangError(LangErrc::ActionNotEnabled,
                        "action '" + name + "' is not enabled in state " + s.to_string(m.variable_names()));
    }

    const auto& vars = m.variables();
    std::vector<std::pair<model::FactoredState, double>> entries;
    entries.reserve(chosen->branches.size());
    for (const auto& b : chosen->branches) {
        const double p = evaluate_real(b.probability, s);
        std::vector<model::Value> next(s.values().begin(), s.values().end());
        for (const auto& u : b.updates) {
            const auto v = evaluate_int(u.value, s);
            const auto& decl = vars[u.variable_index];
            if (v < decl.lower || v > decl.upper) {
                throw LangError(LangErrc::BoundViolation, "update " + u.variable + "'=" + std::to_string(v) +
                                                              " of action '" + name + "' leaves [" +
                                                              std::to_string(decl.lower) + ".." +
                                                              std::to_string(decl.upper) + "] in state " +
                                                              s.to_string(m.variable_names()));
            }
            next[u.variable_index] = v;
        }
        entries.emplace_back(model::FactoredState(std::move(next)), p);
    }
    auto dist = model::merge_duplicates(entries);
    if (auto issue = model::validate_distribution(dist)) {
        throw LangError(LangErrc::ProbabilitySumError,
                        "successor distribution of action '" + name + "' is invalid: " + issue->message());
    }
    return dist;
}

model::Distribution<model::FactoredState> successors(const SymbolicModel& m, const model::FactoredState& s,
                                                     const std::string& action) {
    auto idx = m.action_index(action);
    if (!idx) throw LangError(LangErrc::ActionNotEnabled, "unknown action '" + action + "'");
    return successors(m, s, *idx);
}

std::vector<std::string> labels_of(const SymbolicModel& m, const model::FactoredState& s) {
    require_in_bounds(m, s);
    std::vector<std::string> out;
    for (const auto& l : m.labels()) {
        if (evaluate_bool(l.condition, s)) out.push_back(l.name);
    }
    return out;
}

double reward_of(const SymbolicModel& m, const model::FactoredState& s, std::size_t action) {
    const std::string& name = m.action_names().at(action);
    double total = 0.0;
    for (const auto& r : m.rewards()) {
        if (r.action == name && evaluate_bool(r.guard, s)) total += evaluate_real(r.value, s);
    }
    return total;
}

std::string pretty_print(const SymbolicModel& m) {
    std::ostringstream os;
    os << "mdp\n";
    if (!m.constants().empty()) os << '\n';
    for (const auto& c : m.constants()) {
        os << "const int " << c.name << " = " << c.value << ";\n";
    }
    if (!m.variables().empty()) os << '\n';
    for (const auto& v : m.variables()) {
        os << "var " << v.name << " : [" << v.lower << ".." << v.upper << "] init " << v.init << ";\n";
    }
    if (!m.commands().empty()) os << '\n';
    for (const auto& cmd : m.commands()) {
        os << "action " << cmd.action << " : " << to_string(cmd.guard) << " ->";
        for (std::size_t i = 0; i < cmd.branches.size(); ++i) {
            const auto& b = cmd.branches[i];
            os << (i == 0 ? " " : "\n    + ") << to_string(b.probability) << " : (";
            for (std::size_t j = 0; j < b.updates.size(); ++j) {
                if (j > 0) os << " & ";
                os << b.updates[j].variable << "' = " << to_string(b.updates[j].value);
            }
            os << ')';
        }
        os << ";\n";
    }
    if (!m.labels().empty()) os << '\n';
    for (const auto& l : m.labels()) {
        os << "label \"" << l.name << "\" = " << to_string(l.condition) << ";\n";
    }
    if (!m.rewards().empty()) os << '\n';
    for (const auto& r : m.rewards()) {
        os << "reward " << r.action << " : " << to_string(r.guard) << " : " << to_string(r.value) << ";\n";
    }
    return os.str();
}

}  // namespace polcheck::lang
