#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "polcheck/error.h"
#include "polcheck/model/distribution.h"
#include "polcheck/model/state.h"

namespace polcheck::model {

enum class ModelErrc { InvalidStateIndex, InvalidModel, UnknownLabel };
using ModelError = KindedError<ModelErrc>;

using StateSet = std::vector<bool>;

/// Atomic-proposition labeling: label name -> characteristic vector.
/// Every declared label is present, even if it holds nowhere.
class Labeling {
public:
    Labeling() = default;
    explicit Labeling(std::size_t num_states) : num_states_(num_states) {}

    void add_label(const std::string& name);
    void set(const std::string& name, StateIndex s);

    bool has_label(const std::string& name) const { return sets_.count(name) != 0; }
    const StateSet& states_with(const std::string& name) const;
    std::vector<std::string> labels_of(StateIndex s) const;
    std::vector<std::string> label_names() const;
    std::size_t num_states() const { return num_states_; }

    bool operator==(const Labeling&) const = default;

private:
    std::size_t num_states_ = 0;
    std::map<std::string, StateSet> sets_;
};

struct Choice {
    std::string action;
    Distribution<StateIndex> distribution;
    double reward = 0.0;

    bool operator==(const Choice&) const = default;
};

/// Explicit-state MDP. Invariants are checked on construction: every state has
/// at least one choice, action names are unique per state, targets are valid
/// indices and every choice distribution is a proper distribution.
class ExplicitMdp {
public:
    ExplicitMdp(std::vector<std::string> variable_names, std::vector<FactoredState> states, StateIndex initial,
                std::vector<std::vector<Choice>> choices, Labeling labeling);

    const std::vector<std::string>& variable_names() const { return variable_names_; }
    const std::vector<FactoredState>& states() const { return states_; }
    std::size_t num_states() const { return states_.size(); }
    StateIndex initial() const { return initial_; }
    const std::vector<Choice>& choices(StateIndex s) const { return choices_.at(s); }
    const Labeling& labeling() const { return labeling_; }

    std::size_t num_choices() const;
    /// Number of (state, action, target) triples.
    std::size_t num_transitions() const;

    bool operator==(const ExplicitMdp&) const = default;

private:
    std::vector<std::string> variable_names_;
    std::vector<FactoredState> states_;
    StateIndex initial_;
    std::vector<std::vector<Choice>> choices_;
    Labeling labeling_;
};

/// Explicit-state DTMC: exactly one distribution per state.
class ExplicitDtmc {
public:
    ExplicitDtmc(std::vector<std::string> variable_names, std::vector<FactoredState> states, StateIndex initial,
                 std::vector<Distribution<StateIndex>> rows, Labeling labeling);

    const std::vector<std::string>& variable_names() const { return variable_names_; }
    const std::vector<FactoredState>& states() const { return states_; }
    std::size_t num_states() const { return states_.size(); }
    StateIndex initial() const { return initial_; }
    const Distribution<StateIndex>& row(StateIndex s) const { return rows_.at(s); }
    const std::vector<Distribution<StateIndex>>& rows() const { return rows_; }
    const Labeling& labeling() const { return labeling_; }

    /// Number of (state, target) pairs.
    std::size_t num_transitions() const;

    bool operator==(const ExplicitDtmc&) const = default;

private:
    std::vector<std::string> variable_names_;
    std::vector<FactoredState> states_;
    StateIndex initial_;
    std::vector<Distribution<StateIndex>> rows_;
    Labeling labeling_;
};

/// NEIGH(s): targets with positive probability, ascending.
std::vector<StateIndex> neighbors(const ExplicitDtmc& dtmc, StateIndex s);

}  // namespace polcheck::model
