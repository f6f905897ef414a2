#include "polcheck/model/explicit_model.h"

#include <algorithm>
#include <unordered_set>

namespace polcheck::model {

void Labeling::add_label(const std::string& name) { sets_.try_emplace(name, StateSet(num_states_, false)); }

void Labeling::set(const std::string& name, StateIndex s) {
    if (s >= num_states_) {
        throw ModelError(ModelErrc::InvalidStateIndex, "label '" + name + "' set on invalid state " + std::to_string(s));
    }
    add_label(name);
    sets_[name][s] = true;
}

const StateSet& Labeling::states_with(const std::string& name) const {
    auto it = sets_.find(name);
    if (it == sets_.end()) {
        throw ModelError(ModelErrc::UnknownLabel, "unknown label '" + name + "'");
    }
    return it->second;
}

std::vector<std::string> Labeling::labels_of(StateIndex s) const {
    std::vector<std::string> out;
    for (const auto& [name, set] : sets_) {
        if (s < set.size() && set[s]) out.push_back(name);
    }
    return out;
}

std::vector<std::string> Labeling::label_names() const {
    std::vector<std::string> out;
    out.reserve(sets_.size());
    for (const auto& entry : sets_) out.push_back(entry.first);
    return out;
}

namespace {

void check_common(std::size_t num_states, StateIndex initial, const std::vector<FactoredState>& states,
                  const Labeling& labeling) {
    if (num_states == 0) {
        throw ModelError(ModelErrc::InvalidModel, "model has no states");
    }
    if (initial >= num_states) {
        throw ModelError(ModelErrc::InvalidStateIndex, "initial state " + std::to_string(initial) + " out of range");
    }
    if (states.size() != num_states) {
        throw ModelError(ModelErrc::InvalidModel, "state vector and transition rows differ in length");
    }
    if (labeling.num_states() != num_states) {
        throw ModelError(ModelErrc::InvalidModel, "labeling covers a different number of states");
    }
}

void check_distribution(const Distribution<StateIndex>& d, std::size_t num_states, const std::string& where) {
    for (const auto& [target, p] : d) {
        if (target >= num_states) {
            throw ModelError(ModelErrc::InvalidStateIndex, where + ": target " + std::to_string(target) + " out of range");
        }
    }
    if (auto issue = validate_distribution(d)) {
        throw ModelError(ModelErrc::InvalidModel, where + ": " + issue->message());
    }
}

}  // namespace

ExplicitMdp::ExplicitMdp(std::vector<std::string> variable_names, std::vector<FactoredState> states,
                         StateIndex initial, std::vector<std::vector<Choice>> choices, Labeling labeling)
    : variable_names_(std::move(variable_names)),
      states_(std::move(states)),
      initial_(initial),
      choices_(std::move(choices)),
      labeling_(std::move(labeling)) {
    check_common(choices_.size(), initial_, states_, labeling_);
    for (std::size_t s = 0; s < choices_.size(); ++s) {
        const auto& cs = choices_[s];
        const std::string where = "state " + std::to_string(s);
        if (cs.empty()) {
            throw ModelError(ModelErrc::InvalidModel, where + " has no actions");
        }
        std::unordered_set<std::string> names;
        for (const auto& c : cs) {
            if (!names.insert(c.action).second) {
                throw ModelError(ModelErrc::InvalidModel, where + " has duplicate action '" + c.action + "'");
            }
            check_distribution(c.distribution, states_.size(), where + " action " + c.action);
        }
    }
}

std::size_t ExplicitMdp::num_choices() const {
    std::size_t n = 0;
    for (const auto& cs : choices_) n += cs.size();
    return n;
}

std::size_t ExplicitMdp::num_transitions() const {
    std::size_t n = 0;
    for (const auto& cs : choices_) {
        for (const auto& c : cs) n += c.distribution.size();
    }
    return n;
}

ExplicitDtmc::ExplicitDtmc(std::vector<std::string> variable_names, std::vector<FactoredState> states,
                           StateIndex initial, std::vector<Distribution<StateIndex>> rows, Labeling labeling)
    : variable_names_(std::move(variable_names)),
      states_(std::move(states)),
      initial_(initial),
      rows_(std::move(rows)),
      labeling_(std::move(labeling)) {
    check_common(rows_.size(), initial_, states_, labeling_);
    for (std::size_t s = 0; s < rows_.size(); ++s) {
        check_distribution(rows_[s], states_.size(), "state " + std::to_string(s));
    }
}

std::size_t ExplicitDtmc::num_transitions() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

std::vector<StateIndex> neighbors(const ExplicitDtmc& dtmc, StateIndex s) {
    if (s >= dtmc.num_states()) {
        throw ModelError(ModelErrc::InvalidStateIndex, "state " + std::to_string(s) + " out of range");
    }
    std::vector<StateIndex> out;
    for (const auto& [t, p] : dtmc.row(s)) {
        if (p > 0.0) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace polcheck::model
