#include "polcheck/policy/tabular_policy.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

namespace polcheck::policy {

TabularPolicy::TabularPolicy(std::vector<std::string> variable_names, FallbackMode fallback)
    : variable_names_(std::move(variable_names)), fallback_(fallback) {}

void TabularPolicy::insert(model::FactoredState state, ActionDistribution dist, std::size_t line) {
    auto [it, inserted] = index_.try_emplace(state, entries_.size());
    if (!inserted) {
        throw PolicyError(PolicyErrc::DuplicateStateEntry,
                          "duplicate entry for state " + state.to_string(variable_names_), line);
    }
    entries_.emplace_back(std::move(state), std::move(dist));
}

const ActionDistribution* TabularPolicy::find(const model::FactoredState& state) const {
    auto it = index_.find(state);
    return it == index_.end() ? nullptr : &entries_[it->second].second;
}

ActionDistribution TabularPolicy::query(const model::FactoredState& state, std::span<const std::string> enabled) {
    if (const auto* d = find(state)) return *d;
    if (fallback_ == FallbackMode::Strict || enabled.empty()) {
        throw PolicyError(PolicyErrc::UnknownState, "policy has no entry for state " + state.to_string(variable_names_));
    }
    std::vector<ActionDistribution::Entry> uniform;
    const double p = 1.0 / static_cast<double>(enabled.size());
    for (const auto& a : enabled) uniform.emplace_back(a, p);
    return ActionDistribution(std::move(uniform));
}

TabularPolicy read_tabular(std::istream& in, std::span<const std::string> variable_names, FallbackMode fallback) {
    using json = nlohmann::ordered_json;
    TabularPolicy policy({variable_names.begin(), variable_names.end()}, fallback);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;

        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw PolicyError(PolicyErrc::ParseError, std::string("malformed JSON: ") + e.what(), line_no);
        }
        if (!obj.is_object() || !obj.contains("state") || !obj.contains("dist") || !obj["state"].is_object() ||
            !obj["dist"].is_object()) {
            throw PolicyError(PolicyErrc::ParseError, "expected {\"state\": {...}, \"dist\": {...}}", line_no);
        }
        const json& st = obj["state"];
        if (st.size() != variable_names.size()) {
            throw PolicyError(PolicyErrc::ParseError,
                              "state must assign exactly the " + std::to_string(variable_names.size()) +
                                  " model variables",
                              line_no);
        }
        std::vector<model::Value> values;
        values.reserve(variable_names.size());
        for (const auto& name : variable_names) {
            auto it = st.find(name);
            if (it == st.end() || !it->is_number_integer()) {
                throw PolicyError(PolicyErrc::ParseError, "state lacks integer value for variable '" + name + "'",
                                  line_no);
            }
            values.push_back(it->get<model::Value>());
        }

        std::vector<ActionDistribution::Entry> entries;
        for (const auto& [action, p] : obj["dist"].items()) {
            if (!p.is_number()) {
                throw PolicyError(PolicyErrc::ParseError, "probability of '" + action + "' is not a number", line_no);
            }
            entries.emplace_back(action, p.get<double>());
        }
        ActionDistribution dist(std::move(entries));
        if (auto issue = model::validate_distribution(dist)) {
            throw PolicyError(PolicyErrc::DistributionInvalid, issue->message(), line_no);
        }
        policy.insert(model::FactoredState(std::move(values)), std::move(dist), line_no);
    }
    return policy;
}

TabularPolicy load_tabular(const std::filesystem::path& path, std::span<const std::string> variable_names,
                           FallbackMode fallback) {
    std::ifstream in(path);
    if (!in) throw PolicyError(PolicyErrc::ParseError, "cannot open policy file '" + path.string() + "'");
    try {
        return read_tabular(in, variable_names, fallback);
    } catch (const PolicyError& e) {
        throw PolicyError(e.kind(), path.string() + ": " + e.what());
    }
}

void write_tabular(std::ostream& out, const TabularPolicy& policy) {
    using nlohmann::ordered_json;
    const auto& names = policy.variable_names();
    for (const auto& [state, dist] : policy.entries()) {
        ordered_json obj;
        ordered_json st = ordered_json::object();
        for (std::size_t i = 0; i < names.size(); ++i) st[names[i]] = state[i];
        ordered_json d = ordered_json::object();
        for (const auto& [action, p] : dist) d[action] = p;
        obj["state"] = std::move(st);
        obj["dist"] = std::move(d);
        out << obj.dump() << '\n';
    }
}

ActionDistribution softmax(const QRow& q, double temperature) {
    if (!(temperature > 0.0)) {
        throw PolicyError(PolicyErrc::NonPositiveTemperature, "softmax temperature must be positive");
    }
    if (q.empty()) return ActionDistribution();
    double max_q = -std::numeric_limits<double>::infinity();
    for (const auto& e : q) max_q = std::max(max_q, e.second);
    std::vector<ActionDistribution::Entry> entries;
    entries.reserve(q.size());
    double total = 0.0;
    for (const auto& [a, value] : q) {
        const double w = std::exp((value - max_q) / temperature);
        entries.emplace_back(a, w);
        total += w;
    }
    for (auto& e : entries) e.second /= total;
    return ActionDistribution(std::move(entries));
}

TabularPolicy softmax_from_q(const QTable& q, double temperature, const model::ExplicitMdp& domain,
                             FallbackMode fallback) {
    if (!(temperature > 0.0)) {
        throw PolicyError(PolicyErrc::NonPositiveTemperature, "softmax temperature must be positive");
    }
    TabularPolicy policy(domain.variable_names(), fallback);
    for (model::StateIndex s = 0; s < domain.num_states(); ++s) {
        const auto& state = domain.states()[s];
        auto it = q.find(state);
        QRow row;
        for (const auto& choice : domain.choices(s)) {
            const double* value = nullptr;
            if (it != q.end()) {
                for (const auto& [a, v] : it->second) {
                    if (a == choice.action) value = &v;
                }
            }
            if (value == nullptr) {
                throw PolicyError(PolicyErrc::MissingQValue, "no q-value for action '" + choice.action +
                                                                 "' in state " +
                                                                 state.to_string(domain.variable_names()));
            }
            row.emplace_back(choice.action, *value);
        }
        policy.insert(state, softmax(row, temperature));
    }
    return policy;
}

}  // namespace polcheck::policy
