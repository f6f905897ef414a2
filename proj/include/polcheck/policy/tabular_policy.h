#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polcheck/model/explicit_model.h"
#include "polcheck/policy/policy.h"

namespace polcheck::policy {

/// Exact-lookup policy table. Immutable queries; safe to share across threads
/// once populated.
class TabularPolicy final : public StochasticPolicy {
public:
    TabularPolicy(std::vector<std::string> variable_names, FallbackMode fallback = FallbackMode::Strict);

    /// Throws DuplicateStateEntry if the state already has an entry.
    void insert(model::FactoredState state, ActionDistribution dist, std::size_t line = 0);

    ActionDistribution query(const model::FactoredState& state, std::span<const std::string> enabled) override;

    const ActionDistribution* find(const model::FactoredState& state) const;
    std::size_t size() const { return entries_.size(); }
    const std::vector<std::pair<model::FactoredState, ActionDistribution>>& entries() const { return entries_; }
    const std::vector<std::string>& variable_names() const { return variable_names_; }
    FallbackMode fallback() const { return fallback_; }
    void set_fallback(FallbackMode mode) { fallback_ = mode; }

private:
    std::vector<std::string> variable_names_;
    FallbackMode fallback_;
    std::vector<std::pair<model::FactoredState, ActionDistribution>> entries_;
    std::unordered_map<model::FactoredState, std::size_t> index_;
};

/// Reads ".policy.jsonl": one {"state": {...}, "dist": {...}} object per line.
/// State objects must name exactly the model variables.
TabularPolicy read_tabular(std::istream& in, std::span<const std::string> variable_names,
                           FallbackMode fallback = FallbackMode::Strict);
TabularPolicy load_tabular(const std::filesystem::path& path, std::span<const std::string> variable_names,
                           FallbackMode fallback = FallbackMode::Strict);

/// Writes entries in insertion order, state keys in variable order.
void write_tabular(std::ostream& out, const TabularPolicy& policy);

/// q(s, a) for each enabled action of s.
using QRow = std::vector<std::pair<std::string, double>>;
using QTable = std::unordered_map<model::FactoredState, QRow>;

/// exp(q/temperature) normalized over the row, shifted by the row max first.
ActionDistribution softmax(const QRow& q, double temperature);

/// Softmax policy over every state of `domain`, using that state's actions as
/// the enabled set. Throws MissingQValue for uncovered (state, action) pairs.
TabularPolicy softmax_from_q(const QTable& q, double temperature, const model::ExplicitMdp& domain,
                             FallbackMode fallback = FallbackMode::Strict);

}  // namespace polcheck::policy
