#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "polcheck/model/state.h"

namespace polcheck::model {

/// Tolerance for "sums to one" checks throughout the toolkit.
inline constexpr double kProbabilityTolerance = 1e-9;

/// Finite-support probability distribution. Entries with exactly zero mass are
/// dropped on construction so that the support is the list of entries.
/// Entries keep their insertion order; nothing here normalizes or merges.
template <typename Outcome>
class Distribution {
public:
    using Entry = std::pair<Outcome, double>;

    Distribution() = default;
    explicit Distribution(std::vector<Entry> entries) : entries_(std::move(entries)) {
        std::erase_if(entries_, [](const Entry& e) { return e.second == 0.0; });
    }

    static Distribution dirac(Outcome outcome) { return Distribution({{std::move(outcome), 1.0}}); }

    const std::vector<Entry>& entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    double probability_of(const Outcome& outcome) const {
        double p = 0.0;
        for (const auto& [o, q] : entries_) {
            if (o == outcome) p += q;
        }
        return p;
    }

    double total() const {
        double sum = 0.0;
        for (const auto& e : entries_) sum += e.second;
        return sum;
    }

    bool operator==(const Distribution&) const = default;

private:
    std::vector<Entry> entries_;
};

/// Sums the mass of repeated outcomes; first occurrence fixes the position.
template <typename Outcome>
Distribution<Outcome> merge_duplicates(const std::vector<std::pair<Outcome, double>>& entries) {
    std::vector<std::pair<Outcome, double>> merged;
    merged.reserve(entries.size());
    if (entries.size() <= 16) {
        for (const auto& [o, p] : entries) {
            auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& e) { return e.first == o; });
            if (it == merged.end()) {
                merged.emplace_back(o, p);
            } else {
                it->second += p;
            }
        }
    } else {
        std::unordered_map<Outcome, std::size_t> position;
        for (const auto& [o, p] : entries) {
            auto [it, inserted] = position.try_emplace(o, merged.size());
            if (inserted) {
                merged.emplace_back(o, p);
            } else {
                merged[it->second].second += p;
            }
        }
    }
    return Distribution<Outcome>(std::move(merged));
}

enum class DistributionIssueKind { SumOutOfTolerance, NonPositiveMass, DuplicateOutcome };

struct DistributionIssue {
    DistributionIssueKind kind;
    std::string outcome;  // offending outcome, empty for sum errors
    double value = 0.0;   // offending mass or the actual sum

    std::string message() const;
};

std::string describe_outcome(const std::string& o);
std::string describe_outcome(StateIndex o);
std::string describe_outcome(const FactoredState& o);

/// Returns the first violated invariant: positive masses, unique outcomes,
/// total within `tolerance` of one. Does not normalize.
template <typename Outcome>
std::optional<DistributionIssue> validate_distribution(const Distribution<Outcome>& d,
                                                       double tolerance = kProbabilityTolerance) {
    for (const auto& [o, p] : d) {
        if (!(p > 0.0) || !std::isfinite(p)) {
            return DistributionIssue{DistributionIssueKind::NonPositiveMass, describe_outcome(o), p};
        }
    }
    std::unordered_set<Outcome> seen;
    for (const auto& [o, p] : d) {
        if (!seen.insert(o).second) {
            return DistributionIssue{DistributionIssueKind::DuplicateOutcome, describe_outcome(o), p};
        }
    }
    const double sum = d.total();
    if (std::abs(sum - 1.0) > tolerance) {
        return DistributionIssue{DistributionIssueKind::SumOutOfTolerance, {}, sum};
    }
    return std::nullopt;
}

}  // namespace polcheck::model
