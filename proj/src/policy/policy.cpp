#include "polcheck/policy/policy.h"

namespace polcheck::policy {

PolicyError::PolicyError(PolicyErrc kind, const std::string& message, std::size_t line)
    : KindedError<PolicyErrc>(kind, line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

ActionDistribution restrict_to_enabled(const ActionDistribution& d, std::span<const std::string> enabled) {
    std::vector<ActionDistribution::Entry> kept;
    double total = 0.0;
    for (const auto& name : enabled) {
        const double p = d.probability_of(name);
        if (p > 0.0) {
            kept.emplace_back(name, p);
            total += p;
        }
    }
    if (kept.empty()) {
        throw PolicyError(PolicyErrc::EmptySupportAfterRestriction,
                          "policy puts no mass on any enabled action");
    }
    if (total != 1.0) {
        for (auto& e : kept) e.second /= total;
    }
    return ActionDistribution(std::move(kept));
}

std::vector<SupportedAction> supported_actions(const ActionDistribution& raw, std::span<const std::string> enabled,
                                               double support_threshold) {
    const ActionDistribution restricted = restrict_to_enabled(raw, enabled);
    std::vector<SupportedAction> out;
    out.reserve(restricted.size());
    double total = 0.0;
    bool dropped = false;
    for (std::size_t i = 0; i < enabled.size(); ++i) {
        const double p = restricted.probability_of(enabled[i]);
        if (p > support_threshold) {
            out.push_back({i, p});
            total += p;
        } else if (p > 0.0) {
            dropped = true;
        }
    }
    if (dropped && !out.empty()) {
        for (auto& a : out) a.weight /= total;
    }
    return out;
}

std::size_t argmax_position(const ActionDistribution& restricted, std::span<const std::string> enabled) {
    std::size_t best = enabled.size();
    double best_p = 0.0;
    for (std::size_t i = 0; i < enabled.size(); ++i) {
        const double p = restricted.probability_of(enabled[i]);
        if (p > best_p) {
            best_p = p;
            best = i;
        }
    }
    if (best == enabled.size()) {
        throw PolicyError(PolicyErrc::EmptySupportAfterRestriction, "policy puts no mass on any enabled action");
    }
    return best;
}

std::string argmax_action(StochasticPolicy& policy, const model::FactoredState& state,
                          std::span<const std::string> enabled) {
    const auto restricted = restrict_to_enabled(policy.query(state, enabled), enabled);
    return enabled[argmax_position(restricted, enabled)];
}

}  // namespace polcheck::policy
