#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polcheck/error.h"
#include "polcheck/model/distribution.h"
#include "polcheck/model/state.h"

namespace polcheck::policy {

enum class PolicyErrc {
    ParseError,
    DistributionInvalid,
    DuplicateStateEntry,
    UnknownState,
    OracleFailure,
    EmptySupportAfterRestriction,
    MissingQValue,
    NonPositiveTemperature,
};

class PolicyError : public KindedError<PolicyErrc> {
public:
    PolicyError(PolicyErrc kind, const std::string& message, std::size_t line = 0);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

using ActionDistribution = model::Distribution<std::string>;

/// What to do when a tabular policy has no entry for a queried state.
enum class FallbackMode { Strict, Uniform };

/// A memoryless stochastic policy: state -> distribution over action names.
class StochasticPolicy {
public:
    virtual ~StochasticPolicy() = default;

    /// Raw distribution for `state`, before restriction to enabled actions.
    /// `enabled` is the model's enabled action list (declaration order); it is
    /// used for uniform fallback and forwarded to external oracles.
    virtual ActionDistribution query(const model::FactoredState& state, std::span<const std::string> enabled) = 0;
};

/// Drops mass on actions outside `enabled` and renormalizes. Entries come out
/// in `enabled` order.
ActionDistribution restrict_to_enabled(const ActionDistribution& d, std::span<const std::string> enabled);

/// An enabled action kept during building, identified by its position in the
/// enabled list, with its renormalized weight.
struct SupportedAction {
    std::size_t enabled_position;
    double weight;
};

/// restrict_to_enabled followed by dropping actions with weight <=
/// `support_threshold` and renormalizing again. Returns an empty vector if the
/// threshold removes everything.
std::vector<SupportedAction> supported_actions(const ActionDistribution& raw, std::span<const std::string> enabled,
                                               double support_threshold);

/// Highest-probability enabled action; ties go to the earliest in `enabled`.
std::string argmax_action(StochasticPolicy& policy, const model::FactoredState& state,
                          std::span<const std::string> enabled);

/// Position within `enabled` of the argmax of an already-restricted distribution.
std::size_t argmax_position(const ActionDistribution& restricted, std::span<const std::string> enabled);

}  // namespace polcheck::policy
