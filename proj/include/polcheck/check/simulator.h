#pragma once

#include <cstdint>

#include "polcheck/check/check_result.h"
#include "polcheck/lang/symbolic_model.h"
#include "polcheck/pctl/formula.h"
#include "polcheck/policy/policy.h"

namespace polcheck::check {

/// Two-sided 99% normal quantile.
inline constexpr double kWilsonZ99 = 2.5758293035489;

struct SimulationOptions {
    std::uint64_t episodes = 10'000;
    std::uint64_t horizon = 1'000;
    std::uint64_t seed = 1;
    /// Unbounded properties need horizon >= this.
    std::uint64_t unbounded_cutoff = 100;
    /// Self-loop in deadlocked states instead of failing.
    bool patch_deadlocks = false;
};

struct SimulationResult {
    double estimate = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    std::uint64_t successes = 0;
    std::uint64_t episodes = 0;
    /// Episodes cut off at the horizon while still undecided. Counted as failures.
    std::uint64_t truncated = 0;
    bool truncation_caveat() const { return truncated > 0; }
};

struct Interval {
    double lower;
    double upper;
};

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kWilsonZ99);

/// Monte-Carlo estimate of P=? [path] under the policy, sampling directly from
/// the guarded-command model. Operands must be propositional.
SimulationResult simulate(const lang::SymbolicModel& m, policy::StochasticPolicy& p, const pctl::StateFormula& f,
                          const SimulationOptions& options);

}  // namespace polcheck::check
