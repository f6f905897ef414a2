#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polcheck/error.h"

namespace polcheck::check {

enum class CheckErrc { UnknownAtom, NonConvergence, InvalidFormula, UnsupportedFormulaForSimulation, InvalidArgument };
using CheckError = KindedError<CheckErrc>;

struct SolverOptions {
    /// Sup-norm residual at which value iteration stops.
    double epsilon = 1e-9;
    std::uint64_t max_iterations = 1'000'000;
};

struct SolverStats {
    std::uint64_t iterations = 0;
    double residual = 0.0;
};

struct CheckResult {
    enum class Kind { Probability, Boolean };

    Kind kind = Kind::Probability;
    /// Probability at the initial state. For a boolean result this is the
    /// probability compared against the threshold when the formula is P~p,
    /// and 0/1 otherwise.
    double value = 0.0;
    bool truth = false;
    /// Per-state probabilities of the outermost P operator, or 0/1 per state.
    std::vector<double> per_state;
    SolverStats stats;

    std::string to_string() const;
};

}  // namespace polcheck::check
