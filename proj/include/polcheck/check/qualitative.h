#pragma once

#include "polcheck/model/explicit_model.h"

namespace polcheck::check {

using model::StateSet;

// Graph-based precomputation for phi1 U phi2. All sets are indexed by state.

/// States where P(phi1 U phi2) = 0.
StateSet prob0(const model::ExplicitDtmc& d, const StateSet& phi1, const StateSet& phi2);
/// States where P(phi1 U phi2) = 1.
StateSet prob1(const model::ExplicitDtmc& d, const StateSet& phi1, const StateSet& phi2);

/// Pmax = 0: no scheduler reaches phi2 along phi1 (Prob0A).
StateSet prob0_max(const model::ExplicitMdp& m, const StateSet& phi1, const StateSet& phi2);
/// Pmin = 0: some scheduler avoids phi2 surely (Prob0E).
StateSet prob0_min(const model::ExplicitMdp& m, const StateSet& phi1, const StateSet& phi2);
/// Pmax = 1 (Prob1E).
StateSet prob1_max(const model::ExplicitMdp& m, const StateSet& phi1, const StateSet& phi2);
/// Pmin = 1 (Prob1A).
StateSet prob1_min(const model::ExplicitMdp& m, const StateSet& phi1, const StateSet& phi2);

}  // namespace polcheck::check
