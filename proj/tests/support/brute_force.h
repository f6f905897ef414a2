#pragma once

#include <cstdint>
#include <vector>

#include "polcheck/model/explicit_model.h"

namespace polcheck::testing {

/// P(phi1 U<=t phi2) for every t in 0..max_t and every state, by enumerating
/// all paths of length max_t explicitly. result[t][s].
std::vector<std::vector<double>> bounded_until_by_paths(const model::ExplicitDtmc& d, const model::StateSet& phi1,
                                                        const model::StateSet& phi2, std::uint64_t max_t);

}  // namespace polcheck::testing
