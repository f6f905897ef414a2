#pragma once

#include "polcheck/check/check_result.h"
#include "polcheck/model/explicit_model.h"
#include "polcheck/pctl/formula.h"

namespace polcheck::check {

/// Evaluates a PCTL state formula on a DTMC. Pmin/Pmax read as plain P here:
/// a DTMC has a single scheduler.
CheckResult check_dtmc(const model::ExplicitDtmc& d, const pctl::StateFormula& f, const SolverOptions& options = {});

}  // namespace polcheck::check
