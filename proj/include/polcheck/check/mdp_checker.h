#pragma once

#include "polcheck/check/check_result.h"
#include "polcheck/model/explicit_model.h"
#include "polcheck/pctl/formula.h"

namespace polcheck::check {

/// Extremal checking over all memoryless schedulers. Every P operator in `f`
/// must be Pmin or Pmax; a plain P raises InvalidFormula.
CheckResult check_mdp_extremal(const model::ExplicitMdp& m, const pctl::StateFormula& f,
                               const SolverOptions& options = {});

}  // namespace polcheck::check
