#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "polcheck/check/check_result.h"
#include "polcheck/model/explicit_model.h"
#include "polcheck/pctl/formula.h"

namespace polcheck::check::detail {

using model::StateSet;
using pctl::PathFormula;
using pctl::StateFormula;

bool compare(double value, pctl::Comparator c, double threshold);

const StateSet& atom_set(const model::Labeling& lab, const std::string& name);

/// Step count of a bounded until; nullopt for "U<0", which no path satisfies.
std::optional<std::uint64_t> bounded_steps(const PathFormula& path);

void merge_stats(SolverStats& into, const SolverStats& from);

/// Shared recursion over state formulas. `Solver` supplies
/// `std::vector<double> probabilities(const StateFormula& prob)` for P operators
/// and may call back into satisfy() for operands.
template <typename Solver>
StateSet satisfy(Solver& solver, const model::Labeling& lab, const StateFormula& f) {
    const auto n = lab.num_states();
    switch (f.kind) {
        case StateFormula::Kind::True: return StateSet(n, true);
        case StateFormula::Kind::Atom: return atom_set(lab, f.atom);
        case StateFormula::Kind::And: {
            auto a = satisfy(solver, lab, f.operands[0]);
            const auto b = satisfy(solver, lab, f.operands[1]);
            for (std::size_t i = 0; i < n; ++i) a[i] = a[i] && b[i];
            return a;
        }
        case StateFormula::Kind::Not: {
            auto a = satisfy(solver, lab, f.operands[0]);
            a.flip();
            return a;
        }
        case StateFormula::Kind::Prob: {
            if (!f.comparator || !f.threshold) {
                throw CheckError(CheckErrc::InvalidFormula, "P=? may only appear as the outermost operator");
            }
            const auto values = solver.probabilities(f);
            StateSet out(n);
            for (std::size_t i = 0; i < n; ++i) out[i] = compare(values[i], *f.comparator, *f.threshold);
            return out;
        }
    }
    return StateSet(n, false);
}

template <typename Solver>
CheckResult evaluate(Solver& solver, const model::Labeling& lab, model::StateIndex initial, const StateFormula& f) {
    CheckResult r;
    if (f.kind == StateFormula::Kind::Prob) {
        auto values = solver.probabilities(f);
        for (auto& v : values) v = std::clamp(v, 0.0, 1.0);
        r.value = values[initial];
        if (f.is_query()) {
            r.kind = CheckResult::Kind::Probability;
        } else {
            r.kind = CheckResult::Kind::Boolean;
            r.truth = compare(r.value, *f.comparator, *f.threshold);
        }
        r.per_state = std::move(values);
    } else {
        const auto sat = satisfy(solver, lab, f);
        r.kind = CheckResult::Kind::Boolean;
        r.truth = sat[initial];
        r.value = r.truth ? 1.0 : 0.0;
        r.per_state.assign(sat.begin(), sat.end());
    }
    r.stats = solver.stats();
    return r;
}

}  // namespace polcheck::check::detail
