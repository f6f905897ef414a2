#include "check/evaluation.h"

#include <algorithm>

#include "common/lexer.h"

namespace polcheck::check {

std::string CheckResult::to_string() const {
    if (kind == Kind::Probability) return polcheck::detail::format_real(value);
    return truth ? "true" : "false";
}

namespace detail {

bool compare(double value, pctl::Comparator c, double threshold) {
    switch (c) {
        case pctl::Comparator::Less: return value < threshold;
        case pctl::Comparator::Greater: return value > threshold;
        case pctl::Comparator::LessEqual: return value <= threshold;
        case pctl::Comparator::GreaterEqual: return value >= threshold;
    }
    return false;
}

const StateSet& atom_set(const model::Labeling& lab, const std::string& name) {
    if (!lab.has_label(name)) {
        std::string known;
        for (const auto& l : lab.label_names()) known += (known.empty() ? "" : ", ") + l;
        throw CheckError(CheckErrc::UnknownAtom, "unknown atom \"" + name + "\" (model labels: " + known + ")");
    }
    return lab.states_with(name);
}

std::optional<std::uint64_t> bounded_steps(const PathFormula& path) {
    if (path.bound_kind == pctl::StepBound::LessEqual) return path.bound;
    if (path.bound == 0) return std::nullopt;
    return path.bound - 1;
}

void merge_stats(SolverStats& into, const SolverStats& from) {
    into.iterations += from.iterations;
    into.residual = std::max(into.residual, from.residual);
}

}  // namespace detail
}  // namespace polcheck::check
