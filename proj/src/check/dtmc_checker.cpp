#include "polcheck/check/dtmc_checker.h"

#include <cmath>

#include "check/evaluation.h"
#include "polcheck/check/qualitative.h"

namespace polcheck::check {

using model::StateIndex;
using model::StateSet;

namespace {

class DtmcSolver {
public:
    DtmcSolver(const model::ExplicitDtmc& d, const SolverOptions& options) : d_(d), options_(options) {}

    std::vector<double> probabilities(const pctl::StateFormula& f) {
        const pctl::PathFormula& path = **f.path;
        const auto& lab = d_.labeling();
        switch (path.kind) {
            case pctl::PathFormula::Kind::Next: return next(detail::satisfy(*this, lab, path.operands[0]));
            case pctl::PathFormula::Kind::Until:
                return until(detail::satisfy(*this, lab, path.operands[0]),
                             detail::satisfy(*this, lab, path.operands[1]));
            case pctl::PathFormula::Kind::BoundedUntil: {
                const auto steps = detail::bounded_steps(path);
                const auto phi1 = detail::satisfy(*this, lab, path.operands[0]);
                const auto phi2 = detail::satisfy(*this, lab, path.operands[1]);
                if (!steps) return std::vector<double>(d_.num_states(), 0.0);
                return bounded_until(phi1, phi2, *steps);
            }
        }
        return {};
    }

    const SolverStats& stats() const { return stats_; }

private:
    std::vector<double> next(const StateSet& phi) const {
        std::vector<double> x(d_.num_states(), 0.0);
        for (StateIndex s = 0; s < d_.num_states(); ++s) {
            for (const auto& [t, p] : d_.row(s)) {
                if (phi[t]) x[s] += p;
            }
        }
        return x;
    }

    std::vector<double> until(const StateSet& phi1, const StateSet& phi2) {
        const auto n = d_.num_states();
        const auto zero = prob0(d_, phi1, phi2);
        const auto one = prob1(d_, phi1, phi2);
        std::vector<double> x(n, 0.0);
        std::vector<StateIndex> todo;
        for (StateIndex s = 0; s < n; ++s) {
            if (one[s]) {
                x[s] = 1.0;
            } else if (!zero[s]) {
                todo.push_back(s);
            }
        }
        if (todo.empty()) return x;

        SolverStats local;
        for (;;) {
            double residual = 0.0;
            for (auto s : todo) {
                double sum = 0.0;
                double self = 0.0;
                for (const auto& [t, p] : d_.row(s)) {
                    if (t == s) {
                        self += p;
                    } else {
                        sum += p * x[t];
                    }
                }
                const double v = sum / (1.0 - self);
                residual = std::max(residual, std::abs(v - x[s]));
                x[s] = v;
            }
            ++local.iterations;
            local.residual = residual;
            if (residual < options_.epsilon) break;
            if (local.iterations >= options_.max_iterations) {
                throw CheckError(CheckErrc::NonConvergence,
                                 "value iteration did not converge: residual " + std::to_string(residual) + " after " +
                                     std::to_string(local.iterations) + " iterations");
            }
        }
        detail::merge_stats(stats_, local);
        return x;
    }

    std::vector<double> bounded_until(const StateSet& phi1, const StateSet& phi2, std::uint64_t steps) {
        const auto n = d_.num_states();
        std::vector<double> x(n, 0.0);
        for (StateIndex s = 0; s < n; ++s) x[s] = phi2[s] ? 1.0 : 0.0;
        std::vector<double> y(n, 0.0);
        for (std::uint64_t k = 0; k < steps; ++k) {
            for (StateIndex s = 0; s < n; ++s) {
                if (phi2[s]) {
                    y[s] = 1.0;
                } else if (!phi1[s]) {
                    y[s] = 0.0;
                } else {
                    double sum = 0.0;
                    for (const auto& [t, p] : d_.row(s)) sum += p * x[t];
                    y[s] = sum;
                }
            }
            x.swap(y);
        }
        stats_.iterations += steps;
        return x;
    }

    const model::ExplicitDtmc& d_;
    const SolverOptions& options_;
    SolverStats stats_;
};

}  // namespace

CheckResult check_dtmc(const model::ExplicitDtmc& d, const pctl::StateFormula& f, const SolverOptions& options) {
    DtmcSolver solver(d, options);
    return detail::evaluate(solver, d.labeling(), d.initial(), f);
}

}  // namespace polcheck::check
