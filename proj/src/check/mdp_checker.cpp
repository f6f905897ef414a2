#include "polcheck/check/mdp_checker.h"

#include <cmath>
#include <limits>

#include "check/evaluation.h"
#include "polcheck/check/qualitative.h"

namespace polcheck::check {

using model::StateIndex;
using model::StateSet;

namespace {

class MdpSolver {
public:
    MdpSolver(const model::ExplicitMdp& m, const SolverOptions& options) : m_(m), options_(options) {}

    std::vector<double> probabilities(const pctl::StateFormula& f) {
        if (f.quantifier == pctl::Quantifier::Plain) {
            throw CheckError(CheckErrc::InvalidFormula,
                             "plain P is not defined on an MDP: use Pmin/Pmax for the monolithic check, or check a "
                             "policy-induced DTMC (stochastic or deterministic mode)");
        }
        const bool maximize = f.quantifier == pctl::Quantifier::Max;
        const pctl::PathFormula& path = **f.path;
        const auto& lab = m_.labeling();
        switch (path.kind) {
            case pctl::PathFormula::Kind::Next: return next(detail::satisfy(*this, lab, path.operands[0]), maximize);
            case pctl::PathFormula::Kind::Until:
                return until(detail::satisfy(*this, lab, path.operands[0]),
                             detail::satisfy(*this, lab, path.operands[1]), maximize);
            case pctl::PathFormula::Kind::BoundedUntil: {
                const auto steps = detail::bounded_steps(path);
                const auto phi1 = detail::satisfy(*this, lab, path.operands[0]);
                const auto phi2 = detail::satisfy(*this, lab, path.operands[1]);
                if (!steps) return std::vector<double>(m_.num_states(), 0.0);
                return bounded_until(phi1, phi2, *steps, maximize);
            }
        }
        return {};
    }

    const SolverStats& stats() const { return stats_; }

private:
    static double initial_best(bool maximize) {
        return maximize ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
    }

    static double pick(double best, double v, bool maximize) {
        return maximize ? std::max(best, v) : std::min(best, v);
    }

    std::vector<double> next(const StateSet& phi, bool maximize) const {
        std::vector<double> x(m_.num_states(), 0.0);
        for (StateIndex s = 0; s < m_.num_states(); ++s) {
            double best = initial_best(maximize);
            for (const auto& c : m_.choices(s)) {
                double v = 0.0;
                for (const auto& [t, p] : c.distribution) {
                    if (phi[t]) v += p;
                }
                best = pick(best, v, maximize);
            }
            x[s] = best;
        }
        return x;
    }

    std::vector<double> until(const StateSet& phi1, const StateSet& phi2, bool maximize) {
        const auto n = m_.num_states();
        const auto zero = maximize ? prob0_max(m_, phi1, phi2) : prob0_min(m_, phi1, phi2);
        const auto one = maximize ? prob1_max(m_, phi1, phi2) : prob1_min(m_, phi1, phi2);
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
                double best = initial_best(maximize);
                for (const auto& c : m_.choices(s)) {
                    double sum = 0.0;
                    double self = 0.0;
                    for (const auto& [t, p] : c.distribution) {
                        if (t == s) {
                            self += p;
                        } else {
                            sum += p * x[t];
                        }
                    }
                    // a pure self-loop never leaves s; it cannot improve a max and
                    // cannot occur in an undetermined state for min
                    if (self >= 1.0) {
                        if (!maximize) best = pick(best, x[s], maximize);
                        continue;
                    }
                    best = pick(best, sum / (1.0 - self), maximize);
                }
                if (std::isinf(best)) best = x[s];
                residual = std::max(residual, std::abs(best - x[s]));
                x[s] = best;
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

    std::vector<double> bounded_until(const StateSet& phi1, const StateSet& phi2, std::uint64_t steps,
                                      bool maximize) {
        const auto n = m_.num_states();
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
                    double best = initial_best(maximize);
                    for (const auto& c : m_.choices(s)) {
                        double sum = 0.0;
                        for (const auto& [t, p] : c.distribution) sum += p * x[t];
                        best = pick(best, sum, maximize);
                    }
                    y[s] = best;
                }
            }
            x.swap(y);
        }
        stats_.iterations += steps;
        return x;
    }

    const model::ExplicitMdp& m_;
    const SolverOptions& options_;
    SolverStats stats_;
};

}  // namespace

CheckResult check_mdp_extremal(const model::ExplicitMdp& m, const pctl::StateFormula& f,
                               const SolverOptions& options) {
    MdpSolver solver(m, options);
    return detail::evaluate(solver, m.labeling(), m.initial(), f);
}

}  // namespace polcheck::check
