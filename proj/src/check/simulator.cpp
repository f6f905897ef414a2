#include "polcheck/check/simulator.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <unordered_map>

#include "polcheck/build/builder.h"

namespace polcheck::check {

using model::FactoredState;
using pctl::PathFormula;
using pctl::StateFormula;

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) throw CheckError(CheckErrc::InvalidArgument, "Wilson interval of zero trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

bool propositional(const StateFormula& f) {
    switch (f.kind) {
        case StateFormula::Kind::True:
        case StateFormula::Kind::Atom: return true;
        case StateFormula::Kind::And: return propositional(f.operands[0]) && propositional(f.operands[1]);
        case StateFormula::Kind::Not: return propositional(f.operands[0]);
        case StateFormula::Kind::Prob: return false;
    }
    return false;
}

[[noreturn]] void unsupported(const std::string& why) {
    throw CheckError(CheckErrc::UnsupportedFormulaForSimulation, "cannot simulate: " + why);
}

// Per-state data gathered on first visit.
struct StepInfo {
    bool sat1 = false;
    bool sat2 = false;
    bool absorbing = false;
    std::vector<std::pair<double, std::uint32_t>> cumulative;  // (upper bound, successor id)
};

class Sampler {
public:
    Sampler(const lang::SymbolicModel& m, policy::StochasticPolicy& p, const StateFormula* phi1,
            const StateFormula& phi2, bool patch_deadlocks)
        : m_(m), p_(p), phi1_(phi1), phi2_(phi2), patch_(patch_deadlocks), initial_(lang::initial_state(m)) {}

    std::uint32_t intern(const FactoredState& s) {
        auto [it, inserted] = ids_.try_emplace(s, static_cast<std::uint32_t>(states_.size()));
        if (inserted) {
            states_.push_back(s);
            info_.emplace_back();
            expanded_.push_back(false);
        }
        return it->second;
    }

    const StepInfo& info(std::uint32_t id) {
        if (!expanded_[id]) expand(id);
        return info_[id];
    }

    template <typename Rng>
    std::uint32_t step(std::uint32_t id, Rng& rng) {
        const auto& cum = info(id).cumulative;
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * cum.back().first;
        auto it = std::upper_bound(cum.begin(), cum.end(), u,
                                   [](double v, const std::pair<double, std::uint32_t>& e) { return v < e.first; });
        if (it == cum.end()) --it;
        return it->second;
    }

private:
    bool holds(const StateFormula& f, const FactoredState& s) const {
        switch (f.kind) {
            case StateFormula::Kind::True: return true;
            case StateFormula::Kind::Atom: {
                for (const auto& l : m_.labels()) {
                    if (l.name == f.atom) return lang::evaluate_bool(l.condition, s);
                }
                if (f.atom == build::kInitLabel) return s == initial_;
                if (f.atom == build::kDeadlockLabel && patch_) return lang::enabled_action_indices(m_, s).empty();
                throw CheckError(CheckErrc::UnknownAtom, "unknown atom \"" + f.atom + "\"");
            }
            case StateFormula::Kind::And: return holds(f.operands[0], s) && holds(f.operands[1], s);
            case StateFormula::Kind::Not: return !holds(f.operands[0], s);
            case StateFormula::Kind::Prob: break;
        }
        unsupported("nested P operator");
    }

    void expand(std::uint32_t id) {
        const FactoredState s = states_[id];
        StepInfo inf;
        inf.sat1 = phi1_ == nullptr || holds(*phi1_, s);
        inf.sat2 = holds(phi2_, s);

        const auto enabled_idx = lang::enabled_action_indices(m_, s);
        std::vector<std::pair<FactoredState, double>> mixed;
        if (enabled_idx.empty()) {
            if (!patch_) {
                throw build::BuildError(build::BuildErrc::DeadlockState,
                                        "deadlock in state " + s.to_string(m_.variable_names()),
                                        s.to_string(m_.variable_names()));
            }
            mixed.emplace_back(s, 1.0);
        } else {
            std::vector<std::string> enabled;
            for (auto a : enabled_idx) enabled.push_back(m_.action_names()[a]);
            const auto weights = policy::restrict_to_enabled(p_.query(s, enabled), enabled);
            for (std::size_t i = 0; i < enabled.size(); ++i) {
                const double w = weights.probability_of(enabled[i]);
                if (w <= 0.0) continue;
                for (const auto& [t, q] : lang::successors(m_, s, enabled_idx[i])) mixed.emplace_back(t, w * q);
            }
        }
        const auto merged = model::merge_duplicates(mixed);
        double acc = 0.0;
        for (const auto& [t, q] : merged) {
            acc += q;
            const auto tid = intern(t);
            inf.cumulative.emplace_back(acc, tid);
        }
        inf.absorbing = merged.size() == 1 && merged.entries().front().first == s;
        info_[id] = std::move(inf);
        expanded_[id] = true;
    }

    const lang::SymbolicModel& m_;
    policy::StochasticPolicy& p_;
    const StateFormula* phi1_;
    const StateFormula& phi2_;
    bool patch_;
    FactoredState initial_;
    std::vector<FactoredState> states_;
    std::unordered_map<FactoredState, std::uint32_t> ids_;
    std::vector<StepInfo> info_;
    std::vector<bool> expanded_;
};

}  // namespace

SimulationResult simulate(const lang::SymbolicModel& m, policy::StochasticPolicy& p, const StateFormula& f,
                          const SimulationOptions& options) {
    if (options.episodes == 0) throw CheckError(CheckErrc::InvalidArgument, "episodes must be positive");
    if (f.kind != StateFormula::Kind::Prob) unsupported("expected a P operator");
    if (f.quantifier != pctl::Quantifier::Plain) unsupported("Pmin/Pmax range over schedulers, not a policy");
    const PathFormula& path = **f.path;
    for (const auto& op : path.operands) {
        if (!propositional(op)) unsupported("path operands must be propositional");
    }

    const bool next = path.kind == PathFormula::Kind::Next;
    const StateFormula& target = next ? path.operands[0] : path.operands[1];
    const StateFormula* guard = next ? nullptr : &path.operands[0];
    std::optional<std::uint64_t> bound;
    if (path.kind == PathFormula::Kind::BoundedUntil) {
        if (path.bound_kind == pctl::StepBound::LessEqual) {
            bound = path.bound;
        } else {
            bound = path.bound == 0 ? 0 : path.bound - 1;
        }
    } else if (path.kind == PathFormula::Kind::Until && options.horizon < options.unbounded_cutoff) {
        throw CheckError(CheckErrc::InvalidArgument, "unbounded until needs a horizon of at least " +
                                                         std::to_string(options.unbounded_cutoff) + " steps (got " +
                                                         std::to_string(options.horizon) + ")");
    }
    const bool never = path.kind == PathFormula::Kind::BoundedUntil && path.bound_kind == pctl::StepBound::Less &&
                       path.bound == 0;

    Sampler sampler(m, p, guard, target, options.patch_deadlocks);
    const auto start = sampler.intern(lang::initial_state(m));
    std::mt19937_64 rng(options.seed);

    SimulationResult r;
    r.episodes = options.episodes;
    for (std::uint64_t e = 0; e < options.episodes; ++e) {
        if (never) break;
        auto s = start;
        if (next) {
            s = sampler.step(s, rng);
            if (sampler.info(s).sat2) ++r.successes;
            continue;
        }
        for (std::uint64_t k = 0;; ++k) {
            const auto& inf = sampler.info(s);
            if (inf.sat2) {
                ++r.successes;
                break;
            }
            if (!inf.sat1 || inf.absorbing || (bound && k == *bound)) break;
            if (k == options.horizon) {
                ++r.truncated;
                break;
            }
            s = sampler.step(s, rng);
        }
    }
    r.estimate = static_cast<double>(r.successes) / static_cast<double>(r.episodes);
    const auto ci = wilson_interval(r.successes, r.episodes);
    r.lower = ci.lower;
    r.upper = ci.upper;
    return r;
}

}  // namespace polcheck::check
