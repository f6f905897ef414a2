#include "polcheck/check/qualitative.h"

#include <cstdint>
#include <vector>

namespace polcheck::check {

using model::StateIndex;

namespace {

std::vector<std::vector<StateIndex>> dtmc_predecessors(const model::ExplicitDtmc& d) {
    std::vector<std::vector<StateIndex>> pred(d.num_states());
    for (StateIndex s = 0; s < d.num_states(); ++s) {
        for (const auto& [t, p] : d.row(s)) {
            if (pred[t].empty() || pred[t].back() != s) pred[t].push_back(s);
        }
    }
    return pred;
}

// Backward closure of `seed` through states in `via`.
StateSet backward_reach(const std::vector<std::vector<StateIndex>>& pred, StateSet seed, const StateSet& via) {
    std::vector<StateIndex> stack;
    for (StateIndex s = 0; s < seed.size(); ++s) {
        if (seed[s]) stack.push_back(s);
    }
    while (!stack.empty()) {
        const auto t = stack.back();
        stack.pop_back();
        for (auto s : pred[t]) {
            if (!seed[s] && via[s]) {
                seed[s] = true;
                stack.push_back(s);
            }
        }
    }
    return seed;
}

StateSet complement(StateSet s) {
    s.flip();
    return s;
}

StateSet and_not(const StateSet& a, const StateSet& b) {
    StateSet out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && !b[i];
    return out;
}

// Predecessor lists over (state, global choice id).
struct MdpGraph {
    std::vector<std::size_t> first_choice;  // per state, plus sentinel
    std::vector<StateIndex> choice_state;
    std::vector<std::vector<std::pair<StateIndex, std::uint32_t>>> pred;

    explicit MdpGraph(const model::ExplicitMdp& m) : first_choice(m.num_states() + 1), pred(m.num_states()) {
        std::uint32_t c = 0;
        for (StateIndex s = 0; s < m.num_states(); ++s) {
            first_choice[s] = c;
            for (const auto& choice : m.choices(s)) {
                choice_state.push_back(s);
                for (const auto& [t, p] : choice.distribution) {
                    if (pred[t].empty() || pred[t].back().second != c) pred[t].emplace_back(s, c);
                }
                ++c;
            }
        }
        first_choice[m.num_states()] = c;
    }

    std::vector<std::vector<StateIndex>> state_predecessors() const {
        std::vector<std::vector<StateIndex>> out(pred.size());
        for (std::size_t t = 0; t < pred.size(); ++t) {
            for (const auto& [s, c] : pred[t]) {
                if (out[t].empty() || out[t].back() != s) out[t].push_back(s);
            }
        }
        return out;
    }
};

}  // namespace

StateSet prob0(const model::ExplicitDtmc& d, const StateSet& phi1, const StateSet& phi2) {
    return complement(backward_reach(dtmc_predecessors(d), phi2, phi1));
}

StateSet prob1(const model::ExplicitDtmc& d, const StateSet& phi1, const StateSet& phi2) {
    const auto pred = dtmc_predecessors(d);
    const auto zero = complement(backward_reach(pred, phi2, phi1));
    // P < 1 iff some phi1 & !phi2 path reaches a P = 0 state
    return complement(backward_reach(pred, zero, and_not(phi1, phi2)));
}

StateSet prob0_max(const model::ExplicitMdp& m, const StateSet& phi1, const StateSet& phi2) {
    return complement(backward_reach(MdpGraph(m).state_predecessors(), phi2, phi1));
}

StateSet prob0_min(const model::ExplicitMdp& m, const StateSet& phi1, const StateSet& phi2) {
    // Greatest set from which every choice hits the set with positive mass;
    // its complement can avoid phi2 surely.
    const MdpGraph g(m);
    const auto n = m.num_states();
    StateSet forced = phi2;
    std::vector<bool> choice_hits(g.choice_state.size(), false);
    std::vector<std::size_t> hits(n, 0);
    std::vector<StateIndex> stack;
    for (StateIndex s = 0; s < n; ++s) {
        if (forced[s]) stack.push_back(s);
    }
    while (!stack.empty()) {
        const auto t = stack.back();
        stack.pop_back();
        for (const auto& [s, c] : g.pred[t]) {
            if (forced[s] || !phi1[s] || choice_hits[c]) continue;
            choice_hits[c] = true;
            if (++hits[s] == g.first_choice[s + 1] - g.first_choice[s]) {
                forced[s] = true;
                stack.push_back(s);
            }
        }
    }
    return complement(std::move(forced));
}

StateSet prob1_max(const model::ExplicitMdp& m, const StateSet& phi1, const StateSet& phi2) {
    const MdpGraph g(m);
    const auto n = m.num_states();
    StateSet u(n, true);
    for (;;) {
        // choices whose whole support stays inside u
        std::vector<bool> inside(g.choice_state.size(), true);
        for (StateIndex s = 0; s < n; ++s) {
            std::size_t c = g.first_choice[s];
            for (const auto& choice : m.choices(s)) {
                for (const auto& [t, p] : choice.distribution) {
                    if (!u[t]) {
                        inside[c] = false;
                        break;
                    }
                }
                ++c;
            }
        }
        StateSet r = phi2;
        std::vector<StateIndex> stack;
        for (StateIndex s = 0; s < n; ++s) {
            if (r[s]) stack.push_back(s);
        }
        while (!stack.empty()) {
            const auto t = stack.back();
            stack.pop_back();
            for (const auto& [s, c] : g.pred[t]) {
                if (!r[s] && phi1[s] && u[s] && inside[c]) {
                    r[s] = true;
                    stack.push_back(s);
                }
            }
        }
        if (r == u) return r;
        u = std::move(r);
    }
}

StateSet prob1_min(const model::ExplicitMdp& m, const StateSet& phi1, const StateSet& phi2) {
    // Pmin < 1 iff some scheduler reaches a Pmin = 0 state along phi1 & !phi2.
    const auto zero = prob0_min(m, phi1, phi2);
    return complement(backward_reach(MdpGraph(m).state_predecessors(), zero, and_not(phi1, phi2)));
}

}  // namespace polcheck::check
