#include "support/brute_force.h"

namespace polcheck::testing {

namespace {

// Walks every path from `s`; a path is credited to all bounds >= the step at
// which it first meets phi2.
void walk(const model::ExplicitDtmc& d, const model::StateSet& phi1, const model::StateSet& phi2,
          model::StateIndex s, std::uint64_t step, std::uint64_t max_t, double mass, std::vector<double>& hit_at) {
    if (phi2[s]) {
        hit_at[step] += mass;
        return;
    }
    if (!phi1[s] || step == max_t) return;
    for (const auto& [t, p] : d.row(s)) walk(d, phi1, phi2, t, step + 1, max_t, mass * p, hit_at);
}

}  // namespace

std::vector<std::vector<double>> bounded_until_by_paths(const model::ExplicitDtmc& d, const model::StateSet& phi1,
                                                        const model::StateSet& phi2, std::uint64_t max_t) {
    std::vector<std::vector<double>> out(max_t + 1, std::vector<double>(d.num_states(), 0.0));
    for (model::StateIndex s = 0; s < d.num_states(); ++s) {
        std::vector<double> hit_at(max_t + 1, 0.0);
        walk(d, phi1, phi2, s, 0, max_t, 1.0, hit_at);
        double acc = 0.0;
        for (std::uint64_t t = 0; t <= max_t; ++t) {
            acc += hit_at[t];
            out[t][s] = acc;
        }
    }
    return out;
}

}  // namespace polcheck::testing
