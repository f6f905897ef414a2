#include <doctest.h>

#include <cmath>
#include <functional>

#include "fixtures.h"
#include "polcheck/build/builder.h"
#include "polcheck/check/dtmc_checker.h"
#include "polcheck/check/mdp_checker.h"
#include "polcheck/check/qualitative.h"
#include "polcheck/check/simulator.h"
#include "polcheck/lang/model_parser.h"
#include "polcheck/pctl/pctl_parser.h"
#include "polcheck/policy/tabular_policy.h"
#include "support/brute_force.h"
#include "support/random_models.h"

using namespace polcheck;
using namespace polcheck::check;
using model::StateIndex;
using model::StateSet;

namespace {

lang::SymbolicModel running_example() { return lang::parse_model_file(fixture("running_example.gcl")); }

model::ExplicitDtmc running_dtmc() {
    const auto m = running_example();
    auto p = policy::load_tabular(fixture("running_example.policy.jsonl"), m.variable_names());
    return build::build_stochastic_dtmc(m, p).dtmc;
}

double query(const model::ExplicitDtmc& d, const std::string& f) { return check_dtmc(d, pctl::parse_pctl(f)).value; }
double query(const model::ExplicitMdp& m, const std::string& f) {
    return check_mdp_extremal(m, pctl::parse_pctl(f)).value;
}

// Reachability by Gaussian elimination on the states that can reach the
// target; independent of the iterative solver.
std::vector<double> solve_reach(const std::vector<std::vector<std::pair<StateIndex, double>>>& rows,
                                const StateSet& target) {
    const std::size_t n = rows.size();
    StateSet can(n, false);
    for (std::size_t s = 0; s < n; ++s) can[s] = target[s];
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < n; ++s) {
            if (can[s]) continue;
            for (const auto& [t, p] : rows[s]) {
                if (p > 0 && can[t]) {
                    can[s] = true;
                    changed = true;
                    break;
                }
            }
        }
    }
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t s = 0; s < n; ++s) {
        a[s][s] = 1.0;
        if (target[s]) {
            a[s][n] = 1.0;
        } else if (can[s]) {
            for (const auto& [t, p] : rows[s]) a[s][t] -= p;
        }
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        }
        std::swap(a[c], a[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0.0) continue;
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t s = 0; s < n; ++s) x[s] = a[s][n] / a[s][s];
    return x;
}

// Extremal reachability over every memoryless deterministic scheduler.
std::pair<std::vector<double>, std::vector<double>> enumerate_schedulers(const model::ExplicitMdp& m,
                                                                         const StateSet& target) {
    const auto n = m.num_states();
    std::vector<double> lo(n, 2.0), hi(n, -1.0);
    std::vector<std::size_t> pick(n, 0);
    for (;;) {
        std::vector<std::vector<std::pair<StateIndex, double>>> rows(n);
        for (StateIndex s = 0; s < n; ++s) {
            for (const auto& e : m.choices(s)[pick[s]].distribution) rows[s].push_back(e);
        }
        const auto x = solve_reach(rows, target);
        for (std::size_t s = 0; s < n; ++s) {
            lo[s] = std::min(lo[s], x[s]);
            hi[s] = std::max(hi[s], x[s]);
        }
        std::size_t i = 0;
        while (i < n && ++pick[i] == m.choices(static_cast<StateIndex>(i)).size()) pick[i++] = 0;
        if (i == n) break;
    }
    return {lo, hi};
}

std::size_t scheduler_count(const model::ExplicitMdp& m) {
    std::size_t c = 1;
    for (StateIndex s = 0; s < m.num_states(); ++s) {
        c *= m.choices(s).size();
        if (c > 5000) return c;
    }
    return c;
}

}  // namespace

TEST_SUITE("check") {

TEST_CASE("qualitative sets on the running example") {
    const auto d = running_dtmc();
    const StateSet all(4, true);
    const auto& b = d.labeling().states_with("atB");
    // state order: A, B, C, D
    CHECK(prob0(d, all, b) == StateSet{false, false, true, true});
    CHECK(prob1(d, all, b) == StateSet{false, true, false, false});
}

TEST_CASE("two-state chain") {
    model::Labeling lab(2);
    lab.set("b", 1);
    const model::ExplicitDtmc d({"x"}, {model::FactoredState({0}), model::FactoredState({1})}, 0,
                                {model::Distribution<StateIndex>::dirac(1), model::Distribution<StateIndex>::dirac(1)},
                                lab);
    CHECK(prob1(d, StateSet(2, true), lab.states_with("b")) == StateSet{true, true});
    CHECK(prob0(d, StateSet(2, true), lab.states_with("b")) == StateSet{false, false});
    CHECK(prob1(d, StateSet(2, true), StateSet{true, false}) == StateSet{true, false});
}

TEST_CASE("dtmc values on the running example") {
    const auto d = running_dtmc();
    CHECK(std::abs(query(d, "P=? [ F \"atB\" ]") - 0.06) < 1e-12);
    CHECK(query(d, "P=? [ F \"atA\" ]") == 1.0);
    CHECK(query(d, "P=? [ true U<=0 \"atB\" ]") == 0.0);
    CHECK(std::abs(query(d, "P=? [ X \"atC\" ]") - 0.52) < 1e-12);
    CHECK(std::abs(query(d, "P=? [ \"atA\" U<=1 (\"atC\" & !\"atB\") ]") - 0.52) < 1e-12);
    CHECK(query(d, "P=? [ F<1 \"atD\" ]") == 0.0);
    CHECK(query(d, "P=? [ F<0 \"atA\" ]") == 0.0);

    const auto r = check_dtmc(d, pctl::parse_pctl("P>=0.5 [ F \"atB\" ]"));
    CHECK(r.kind == CheckResult::Kind::Boolean);
    CHECK_FALSE(r.truth);
    CHECK(std::abs(r.value - 0.06) < 1e-12);

    CHECK(check_dtmc(d, pctl::parse_pctl("Pmax=? [ F \"atB\" ]")).value == doctest::Approx(0.06));
    CHECK(check_dtmc(d, pctl::parse_pctl("\"atA\" & P<0.1 [ X \"atB\" ]")).truth);
    CHECK(check_dtmc(d, pctl::parse_pctl("P>0.9 [ X P>=1 [ X \"atC\" ] ]")).kind == CheckResult::Kind::Boolean);
}

TEST_CASE("dtmc errors") {
    const auto d = running_dtmc();
    try {
        check_dtmc(d, pctl::parse_pctl("P=? [ F \"nowhere\" ]"));
        FAIL("expected UnknownAtom");
    } catch (const CheckError& e) {
        CHECK(e.kind() == CheckErrc::UnknownAtom);
    }
    SolverOptions tight;
    tight.max_iterations = 2;
    // a slowly mixing chain that ends in goal or a sink with equal odds
    model::Labeling lab(4);
    lab.set("goal", 2);
    std::vector<model::FactoredState> states;
    for (model::Value v = 0; v < 4; ++v) states.emplace_back(std::vector<model::Value>{v});
    const model::ExplicitDtmc slow({"x"}, states, 0,
                                   {model::Distribution<StateIndex>({{1, 0.999}, {2, 0.0005}, {3, 0.0005}}),
                                    model::Distribution<StateIndex>({{0, 0.999}, {2, 0.0005}, {3, 0.0005}}),
                                    model::Distribution<StateIndex>::dirac(2), model::Distribution<StateIndex>::dirac(3)},
                                   lab);
    try {
        check_dtmc(slow, pctl::parse_pctl("P=? [ F \"goal\" ]"), tight);
        FAIL("expected NonConvergence");
    } catch (const CheckError& e) {
        CHECK(e.kind() == CheckErrc::NonConvergence);
    }
    const auto r = check_dtmc(slow, pctl::parse_pctl("P=? [ F \"goal\" ]"));
    CHECK(std::abs(r.value - 0.5) < 1e-6);
    CHECK(r.stats.iterations > 2);
}

TEST_CASE("mdp extremal values on the running example") {
    const auto mdp = build::build_full_mdp(running_example()).mdp;
    CHECK(std::abs(query(mdp, "Pmax=? [ F \"atB\" ]") - 0.2) < 1e-12);
    CHECK(query(mdp, "Pmin=? [ F \"atB\" ]") == 0.0);
    CHECK(query(mdp, "Pmax=? [ F \"atA\" ]") == 1.0);
    CHECK(std::abs(query(mdp, "Pmax=? [ F<=5 \"atD\" ]") - 0.6) < 1e-12);
    CHECK(std::abs(query(mdp, "Pmax=? [ X \"atC\" ]") - 0.8) < 1e-12);
    CHECK(query(mdp, "Pmin=? [ X \"atC\" ]") == 0.0);
    try {
        query(mdp, "P=? [ F \"atB\" ]");
        FAIL("expected InvalidFormula");
    } catch (const CheckError& e) {
        CHECK(e.kind() == CheckErrc::InvalidFormula);
        CHECK(std::string(e.what()).find("Pmin/Pmax") != std::string::npos);
    }
    CHECK_THROWS_AS(query(mdp, "Pmax=? [ X P>0.5 [ F \"atB\" ] ]"), CheckError);
}

TEST_CASE("a safe self-loop gives Pmin zero") {
    const auto m = lang::parse_model(R"(mdp
var x : [0..2] init 0;
action wait : true -> 1.0:(x'=x);
action risk : x=0 -> 0.5:(x'=1) + 0.5:(x'=2);
action risk : x>0 -> 1.0:(x'=x);
label "coll" = x=2;
)");
    const auto mdp = build::build_full_mdp(m).mdp;
    CHECK(query(mdp, "Pmin=? [ F \"coll\" ]") == 0.0);
    CHECK(query(mdp, "Pmax=? [ F \"coll\" ]") == 0.5);
}

TEST_CASE("qualitative mdp sets") {
    const auto m = lang::parse_model(R"(mdp
var x : [0..3] init 0;
action a : x=0 -> 0.5:(x'=1) + 0.5:(x'=0);
action a : x>0 -> 1.0:(x'=x);
action b : x=0 -> 1.0:(x'=2);
action b : x=1 -> 1.0:(x'=3);
action b : x>1 -> 1.0:(x'=x);
label "goal" = x=1 | x=3;
)");
    const auto mdp = build::build_full_mdp(m).mdp;
    const StateSet all(mdp.num_states(), true);
    const auto& goal = mdp.labeling().states_with("goal");
    // states in BFS order: 0, 1, 2, 3
    CHECK(prob1_max(mdp, all, goal) == StateSet{true, true, false, true});
    CHECK(prob0_max(mdp, all, goal) == StateSet{false, false, true, false});
    CHECK(prob0_min(mdp, all, goal) == StateSet{true, false, true, false});
    CHECK(prob1_min(mdp, all, goal) == StateSet{false, true, false, true});
}

TEST_CASE("duality of reach and avoid on absorbing fixtures") {
    const auto m = lang::parse_model(R"(mdp
var x : [0..4] init 0;
action l : x=0 -> 0.3:(x'=1) + 0.7:(x'=2);
action l : x=1 -> 0.5:(x'=3) + 0.5:(x'=4);
action l : x=2 -> 0.9:(x'=0) + 0.1:(x'=4);
action l : x>2 -> 1.0:(x'=x);
action r : x=0 -> 0.6:(x'=3) + 0.4:(x'=2);
action r : x=1 -> 1.0:(x'=3);
action r : x=2 -> 0.2:(x'=3) + 0.8:(x'=4);
action r : x>2 -> 1.0:(x'=x);
label "target" = x=3;
label "sink" = x=4;
)");
    const auto mdp = build::build_full_mdp(m).mdp;
    // every scheduler ends in target or sink with probability one
    CHECK(query(mdp, "Pmin=? [ F !(!\"target\" & !\"sink\") ]") == doctest::Approx(1.0));
    CHECK(std::abs(query(mdp, "Pmax=? [ F \"target\" ]") - (1 - query(mdp, "Pmin=? [ F \"sink\" ]"))) < 1e-8);
    CHECK(std::abs(query(mdp, "Pmin=? [ F \"target\" ]") - (1 - query(mdp, "Pmax=? [ F \"sink\" ]"))) < 1e-8);
}

TEST_CASE("mdp values match scheduler enumeration on random models") {
    testing::Rng rng(31);
    int checked = 0;
    for (int i = 0; i < 200 && checked < 40; ++i) {
        testing::RandomModelOptions opt;
        opt.max_product = 30;
        const auto m = lang::parse_model(testing::random_gcl_model(rng, opt));
        const auto mdp = build::build_full_mdp(m).mdp;
        if (scheduler_count(mdp) > 5000) continue;
        ++checked;
        const auto& target = mdp.labeling().states_with("target");
        const auto [lo, hi] = enumerate_schedulers(mdp, target);
        const auto rmax = check_mdp_extremal(mdp, pctl::parse_pctl("Pmax=? [ F \"target\" ]"));
        const auto rmin = check_mdp_extremal(mdp, pctl::parse_pctl("Pmin=? [ F \"target\" ]"));
        for (StateIndex s = 0; s < mdp.num_states(); ++s) {
            CHECK(std::abs(rmax.per_state[s] - hi[s]) < 1e-6);
            CHECK(std::abs(rmin.per_state[s] - lo[s]) < 1e-6);
        }
    }
    CHECK(checked >= 20);
}

TEST_CASE("dtmc values match a direct linear solve") {
    testing::Rng rng(12);
    for (int i = 0; i < 100; ++i) {
        const auto d = testing::random_dtmc(rng, 12);
        std::vector<std::vector<std::pair<StateIndex, double>>> rows;
        for (const auto& r : d.rows()) rows.emplace_back(r.entries());
        const auto x = solve_reach(rows, d.labeling().states_with("b"));
        const auto r = check_dtmc(d, pctl::parse_pctl("P=? [ F \"b\" ]"));
        const auto zero = prob0(d, StateSet(d.num_states(), true), d.labeling().states_with("b"));
        const auto one = prob1(d, StateSet(d.num_states(), true), d.labeling().states_with("b"));
        for (StateIndex s = 0; s < d.num_states(); ++s) {
            CHECK(std::abs(r.per_state[s] - x[s]) < 1e-7);
            if (zero[s]) CHECK(r.per_state[s] == 0.0);
            if (one[s]) CHECK(r.per_state[s] == 1.0);
        }
    }
}

TEST_CASE("bounded until matches path enumeration and is monotone") {
    testing::Rng rng(44);
    for (int i = 0; i < 30; ++i) {
        const auto d = testing::random_dtmc(rng, 6);
        const auto& a = d.labeling().states_with("a");
        const auto& b = d.labeling().states_with("b");
        const auto brute = testing::bounded_until_by_paths(d, a, b, 5);
        std::vector<double> prev(d.num_states(), 0.0);
        for (std::uint64_t t = 0; t <= 5; ++t) {
            const auto r = check_dtmc(d, pctl::parse_pctl("P=? [ \"a\" U<=" + std::to_string(t) + " \"b\" ]"));
            for (StateIndex s = 0; s < d.num_states(); ++s) {
                CHECK(std::abs(r.per_state[s] - brute[t][s]) < 1e-9);
                CHECK(r.per_state[s] >= prev[s] - 1e-12);
            }
            prev = r.per_state;
        }
    }
}

TEST_CASE("sandwich on random models") {
    testing::Rng rng(77);
    const auto f = pctl::parse_pctl("P=? [ F \"target\" ]");
    for (int i = 0; i < 25; ++i) {
        const auto m = lang::parse_model(testing::random_gcl_model(rng));
        auto p = testing::random_policy(m, rng, testing::PolicyShape::Stochastic);
        const auto full = build::build_full_mdp(m).mdp;
        const double lo = check_mdp_extremal(full, pctl::with_outer_quantifier(f, pctl::Quantifier::Min)).value;
        const double hi = check_mdp_extremal(full, pctl::with_outer_quantifier(f, pctl::Quantifier::Max)).value;
        const double st = check_dtmc(build::build_stochastic_dtmc(m, p).dtmc, f).value;
        const double det = check_dtmc(build::build_deterministic_dtmc(m, p).dtmc, f).value;
        CHECK(lo <= st + 1e-6);
        CHECK(st <= hi + 1e-6);
        CHECK(lo <= det + 1e-6);
        CHECK(det <= hi + 1e-6);
    }
}

TEST_CASE("wilson interval") {
    auto w = wilson_interval(50, 100);
    CHECK(w.lower == doctest::Approx(0.37527962504483986).epsilon(1e-12));
    CHECK(w.upper == doctest::Approx(0.6247203749551601).epsilon(1e-12));
    w = wilson_interval(0, 10);
    CHECK(w.lower == 0.0);
    CHECK(w.upper == doctest::Approx(0.39885409330490795).epsilon(1e-12));
    CHECK_THROWS_AS(wilson_interval(0, 0), CheckError);
}

TEST_CASE("simulation of the running example") {
    const auto m = running_example();
    auto p = policy::load_tabular(fixture("running_example.policy.jsonl"), m.variable_names());
    SimulationOptions opt;
    opt.episodes = 100000;
    opt.seed = 1;
    const auto r = simulate(m, p, pctl::parse_pctl("P=? [ F \"atB\" ]"), opt);
    CHECK(r.lower <= 0.06);
    CHECK(0.06 <= r.upper);
    CHECK(r.truncated == 0);
    CHECK(std::abs(r.estimate - 0.06) < 0.005);

    CHECK(simulate(m, p, pctl::parse_pctl("P=? [ F true ]"), opt).estimate == 1.0);
    CHECK(simulate(m, p, pctl::parse_pctl("P=? [ F<=0 \"atC\" ]"), opt).estimate == 0.0);
    const auto x = simulate(m, p, pctl::parse_pctl("P=? [ X \"atC\" ]"), opt);
    CHECK(x.lower <= 0.52);
    CHECK(0.52 <= x.upper);

    // same seed, same answer
    CHECK(simulate(m, p, pctl::parse_pctl("P=? [ F \"atB\" ]"), opt).successes == r.successes);
}

TEST_CASE("simulation input errors") {
    const auto m = running_example();
    auto p = policy::load_tabular(fixture("running_example.policy.jsonl"), m.variable_names());
    SimulationOptions opt;
    opt.episodes = 0;
    CHECK_THROWS_AS(simulate(m, p, pctl::parse_pctl("P=? [ F \"atB\" ]"), opt), CheckError);
    opt.episodes = 10;
    auto kind = [&](const std::string& f) {
        try {
            simulate(m, p, pctl::parse_pctl(f), opt);
        } catch (const CheckError& e) {
            return e.kind();
        }
        return CheckErrc::InvalidArgument;
    };
    CHECK(kind("Pmax=? [ F \"atB\" ]") == CheckErrc::UnsupportedFormulaForSimulation);
    CHECK(kind("P=? [ F P>0.5 [ X \"atB\" ] ]") == CheckErrc::UnsupportedFormulaForSimulation);
    CHECK(kind("\"atA\"") == CheckErrc::UnsupportedFormulaForSimulation);
    CHECK(kind("P=? [ F \"nowhere\" ]") == CheckErrc::UnknownAtom);
    opt.horizon = 5;
    CHECK(kind("P=? [ F \"atB\" ]") == CheckErrc::InvalidArgument);
}

TEST_CASE("truncation is reported") {
    const auto m = lang::parse_model(R"(mdp
var x : [0..1] init 0;
action stay : true -> 0.999:(x'=0) + 0.001:(x'=1);
label "goal" = x=1;
)");
    policy::TabularPolicy p(m.variable_names(), policy::FallbackMode::Uniform);
    SimulationOptions opt;
    opt.episodes = 200;
    opt.horizon = 100;
    const auto r = simulate(m, p, pctl::parse_pctl("P=? [ F \"goal\" ]"), opt);
    CHECK(r.truncation_caveat());
    CHECK(r.truncated + r.successes == 200);
}

}
