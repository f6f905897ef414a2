#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "fixtures.h"
#include "polcheck/build/builder.h"
#include "polcheck/build/drn.h"
#include "polcheck/lang/model_parser.h"
#include "polcheck/policy/tabular_policy.h"
#include "support/random_models.h"

using namespace polcheck;
using namespace polcheck::build;
using model::FactoredState;
using model::StateIndex;

namespace {

lang::SymbolicModel running_example() { return lang::parse_model_file(fixture("running_example.gcl")); }

policy::TabularPolicy running_policy(const lang::SymbolicModel& m) {
    return policy::load_tabular(fixture("running_example.policy.jsonl"), m.variable_names());
}

std::set<FactoredState> state_set(const std::vector<FactoredState>& v) { return {v.begin(), v.end()}; }

StateIndex index_of(const model::ExplicitDtmc& d, const FactoredState& s) {
    const auto& states = d.states();
    return static_cast<StateIndex>(std::find(states.begin(), states.end(), s) - states.begin());
}

}  // namespace

TEST_SUITE("build") {

TEST_CASE("induced mdp of the running example") {
    const auto m = running_example();
    auto p = running_policy(m);
    const auto b = build_induced_mdp(m, p);
    CHECK(b.mdp.num_states() == 4);
    CHECK(b.mdp.states()[0] == FactoredState({1}));
    const auto& a = b.mdp.choices(0);
    REQUIRE(a.size() == 2);
    CHECK(a[0].action == "UP");
    CHECK(a[1].action == "DOWN");
    CHECK(a[0].reward == 1.0);
    CHECK(b.stats.states == 4);
    CHECK(b.stats.choices == 5);
}

TEST_CASE("induced dtmc row weights") {
    const auto m = running_example();
    auto p = running_policy(m);
    const auto b = build_stochastic_dtmc(m, p);
    const auto& d = b.dtmc;
    const auto& row = d.row(0);
    CHECK(std::abs(row.probability_of(index_of(d, FactoredState({2}))) - 0.06) < 1e-12);
    CHECK(std::abs(row.probability_of(index_of(d, FactoredState({3}))) - 0.52) < 1e-12);
    CHECK(std::abs(row.probability_of(index_of(d, FactoredState({4}))) - 0.42) < 1e-12);
    CHECK(row.size() == 3);
    for (StateIndex s = 1; s < 4; ++s) CHECK(d.row(s) == model::Distribution<StateIndex>::dirac(s));
    CHECK(b.stats.states == 4);
    CHECK(b.stats.transitions == 6);
    CHECK(d.labeling().states_with("atB")[index_of(d, FactoredState({2}))]);
    CHECK(d.labeling().states_with("init") == model::StateSet{true, false, false, false});
}

TEST_CASE("merging duplicate targets across actions") {
    const auto m = lang::parse_model(R"(mdp
var x : [0..1] init 0;
action a : true -> 1.0:(x'=1);
action b : true -> 1.0:(x'=1);
)");
    policy::TabularPolicy p(m.variable_names());
    p.insert(FactoredState({0}), policy::ActionDistribution({{"a", 0.5}, {"b", 0.5}}));
    p.insert(FactoredState({1}), policy::ActionDistribution({{"a", 1.0}}));
    const auto b = build_stochastic_dtmc(m, p);
    CHECK(b.dtmc.row(0) == model::Distribution<StateIndex>({{1, 1.0}}));
}

TEST_CASE("nop-only policy yields a single state") {
    const auto m = running_example();
    policy::TabularPolicy p(m.variable_names());
    p.insert(FactoredState({1}), policy::ActionDistribution({{"NOP", 1.0}}));
    const auto b = build_induced_mdp(m, p);
    CHECK(b.mdp.num_states() == 1);
    REQUIRE(b.mdp.choices(0).size() == 1);
    CHECK(b.mdp.choices(0)[0].distribution == model::Distribution<StateIndex>::dirac(0));
    const auto d = to_induced_dtmc(b.mdp, p);
    CHECK(d.row(0) == model::Distribution<StateIndex>::dirac(0));
}

TEST_CASE("deterministic build follows the argmax") {
    const auto m = running_example();
    auto p = running_policy(m);
    const auto b = build_deterministic_dtmc(m, p);
    CHECK(b.dtmc.num_states() == 3);
    CHECK(b.dtmc.row(0).probability_of(index_of(b.dtmc, FactoredState({3}))) == 0.4);
    CHECK(b.dtmc.row(0).probability_of(index_of(b.dtmc, FactoredState({4}))) == 0.6);
    CHECK(index_of(b.dtmc, FactoredState({2})) == 3);  // never built
    CHECK(b.stats.mode == BuildMode::Deterministic);
}

TEST_CASE("full mdp") {
    const auto m = running_example();
    const auto b = build_full_mdp(m);
    CHECK(b.mdp.num_states() == 4);
    for (StateIndex s = 0; s < 4; ++s) CHECK(b.mdp.choices(s).size() == 3);
    CHECK(b.mdp.num_transitions() == 5 + 9);
    CHECK(b.stats.mode == BuildMode::Monolithic);

    const auto single = build_full_mdp(lang::parse_model("mdp var x : [0..0] init 0; action A: true -> 1.0:(x'=0); action B: true -> 1.0:(x'=0);"));
    CHECK(single.mdp.num_states() == 1);
    CHECK(single.mdp.choices(0).size() == 2);
}

TEST_CASE("deadlocks") {
    const auto m = lang::parse_model(R"(mdp
var x : [0..2] init 0;
action go : x<2 -> 1.0:(x'=x+1);
)");
    try {
        build_full_mdp(m);
        FAIL("expected DeadlockState");
    } catch (const BuildError& e) {
        CHECK(e.kind() == BuildErrc::DeadlockState);
        CHECK(e.state() == "(x=2)");
    }
    BuildOptions patch;
    patch.patch_deadlocks = true;
    const auto b = build_full_mdp(m, patch);
    CHECK(b.mdp.num_states() == 3);
    CHECK(b.mdp.labeling().states_with(kDeadlockLabel) == model::StateSet{false, false, true});
    CHECK(b.mdp.choices(2)[0].distribution == model::Distribution<StateIndex>::dirac(2));
}

TEST_CASE("support threshold can empty a state") {
    const auto m = running_example();
    policy::TabularPolicy p(m.variable_names());
    p.insert(FactoredState({1}), policy::ActionDistribution({{"UP", 0.5}, {"DOWN", 0.5}}));
    BuildOptions opt;
    opt.support_threshold = 0.6;
    CHECK_THROWS_AS(build_induced_mdp(m, p, opt), BuildError);
    opt.patch_deadlocks = true;
    const auto b = build_induced_mdp(m, p, opt);
    CHECK(b.mdp.num_states() == 1);
    const auto d = to_induced_dtmc(b.mdp, p);
    CHECK(d.row(0) == model::Distribution<StateIndex>::dirac(0));

    opt = {};
    opt.support_threshold = 0.4;
    p = policy::TabularPolicy(m.variable_names());
    p.insert(FactoredState({1}), policy::ActionDistribution({{"UP", 0.3}, {"DOWN", 0.7}}));
    p.insert(FactoredState({3}), policy::ActionDistribution({{"NOP", 1.0}}));
    p.insert(FactoredState({4}), policy::ActionDistribution({{"NOP", 1.0}}));
    const auto pruned = build_stochastic_dtmc(m, p, opt);
    CHECK(pruned.dtmc.num_states() == 3);
    CHECK(pruned.dtmc.row(0).probability_of(1) == doctest::Approx(0.4));
}

TEST_CASE("policy errors name the state") {
    const auto m = running_example();
    policy::TabularPolicy p(m.variable_names());
    p.insert(FactoredState({1}), policy::ActionDistribution({{"UP", 1.0}}));
    CHECK_THROWS_WITH_AS(build_induced_mdp(m, p), doctest::Contains("(at state (x=2))"), policy::PolicyError);
    CHECK_THROWS_WITH_AS(build_deterministic_dtmc(m, p), doctest::Contains("(x=2)"), policy::PolicyError);
}

TEST_CASE("dirac equivalence and state-set monotonicity on random models") {
    testing::Rng rng(101);
    for (int i = 0; i < 40; ++i) {
        const auto src = testing::random_gcl_model(rng);
        CAPTURE(src);
        const auto m = lang::parse_model(src);
        const auto full = build_full_mdp(m);

        auto dirac = testing::random_policy(m, rng, testing::PolicyShape::Dirac);
        const auto s = build_stochastic_dtmc(m, dirac);
        const auto d = build_deterministic_dtmc(m, dirac);
        CHECK(s.dtmc.states() == d.dtmc.states());
        for (StateIndex k = 0; k < s.dtmc.num_states(); ++k) {
            const auto& a = s.dtmc.row(k);
            const auto& b = d.dtmc.row(k);
            REQUIRE(a.size() == b.size());
            for (const auto& [t, p] : a) CHECK(std::abs(p - b.probability_of(t)) <= 1e-12);
        }

        auto stoch = testing::random_policy(m, rng, testing::PolicyShape::Leaky);
        const auto st = build_stochastic_dtmc(m, stoch);
        const auto det = build_deterministic_dtmc(m, stoch);
        const auto full_set = state_set(full.mdp.states());
        const auto st_set = state_set(st.dtmc.states());
        for (const auto& x : det.dtmc.states()) CHECK(st_set.count(x) == 1);
        for (const auto& x : st.dtmc.states()) CHECK(full_set.count(x) == 1);
        for (const auto& row : st.dtmc.rows()) CHECK(std::abs(row.total() - 1.0) <= 1e-9);
    }
}

TEST_CASE("uniform policy with zero threshold reaches every state of the full build") {
    testing::Rng rng(7);
    for (int i = 0; i < 20; ++i) {
        const auto m = lang::parse_model(testing::random_gcl_model(rng));
        policy::TabularPolicy uniform(m.variable_names(), policy::FallbackMode::Uniform);
        CHECK(build_stochastic_dtmc(m, uniform).dtmc.states() == build_full_mdp(m).mdp.states());
    }
}

TEST_CASE("builds are deterministic") {
    testing::Rng rng(9);
    for (int i = 0; i < 10; ++i) {
        const auto m = lang::parse_model(testing::random_gcl_model(rng));
        auto p = testing::random_policy(m, rng, testing::PolicyShape::Stochastic);
        CHECK(build_induced_mdp(m, p).mdp == build_induced_mdp(m, p).mdp);
        CHECK(build_stochastic_dtmc(m, p).dtmc == build_stochastic_dtmc(m, p).dtmc);
    }
}

TEST_CASE("drn round trip") {
    const auto m = running_example();
    auto p = running_policy(m);
    const auto mdp = build_full_mdp(m).mdp;
    std::stringstream a;
    write_drn(a, mdp);
    CHECK(a.str().find("@type: mdp\n@variables: x\n@nr_states: 4\n@initial: 0\n") == 0);
    CHECK(read_drn_mdp(a) == mdp);

    const auto dtmc = build_stochastic_dtmc(m, p).dtmc;
    std::stringstream b;
    write_drn(b, dtmc);
    CHECK(read_drn_dtmc(b) == dtmc);

    testing::Rng rng(4);
    for (int i = 0; i < 20; ++i) {
        const auto rm = lang::parse_model(testing::random_gcl_model(rng));
        const auto full = build_full_mdp(rm).mdp;
        std::stringstream c;
        write_drn(c, full);
        CHECK(read_drn_mdp(c) == full);
    }

    std::stringstream bad("@type: dtmc\n@variables: x\n@nr_states: 1\n@initial: 0\n@labels:\n@model\nstate 0 (0)\n\t0 : 0.5\n");
    CHECK_THROWS_AS(read_drn_dtmc(bad), model::ModelError);
}

}
