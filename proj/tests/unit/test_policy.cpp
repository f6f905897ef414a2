#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fixtures.h"
#include "polcheck/build/builder.h"
#include "polcheck/lang/model_parser.h"
#include "polcheck/policy/oracle_policy.h"
#include "polcheck/policy/tabular_policy.h"
#include "support/random_models.h"

using namespace polcheck;
using namespace polcheck::policy;
using model::FactoredState;

namespace {

const std::vector<std::string> kX{"x"};
const std::vector<std::string> kAll{"UP", "NOP", "DOWN"};

PolicyErrc load_error(const std::string& text) {
    std::istringstream in(text);
    try {
        read_tabular(in, kX);
    } catch (const PolicyError& e) {
        return e.kind();
    }
    FAIL("policy loaded without error");
    return PolicyErrc::ParseError;
}

std::string oracle_cmd(const std::string& mode) {
    return "python3 '" + fixture("echo_oracle.py").string() + "' " + mode;
}

}  // namespace

TEST_SUITE("policy") {

TEST_CASE("tabular loading") {
    auto p = load_tabular(fixture("running_example.policy.jsonl"), kX);
    CHECK(p.size() == 4);
    const auto d = p.query(FactoredState({1}), kAll);
    CHECK(d.probability_of("UP") == 0.3);
    CHECK(d.probability_of("DOWN") == 0.7);
    CHECK(argmax_action(p, FactoredState({1}), kAll) == "DOWN");
    CHECK_THROWS_AS(p.query(FactoredState({9}), kAll), PolicyError);

    p.set_fallback(FallbackMode::Uniform);
    const auto u = p.query(FactoredState({9}), kAll);
    for (const auto& a : kAll) CHECK(u.probability_of(a) == doctest::Approx(1.0 / 3));
}

TEST_CASE("tabular errors carry lines") {
    CHECK(load_error("{\"state\": {\"x\": 1}, \"dist\": {\"UP\": 1.0}}\n{\"state\": {\"x\": 1}, \"dist\": {\"UP\": 1.0}}") ==
          PolicyErrc::DuplicateStateEntry);
    CHECK(load_error("{\"state\": {\"x\": 1}, \"dist\": {\"UP\": 0.5}}") == PolicyErrc::DistributionInvalid);
    CHECK(load_error("{\"state\": {\"x\": 1}, \"dist\": {\"UP\": -0.5, \"DOWN\": 1.5}}") ==
          PolicyErrc::DistributionInvalid);
    CHECK(load_error("{\"state\": {\"y\": 1}, \"dist\": {\"UP\": 1.0}}") == PolicyErrc::ParseError);
    CHECK(load_error("{\"state\": {\"x\": 1, \"y\": 2}, \"dist\": {\"UP\": 1.0}}") == PolicyErrc::ParseError);
    CHECK(load_error("{\"state\": {\"x\": 1.5}, \"dist\": {\"UP\": 1.0}}") == PolicyErrc::ParseError);
    CHECK(load_error("{nope") == PolicyErrc::ParseError);

    std::istringstream in("\n{\"state\": {\"x\": 1}, \"dist\": {\"UP\": 1.0}}\n{\"state\": {\"x\": 2}}\n");
    try {
        read_tabular(in, kX);
        FAIL("expected a parse error");
    } catch (const PolicyError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("write and read back") {
    auto p = load_tabular(fixture("running_example.policy.jsonl"), kX);
    std::ostringstream out;
    write_tabular(out, p);
    CHECK(out.str().rfind("{\"state\":{\"x\":1},\"dist\":{\"UP\":0.3,\"DOWN\":0.7}}\n", 0) == 0);
    std::istringstream in(out.str());
    const auto q = read_tabular(in, kX);
    CHECK(q.entries() == p.entries());
}

TEST_CASE("restriction") {
    const ActionDistribution d({{"UP", 0.3}, {"DOWN", 0.7}});
    CHECK(restrict_to_enabled(d, kAll) == ActionDistribution({{"UP", 0.3}, {"DOWN", 0.7}}));

    const std::vector<std::string> up_down{"UP", "DOWN"};
    CHECK(restrict_to_enabled(ActionDistribution({{"UP", 0.5}, {"LEFT", 0.5}}), up_down) ==
          ActionDistribution({{"UP", 1.0}}));

    const std::vector<std::string> up{"UP"};
    try {
        restrict_to_enabled(ActionDistribution({{"LEFT", 1.0}}), up);
        FAIL("expected an error");
    } catch (const PolicyError& e) {
        CHECK(e.kind() == PolicyErrc::EmptySupportAfterRestriction);
    }

    // order follows the enabled list
    const auto r = restrict_to_enabled(ActionDistribution({{"DOWN", 0.5}, {"UP", 0.5}}), kAll);
    CHECK(r.entries().front().first == "UP");
}

TEST_CASE("support threshold") {
    const ActionDistribution d({{"UP", 0.05}, {"NOP", 0.15}, {"DOWN", 0.8}});
    const auto all = supported_actions(d, kAll, 0.0);
    CHECK(all.size() == 3);
    const auto pruned = supported_actions(d, kAll, 0.1);
    REQUIRE(pruned.size() == 2);
    CHECK(pruned[0].enabled_position == 1);
    CHECK(pruned[0].weight == doctest::Approx(0.15 / 0.95));
    CHECK(supported_actions(d, kAll, 0.9).empty());
}

TEST_CASE("argmax ties go to declaration order") {
    TabularPolicy p(kX);
    p.insert(FactoredState({1}), ActionDistribution({{"DOWN", 0.5}, {"UP", 0.5}}));
    p.insert(FactoredState({2}), ActionDistribution({{"UP", 1.0}}));
    CHECK(argmax_action(p, FactoredState({1}), kAll) == "UP");
    CHECK(argmax_action(p, FactoredState({2}), kAll) == "UP");
}

TEST_CASE("softmax") {
    const auto half = softmax({{"A", 1.0}, {"B", 1.0}}, 3.0);
    CHECK(half.probability_of("A") == 0.5);
    const auto third = softmax({{"A", 0.0}, {"B", 0.0}, {"C", 0.0}}, 1.0);
    CHECK(third.probability_of("C") == doctest::Approx(1.0 / 3).epsilon(1e-15));

    const auto s = softmax({{"A", 1.0}, {"B", 0.0}}, 1.0);
    const double e = std::exp(1.0);
    CHECK(std::abs(s.probability_of("A") - e / (e + 1)) < 1e-15);
    CHECK(std::abs(s.probability_of("B") - 1 / (e + 1)) < 1e-15);
    CHECK(std::abs(s.probability_of("A") - 0.7310585786300049) < 1e-15);

    CHECK_THROWS_AS(softmax({{"A", 1.0}}, 0.0), PolicyError);
    CHECK_THROWS_AS(softmax({{"A", 1.0}}, -1.0), PolicyError);
}

TEST_CASE("softmax shift invariance and concentration") {
    testing::Rng rng(17);
    std::uniform_real_distribution<double> value(-50, 50);
    for (int i = 0; i < 200; ++i) {
        QRow q;
        QRow shifted;
        const double c = value(rng);
        const int n = 1 + i % 5;
        for (int a = 0; a < n; ++a) {
            q.emplace_back("a" + std::to_string(a), value(rng));
            shifted.emplace_back(q.back().first, q.back().second + c);
        }
        const auto p1 = softmax(q, 2.5);
        const auto p2 = softmax(shifted, 2.5);
        for (const auto& [a, v] : q) CHECK(std::abs(p1.probability_of(a) - p2.probability_of(a)) < 1e-12);

        const auto cold = softmax(q, 1e-6);
        const auto best = std::max_element(q.begin(), q.end(), [](auto& x, auto& y) { return x.second < y.second; });
        CHECK(cold.probability_of(best->first) >= 1 - 1e-6);
        CHECK_FALSE(model::validate_distribution(p1));
    }
}

TEST_CASE("softmax_from_q covers the domain") {
    const auto m = lang::parse_model_file(fixture("running_example.gcl"));
    const auto full = build::build_full_mdp(m);
    QTable q;
    for (const auto& s : full.mdp.states()) q[s] = {{"UP", 1.0}, {"NOP", 0.0}, {"DOWN", 0.0}};
    const auto p = softmax_from_q(q, 1.0, full.mdp);
    CHECK(p.size() == 4);
    CHECK(p.find(FactoredState({1}))->probability_of("UP") == doctest::Approx(std::exp(1.0) / (std::exp(1.0) + 2)));

    q.erase(FactoredState({3}));
    try {
        softmax_from_q(q, 1.0, full.mdp);
        FAIL("expected MissingQValue");
    } catch (const PolicyError& e) {
        CHECK(e.kind() == PolicyErrc::MissingQValue);
    }
}

TEST_CASE("random policies stay within enabled actions after restriction") {
    testing::Rng rng(23);
    for (int i = 0; i < 20; ++i) {
        const auto m = lang::parse_model(testing::random_gcl_model(rng));
        auto p = testing::random_policy(m, rng, testing::PolicyShape::Leaky);
        for (const auto& s : testing::all_states(m)) {
            const auto enabled = lang::enabled_actions(m, s);
            const auto r = restrict_to_enabled(p.query(s, enabled), enabled);
            CHECK_FALSE(model::validate_distribution(r));
            for (const auto& [a, w] : r) CHECK(std::find(enabled.begin(), enabled.end(), a) != enabled.end());
            const auto best = argmax_action(p, s, enabled);
            for (const auto& [a, w] : r) CHECK(r.probability_of(best) >= w);
        }
    }
}

TEST_CASE("oracle process") {
    OraclePolicy p(oracle_cmd("ok"), kX, std::chrono::seconds(10));
    const auto d = p.query(FactoredState({1}), kAll);
    CHECK(d.probability_of("UP") == 0.3);
    CHECK(p.requests_sent() == 1);
    p.query(FactoredState({1}), kAll);
    CHECK(p.requests_sent() == 1);  // cached
    const std::vector<std::string> nop{"NOP"};
    CHECK(p.query(FactoredState({2}), nop) == ActionDistribution({{"NOP", 1.0}}));
    CHECK(p.requests_sent() == 2);
}

TEST_CASE("oracle failures") {
    for (const char* mode : {"garbage", "wrong-id", "exit"}) {
        CAPTURE(mode);
        OraclePolicy p(oracle_cmd(mode), kX, std::chrono::seconds(10));
        try {
            p.query(FactoredState({1}), kAll);
            FAIL("expected OracleFailure");
        } catch (const PolicyError& e) {
            CHECK(e.kind() == PolicyErrc::OracleFailure);
        }
        CHECK_THROWS_AS(p.query(FactoredState({2}), kAll), PolicyError);
    }
    OraclePolicy slow(oracle_cmd("silent"), kX, std::chrono::milliseconds(300));
    CHECK_THROWS_WITH_AS(slow.query(FactoredState({1}), kAll), doctest::Contains("timed out"), PolicyError);

    OraclePolicy missing("/nonexistent/oracle-binary", kX, std::chrono::seconds(5));
    CHECK_THROWS_AS(missing.query(FactoredState({1}), kAll), PolicyError);
}

TEST_CASE("oracle policy drives a build") {
    const auto m = lang::parse_model_file(fixture("running_example.gcl"));
    OraclePolicy p(oracle_cmd("ok"), m.variable_names());
    const auto b = build::build_stochastic_dtmc(m, p);
    CHECK(b.dtmc.row(0).probability_of(1) == doctest::Approx(0.06));
}

}
