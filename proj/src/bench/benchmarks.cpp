#include "polcheck/bench/benchmarks.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polcheck/build/builder.h"

#ifndef POLCHECK_BENCHMARK_DIR
#define POLCHECK_BENCHMARK_DIR "benchmarks"
#endif

namespace polcheck::bench {

PolicyRecipe parse_recipe(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw BenchError(BenchErrc::InvalidRecipe, std::string("recipe is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw BenchError(BenchErrc::InvalidRecipe, "recipe must be a JSON object");
    PolicyRecipe r;
    try {
        r.horizon = j.at("horizon").get<std::uint64_t>();
        r.discount = j.at("discount").get<double>();
        r.temperature = j.at("temperature").get<double>();
        r.seed = j.value("seed", std::uint64_t{1});
    } catch (const nlohmann::json::exception& e) {
        throw BenchError(BenchErrc::InvalidRecipe, std::string("bad recipe field: ") + e.what());
    }
    if (r.horizon < 1) throw BenchError(BenchErrc::InvalidRecipe, "recipe horizon must be at least 1");
    if (!(r.discount > 0.0 && r.discount <= 1.0)) {
        throw BenchError(BenchErrc::InvalidRecipe, "recipe discount must lie in (0, 1]");
    }
    return r;
}

PolicyRecipe load_recipe(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw BenchError(BenchErrc::MissingFile, "cannot open recipe '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_recipe(buf.str());
}

std::filesystem::path default_benchmark_root() { return POLCHECK_BENCHMARK_DIR; }

std::vector<BenchmarkSpec> list_benchmarks(const std::filesystem::path& root) {
    std::vector<BenchmarkSpec> out;
    if (!std::filesystem::is_directory(root)) {
        throw BenchError(BenchErrc::MissingFile, "benchmark directory '" + root.string() + "' not found");
    }
    for (const auto& entry : std::filesystem::directory_iterator(root)) {
        const auto dir = entry.path();
        if (!entry.is_directory() || !std::filesystem::exists(dir / "model.gcl")) continue;
        BenchmarkSpec b;
        b.name = dir.filename().string();
        b.model = dir / "model.gcl";
        b.properties = dir / "props.pctl";
        b.recipe_path = dir / "recipe.json";
        b.policy = dir / "policy.jsonl";
        b.golden_report = dir / "golden_report.json";
        b.recipe = load_recipe(b.recipe_path);
        b.props = pctl::parse_property_file(b.properties);
        out.push_back(std::move(b));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

policy::QTable finite_horizon_q(const model::ExplicitMdp& full, const PolicyRecipe& recipe) {
    const auto n = full.num_states();
    std::vector<double> v(n, 0.0);
    std::vector<double> next(n, 0.0);
    std::vector<std::vector<double>> q(n);
    for (model::StateIndex s = 0; s < n; ++s) q[s].assign(full.choices(s).size(), 0.0);
    for (std::uint64_t k = 0; k < recipe.horizon; ++k) {
        for (model::StateIndex s = 0; s < n; ++s) {
            const auto& choices = full.choices(s);
            double best = 0.0;
            for (std::size_t c = 0; c < choices.size(); ++c) {
                double future = 0.0;
                for (const auto& [t, p] : choices[c].distribution) future += p * v[t];
                q[s][c] = choices[c].reward + recipe.discount * future;
                best = c == 0 ? q[s][c] : std::max(best, q[s][c]);
            }
            next[s] = best;
        }
        v.swap(next);
    }
    policy::QTable table;
    for (model::StateIndex s = 0; s < n; ++s) {
        policy::QRow row;
        const auto& choices = full.choices(s);
        for (std::size_t c = 0; c < choices.size(); ++c) row.emplace_back(choices[c].action, q[s][c]);
        table.emplace(full.states()[s], std::move(row));
    }
    return table;
}

policy::QTable finite_horizon_q(const lang::SymbolicModel& m, const PolicyRecipe& recipe) {
    return finite_horizon_q(build::build_full_mdp(m).mdp, recipe);
}

policy::TabularPolicy generate_policy(const lang::SymbolicModel& m, const PolicyRecipe& recipe) {
    const auto full = build::build_full_mdp(m).mdp;
    return policy::softmax_from_q(finite_horizon_q(full, recipe), recipe.temperature, full);
}

}  // namespace polcheck::bench
