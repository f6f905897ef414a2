#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "polcheck/error.h"
#include "polcheck/lang/symbolic_model.h"
#include "polcheck/pctl/pctl_parser.h"
#include "polcheck/policy/tabular_policy.h"

namespace polcheck::bench {

enum class BenchErrc { InvalidRecipe, MissingFile };
using BenchError = KindedError<BenchErrc>;

/// How a benchmark's policy is produced: finite-horizon value iteration on the
/// full model, then a softmax of the final Q-values.
struct PolicyRecipe {
    std::uint64_t horizon = 1;
    double discount = 1.0;
    double temperature = 1.0;
    /// Seed for the benchmark's reference simulation.
    std::uint64_t seed = 1;
};

PolicyRecipe load_recipe(const std::filesystem::path& path);
PolicyRecipe parse_recipe(const std::string& json_text);

struct BenchmarkSpec {
    std::string name;
    std::filesystem::path model;
    std::filesystem::path properties;
    std::filesystem::path recipe_path;
    std::filesystem::path policy;
    std::filesystem::path golden_report;
    PolicyRecipe recipe;
    std::vector<pctl::Property> props;
};

/// The shipped benchmark directory (set at build time).
std::filesystem::path default_benchmark_root();

/// Every subdirectory of `root` containing a model.gcl, sorted by name.
std::vector<BenchmarkSpec> list_benchmarks(const std::filesystem::path& root = default_benchmark_root());

/// Q-values after `recipe.horizon` steps of value iteration over the full
/// reachable MDP, using the model's reward items.
policy::QTable finite_horizon_q(const lang::SymbolicModel& m, const PolicyRecipe& recipe);
policy::QTable finite_horizon_q(const model::ExplicitMdp& full, const PolicyRecipe& recipe);

policy::TabularPolicy generate_policy(const lang::SymbolicModel& m, const PolicyRecipe& recipe);

}  // namespace polcheck::bench
