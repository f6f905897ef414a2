#include "polcheck/cli/cli.h"

#include <chrono>
#include <fstream>
#include <future>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "common/lexer.h"
#include "polcheck/bench/benchmarks.h"
#include "polcheck/build/builder.h"
#include "polcheck/build/drn.h"
#include "polcheck/check/dtmc_checker.h"
#include "polcheck/check/mdp_checker.h"
#include "polcheck/check/simulator.h"
#include "polcheck/cli/report.h"
#include "polcheck/lang/model_parser.h"
#include "polcheck/pctl/pctl_parser.h"
#include "polcheck/policy/oracle_policy.h"
#include "polcheck/policy/tabular_policy.h"
#include "polcheck/version.h"

namespace polcheck::cli {

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Options {
    std::string model;
    std::string policy;
    std::string policy_cmd;
    std::string formula;
    std::string formula_file;
    std::string mode = "stochastic";
    std::string fallback = "strict";
    std::uint64_t oracle_timeout_ms = 10'000;
    SolverSettings solver;
    std::string out = "table";
    std::string report;
    bool no_timings = false;

    std::uint64_t sim_episodes = 10'000;
    std::uint64_t sim_horizon = 1'000;
    std::uint64_t sim_cutoff = 100;
    std::uint64_t seed = 1;

    std::string dump;
    std::string recipe;
    std::optional<std::uint64_t> horizon;
    std::optional<double> discount;
    std::optional<double> temperature;
    std::string output;
    std::string root;
};

// Everything a command needs once the input files are read.
struct Inputs {
    std::optional<lang::SymbolicModel> model;
    std::vector<pctl::Property> properties;
    std::unique_ptr<policy::StochasticPolicy> policy;
    bool tabular = false;
    std::string policy_label;
};

class UsageError : public Error {
public:
    using Error::Error;
};

void add_model(CLI::App* cmd, Options& o) {
    cmd->add_option("--model", o.model, "GCL model file")->required();
}

void add_policy(CLI::App* cmd, Options& o) {
    auto* file = cmd->add_option("--policy", o.policy, "tabular policy (JSON lines)");
    auto* proc = cmd->add_option("--policy-cmd", o.policy_cmd, "shell command of a policy oracle");
    file->excludes(proc);
    cmd->add_option("--policy-fallback", o.fallback, "behaviour on states missing from a tabular policy")
        ->check(CLI::IsMember({"strict", "uniform"}))
        ->capture_default_str();
    cmd->add_option("--oracle-timeout", o.oracle_timeout_ms, "per-request oracle timeout in ms")->capture_default_str();
}

void add_formulas(CLI::App* cmd, Options& o) {
    cmd->add_option("--formula", o.formula, "PCTL formula");
    cmd->add_option("--formula-file", o.formula_file, "file with one PCTL formula per line");
}

void add_solver(CLI::App* cmd, Options& o) {
    cmd->add_option("--epsilon", o.solver.epsilon, "solver convergence threshold")->capture_default_str();
    cmd->add_option("--max-iters", o.solver.max_iterations, "solver iteration limit")->capture_default_str();
    cmd->add_option("--epsilon-support", o.solver.epsilon_support, "drop actions with probability <= this")
        ->capture_default_str();
    cmd->add_flag("--patch-deadlocks", o.solver.patch_deadlocks, "turn deadlocks into labelled self-loops");
}

void add_output(CLI::App* cmd, Options& o, bool report) {
    cmd->add_option("--out", o.out, "output format")
        ->check(CLI::IsMember({"table", "json", "csv"}))
        ->capture_default_str();
    if (report) {
        cmd->add_option("--report", o.report, "also write the JSON report to this path");
        cmd->add_flag("--no-timings", o.no_timings, "leave timings out of reports");
    }
}

CheckMode check_mode(const Options& o) {
    auto m = parse_check_mode(o.mode);
    if (!m) throw UsageError("unknown mode '" + o.mode + "'");
    return *m;
}

bool monolithic(CheckMode m) { return m == CheckMode::MonolithicMin || m == CheckMode::MonolithicMax; }

void load_inputs(const Options& o, Inputs& in, std::ostream& err, bool need_formulas, bool need_policy) {
    in.model = lang::parse_model_file(o.model);
    if (need_formulas) {
        std::vector<std::string> warnings;
        if (!o.formula.empty()) {
            try {
                in.properties.push_back({o.formula, pctl::parse_pctl(o.formula, &warnings), 0});
            } catch (const pctl::PctlError& e) {
                throw UsageError(std::string("--formula:") + e.what());
            }
        }
        if (!o.formula_file.empty()) {
            std::vector<pctl::Property> props;
            try {
                props = pctl::parse_property_file(o.formula_file, &warnings);
            } catch (const pctl::PctlError& e) {
                if (e.line() == 0) throw;
                throw UsageError(o.formula_file + ":" + e.what());
            }
            in.properties.insert(in.properties.end(), props.begin(), props.end());
        }
        for (const auto& w : warnings) err << "warning: " << w << "\n";
        if (in.properties.empty()) throw UsageError("no formula given (use --formula or --formula-file)");
    }
    const bool has_policy = !o.policy.empty() || !o.policy_cmd.empty();
    if (need_policy && !has_policy) throw UsageError("this mode needs --policy or --policy-cmd");
    if (!need_policy && has_policy) throw UsageError("monolithic modes take no policy");
    if (!has_policy) return;
    const auto& vars = in.model->variable_names();
    if (!o.policy.empty()) {
        const auto fallback = o.fallback == "uniform" ? policy::FallbackMode::Uniform : policy::FallbackMode::Strict;
        in.policy = std::make_unique<policy::TabularPolicy>(policy::load_tabular(o.policy, vars, fallback));
        in.tabular = true;
        in.policy_label = o.policy;
    } else {
        in.policy = std::make_unique<policy::OraclePolicy>(o.policy_cmd, vars,
                                                           std::chrono::milliseconds(o.oracle_timeout_ms));
        in.policy_label = "cmd:" + o.policy_cmd;
    }
}

check::SolverOptions solver_options(const SolverSettings& s) { return {s.epsilon, s.max_iterations}; }

build::BuildOptions build_options(const SolverSettings& s) { return {s.epsilon_support, s.patch_deadlocks}; }

std::vector<ModeRow> blank_rows(CheckMode mode, std::size_t n) {
    std::vector<ModeRow> rows(n);
    for (auto& r : rows) r.mode = mode;
    return rows;
}

template <typename Fn>
void run_row(ModeRow& row, Fn&& fn) {
    const auto start = Clock::now();
    try {
        row.result = fn();
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    row.check_seconds = seconds_since(start);
}

std::vector<ModeRow> run_policy_mode(CheckMode mode, const lang::SymbolicModel& m, policy::StochasticPolicy& p,
                                     const std::vector<pctl::Property>& props, const SolverSettings& s) {
    auto rows = blank_rows(mode, props.size());
    try {
        auto b = mode == CheckMode::Deterministic ? build::build_deterministic_dtmc(m, p, build_options(s))
                                                  : build::build_stochastic_dtmc(m, p, build_options(s));
        for (std::size_t i = 0; i < props.size(); ++i) {
            rows[i].states = b.stats.states;
            rows[i].transitions = b.stats.transitions;
            rows[i].build_seconds = b.stats.build_seconds;
            run_row(rows[i], [&] { return check::check_dtmc(b.dtmc, props[i].formula, solver_options(s)); });
        }
    } catch (const std::exception& e) {
        for (auto& r : rows) r.error = e.what();
    }
    return rows;
}

// Min and max rows from one build of the full MDP.
std::pair<std::vector<ModeRow>, std::vector<ModeRow>> run_monolithic(const lang::SymbolicModel& m,
                                                                     const std::vector<pctl::Property>& props,
                                                                     const SolverSettings& s) {
    auto lo = blank_rows(CheckMode::MonolithicMin, props.size());
    auto hi = blank_rows(CheckMode::MonolithicMax, props.size());
    try {
        auto b = build::build_full_mdp(m, build_options(s));
        for (std::size_t i = 0; i < props.size(); ++i) {
            for (auto* rows : {&lo, &hi}) {
                auto& row = (*rows)[i];
                row.states = b.stats.states;
                row.transitions = b.stats.transitions;
                row.build_seconds = b.stats.build_seconds;
                const auto q = rows == &lo ? pctl::Quantifier::Min : pctl::Quantifier::Max;
                run_row(row, [&] {
                    return check::check_mdp_extremal(b.mdp, pctl::with_outer_quantifier(props[i].formula, q),
                                                     solver_options(s));
                });
            }
        }
    } catch (const std::exception& e) {
        for (auto* rows : {&lo, &hi}) {
            for (auto& r : *rows) r.error = e.what();
        }
    }
    return {std::move(lo), std::move(hi)};
}

Report make_report(const Options& o, const Inputs& in) {
    Report r;
    r.model_path = o.model;
    r.policy_path = in.policy_label;
    r.solver = o.solver;
    for (const auto& p : in.properties) r.properties.push_back({pctl::pretty_print(p.formula), {}});
    return r;
}

void emit(const Options& o, const Report& r, ReportKind kind, std::ostream& out) {
    const bool timings = !o.no_timings;
    if (o.out == "json") {
        out << render_json(r, kind, timings);
    } else if (o.out == "csv") {
        out << render_csv(r, timings);
    } else {
        out << render_table(r, timings);
    }
    if (!o.report.empty()) {
        std::ofstream f(o.report);
        if (!f) throw UsageError("cannot write report '" + o.report + "'");
        f << render_json(r, kind, timings);
    }
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
    const auto mode = check_mode(o);
    Inputs in;
    load_inputs(o, in, err, true, !monolithic(mode));
    Report r = make_report(o, in);
    std::vector<ModeRow> rows;
    if (monolithic(mode)) {
        auto [lo, hi] = run_monolithic(*in.model, in.properties, o.solver);
        rows = mode == CheckMode::MonolithicMin ? std::move(lo) : std::move(hi);
    } else {
        rows = run_policy_mode(mode, *in.model, *in.policy, in.properties, o.solver);
    }
    bool failed = false;
    bool violated = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].ok()) {
            failed = true;
        } else if (rows[i].result->kind == check::CheckResult::Kind::Boolean && !rows[i].result->truth) {
            violated = true;
        }
        r.properties[i].rows.push_back(std::move(rows[i]));
    }
    emit(o, r, ReportKind::Check, out);
    for (const auto& p : r.properties) {
        for (const auto& row : p.rows) {
            if (!row.ok()) err << "error: " << p.formula << ": " << row.error << "\n";
        }
    }
    if (failed) return kExitError;
    return violated ? kExitThresholdViolated : kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
    Inputs in;
    load_inputs(o, in, err, true, true);
    Report r = make_report(o, in);
    const auto& m = *in.model;
    auto& p = *in.policy;
    const auto& props = in.properties;
    // an oracle is one process, so policy queries stay on this thread
    const auto policy_launch = in.tabular ? std::launch::async : std::launch::deferred;
    auto det = std::async(policy_launch,
                          [&] { return run_policy_mode(CheckMode::Deterministic, m, p, props, o.solver); });
    auto full = std::async(std::launch::async, [&] { return run_monolithic(m, props, o.solver); });
    auto det_rows = det.get();
    auto sto = std::async(policy_launch,
                          [&] { return run_policy_mode(CheckMode::Stochastic, m, p, props, o.solver); });
    auto sto_rows = sto.get();
    auto [lo, hi] = full.get();

    bool failed = false;
    for (std::size_t i = 0; i < props.size(); ++i) {
        for (auto* rows : {&det_rows, &sto_rows, &lo, &hi}) {
            failed = failed || !(*rows)[i].ok();
            r.properties[i].rows.push_back(std::move((*rows)[i]));
        }
    }
    emit(o, r, ReportKind::Compare, out);
    for (const auto& prop : r.properties) {
        for (const auto& row : prop.rows) {
            if (!row.ok()) err << "error: " << prop.formula << " [" << to_string(row.mode) << "]: " << row.error << "\n";
        }
    }
    return failed ? kExitError : kExitOk;
}

bool holds(double v, pctl::Comparator c, double t) {
    switch (c) {
        case pctl::Comparator::Less: return v < t;
        case pctl::Comparator::Greater: return v > t;
        case pctl::Comparator::LessEqual: return v <= t;
        case pctl::Comparator::GreaterEqual: return v >= t;
    }
    return false;
}

// Threshold verdict from the confidence interval rather than the point estimate.
std::string verdict(const pctl::StateFormula& f, const check::SimulationResult& s) {
    if (!f.comparator) return {};
    const bool lo = holds(s.lower, *f.comparator, *f.threshold);
    const bool hi = holds(s.upper, *f.comparator, *f.threshold);
    if (lo && hi) return "satisfied";
    if (!lo && !hi) return "violated";
    return "inconclusive";
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
    Inputs in;
    load_inputs(o, in, err, true, true);
    check::SimulationOptions so;
    so.episodes = o.sim_episodes;
    so.horizon = o.sim_horizon;
    so.seed = o.seed;
    so.unbounded_cutoff = o.sim_cutoff;
    so.patch_deadlocks = o.solver.patch_deadlocks;

    struct Row {
        std::string formula;
        std::optional<check::SimulationResult> result;
        std::string verdict;
        std::string error;
        double seconds = 0.0;
    };
    std::vector<Row> rows;
    bool failed = false;
    for (const auto& prop : in.properties) {
        Row row;
        row.formula = pctl::pretty_print(prop.formula);
        const auto start = Clock::now();
        try {
            row.result = check::simulate(*in.model, *in.policy, prop.formula, so);
            row.verdict = verdict(prop.formula, *row.result);
        } catch (const std::exception& e) {
            row.error = e.what();
            failed = true;
            err << "error: " << row.formula << ": " << row.error << "\n";
        }
        row.seconds = seconds_since(start);
        rows.push_back(std::move(row));
    }

    auto num = [](double v) { return polcheck::detail::format_real(v); };
    if (o.out == "json") {
        ordered_json j;
        j["schema"] = "polcheck-simulate";
        j["schema_version"] = kSchemaVersion;
        j["toolkit_version"] = kVersion;
        j["model"] = o.model;
        j["policy"] = in.policy_label;
        j["episodes"] = so.episodes;
        j["horizon"] = so.horizon;
        j["seed"] = so.seed;
        ordered_json arr = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json e;
            e["formula"] = row.formula;
            if (row.result) {
                e["estimate"] = row.result->estimate;
                e["ci99"] = {row.result->lower, row.result->upper};
                e["successes"] = row.result->successes;
                e["truncated"] = row.result->truncated;
                e["verdict"] = row.verdict.empty() ? ordered_json(nullptr) : ordered_json(row.verdict);
                e["error"] = nullptr;
            } else {
                e["error"] = row.error;
            }
            arr.push_back(std::move(e));
        }
        j["results"] = std::move(arr);
        out << j.dump(2) << "\n";
    } else if (o.out == "csv") {
        out << "formula,estimate,lower,upper,successes,episodes,truncated,verdict,error\n";
        for (const auto& row : rows) {
            out << '"' << row.formula << "\",";
            if (row.result) {
                const auto& s = *row.result;
                out << num(s.estimate) << ',' << num(s.lower) << ',' << num(s.upper) << ',' << s.successes << ','
                    << s.episodes << ',' << s.truncated << ',' << row.verdict << ",\n";
            } else {
                out << ",,,,,,,\"" << row.error << "\"\n";
            }
        }
    } else {
        out << "model:  " << o.model << "\npolicy: " << in.policy_label << "\n";
        out << "episodes: " << so.episodes << ", horizon: " << so.horizon << ", seed: " << so.seed << "\n";
        for (const auto& row : rows) {
            out << "\n" << row.formula << "\n";
            if (!row.result) {
                out << "  error: " << row.error << "\n";
                continue;
            }
            const auto& s = *row.result;
            out << "  estimate:   " << num(s.estimate) << "\n";
            out << "  99% CI:     [" << num(s.lower) << ", " << num(s.upper) << "]\n";
            out << "  successes:  " << s.successes << " / " << s.episodes << "\n";
            if (!row.verdict.empty()) out << "  verdict:    " << row.verdict << "\n";
            if (s.truncation_caveat()) {
                out << "  note:       " << s.truncated
                    << " episodes reached the horizon undecided and were counted as failures\n";
            }
        }
    }
    return failed ? kExitError : kExitOk;
}

int cmd_stats(const Options& o, std::ostream& out, std::ostream& err) {
    const auto mode = check_mode(o);
    Inputs in;
    load_inputs(o, in, err, false, !monolithic(mode));
    const auto opts = build_options(o.solver);
    const auto start = Clock::now();
    std::size_t states = 0, choices = 0, transitions = 0;
    std::optional<model::ExplicitMdp> mdp;
    std::optional<model::ExplicitDtmc> dtmc;
    switch (mode) {
        case CheckMode::Deterministic: {
            auto b = build::build_deterministic_dtmc(*in.model, *in.policy, opts);
            std::tie(states, choices, transitions) = std::tuple(b.stats.states, b.stats.choices, b.stats.transitions);
            dtmc = std::move(b.dtmc);
            break;
        }
        case CheckMode::Stochastic: {
            auto b = build::build_induced_mdp(*in.model, *in.policy, opts);
            dtmc = build::to_induced_dtmc(b.mdp, *in.policy);
            states = dtmc->num_states();
            choices = b.mdp.num_choices();
            transitions = dtmc->num_transitions();
            break;
        }
        default: {
            auto b = build::build_full_mdp(*in.model, opts);
            std::tie(states, choices, transitions) = std::tuple(b.stats.states, b.stats.choices, b.stats.transitions);
            mdp = std::move(b.mdp);
            break;
        }
    }
    const double secs = seconds_since(start);
    if (!o.dump.empty()) {
        std::ofstream f(o.dump);
        if (!f) throw UsageError("cannot write '" + o.dump + "'");
        if (mdp) {
            build::write_drn(f, *mdp);
        } else {
            build::write_drn(f, *dtmc);
        }
    }
    const std::string kind = mdp ? "mdp" : "dtmc";
    if (o.out == "json") {
        ordered_json j;
        j["schema"] = "polcheck-stats";
        j["schema_version"] = kSchemaVersion;
        j["toolkit_version"] = kVersion;
        j["model"] = o.model;
        j["mode"] = o.mode;
        j["kind"] = kind;
        j["states"] = states;
        j["choices"] = choices;
        j["transitions"] = transitions;
        if (!o.no_timings) j["build_seconds"] = std::round(secs * 1000.0) / 1000.0;
        out << j.dump(2) << "\n";
    } else if (o.out == "csv") {
        out << "mode,kind,states,choices,transitions\n"
            << o.mode << ',' << kind << ',' << states << ',' << choices << ',' << transitions << "\n";
    } else {
        out << "mode:         " << o.mode << " (" << kind << ")\n";
        out << "states:       " << states << "\n";
        out << "choices:      " << choices << (mode == CheckMode::Stochastic ? "  (induced MDP)" : "") << "\n";
        out << "transitions:  " << transitions << "\n";
        if (!o.no_timings) out << "build [s]:    " << std::fixed << std::setprecision(3) << secs << "\n";
    }
    return kExitOk;
}

int cmd_generate(const Options& o, std::ostream& out, std::ostream& err) {
    Inputs in;
    load_inputs(o, in, err, false, false);
    bench::PolicyRecipe recipe;
    if (!o.recipe.empty()) recipe = bench::load_recipe(o.recipe);
    if (o.horizon) recipe.horizon = *o.horizon;
    if (o.discount) recipe.discount = *o.discount;
    if (o.temperature) recipe.temperature = *o.temperature;
    if (recipe.horizon == 0) throw UsageError("horizon must be at least 1");
    if (!(recipe.discount > 0.0 && recipe.discount <= 1.0)) throw UsageError("discount must lie in (0, 1]");
    auto pol = bench::generate_policy(*in.model, recipe);
    if (o.output.empty()) {
        policy::write_tabular(out, pol);
    } else {
        std::ofstream f(o.output);
        if (!f) throw UsageError("cannot write '" + o.output + "'");
        policy::write_tabular(f, pol);
        out << "wrote " << pol.size() << " entries to " << o.output << "\n";
    }
    return kExitOk;
}

int cmd_benchmarks(const Options& o, std::ostream& out) {
    const auto root = o.root.empty() ? bench::default_benchmark_root() : std::filesystem::path(o.root);
    const auto specs = bench::list_benchmarks(root);
    if (o.out == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& b : specs) {
            ordered_json props = ordered_json::array();
            for (const auto& p : b.props) props.push_back(p.text);
            arr.push_back({{"name", b.name},
                           {"model", b.model.string()},
                           {"policy", b.policy.string()},
                           {"properties", std::move(props)}});
        }
        out << ordered_json{{"root", root.string()}, {"benchmarks", std::move(arr)}}.dump(2) << "\n";
        return kExitOk;
    }
    for (const auto& b : specs) {
        out << b.name << "\n  model:  " << b.model.string() << "\n  policy: " << b.policy.string() << "\n";
        for (const auto& p : b.props) out << "  " << p.text << "\n";
    }
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Verify PCTL properties of stochastic policies on probabilistic models"};
    app.set_version_flag("--version", std::string("polcheck ") + kVersion);
    app.require_subcommand(1);
    Options o;

    auto* check = app.add_subcommand("check", "check formulas against one mode");
    add_model(check, o);
    add_policy(check, o);
    add_formulas(check, o);
    check->add_option("--mode", o.mode, "stochastic, deterministic, monolithic-min or monolithic-max")
        ->check(CLI::IsMember({"stochastic", "deterministic", "monolithic-min", "monolithic-max"}))
        ->capture_default_str();
    add_solver(check, o);
    add_output(check, o, true);

    auto* compare = app.add_subcommand("compare", "deterministic vs stochastic vs full-MDP bounds");
    add_model(compare, o);
    add_policy(compare, o);
    add_formulas(compare, o);
    add_solver(compare, o);
    add_output(compare, o, true);

    auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate under the policy");
    add_model(sim, o);
    add_policy(sim, o);
    add_formulas(sim, o);
    sim->add_option("--sim-episodes", o.sim_episodes, "number of episodes")->capture_default_str();
    sim->add_option("--sim-horizon", o.sim_horizon, "step limit per episode")->capture_default_str();
    sim->add_option("--sim-cutoff", o.sim_cutoff, "minimum horizon for unbounded until")->capture_default_str();
    sim->add_option("--seed", o.seed, "random seed")->capture_default_str();
    sim->add_flag("--patch-deadlocks", o.solver.patch_deadlocks, "turn deadlocks into labelled self-loops");
    add_output(sim, o, false);

    auto* stats = app.add_subcommand("stats", "size of the explicit model for a mode");
    add_model(stats, o);
    add_policy(stats, o);
    stats->add_option("--mode", o.mode, "stochastic, deterministic, monolithic-min or monolithic-max")
        ->check(CLI::IsMember({"stochastic", "deterministic", "monolithic-min", "monolithic-max"}))
        ->capture_default_str();
    stats->add_option("--epsilon-support", o.solver.epsilon_support, "drop actions with probability <= this");
    stats->add_flag("--patch-deadlocks", o.solver.patch_deadlocks, "turn deadlocks into labelled self-loops");
    stats->add_option("--dump", o.dump, "write the explicit model in DRN format");
    stats->add_flag("--no-timings", o.no_timings, "leave out the build time");
    add_output(stats, o, false);

    auto* gen = app.add_subcommand("generate-policy", "softmax policy from finite-horizon value iteration");
    add_model(gen, o);
    gen->add_option("--recipe", o.recipe, "recipe JSON (horizon, discount, temperature, seed)");
    gen->add_option("--horizon", o.horizon, "value iteration horizon");
    gen->add_option("--discount", o.discount, "discount factor");
    gen->add_option("--temperature", o.temperature, "softmax temperature");
    gen->add_option("-o,--output", o.output, "output path (default: stdout)");

    auto* benches = app.add_subcommand("benchmarks", "list the bundled benchmarks");
    benches->add_option("--root", o.root, "benchmark directory");
    add_output(benches, o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*check) return cmd_check(o, out, err);
        if (*compare) return cmd_compare(o, out, err);
        if (*sim) return cmd_simulate(o, out, err);
        if (*stats) return cmd_stats(o, out, err);
        if (*gen) return cmd_generate(o, out, err);
        if (*benches) return cmd_benchmarks(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

}  // namespace polcheck::cli
