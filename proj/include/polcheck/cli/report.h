#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polcheck/check/check_result.h"

namespace polcheck::cli {

enum class CheckMode { Deterministic, Stochastic, MonolithicMin, MonolithicMax };

std::string to_string(CheckMode mode);
std::optional<CheckMode> parse_check_mode(const std::string& text);

struct SolverSettings {
    double epsilon = 1e-9;
    std::uint64_t max_iterations = 1'000'000;
    double epsilon_support = 0.0;
    bool patch_deadlocks = false;
};

/// One mode's outcome for one formula.
struct ModeRow {
    CheckMode mode = CheckMode::Stochastic;
    std::size_t states = 0;
    std::size_t transitions = 0;
    double build_seconds = 0.0;
    double check_seconds = 0.0;
    std::optional<check::CheckResult> result;
    std::string error;  // set when the mode failed

    bool ok() const { return result.has_value(); }
};

struct PropertyRows {
    std::string formula;
    std::vector<ModeRow> rows;
};

struct Report {
    std::string model_path;
    std::string policy_path;
    SolverSettings solver;
    std::vector<PropertyRows> properties;
};

enum class ReportKind { Check, Compare };

inline constexpr int kSchemaVersion = 1;

/// Versioned JSON report. Timings are rounded to milliseconds; with
/// `timings == false` they are left out so the report is reproducible.
std::string render_json(const Report& r, ReportKind kind, bool timings = true);
std::string render_csv(const Report& r, bool timings = true);
/// Aligned text table, derived from the same data as the JSON.
std::string render_table(const Report& r, bool timings = true);

/// Table/CSV spelling of a result: shortest round-trip for probabilities,
/// "true"/"false" (with the compared probability) for thresholds.
std::string result_text(const ModeRow& row);

}  // namespace polcheck::cli
