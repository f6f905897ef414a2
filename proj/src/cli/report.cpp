#include "polcheck/cli/report.h"

#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "common/lexer.h"
#include "polcheck/version.h"

namespace polcheck::cli {

std::string to_string(CheckMode mode) {
    switch (mode) {
        case CheckMode::Deterministic: return "deterministic";
        case CheckMode::Stochastic: return "stochastic";
        case CheckMode::MonolithicMin: return "monolithic-min";
        case CheckMode::MonolithicMax: return "monolithic-max";
    }
    return "?";
}

std::optional<CheckMode> parse_check_mode(const std::string& text) {
    for (auto m : {CheckMode::Deterministic, CheckMode::Stochastic, CheckMode::MonolithicMin, CheckMode::MonolithicMax}) {
        if (text == to_string(m)) return m;
    }
    return std::nullopt;
}

namespace {

using nlohmann::ordered_json;

double millis(double seconds) { return std::round(seconds * 1000.0) / 1000.0; }

// shortest round-trip form, integral values without a trailing ".0"
std::string number(double v) {
    auto s = polcheck::detail::format_real(v);
    if (s.size() > 2 && s.compare(s.size() - 2, 2, ".0") == 0) s.resize(s.size() - 2);
    return s;
}

ordered_json row_json(const ModeRow& row, bool timings) {
    ordered_json j;
    j["mode"] = to_string(row.mode);
    j["states"] = row.states;
    j["transitions"] = row.transitions;
    if (row.ok()) {
        const auto& r = *row.result;
        j["kind"] = r.kind == check::CheckResult::Kind::Probability ? "probability" : "boolean";
        j["result"] = r.value;
        if (r.kind == check::CheckResult::Kind::Boolean) {
            j["satisfied"] = r.truth;
        } else {
            j["satisfied"] = nullptr;
        }
        j["iterations"] = r.stats.iterations;
        j["error"] = nullptr;
    } else {
        j["kind"] = nullptr;
        j["result"] = nullptr;
        j["satisfied"] = nullptr;
        j["iterations"] = nullptr;
        j["error"] = row.error;
    }
    if (timings) {
        j["build_seconds"] = millis(row.build_seconds);
        j["check_seconds"] = millis(row.check_seconds);
    }
    return j;
}

ordered_json report_json(const Report& r, ReportKind kind, bool timings) {
    ordered_json j;
    j["schema"] = kind == ReportKind::Check ? "polcheck-check" : "polcheck-compare";
    j["schema_version"] = kSchemaVersion;
    j["toolkit_version"] = kVersion;
    j["model"] = r.model_path;
    j["policy"] = r.policy_path.empty() ? ordered_json(nullptr) : ordered_json(r.policy_path);
    j["solver"] = {{"epsilon", r.solver.epsilon},
                   {"max_iterations", r.solver.max_iterations},
                   {"epsilon_support", r.solver.epsilon_support},
                   {"patch_deadlocks", r.solver.patch_deadlocks}};
    ordered_json props = ordered_json::array();
    for (const auto& p : r.properties) {
        ordered_json rows = ordered_json::array();
        for (const auto& row : p.rows) rows.push_back(row_json(row, timings));
        props.push_back({{"formula", p.formula}, {"rows", std::move(rows)}});
    }
    j["properties"] = std::move(props);
    return j;
}

// The table and CSV are rendered from the JSON rows.
std::string row_text(const ordered_json& row) {
    if (!row["error"].is_null()) return "error: " + row["error"].get<std::string>();
    const auto value = number(row["result"].get<double>());
    if (row["kind"] == "probability") return value;
    return std::string(row["satisfied"].get<bool>() ? "true" : "false") + " (" + value + ")";
}

std::string seconds(const ordered_json& v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(3) << v.get<double>();
    return out.str();
}

}  // namespace

std::string result_text(const ModeRow& row) { return row_text(row_json(row, false)); }

std::string render_json(const Report& r, ReportKind kind, bool timings) {
    return report_json(r, kind, timings).dump(2) + "\n";
}

std::string render_csv(const Report& r, bool timings) {
    const auto j = report_json(r, ReportKind::Compare, timings);
    std::ostringstream out;
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    };
    out << "formula,mode,states,transitions,result,satisfied,error";
    if (timings) out << ",build_seconds,check_seconds";
    out << "\n";
    for (const auto& p : j["properties"]) {
        const auto formula = p["formula"].get<std::string>();
        for (const auto& row : p["rows"]) {
            out << quote(formula) << ',' << row["mode"].get<std::string>() << ',' << row["states"] << ','
                << row["transitions"] << ',';
            if (row["error"].is_null()) {
                out << number(row["result"].get<double>()) << ',';
                if (row["kind"] == "boolean") out << (row["satisfied"].get<bool>() ? "true" : "false");
                out << ',';
            } else {
                out << ",," << quote(row["error"].get<std::string>());
            }
            if (timings) out << ',' << seconds(row["build_seconds"]) << ',' << seconds(row["check_seconds"]);
            out << "\n";
        }
    }
    return out.str();
}

std::string render_table(const Report& r, bool timings) {
    const auto j = report_json(r, ReportKind::Compare, timings);
    std::ostringstream out;
    out << "model:  " << j["model"].get<std::string>() << "\n";
    if (!j["policy"].is_null()) out << "policy: " << j["policy"].get<std::string>() << "\n";
    for (const auto& p : j["properties"]) {
        out << "\n" << p["formula"].get<std::string>() << "\n";
        std::size_t width = 6;
        for (const auto& row : p["rows"]) width = std::max(width, row_text(row).size());
        auto line = [&](const std::string& mode, const std::string& states, const std::string& transitions,
                        const std::string& result, const std::string& build, const std::string& check) {
            out << "  " << std::left << std::setw(16) << mode << std::right << std::setw(9) << states << std::setw(13)
                << transitions << "  ";
            if (timings) {
                out << std::left << std::setw(static_cast<int>(width)) << result << std::right << std::setw(11)
                    << build << std::setw(11) << check;
            } else {
                out << result;
            }
            out << "\n";
        };
        line("mode", "states", "transitions", "result", "build [s]", "check [s]");
        for (const auto& row : p["rows"]) {
            line(row["mode"].get<std::string>(), row["states"].dump(), row["transitions"].dump(), row_text(row),
                 timings ? seconds(row["build_seconds"]) : "", timings ? seconds(row["check_seconds"]) : "");
        }
    }
    return out.str();
}

}  // namespace polcheck::cli
