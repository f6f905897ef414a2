#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "polcheck/cli/cli.h"

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

inline CliRun run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "polcheck");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    CliRun r;
    r.code = polcheck::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}
