#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

inline std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(POLCHECK_FIXTURES) / name; }

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture(name));
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}
