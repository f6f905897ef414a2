#pragma once

#include <filesystem>
#include <string_view>

#include "polcheck/lang/symbolic_model.h"

namespace polcheck::lang {

/// Parses GCL-lite source. Errors carry 1-based line/column where known.
SymbolicModel parse_model(std::string_view text);

SymbolicModel parse_model_file(const std::filesystem::path& path);

}  // namespace polcheck::lang
