#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "subriem/carnot/algebra.hpp"

namespace subriem::carnot {

/// Parses {"step": R, "dims": [...], "brackets": [{"a": [S,j], "b": [T,k], "out": [[U,l,c], ...]}]}.
/// Indices in the file are 1-based. With validate set, a failing validate_algebra report
/// is raised as MalformedInput.
GradedLieAlgebra parse_algebra(std::string_view json_text, bool validate = true);

GradedLieAlgebra load_algebra(const std::filesystem::path& path, bool validate = true);

std::string algebra_to_json(const GradedLieAlgebra& alg);

/// Whole file as a string; raises MalformedInput when unreadable.
std::string read_text_file(const std::filesystem::path& path);

} // namespace subriem::carnot
