#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "subtile/cylindrical.hpp"
#include "subtile/substitution.hpp"

namespace subtile {

// JSON configuration round trip. parse_config validates structurally and
// geometrically and returns a fully finalized substitution; emit_config
// produces the canonical formatting (fixed key order, two-space indent),
// which round-trips byte-identically.
Substitution parse_config(const std::filesystem::path& path);
Substitution parse_config_string(const std::string& text);
std::string emit_config(const Substitution& sub);

// Built-in substitutions: "table" (square-to-rectangle dominoes, d=2, L=2),
// "ab42" (two-letter interval substitution, d=1, lambda=4) and "sym95"
// (two-color 3x3 square rule, d=2, L=3).
std::vector<std::string> builtin_names();
Substitution builtin_substitution(const std::string& name);

// Default zero-mean test profile: +1/-1 alternating per type, shifted by a
// constant so the mean against the tile frequencies vanishes exactly.
CylindricalFunction default_function(const Substitution& sub, const std::vector<double>& freq);

}  // namespace subtile
