#pragma once

#include <optional>
#include <string>

#include "frozenspec/model.hpp"

namespace frozenspec {

// Problem description read from a JSON document:
//
//   {
//     "points_over_pi": ["1/3", "2/3"],     exact fractions (strings) or decimals
//     "points": [1.0, 2.0],                 radians; ignored when fractions are given
//     "alpha": 1, "beta": 0,
//     "potential":  {"sine_modes": [[1, 0.5], [3, -0.2]]},
//     "potential2": {"sine_coeffs": [0.5, 0.0, 0.1]},
//     "window": {"delta": 0.4, "exclude_center": 2.0, "exclude_halfwidth": 0.1}
//   }
//
// A potential object holds one of sine_modes, sine_coeffs, grid ([[x, v], ...]),
// constant or witness_n0, plus an optional label. A missing potential is q = 0.
struct ProblemSpec {
  FrozenConfig config;
  Potential potential;
  std::optional<Potential> potential2;
  std::optional<SupportWindow> window;
};

ProblemSpec parse_problem(const std::string& json_text);
ProblemSpec load_problem(const std::string& path);

/// Comma-separated frozen points over pi, e.g. "1/3,2/3" or "0.9999".
FrozenConfig parse_points_over_pi(const std::string& spec, int alpha = 0, int beta = 0);

}  // namespace frozenspec
