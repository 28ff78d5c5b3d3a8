#pragma once

#include <optional>
#include <string>
#include <vector>

#include "billiard/degree.hpp"
#include "billiard/dynamics.hpp"
#include "billiard/geometry.hpp"
#include "billiard/shooting.hpp"

namespace billiard {

/// A fully validated problem description: table, force, horizon,
/// tolerances, and optional per-command defaults. See README for the file
/// schema (JSON, `"schema": 1`).
struct ProblemConfig {
    BilliardTable table;
    ForceField field;
    double T;

    IntegratorOptions integrator;
    SolverOptions solver;
    DegreeOptions degree;

    // Optional command blocks.
    std::optional<double> v_min, v_max;
    std::optional<int> max_count;
    std::optional<double> d;
    std::optional<int> samples;
    std::optional<int> dirs;
    std::optional<std::vector<double>> d_grid;
    std::optional<std::vector<double>> simulate_v;
    std::optional<int> shoot_grid;
};

/// Parse and validate a config file. Throws IoError when the file cannot
/// be read and SchemaError carrying every validation issue found.
ProblemConfig parse_config(const std::string& path);

/// Same, from a JSON string (used by tests).
ProblemConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

}  // namespace billiard
