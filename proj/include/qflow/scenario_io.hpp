#pragma once

#include <string>

#include "qflow/coecke.hpp"

namespace qflow {

/// Parse error with a position (1-based line/column for syntax errors) and
/// a field path for semantic errors.
struct ScenarioParseError : std::runtime_error {
    ScenarioParseError(std::string msg, int line, int column, std::string path)
        : std::runtime_error(std::move(msg)), line(line), column(column),
          field_path(std::move(path)) {}
    int line = 0;
    int column = 0;
    std::string field_path;
};

Scenario parse_scenario(const std::string& text);
std::string serialize_scenario(const Scenario& scn);

bool scenario_equal(const Scenario& a, const Scenario& b);

} // namespace qflow
