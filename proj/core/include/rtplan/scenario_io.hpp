#pragma once

#include <string>

#include "rtplan/simulator.hpp"

namespace rtplan {

/// JSON document for a full scenario: bounds, static rectangles, dynamic
/// obstacles, start/goal, robot, planner and simulation parameters, seed.
std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);

void save_scenario(const Scenario& scenario, const std::string& path);
Scenario load_scenario(const std::string& path);

}  // namespace rtplan
