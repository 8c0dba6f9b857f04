#pragma once

#include <string>
#include <vector>

#include "reallot/economy.hpp"

namespace reallot {

// Canonical worked scenarios shipped with the tool; replayable end to end
// with exact expected values.
const std::vector<std::string>& example_names();  // {"1", "2", "3", "4", "B1"}

// Throws ValidationError on an unknown name.
Economy example_economy(const std::string& name);

struct ReplayReport {
    std::string name;
    bool pass = true;
    // One line per verified value, prefixed "ok" or "FAIL".
    std::vector<std::string> lines;
};

// Recomputes the scenario's published values and compares them exactly
// (tolerance zero): allocations, trace steps, and manipulation witnesses.
ReplayReport replay_example(const std::string& name);

}  // namespace reallot
