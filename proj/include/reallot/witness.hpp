#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reallot/economy.hpp"

namespace reallot {

// Self-contained, replayable record of an axiom or manipulation violation.
// `data` holds the replay parameters (misreported preference, split sizes,
// shares, ...) as ordered key=value pairs; welfare text in `comparison` is
// informational and recomputed on replay, never trusted from storage.
struct Witness {
    std::string kind;
    std::string rule;
    Economy economy;
    std::optional<Economy> variant;
    std::vector<AgentId> agents;
    std::optional<Allocation> before;
    std::optional<Allocation> after;
    std::vector<std::pair<std::string, std::string>> data;
    std::string comparison;

    void set(const std::string& key, const std::string& value);
    const std::string* get(const std::string& key) const;
};

}  // namespace reallot
