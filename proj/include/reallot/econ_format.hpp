#pragma once

#include <string>
#include <string_view>

#include "reallot/economy.hpp"

namespace reallot {

// Line-based economy file format:
//   agent <id:int> peak=<rat> endow=<rat> [left=<rat>] [right=<rat>]
// where <rat> is an integer, a fraction a/b, or a finite decimal (converted
// exactly). `#` starts a comment, blank lines are ignored, left/right default
// to 1. Duplicate ids, negative endowments, and nonpositive weights are
// rejected with the offending line and column in a ParseError; an input with
// no agent lines raises ValidationError("no agents").
Economy parse_economy(std::string_view text);

// Inverse of parse_economy up to formatting: one agent line per agent in id
// order, weights omitted when they are the default 1. The output reparses to
// an identical Economy.
std::string serialize_economy(const Economy& e);

}  // namespace reallot
