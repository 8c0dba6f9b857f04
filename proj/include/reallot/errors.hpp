#pragma once

#include <stdexcept>
#include <string>

namespace reallot {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed domain object (bad economy, bad rule id, bad config value).
struct ValidationError : Error {
    using Error::Error;
};

// restrict/subset operation with ids outside the economy, or an empty subset.
struct InvalidSubsetError : Error {
    using Error::Error;
};

// Allocation whose amounts are negative or do not sum to the endowment total.
struct InfeasibleAllocationError : Error {
    using Error::Error;
};

// Proportional rule applied to an economy with a zero endowment.
struct ZeroEndowmentError : Error {
    using Error::Error;
};

// Operation asked of a rule outside its qualifying class.
struct UnsupportedRuleError : Error {
    using Error::Error;
};

// Cross-economy comparison whose sign preconditions do not hold.
struct InapplicableVariantError : Error {
    using Error::Error;
};

// Shrinking a witness that no longer replays as a violation.
struct StaleWitnessError : Error {
    using Error::Error;
};

// Perturbation battery that breaks its contract (e.g. moves a peak in a
// weights-only check).
struct InvalidPerturbationError : Error {
    using Error::Error;
};

// Search battery that cannot drive a search (e.g. empty candidate lists).
struct InvalidBatteryError : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& what_)
        : Error("line " + std::to_string(line_) + ", column " + std::to_string(column_) + ": " + what_),
          line(line_),
          column(column_) {}
};

}  // namespace reallot
