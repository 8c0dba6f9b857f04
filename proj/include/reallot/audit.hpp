#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reallot/axioms.hpp"
#include "reallot/econgen.hpp"
#include "reallot/manipulation.hpp"
#include "reallot/rules.hpp"
#include "reallot/witness.hpp"

namespace reallot {

struct AuditConfig {
    long trials = 1000;
    std::uint64_t seed = 1;
    GeneratorConfig generator;
};

// Outcome of one property driven over a generated battery. "pass" always
// means "no violation found on this battery", never a universal claim.
struct AuditOutcome {
    std::string rule;
    // Axiom name or manipulation kind.
    std::string property;
    // Economies generated and attempted.
    long economies = 0;
    // Economies the rule refused outright (zero-endowment domain errors).
    long skipped = 0;
    // Checks whose sign preconditions failed.
    long inapplicable = 0;
    // Individual comparisons the checkers evaluated.
    long comparisons = 0;
    // First violation found, if any; stops the run.
    std::optional<Witness> witness;

    bool pass() const { return !witness.has_value(); }
};

// Per-agent weight changes: every pair from {(1,1),(2,1),(1,2),(14,1),(1,14)}
// that differs from the agent's current weights.
std::vector<WeightFlip> default_weight_flips(const Economy& e);
// Each single flip as its own set, plus joint sets pushing every agent to one
// common weight pair.
std::vector<std::vector<WeightFlip>> default_flip_sets(const Economy& e);
// Per-agent misreports: peaks on a 16ths grid of the endowment total crossed
// with four weight pairs; identity reports are dropped.
std::vector<Misreport> default_misreports(const Economy& e);
// Componentwise raises of the endowment profile: each agent raised to their
// peak, by one unit, and to targets aligning their demand gap with another
// demander's; plus a joint unit raise of everyone.
std::vector<std::vector<Rational>> default_endowment_raises(const Economy& e);

// Drives one axiom's checker over `trials` seeded economies (seeds
// config.seed, config.seed + 1, ...), using the default perturbation
// batteries where the axiom samples. Throws ValidationError on an axiom name
// outside axiom_catalog().
AuditOutcome audit_axiom(const RuleId& rule, const std::string& axiom, const AuditConfig& config);
std::vector<AuditOutcome> audit_axioms(const RuleId& rule, const std::vector<std::string>& axioms,
                                       const AuditConfig& config);

// Same drive for a manipulation search: kind is one of withdrawal, merging,
// splitting (default batteries), predelivery. `mode` applies to the pairwise
// kinds. Throws ValidationError on an unknown kind.
AuditOutcome audit_manipulation(const RuleId& rule, const std::string& kind,
                                const AuditConfig& config,
                                ImprovementMode mode = ImprovementMode::Strict);

// Re-runs the rule on the stored economies and confirms the stored violation
// exactly: shapes of economy and variant consistent with the kind, stored
// allocations reproduced, welfare claims true. False on any mismatch.
bool replay_witness(const Witness& w);

// Re-runs the originating check against the witness's (possibly edited)
// economy, reusing the stored perturbation parameters; returns the fresh
// witness while the violation persists. This is the predicate shrink_witness
// expects.
std::optional<Witness> recheck_witness(const Witness& w);

// Line-oriented record: a `WITNESS <kind> ...` header, data and welfare
// lines, then the economy (and variant) in the .econ format.
std::string serialize_witness(const Witness& w);

}  // namespace reallot
