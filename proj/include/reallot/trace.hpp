#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reallot/economy.hpp"
#include "reallot/rules.hpp"

namespace reallot {

struct TraceStep {
    int t = 0;
    // Net trades q^t, parallel to the economy's ids; q^0 is all zero.
    std::vector<Rational> net_trades;
    // Holdings the step's adjustment started from (omega + q^{t-1});
    // step 0 carries the original endowments.
    std::vector<Rational> staged_endowments;
    // Agents whose peak lies at or past their staged holdings in the
    // direction of the economy's excess; they are pinned at peak net trade.
    std::vector<AgentId> frozen;
    // Rationing parameter; only the explicit uniform recursion records it.
    std::optional<Rational> lambda;
};

struct Trace {
    Economy economy;
    // Length |N|, indices t = 0 ... |N|-1, even when convergence is earlier.
    std::vector<TraceStep> steps;
    // One extra adjustment beyond t = |N|-1, for checking stationarity.
    std::optional<std::vector<Rational>> stationary_probe;

    const std::vector<Rational>& final_net_trades() const { return steps.back().net_trades; }
    std::vector<Rational> holdings_after(int t) const;
};

// Step-wise construction for a catalog rule: holdings start at the
// endowments and each step re-runs the rule on the economy re-endowed with
// the staged holdings, recording q^t = holdings - original endowments.
// Agents at their peak are fixed points of the re-run for same-sided rules
// meeting the endowments lower bound, so agents freeze as they reach their
// peaks. Refuses `sprumont`, which ignores endowments and so breaks the
// construction's fixed points.
Trace derive_trace(const RuleId& rule, const Economy& e);

// The uniform rule's explicit recursion: at each step the frozen set absorbs
// every agent whose staged holdings reach their peak, lambda grows by the
// newly frozen agents' surplus split over the unfrozen, frozen agents get
// their peak net trade and unfrozen agents get the common lambda.
Trace uniform_lambda_trace(const Economy& e);

struct ConditionViolation {
    int step = 0;
    AgentId agent = 0;
    // "peak-freezing", "monotone-net-trades", "imbalance", "negative-holdings",
    // "nonzero-start", "not-stationary".
    std::string condition;
    std::string detail;
};

struct StepConditionReport {
    bool pass = true;
    std::vector<ConditionViolation> violations;
    // nullopt when the trace carries no stationarity probe.
    std::optional<bool> stationary;
};

// Verifies, at every step: peak-freezing (an agent whose staged holdings
// reach their peak keeps the peak net trade), monotone net trades for the
// unfrozen side, zero start, per-step balance, nonnegative holdings; plus
// stationarity when a probe is stored.
StepConditionReport check_step_conditions(const Trace& trace);

enum class CrossVariantKind { EndowmentIncrease, Subpopulation };

struct CrossVariant {
    CrossVariantKind kind = CrossVariantKind::EndowmentIncrease;
    // EndowmentIncrease: replacement endowments, parallel to the economy's
    // ids, componentwise >= the originals.
    std::vector<Rational> new_endowments;
    // Subpopulation: a proper nonempty subset of the economy's ids.
    std::vector<AgentId> subset;
};

struct CrossConditionReport {
    bool pass = true;
    std::vector<ConditionViolation> violations;
};

// Compares final-step traces of e and the variant economy. EndowmentIncrease
// requires final holdings to rise componentwise (valid when z(e) <= 0 or
// z(variant) >= 0); Subpopulation requires pairwise sign-concordant net-trade
// changes (valid when both excesses are on the same side of zero). Unmet sign
// preconditions raise InapplicableVariantError.
CrossConditionReport check_cross_conditions(const RuleId& rule, const Economy& e,
                                            const CrossVariant& variant);

}  // namespace reallot
