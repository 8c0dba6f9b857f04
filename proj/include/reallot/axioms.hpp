#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reallot/economy.hpp"
#include "reallot/rules.hpp"
#include "reallot/witness.hpp"

namespace reallot {

using RuleFn = std::function<Allocation(const Economy&)>;

struct CheckResult {
    enum class Status { Pass, Violation, Inapplicable };
    Status status = Status::Pass;
    std::optional<Witness> witness;
    // Comparisons actually evaluated (pairs, subsets, perturbations).
    long comparisons = 0;

    bool passed() const { return status == Status::Pass; }
};

// Weights-only perturbation of one agent's preference; the peak stays put.
struct WeightFlip {
    AgentId agent = 0;
    Rational left{1};
    Rational right{1};
};

// Full replacement of one agent's reported preference.
struct Misreport {
    AgentId agent = 0;
    Preference reported;
};

// Same-sidedness: under excess demand nobody exceeds their peak; under
// excess supply nobody falls below it. Exhaustive per economy.
CheckResult check_efficiency(const RuleFn& rule, const std::string& rule_label, const Economy& e);

// Every agent weakly prefers their allocation to their endowment.
CheckResult check_endowments_lower_bound(const RuleFn& rule, const std::string& rule_label,
                                         const Economy& e);

// Agents already past their peak in the excess direction are held exactly at
// their peak.
CheckResult check_satiation(const RuleFn& rule, const std::string& rule_label, const Economy& e);

// No agent strictly prefers another agent's net trade applied to their own
// endowment (when that amount is nonnegative). Exhaustive over ordered pairs.
CheckResult check_envy_free_net_trades(const RuleFn& rule, const std::string& rule_label,
                                       const Economy& e);

// The flipped agent's own amount never changes under a weights-only change.
CheckResult check_own_peak_only(const RuleFn& rule, const std::string& rule_label,
                                const Economy& e, std::span<const WeightFlip> flips);

// The whole allocation never changes under joint weights-only changes.
CheckResult check_peak_only(const RuleFn& rule, const std::string& rule_label, const Economy& e,
                            std::span<const std::vector<WeightFlip>> flip_sets);

// No sampled misreport strictly improves the misreporting agent under their
// true preference.
CheckResult check_strategy_proofness(const RuleFn& rule, const std::string& rule_label,
                                     const Economy& e, std::span<const Misreport> misreports);

// A unilateral preference change that leaves the deviator's own amount fixed
// must leave the whole allocation fixed.
CheckResult check_non_bossiness(const RuleFn& rule, const std::string& rule_label,
                                const Economy& e, std::span<const Misreport> misreports);

// One-sided endowment monotonicity against a componentwise-raised endowment
// profile: if the raised economy still has excess demand, everyone is weakly
// better off there; if the base economy has excess supply, everyone is weakly
// better off at the base. Inapplicable when neither sign condition holds.
CheckResult check_endowment_monotonicity(const RuleFn& rule, const std::string& rule_label,
                                         const Economy& e,
                                         const std::vector<Rational>& new_endowments);

// One-sided population monotonicity over every proper nonempty subset whose
// excess lies on the same side of zero as the economy's: the remaining
// agents' welfare moves weakly in one common direction. Discordant-sign
// subsets are skipped.
CheckResult check_population_monotonicity(const RuleFn& rule, const std::string& rule_label,
                                          const Economy& e);

// Canonical axiom names accepted by the audit layer and the CLI.
const std::vector<std::string>& axiom_catalog();

RuleFn rule_fn(const RuleId& rule);

}  // namespace reallot
