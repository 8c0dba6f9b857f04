#pragma once

#include <optional>
#include <vector>

#include "reallot/economy.hpp"
#include "reallot/rules.hpp"
#include "reallot/witness.hpp"

namespace reallot {

// Strict: every agent in the arrangement ends strictly better off.
// Weak: every agent ends weakly better off, at least one strictly.
enum class ImprovementMode { Strict, Weak };

// Decides whether agents i and j profit when j steps out of the economy and
// the pair privately splits T = rule(e without j)_i + j's endowment. Exact:
// the profitable splits form an interval intersection. Returns the witness
// for the first profitable ordered pair (i, j) in lexicographic id order.
std::optional<Witness> find_withdrawal(const RuleId& rule, const Economy& e,
                                       ImprovementMode mode);
// Same decision for one pinned ordered pair.
std::optional<Witness> find_withdrawal_pair(const RuleId& rule, const Economy& e, AgentId i,
                                            AgentId j, ImprovementMode mode);

// Decides whether agents i and j profit when j hands their endowment to i
// before the rule runs and the pair splits T = rule(merged economy)_i.
// Exact, same interval machinery and pair order as withdrawal.
std::optional<Witness> find_merging(const RuleId& rule, const Economy& e,
                                    ImprovementMode mode = ImprovementMode::Strict);
std::optional<Witness> find_merging_pair(const RuleId& rule, const Economy& e, AgentId i,
                                         AgentId j, ImprovementMode mode);

// Searches for a host who profits by splitting off a fictitious guest: the
// host keeps a split point s of their endowment, the guest enters with the
// rest and a candidate peak (symmetric weights), and the host pockets both
// resulting shares. Sound but incomplete: a returned witness is exact, while
// "none" covers only the supplied battery. Split points outside [0, host
// endowment] are skipped for that host; economies the rule refuses (zero
// endowments after a split) are skipped as well. The guest id is the
// smallest positive integer unused in the economy.
// Throws InvalidBatteryError when either candidate list is empty.
std::optional<Witness> find_splitting(const RuleId& rule, const Economy& e,
                                      const std::vector<Rational>& guest_peaks,
                                      const std::vector<Rational>& split_points);

// Default search battery: guest peaks are 0, every existing peak, every
// existing endowment, and the endowment total; split points are a 64ths grid
// of each endowment plus peak-alignment values where an agent's staged gap
// matches another's.
std::vector<Rational> default_guest_peaks(const Economy& e);
std::vector<Rational> default_split_points(const Economy& e);

// Decides whether agent i profits when j delivers their net trade up front:
// j leaves, i's endowment becomes w_i + w_j - rule(e)_j, and i profits iff
// their share in the reduced economy strictly beats rule(e)_i. Exhaustive
// over ordered pairs; pairs that would leave i a negative endowment, or an
// economy the rule refuses, are skipped.
std::optional<Witness> find_predelivery(const RuleId& rule, const Economy& e);

// Instantiates the three-agent template p = (p1, p2, p2), w = (w1, p1, p1)
// with 0 < p1 < w1 < p2: one oversupplied agent, two rationed demanders.
// Pre-delivery by agent 1 lifts a rationed demander to w1, a guaranteed
// strict improvement for every efficient, endowment-sensitive rule meeting
// the endowments lower bound. Throws UnsupportedRuleError for rules outside
// that class (sprumont, endowments) and ValidationError for parameters
// breaking the ordering.
Witness construct_predelivery_witness(const RuleId& rule, const Rational& p1 = Rational(1),
                                      const Rational& p2 = Rational(5),
                                      const Rational& w1 = Rational(3));

}  // namespace reallot
