#pragma once

#include <functional>
#include <string>
#include <vector>

#include "reallot/economy.hpp"

namespace reallot {

// Priority order over agent ids: explicitly listed ids first (in list order),
// everyone else after them by increasing id; `dual` reverses the whole order.
struct PriorityOrderSpec {
    std::vector<AgentId> leading;
    bool dual = false;

    bool precedes(AgentId a, AgentId b) const;
    // Sorts the given agents by this order.
    std::vector<AgentId> arrange(std::vector<AgentId> agents) const;
    PriorityOrderSpec reversed() const;
    std::string str() const;
    // "natural", "dual", or a comma-separated id list.
    static PriorityOrderSpec parse(const std::string& text);
};

enum class RuleKind {
    Uniform,
    Proportional,
    Priority,
    MaxSatiating,
    Sprumont,
    Endowments,
    PhiBar,
    PhiStar,
};

// Parsed rule identifier. String forms: `uniform`, `proportional`,
// `priority[:order]`, `max-satiating`, `sprumont`, `endowments`,
// `phi-bar[:order]`, `phi-star`.
struct RuleId {
    RuleKind kind = RuleKind::Uniform;
    PriorityOrderSpec order;

    std::string str() const;
    static RuleId parse(const std::string& text);

    friend bool operator==(const RuleId& a, const RuleId& b);
};

// Canonical catalog id strings, in presentation order.
const std::vector<std::string>& rule_catalog();

Allocation apply_rule(const RuleId& rule, const Economy& e);

Allocation uniform_rule(const Economy& e);
Allocation proportional_rule(const Economy& e);
Allocation priority_rule(const Economy& e, const PriorityOrderSpec& order);
Allocation max_satiating_rule(const Economy& e);
Allocation sprumont_rule(const Economy& e);
Allocation endowments_rule(const Economy& e);
Allocation phi_bar_rule(const Economy& e, const PriorityOrderSpec& order);
Allocation phi_star_rule(const Economy& e);

// Smallest lambda >= lo with f(lambda) == target, for a continuous monotone
// piecewise-linear f whose kinks all lie in `breakpoints`. `final_slope` is
// f's slope beyond the last breakpoint (0 means the tail is constant).
// Throws when no solution exists on [lo, inf).
Rational solve_piecewise_linear(const std::function<Rational(const Rational&)>& f,
                                std::vector<Rational> breakpoints, const Rational& lo,
                                const Rational& target, const Rational& final_slope);

}  // namespace reallot
