#include <doctest.h>

#include <algorithm>
#include <optional>
#include <vector>

#include "reallot/econgen.hpp"
#include "reallot/economy.hpp"
#include "reallot/errors.hpp"
#include "reallot/examples.hpp"
#include "reallot/rules.hpp"
#include "test_util.hpp"

using namespace reallot;
using testutil::econ;
using testutil::rat;
using testutil::rats;
using testutil::strs;

TEST_CASE("piecewise solver finds the exact crossing") {
    auto f = [](const Rational& lam) { return min(Rational(4), lam) + min(Rational(6), 2 * lam); };
    CHECK(solve_piecewise_linear(f, {Rational(3), Rational(4)}, 0, Rational(10), 0) == Rational(4));
    CHECK(solve_piecewise_linear(f, {Rational(3), Rational(4)}, 0, Rational(19, 2), 0) ==
          Rational(7, 2));
    // Unsorted, duplicated breakpoints are tolerated.
    CHECK(solve_piecewise_linear(f, {Rational(4), Rational(3), Rational(3)}, 0, Rational(9), 0) ==
          Rational(3));
    // Target already met at the left edge.
    CHECK(solve_piecewise_linear(f, {Rational(3), Rational(4)}, 0, Rational(0), 0) == Rational(0));
}

TEST_CASE("piecewise solver extrapolates past the last breakpoint") {
    auto id = [](const Rational& lam) { return lam; };
    CHECK(solve_piecewise_linear(id, {}, 0, Rational(7), 1) == Rational(7));
    CHECK(solve_piecewise_linear(id, {}, Rational(2), Rational(5), 1) == Rational(5));
    auto cap = [](const Rational& lam) { return min(Rational(4), lam); };
    CHECK_THROWS_WITH_AS(solve_piecewise_linear(cap, {Rational(4)}, 0, Rational(5), 0),
                         "piecewise solve: target unreachable", Error);
}

TEST_CASE("piecewise solver detects a missing kink") {
    auto f = [](const Rational& lam) { return min(Rational(4), lam) + min(Rational(6), 2 * lam); };
    CHECK_THROWS_WITH_AS(solve_piecewise_linear(f, {Rational(4)}, 0, Rational(9), 0),
                         "piecewise solve: kink missing from breakpoint list", Error);
}

TEST_CASE("uniform rule on the worked examples") {
    CHECK(uniform_rule(example_economy("1")).amounts() == rats({"0", "2", "7/2", "13/2"}));
    CHECK(uniform_rule(example_economy("2")).amounts() == rats({"3", "0", "2"}));
    CHECK(uniform_rule(example_economy("4")).amounts() == rats({"1", "3", "3", "1"}));
    // Excess supply: common absorption cap instead of a common grant.
    CHECK(uniform_rule(econ({{1, "6", "2"}, {2, "0", "8"}})).amounts() == rats({"6", "4"}));
    // Single agent keeps the endowment.
    CHECK(uniform_rule(econ({{1, "3", "5"}})).amounts() == rats({"5"}));
}

TEST_CASE("uniform rule satisfies its defining equation on generated economies") {
    GeneratorConfig config;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const Economy e = generate_economy(config, seed);
        const Allocation x = uniform_rule(e);
        CAPTURE(seed);
        if (e.excess_demand()) {
            Rational lam;
            for (int k = 0; k < e.size(); ++k) lam = max(lam, x.at_index(k) - e.endowment_at(k));
            for (int k = 0; k < e.size(); ++k)
                CHECK(x.at_index(k) == min(e.pref_at(k).peak, e.endowment_at(k) + lam));
        } else {
            Rational lam;
            for (int k = 0; k < e.size(); ++k) lam = max(lam, e.endowment_at(k) - x.at_index(k));
            for (int k = 0; k < e.size(); ++k)
                CHECK(x.at_index(k) == max(e.pref_at(k).peak, e.endowment_at(k) - lam));
        }
    }
}

TEST_CASE("proportional rule scales endowments to a common factor") {
    CHECK(proportional_rule(econ({{1, "4", "2"}, {2, "0", "2"}, {3, "2", "1"}})).amounts() ==
          rats({"10/3", "0", "5/3"}));
    CHECK(proportional_rule(econ({{1, "0", "4"}, {2, "3", "2"}})).amounts() == rats({"3", "3"}));
    // All-supplier economy scales nobody below the feasible cap.
    CHECK(proportional_rule(econ({{1, "0", "4"}, {2, "1", "2"}})).amounts() == rats({"4", "2"}));
    CHECK_THROWS_AS(proportional_rule(econ({{1, "1", "0"}, {2, "1", "2"}})), ZeroEndowmentError);
}

TEST_CASE("proportional rule has a common scaling factor on generated economies") {
    GeneratorConfig config;
    int used = 0;
    for (std::uint64_t seed = 1; seed <= 300 && used < 150; ++seed) {
        const Economy e = generate_economy(config, seed);
        bool zero = false;
        for (int k = 0; k < e.size(); ++k) zero = zero || e.endowment_at(k) == 0;
        if (zero) continue;
        ++used;
        const Allocation x = proportional_rule(e);
        CAPTURE(seed);
        if (e.excess_demand()) {
            // Capped agents sit below the factor, so it is the largest ratio.
            Rational lam(1);
            for (int k = 0; k < e.size(); ++k)
                lam = max(lam, x.at_index(k) / e.endowment_at(k));
            for (int k = 0; k < e.size(); ++k)
                CHECK(x.at_index(k) == min(e.pref_at(k).peak, lam * e.endowment_at(k)));
        } else {
            // Mirror: capped agents sit above the factor; take the smallest.
            Rational lam = x.at_index(0) / e.endowment_at(0);
            for (int k = 1; k < e.size(); ++k)
                lam = min(lam, x.at_index(k) / e.endowment_at(k));
            CHECK(lam <= 1);
            for (int k = 0; k < e.size(); ++k)
                CHECK(x.at_index(k) == max(e.pref_at(k).peak, lam * e.endowment_at(k)));
        }
    }
    CHECK(used >= 50);
}

TEST_CASE("priority rule serves demanders in order") {
    const Economy e3 = example_economy("3");
    CHECK(priority_rule(e3, PriorityOrderSpec{}).amounts() == rats({"0", "6", "2"}));
    CHECK(priority_rule(e3, PriorityOrderSpec::parse("dual")).amounts() == rats({"0", "2", "6"}));
    CHECK(priority_rule(e3, PriorityOrderSpec::parse("4,3")).amounts() == rats({"0", "2", "6"}));

    const Economy supply = econ({{1, "0", "3"}, {2, "0", "3"}, {3, "4", "0"}});
    CHECK(priority_rule(supply, PriorityOrderSpec{}).amounts() == rats({"0", "2", "4"}));
    CHECK(priority_rule(supply, PriorityOrderSpec::parse("dual")).amounts() ==
          rats({"2", "0", "4"}));
}

TEST_CASE("priority rule leaves at most one partially served agent") {
    GeneratorConfig config;
    const PriorityOrderSpec natural;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const Economy e = generate_economy(config, seed);
        const Allocation x = priority_rule(e, natural);
        CAPTURE(seed);
        const bool demand = e.excess_demand();
        const std::vector<AgentId> rationed = demand ? e.demanders() : e.suppliers();
        // Satiated side snaps to peaks.
        for (AgentId id : (demand ? e.suppliers() : e.demanders()))
            CHECK(x.at(id) == e.pref(id).peak);
        // Rationed side in order: full, then at most one partial, then untouched.
        int partial = 0;
        bool closed_out = false;
        for (AgentId id : natural.arrange(rationed)) {
            // A zero-gap supplier is at peak without consuming any slack.
            if (e.pref(id).peak == e.endowment(id)) continue;
            if (x.at(id) == e.pref(id).peak) {
                CHECK_FALSE(closed_out);
            } else if (x.at(id) != e.endowment(id)) {
                ++partial;
                closed_out = true;
            } else {
                closed_out = true;
            }
        }
        CHECK(partial <= 1);
    }
}

TEST_CASE("max-satiating rule fills smallest gaps first") {
    CHECK(max_satiating_rule(econ({{1, "0", "3"}, {2, "9", "1"}, {3, "4", "1"}})).amounts() ==
          rats({"0", "1", "4"}));
    // Equal gaps share the sacrifice equally.
    CHECK(max_satiating_rule(econ({{1, "0", "4"}, {2, "5", "2"}, {3, "5", "2"}})).amounts() ==
          rats({"0", "4", "4"}));
    // Cascade: satisfying the small gap leaves the rest for the large one.
    CHECK(max_satiating_rule(econ({{1, "0", "6"}, {2, "2", "1"}, {3, "8", "1"}})).amounts() ==
          rats({"0", "2", "6"}));
    // Supply mirror.
    CHECK(max_satiating_rule(econ({{1, "4", "0"}, {2, "1", "4"}, {3, "1", "4"}})).amounts() ==
          rats({"4", "2", "2"}));
}

TEST_CASE("sprumont rule ignores endowments") {
    CHECK(sprumont_rule(example_economy("1")).amounts() == rats({"0", "2", "7/2", "13/2"}));
    CHECK(sprumont_rule(econ({{1, "4", "0"}, {2, "3", "4", "2", "1"}})).amounts() ==
          rats({"2", "2"}));
    CHECK(sprumont_rule(econ({{1, "5", "0"}, {2, "5", "16"}})).amounts() == rats({"8", "8"}));

    GeneratorConfig config;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const Economy e = generate_economy(config, seed);
        std::vector<Rational> reversed(e.endowments().rbegin(), e.endowments().rend());
        const Economy shuffled = e.with_endowments(std::move(reversed));
        CAPTURE(seed);
        CHECK(sprumont_rule(e).amounts() == sprumont_rule(shuffled).amounts());
    }
}

TEST_CASE("endowments rule is the identity") {
    const Economy e1 = example_economy("1");
    CHECK(endowments_rule(e1).amounts() == e1.endowments());
}

TEST_CASE("parity rule flips the priority order on even populations") {
    CHECK(phi_bar_rule(example_economy("3"), PriorityOrderSpec{}).amounts() ==
          rats({"0", "6", "2"}));
    CHECK(phi_bar_rule(example_economy("3"), PriorityOrderSpec::parse("dual")).amounts() ==
          rats({"0", "2", "6"}));

    const Economy even = econ({{1, "5", "1"}, {2, "5", "1"}, {3, "0", "3"}, {4, "0", "3"}});
    CHECK(phi_bar_rule(even, PriorityOrderSpec{}).amounts() == rats({"3", "5", "0", "0"}));
    CHECK(phi_bar_rule(even, PriorityOrderSpec::parse("dual")).amounts() ==
          rats({"5", "3", "0", "0"}));
    // Odd economies agree with the plain priority rule.
    CHECK(phi_bar_rule(example_economy("3"), PriorityOrderSpec{}).amounts() ==
          priority_rule(example_economy("3"), PriorityOrderSpec{}).amounts());
}

TEST_CASE("pivot rule on the worked example and its branches") {
    const Economy b1 = example_economy("B1");
    CHECK(phi_star_rule(b1).amounts() == rats({"1", "4", "9"}));
    // Reweighting the pivot toward heavy left loss flips the branch.
    const Economy flipped = b1.with_preference(1, Preference{Rational(1), Rational(14), Rational(1)});
    CHECK(phi_star_rule(flipped).amounts() == rats({"1", "5", "8"}));
    // No supplier: everyone keeps the endowment.
    CHECK(phi_star_rule(econ({{1, "2", "1"}, {2, "3", "2"}})).amounts() == rats({"1", "2"}));
    // Pivot prefers the total to zero: common-cap branch.
    CHECK(phi_star_rule(econ({{1, "5", "6"}, {2, "8", "1"}})).amounts() == rats({"5", "2"}));
    // Excess supply, pivot prefers zero: serial release branch.
    CHECK(phi_star_rule(econ({{1, "1", "0"}, {2, "0", "6"}})).amounts() == rats({"1", "5"}));
    // Excess supply, pivot prefers the total: common-cap branch.
    CHECK(phi_star_rule(econ({{1, "6", "2"}, {2, "0", "8"}})).amounts() == rats({"6", "4"}));
}

TEST_CASE("rule identifiers parse and print canonically") {
    CHECK(RuleId::parse("uniform").kind == RuleKind::Uniform);
    CHECK(RuleId::parse("uniform").str() == "uniform");
    CHECK(RuleId::parse("priority").str() == "priority");
    CHECK(RuleId::parse("priority:dual").str() == "priority:dual");
    CHECK(RuleId::parse("priority:3,1,2").str() == "priority:3,1,2");
    CHECK(RuleId::parse("phi-bar:dual").str() == "phi-bar:dual");
    CHECK(RuleId::parse("priority:natural").str() == "priority");
    CHECK(RuleId::parse("priority:").str() == "priority");

    CHECK_THROWS_AS(RuleId::parse("bogus"), ValidationError);
    CHECK_THROWS_AS(RuleId::parse("uniform:dual"), ValidationError);
    CHECK_THROWS_AS(RuleId::parse("sprumont:2"), ValidationError);
    CHECK_THROWS_AS(RuleId::parse("priority:1,,2"), ValidationError);
    CHECK_THROWS_AS(RuleId::parse("priority:1,x"), ValidationError);
    CHECK_THROWS_AS(RuleId::parse("priority:1,1"), ValidationError);
    CHECK_THROWS_AS((void)PriorityOrderSpec::parse("0,1"), ValidationError);

    CHECK(rule_catalog() ==
          std::vector<std::string>{"uniform", "proportional", "priority", "max-satiating",
                                   "sprumont", "endowments", "phi-bar", "phi-star"});
    for (const std::string& name : rule_catalog()) CHECK(RuleId::parse(name).str() == name);
}

TEST_CASE("priority order comparisons") {
    PriorityOrderSpec spec = PriorityOrderSpec::parse("3,1");
    CHECK(spec.precedes(3, 1));
    CHECK(spec.precedes(1, 2));  // listed ids come before unlisted ones
    CHECK(spec.precedes(2, 4));  // unlisted ids fall back to id order
    CHECK(spec.arrange({4, 1, 3, 2}) == std::vector<AgentId>{3, 1, 2, 4});
    CHECK(spec.reversed().arrange({4, 1, 3, 2}) == std::vector<AgentId>{4, 2, 1, 3});
    CHECK(PriorityOrderSpec::parse("dual").arrange({1, 3, 2}) == std::vector<AgentId>{3, 2, 1});
    CHECK(PriorityOrderSpec::parse("natural").str() == "natural");
}

TEST_CASE("apply_rule dispatches on the parsed identifier") {
    const Economy e3 = example_economy("3");
    CHECK(apply_rule(RuleId::parse("priority:dual"), e3).amounts() ==
          priority_rule(e3, PriorityOrderSpec::parse("dual")).amounts());
    CHECK(apply_rule(RuleId::parse("max-satiating"), e3).amounts() ==
          max_satiating_rule(e3).amounts());
    CHECK(apply_rule(RuleId::parse("endowments"), e3).amounts() == e3.endowments());
}

TEST_CASE("catalog rules are feasible, same-sided, and bound by endowments") {
    GeneratorConfig config;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const Economy e = generate_economy(config, seed);
        const bool demand = e.excess_demand();
        for (const std::string& name : rule_catalog()) {
            const RuleId rule = RuleId::parse(name);
            std::optional<Allocation> solved;
            try {
                solved = apply_rule(rule, e);
            } catch (const ZeroEndowmentError&) {
                REQUIRE(rule.kind == RuleKind::Proportional);
                bool zero = false;
                for (int k = 0; k < e.size(); ++k) zero = zero || e.endowment_at(k) == 0;
                REQUIRE(zero);
                continue;
            }
            const Allocation& x = *solved;
            CAPTURE(seed);
            CAPTURE(name);
            // Feasibility was enforced by the Allocation constructor; check
            // same-sidedness and the endowment bound for the rules that
            // promise them.
            if (rule.kind != RuleKind::Endowments) {
                for (int k = 0; k < e.size(); ++k) {
                    if (demand)
                        CHECK(x.at_index(k) <= e.pref_at(k).peak);
                    else
                        CHECK(x.at_index(k) >= e.pref_at(k).peak);
                }
            }
            if (rule.kind != RuleKind::Endowments && rule.kind != RuleKind::Sprumont) {
                for (int k = 0; k < e.size(); ++k) {
                    CHECK(weakly_prefers(e.pref_at(k), x.at_index(k), e.endowment_at(k)));
                    // Satiation: agents already past their peak sit exactly on it.
                    const bool reached = demand ? e.pref_at(k).peak <= e.endowment_at(k)
                                               : e.pref_at(k).peak >= e.endowment_at(k);
                    if (reached) CHECK(x.at_index(k) == e.pref_at(k).peak);
                }
            }
        }
    }
}
