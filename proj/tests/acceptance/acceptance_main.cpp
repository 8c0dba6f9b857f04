// Acceptance gate: one PASS/FAIL line per criterion, exit 0 only when all
// eight hold. Long-running scans share one pregenerated 10000-economy battery
// (seeds 1..10000) with the audit drivers.
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reallot/audit.hpp"
#include "reallot/econgen.hpp"
#include "reallot/economy.hpp"
#include "reallot/errors.hpp"
#include "reallot/examples.hpp"
#include "reallot/manipulation.hpp"
#include "reallot/rules.hpp"
#include "reallot/trace.hpp"
#include "reallot/witness.hpp"

using namespace reallot;

namespace {

constexpr long kTrials = 10000;

const std::vector<std::string> kRoundTripRules = {
    "uniform", "proportional", "priority", "max-satiating", "phi-bar", "phi-star", "endowments"};
const std::vector<std::string> kAdjustingRules = {
    "uniform", "proportional", "priority", "max-satiating", "phi-bar", "phi-star"};

struct Report {
    bool pass = true;
    double seconds = 0;
    std::string detail;
    std::vector<std::string> notes;
};

template <typename Body>
Report timed(Body&& body) {
    Report r;
    const auto start = std::chrono::steady_clock::now();
    body(r);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string num(long v) {
    return std::to_string(v);
}

std::string data_or(const Witness& w, const std::string& key) {
    const std::string* v = w.get(key);
    return v ? *v : "?";
}

std::string pair_summary(const Witness& w) {
    return "agents " + num(w.agents[0]) + "," + num(w.agents[1]) + " total=" +
           data_or(w, "total") + " shares " + data_or(w, "share_i") + "/" + data_or(w, "share_j");
}

class AuditCache {
  public:
    explicit AuditCache(const AuditConfig& config) : config_(config) {}

    const AuditOutcome& get(const std::string& rule, const std::string& axiom) {
        const auto key = std::make_pair(rule, axiom);
        auto it = cache_.find(key);
        if (it == cache_.end())
            it = cache_.emplace(key, audit_axiom(RuleId::parse(rule), axiom, config_)).first;
        return it->second;
    }

  private:
    AuditConfig config_;
    std::map<std::pair<std::string, std::string>, AuditOutcome> cache_;
};

Report check_example_replay() {
    Report r = timed([](Report& rep) {
        for (const std::string& name : example_names()) {
            const ReplayReport report = replay_example(name);
            if (report.pass) continue;
            rep.pass = false;
            for (const std::string& line : report.lines)
                if (line.rfind("FAIL", 0) == 0)
                    rep.notes.push_back("example " + name + ": " + line.substr(5));
        }
    });
    if (r.seconds >= 1.0) {
        r.pass = false;
        r.notes.push_back("replay exceeded the one-second budget");
    }
    r.detail = r.pass ? "all five built-in scenarios reproduce bit-exactly within budget"
                      : "published values failed to reproduce";
    return r;
}

Report check_trace_round_trip(const std::vector<Economy>& battery) {
    return timed([&](Report& rep) {
        long clean = 0;
        for (const std::string& name : kRoundTripRules) {
            const RuleId rule = RuleId::parse(name);
            long failures = 0;
            long checked = 0;
            long skipped = 0;
            std::string first;
            for (std::size_t k = 0; k < battery.size(); ++k) {
                const Economy& e = battery[k];
                std::optional<Trace> trace;
                try {
                    trace = derive_trace(rule, e);
                } catch (const ZeroEndowmentError&) {
                    ++skipped;
                    continue;
                }
                ++checked;
                const StepConditionReport conditions = check_step_conditions(*trace);
                const bool final_matches =
                    trace->final_net_trades() == apply_rule(rule, e).net_trades(e);
                if (final_matches && conditions.pass && conditions.stationary.value_or(false))
                    continue;
                ++failures;
                if (!first.empty()) continue;
                first = name + ": first failure at battery seed " + num(1 + (long)k);
                if (!final_matches) first += ", final net trades differ from the rule's output";
                if (!conditions.stationary.value_or(true)) first += ", not stationary";
                if (!conditions.violations.empty()) {
                    const ConditionViolation& v = conditions.violations.front();
                    first += ", step " + num(v.step) + " agent " + num(v.agent) + " breaks " +
                             v.condition;
                }
            }
            if (failures == 0) {
                ++clean;
            } else {
                rep.pass = false;
                rep.notes.push_back(first);
                rep.notes.push_back(name + ": " + num(failures) + " of " + num(checked) +
                                    " checked economies fail" +
                                    (skipped ? " (" + num(skipped) + " skipped)" : ""));
                if (name == "endowments")
                    rep.notes.push_back(
                        "analysis: the identity rule never trades, so an agent holding more than "
                        "their peak stays frozen with a nonzero gap, which the peak-freezing step "
                        "condition rejects; the stepwise construction only fits rules that move "
                        "such agents to their peaks");
            }
        }
        rep.detail = rep.pass
                         ? "all seven rules replay stepwise on " + num(battery.size()) +
                               " economies with clean step conditions and stationary tails"
                         : num(clean) + " of 7 rules replay stepwise on the full battery";
    });
}

Report check_strict_immunity(const std::vector<Economy>& battery) {
    return timed([&](Report& rep) {
        long clean = 0;
        long unconfirmed = 0;
        for (const std::string& name : kRoundTripRules) {
            const RuleId rule = RuleId::parse(name);
            long withdrawal_hits = 0;
            long merging_hits = 0;
            long skipped = 0;
            std::string first_w;
            std::string first_m;
            for (std::size_t k = 0; k < battery.size(); ++k) {
                const Economy& e = battery[k];
                try {
                    if (const auto w = find_withdrawal(rule, e, ImprovementMode::Strict)) {
                        ++withdrawal_hits;
                        if (!replay_witness(*w)) ++unconfirmed;
                        if (first_w.empty())
                            first_w = name + ": withdrawal gain at battery seed " +
                                      num(1 + (long)k) + ", " + pair_summary(*w);
                    }
                } catch (const ZeroEndowmentError&) {
                    ++skipped;
                }
                try {
                    if (const auto w = find_merging(rule, e, ImprovementMode::Strict)) {
                        ++merging_hits;
                        if (!replay_witness(*w)) ++unconfirmed;
                        if (first_m.empty())
                            first_m = name + ": merging gain at battery seed " + num(1 + (long)k) +
                                      ", " + pair_summary(*w);
                    }
                } catch (const ZeroEndowmentError&) {
                    ++skipped;
                }
            }
            if (withdrawal_hits == 0 && merging_hits == 0) {
                ++clean;
            } else {
                rep.pass = false;
                if (!first_w.empty()) rep.notes.push_back(first_w);
                if (!first_m.empty()) rep.notes.push_back(first_m);
                rep.notes.push_back(name + ": " + num(withdrawal_hits) + " withdrawal and " +
                                    num(merging_hits) + " merging gains over the battery" +
                                    (skipped ? " (" + num(skipped) + " skipped checks)" : ""));
                if (name == "max-satiating")
                    rep.notes.push_back(
                        "analysis: merging shrinks the pair's pooled peak gap and this rule "
                        "serves smaller gaps first, so the pair jumps the satiation queue; its "
                        "population solidarity is intact, which is why plain withdrawal never "
                        "profits against it");
                else if (name == "phi-bar")
                    rep.notes.push_back(
                        "analysis: a departure flips the head-count parity and reverses the "
                        "serving order end to end, so the agent previously served last is "
                        "suddenly served first and the pair splits the windfall");
                else if (name == "phi-star")
                    rep.notes.push_back(
                        "analysis: both its pivot's comparison against the population's total "
                        "endowment and its gap-sorted serving queue shift when holdings are "
                        "pooled or an agent leaves, so a pair can steer the branch and the "
                        "queue; its endow-mono and pop-mono audits fail on this battery");
                else if (name == "endowments")
                    rep.notes.push_back(
                        "analysis: under the identity rule a leaver's endowment passes to the "
                        "pair untouched, so any pair whose holdings sit on opposite sides of "
                        "their peaks re-splits the pot to mutual strict gain; rules that adjust "
                        "toward peaks leave no such slack");
            }
        }
        if (unconfirmed > 0) {
            rep.pass = false;
            rep.notes.push_back(num(unconfirmed) +
                                " reported gains failed witness replay; search and replay "
                                "disagree and the deciders need attention");
        } else if (!rep.pass) {
            rep.notes.push_back(
                "analysis: every reported gain re-verifies under exact witness replay, so the "
                "gains reflect the rules themselves rather than the search");
            rep.notes.push_back(
                "analysis: the zero-withdrawal rules are exactly those passing the efficiency, "
                "own-peak-only, elb, and pop-mono audits; phi-bar and phi-star fail pop-mono "
                "and the identity rule fails efficiency");
            rep.notes.push_back(
                "analysis: merging immunity holds for uniform and priority, which also pass "
                "endow-mono, and for proportional despite its endow-mono failure: pooling "
                "leaves the scale factor and the pooled claim unchanged while the pool stays "
                "uncapped, and capping only shrinks the pair's joint payout, so a strict "
                "mutual gain cannot exist");
        }
        rep.detail = rep.pass ? "no strict withdrawal or merging gain for any of the seven rules"
                              : num(clean) + " of 7 rules are immune on the battery";
    });
}

Report check_splitting(const std::vector<Economy>& battery) {
    return timed([&](Report& rep) {
        const auto w2 = find_splitting(RuleId::parse("uniform"), example_economy("2"),
                                       {Rational(4)}, {Rational(1)});
        const bool ok2 = w2 && w2->agents == std::vector<AgentId>{1, 4} &&
                         data_or(*w2, "guest_peak") == "4" && data_or(*w2, "split") == "1" &&
                         data_or(*w2, "combined") == "10/3" && w2->before &&
                         w2->before->at(1) == Rational(3) && replay_witness(*w2);
        if (!ok2) {
            rep.pass = false;
            rep.notes.push_back(
                "uniform split witness did not reproduce (expected host 1, guest peak 4, "
                "split 1, combined 10/3 against base 3)");
        }
        const auto w3 = find_splitting(RuleId::parse("priority"), example_economy("3"),
                                       {Rational(4)}, {Rational(1)});
        const bool ok3 = w3 && w3->agents == std::vector<AgentId>{4, 2} &&
                         data_or(*w3, "combined") == "5" && w3->before &&
                         w3->before->at(4) == Rational(2) && replay_witness(*w3);
        if (!ok3) {
            rep.pass = false;
            rep.notes.push_back(
                "priority split witness did not reproduce (expected host 4, guest 2 with peak 4, "
                "split 1, combined 5 against base 2)");
        }
        const RuleId proportional = RuleId::parse("proportional");
        long hits = 0;
        long checked = 0;
        long skipped = 0;
        std::string first;
        for (std::size_t k = 0; k < battery.size(); ++k) {
            const Economy& e = battery[k];
            try {
                const auto w =
                    find_splitting(proportional, e, default_guest_peaks(e), default_split_points(e));
                ++checked;
                if (w) {
                    ++hits;
                    if (first.empty())
                        first = "proportional split gain at battery seed " + num(1 + (long)k) +
                                ": host " + num(w->agents[0]) + ", guest peak " +
                                data_or(*w, "guest_peak") + ", split " + data_or(*w, "split");
                }
            } catch (const ZeroEndowmentError&) {
                ++skipped;
            }
        }
        if (hits > 0) {
            rep.pass = false;
            rep.notes.push_back(first);
            rep.notes.push_back("proportional: " + num(hits) + " of " + num(checked) +
                                " checked economies admit a split gain");
        }
        rep.detail =
            rep.pass ? "proportional admits no split gain on " + num(checked) +
                           " economies (default battery, " + num(skipped) +
                           " skipped); both pinned split witnesses reproduce exactly"
                     : "splitting expectations broken";
    });
}

Report check_predelivery() {
    return timed([&](Report& rep) {
        for (const std::string& name : kAdjustingRules) {
            const Witness w = construct_predelivery_witness(RuleId::parse(name));
            if (replay_witness(w)) continue;
            rep.pass = false;
            rep.notes.push_back(name + ": constructed early-delivery witness failed replay");
        }
        rep.detail = rep.pass ? "all six adjusting rules yield replay-confirmed early-delivery "
                                "gains from the (1, 5, 3) template"
                              : "template construction broken";
    });
}

Report check_independence(AuditCache& audits) {
    return timed([&](Report& rep) {
        struct Target {
            const char* rule;
            const char* axiom;
            const char* others[3];
        };
        const Target targets[] = {
            {"phi-bar", "pop-mono", {"own-peak-only", "elb", "endow-mono"}},
            {"max-satiating", "endow-mono", {"own-peak-only", "elb", "pop-mono"}},
            {"sprumont", "elb", {"own-peak-only", "endow-mono", "pop-mono"}},
        };
        for (const Target& t : targets) {
            const AuditOutcome& focal = audits.get(t.rule, t.axiom);
            if (!focal.witness) {
                rep.pass = false;
                rep.notes.push_back(std::string(t.rule) + ": no " + t.axiom + " violation in " +
                                    num(focal.economies) + " economies");
            } else if (!replay_witness(*focal.witness)) {
                rep.pass = false;
                rep.notes.push_back(std::string(t.rule) + ": " + t.axiom +
                                    " witness failed replay");
            } else {
                rep.notes.push_back(std::string(t.rule) + ": " + t.axiom +
                                    " violation found at economy " + num(focal.economies) +
                                    ", witness confirmed");
            }
            for (const char* other : t.others) {
                const AuditOutcome& outcome = audits.get(t.rule, other);
                if (outcome.pass()) continue;
                rep.pass = false;
                rep.notes.push_back(std::string(t.rule) + ": unexpected " + other +
                                    " violation at economy " + num(outcome.economies));
            }
        }
        const AuditOutcome& pop = audits.get("phi-bar", "pop-mono");
        if (pop.witness) {
            try {
                const Witness shrunk = shrink_witness(*pop.witness, recheck_witness);
                if (replay_witness(shrunk)) {
                    rep.notes.push_back("pop-mono witness shrinks from " +
                                        num(pop.witness->economy.size()) + " to " +
                                        num(shrunk.economy.size()) +
                                        " agents and still replays");
                } else {
                    rep.pass = false;
                    rep.notes.push_back("shrunk pop-mono witness failed replay");
                }
            } catch (const StaleWitnessError&) {
                rep.pass = false;
                rep.notes.push_back("pop-mono witness went stale during shrinking");
            }
        }
        rep.detail = rep.pass
                         ? "each probe rule fails exactly its designated axiom on the battery"
                         : "independence pattern broken";
    });
}

Report check_meta(AuditCache& audits) {
    return timed([&](Report& rep) {
        std::string covered;
        for (const std::string& name : rule_catalog()) {
            const bool premises = audits.get(name, "own-peak-only").pass() &&
                                  audits.get(name, "elb").pass() &&
                                  audits.get(name, "endow-mono").pass();
            if (!premises) continue;
            if (!covered.empty()) covered += ", ";
            covered += name;
            if (audits.get(name, "efficiency").pass()) continue;
            rep.pass = false;
            rep.notes.push_back(name +
                                ": passes the three premise audits yet fails efficiency");
        }
        rep.detail = rep.pass ? "premise-holders {" + covered + "} all pass sampled efficiency"
                              : "implication broken";
    });
}

Report check_envy(AuditCache& audits) {
    return timed([&](Report& rep) {
        const AuditOutcome& uniform = audits.get("uniform", "envy-free");
        if (!uniform.pass()) {
            rep.pass = false;
            rep.notes.push_back("uniform shows net-trade envy at economy " +
                                num(uniform.economies));
        }
        const AuditOutcome& priority = audits.get("priority", "envy-free");
        if (!priority.witness) {
            rep.pass = false;
            rep.notes.push_back("no envy witness for priority in " + num(priority.economies) +
                                " economies");
        } else if (!replay_witness(*priority.witness)) {
            rep.pass = false;
            rep.notes.push_back("priority envy witness failed replay");
        } else {
            rep.notes.push_back("priority envy witness: agent " +
                                num(priority.witness->agents[0]) + " strictly prefers agent " +
                                num(priority.witness->agents[1]) + "'s net trade, confirmed");
        }
        rep.detail = rep.pass ? "uniform stays envy-free in net trades across the battery; "
                                "priority yields a confirmed counterexample"
                              : "envy expectations broken";
    });
}

int run() {
    std::cout << std::fixed << std::setprecision(2);

    GeneratorConfig generator;
    std::vector<Economy> battery;
    battery.reserve(kTrials);
    for (long t = 0; t < kTrials; ++t)
        battery.push_back(generate_economy(generator, 1 + static_cast<std::uint64_t>(t)));

    AuditConfig audit_config;
    audit_config.trials = kTrials;
    audit_config.seed = 1;
    AuditCache audits(audit_config);

    int failures = 0;
    const auto emit = [&failures](int number, const std::string& label, const Report& r) {
        if (!r.pass) ++failures;
        std::cout << "C" << number << " " << (r.pass ? "PASS" : "FAIL") << " (" << r.seconds
                  << "s) " << label << ": " << r.detail << "\n";
        for (const std::string& note : r.notes) std::cout << "     - " << note << "\n";
        std::cout.flush();
    };

    emit(1, "built-in example replay", check_example_replay());
    emit(2, "stepwise trace round-trip", check_trace_round_trip(battery));
    emit(3, "strict withdrawal and merging immunity", check_strict_immunity(battery));
    emit(4, "splitting immunity and pinned split witnesses", check_splitting(battery));
    emit(5, "early-delivery witness construction", check_predelivery());
    emit(6, "axiom independence audits", check_independence(audits));
    emit(7, "axiom implication meta-check", check_meta(audits));
    emit(8, "net-trade envy audit", check_envy(audits));

    std::cout << "ACCEPTANCE " << (failures == 0 ? "PASS" : "FAIL") << " (" << (8 - failures)
              << "/8 criteria)\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main() {
    try {
        return run();
    } catch (const std::exception& ex) {
        std::cout << "unexpected error: " << ex.what() << "\n";
        return 1;
    }
}
