#include "reallot/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "reallot/audit.hpp"
#include "reallot/econ_format.hpp"
#include "reallot/errors.hpp"
#include "reallot/examples.hpp"
#include "reallot/manipulation.hpp"
#include "reallot/rules.hpp"
#include "reallot/trace.hpp"

namespace reallot {

namespace {

Economy load_economy(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open economy file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_economy(buf.str());
}

int finish(bool violation) {
    std::cout << (violation ? "RESULT violation" : "RESULT pass") << "\n";
    return violation ? 1 : 0;
}

std::string joined_rationals(const std::vector<Rational>& values) {
    std::string out = "(";
    for (size_t k = 0; k < values.size(); ++k) {
        if (k) out += ", ";
        out += values[k].str();
    }
    return out + ")";
}

int run_solve(const std::string& rule_text, const std::string& path) {
    const RuleId rule = RuleId::parse(rule_text);
    const Economy e = load_economy(path);
    const Allocation x = apply_rule(rule, e);
    const std::vector<Rational> net = x.net_trades(e);
    for (int k = 0; k < e.size(); ++k)
        std::cout << "alloc " << e.id_at(k) << " " << x.at_index(k).str() << " net "
                  << net[k].str() << "\n";
    std::cout << "z=" << e.excess().str() << "\n";
    return finish(false);
}

int run_trace(const std::string& rule_text, const std::string& path) {
    const RuleId rule = RuleId::parse(rule_text);
    const Economy e = load_economy(path);
    // The uniform rule carries its explicit rationing recursion; everything
    // else traces by re-running the rule on staged holdings.
    const Trace tr =
        rule.kind == RuleKind::Uniform ? uniform_lambda_trace(e) : derive_trace(rule, e);
    for (const TraceStep& st : tr.steps) {
        std::cout << "t=" << st.t << " q=" << joined_rationals(st.net_trades);
        if (st.lambda && st.t > 0) std::cout << " lambda=" << st.lambda->str();
        if (st.t > 0) {
            std::cout << " frozen={";
            for (size_t k = 0; k < st.frozen.size(); ++k) {
                if (k) std::cout << ",";
                std::cout << st.frozen[k];
            }
            std::cout << "}";
        }
        std::cout << "\n";
    }
    const StepConditionReport rep = check_step_conditions(tr);
    std::cout << "final=" << joined_rationals(tr.final_net_trades()) << "\n";
    std::cout << "stationary=" << (rep.stationary && *rep.stationary ? "true" : "false") << "\n";
    return finish(false);
}

int run_audit(const std::string& rule_text, const std::string& axiom, long trials,
              std::uint64_t seed, int agents_max, int grid_denominator) {
    const RuleId rule = RuleId::parse(rule_text);
    AuditConfig config;
    config.trials = trials;
    config.seed = seed;
    config.generator.agents_max = agents_max;
    config.generator.denominator_bound = grid_denominator;
    const std::vector<std::string> axioms =
        axiom == "all" ? axiom_catalog() : std::vector<std::string>{axiom};
    bool any_violation = false;
    for (const AuditOutcome& out : audit_axioms(rule, axioms, config)) {
        std::cout << "axiom=" << out.property << " economies=" << out.economies
                  << " skipped=" << out.skipped << " inapplicable=" << out.inapplicable
                  << " comparisons=" << out.comparisons
                  << " verdict=" << (out.pass() ? "pass" : "violation") << "\n";
        if (out.witness) {
            any_violation = true;
            std::cout << serialize_witness(*out.witness);
        }
    }
    return finish(any_violation);
}

int run_manipulate(const std::string& check, const std::string& rule_text,
                   const std::string& mode_text, const std::string& path) {
    const RuleId rule = RuleId::parse(rule_text);
    if (mode_text != "strict" && mode_text != "weak")
        throw ValidationError("unknown mode '" + mode_text + "'; have strict, weak");
    const ImprovementMode mode =
        mode_text == "weak" ? ImprovementMode::Weak : ImprovementMode::Strict;
    const Economy e = load_economy(path);
    std::optional<Witness> w;
    if (check == "withdrawal") w = find_withdrawal(rule, e, mode);
    else if (check == "merging") w = find_merging(rule, e, mode);
    else if (check == "splitting")
        w = find_splitting(rule, e, default_guest_peaks(e), default_split_points(e));
    else if (check == "predelivery") w = find_predelivery(rule, e);
    else
        throw ValidationError("unknown manipulation '" + check +
                              "'; have withdrawal, merging, splitting, predelivery");
    if (w) {
        std::cout << serialize_witness(*w);
        return finish(true);
    }
    std::cout << "none\n";
    return finish(false);
}

int run_witness(const std::string& property, const std::string& rule_text,
                const std::string& template_text) {
    if (property != "predelivery")
        throw ValidationError("unknown property '" + property + "'; have predelivery");
    const RuleId rule = RuleId::parse(rule_text);
    Witness w;
    if (template_text.empty()) {
        w = construct_predelivery_witness(rule);
    } else {
        std::vector<Rational> parts;
        size_t start = 0;
        while (start <= template_text.size()) {
            size_t end = template_text.find(',', start);
            if (end == std::string::npos) end = template_text.size();
            const std::optional<Rational> v =
                Rational::parse(template_text.substr(start, end - start));
            if (!v)
                throw ValidationError("template must be three rationals p1,p2,w1; got '" +
                                      template_text + "'");
            parts.push_back(*v);
            if (end == template_text.size()) break;
            start = end + 1;
        }
        if (parts.size() != 3)
            throw ValidationError("template must be three rationals p1,p2,w1; got '" +
                                  template_text + "'");
        w = construct_predelivery_witness(rule, parts[0], parts[1], parts[2]);
    }
    std::cout << serialize_witness(w);
    const bool confirmed = replay_witness(w);
    std::cout << "replay=" << (confirmed ? "confirmed" : "failed") << "\n";
    return finish(!confirmed);
}

int run_replay(const std::string& name) {
    const ReplayReport rep = replay_example(name);
    std::cout << "example " << rep.name << "\n";
    for (const std::string& line : rep.lines) std::cout << line << "\n";
    return finish(!rep.pass);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Exact one-commodity reallocation rules: solvers, step traces, axiom audits, "
                 "and manipulation searches"};
    app.require_subcommand(1);

    std::string solve_rule;
    std::string solve_file;
    CLI::App* solve = app.add_subcommand("solve", "apply a rule to an economy file");
    solve->add_option("--rule", solve_rule, "rule id")->required();
    solve->add_option("file", solve_file, "economy file (.econ)")->required();

    std::string trace_rule;
    std::string trace_file;
    CLI::App* trace = app.add_subcommand("trace", "derive the step-wise net-trade process");
    trace->add_option("--rule", trace_rule, "rule id")->required();
    trace->add_option("file", trace_file, "economy file (.econ)")->required();

    std::string audit_rule;
    std::string audit_axiom_name = "all";
    long trials = 1000;
    std::uint64_t seed = 1;
    int agents_max = 6;
    int grid_denominator = 4;
    CLI::App* audit = app.add_subcommand("audit", "drive axiom checkers over seeded economies");
    audit->add_option("--rule", audit_rule, "rule id")->required();
    audit->add_option("--axiom", audit_axiom_name, "axiom name or 'all'");
    audit->add_option("--trials", trials, "number of generated economies");
    audit->add_option("--seed", seed, "base seed");
    audit->add_option("--agents-max", agents_max, "largest economy size");
    audit->add_option("--grid-denominator", grid_denominator, "value grid denominator bound");

    std::string man_check;
    std::string man_rule;
    std::string man_mode = "strict";
    std::string man_file;
    CLI::App* manipulate =
        app.add_subcommand("manipulate", "search one economy for a profitable manipulation");
    manipulate->add_option("--check", man_check, "withdrawal, merging, splitting, or predelivery")
        ->required();
    manipulate->add_option("--rule", man_rule, "rule id")->required();
    manipulate->add_option("--mode", man_mode, "strict or weak improvement");
    manipulate->add_option("file", man_file, "economy file (.econ)")->required();

    std::string wit_property = "predelivery";
    std::string wit_rule;
    std::string wit_template;
    CLI::App* witness =
        app.add_subcommand("witness", "construct a guaranteed manipulation witness");
    witness->add_option("--property", wit_property, "witness family (predelivery)");
    witness->add_option("--rule", wit_rule, "rule id")->required();
    witness->add_option("--template", wit_template, "template parameters p1,p2,w1");

    std::string example_name;
    CLI::App* replay = app.add_subcommand("replay", "re-verify a built-in worked example");
    replay->add_option("--example", example_name, "one of 1, 2, 3, 4, B1")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return run_solve(solve_rule, solve_file);
        if (trace->parsed()) return run_trace(trace_rule, trace_file);
        if (audit->parsed())
            return run_audit(audit_rule, audit_axiom_name, trials, seed, agents_max,
                             grid_denominator);
        if (manipulate->parsed()) return run_manipulate(man_check, man_rule, man_mode, man_file);
        if (witness->parsed()) return run_witness(wit_property, wit_rule, wit_template);
        if (replay->parsed()) return run_replay(example_name);
    } catch (const Error& err) {
        std::cout << "error: " << err.what() << "\n";
        std::cout << "RESULT error\n";
        return 2;
    } catch (const std::exception& err) {
        std::cout << "error: " << err.what() << "\n";
        std::cout << "RESULT error\n";
        return 2;
    }
    return 2;
}

}  // namespace reallot
