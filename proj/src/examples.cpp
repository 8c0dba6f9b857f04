#include "reallot/examples.hpp"

#include "reallot/errors.hpp"
#include "reallot/manipulation.hpp"
#include "reallot/rules.hpp"
#include "reallot/trace.hpp"

namespace reallot {

const std::vector<std::string>& example_names() {
    static const std::vector<std::string> names = {"1", "2", "3", "4", "B1"};
    return names;
}

namespace {

Preference peaked(long num, long den = 1) {
    Preference p;
    p.peak = Rational(num, den);
    return p;
}

}  // namespace

Economy example_economy(const std::string& name) {
    if (name == "1")
        return Economy({1, 2, 3, 4}, {peaked(0), peaked(2), peaked(7, 2), peaked(10)},
                       {9, 1, 0, 2});
    if (name == "2")
        return Economy({1, 2, 3}, {peaked(4), peaked(0), peaked(2)}, {2, 2, 1});
    if (name == "3")
        return Economy({1, 3, 4}, {peaked(0), peaked(6), peaked(6)}, {4, 2, 2});
    if (name == "4")
        return Economy({1, 2, 3, 4}, {peaked(1), peaked(4), peaked(3), peaked(1)}, {3, 1, 1, 3});
    if (name == "B1")
        return Economy({1, 2, 3}, {peaked(1), peaked(7), peaked(9)}, {9, 1, 4});
    throw ValidationError("unknown example '" + name + "'; have 1, 2, 3, 4, B1");
}

namespace {

void expect(ReplayReport* r, bool ok, const std::string& what) {
    r->lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    if (!ok) r->pass = false;
}

std::vector<Rational> rationals(std::vector<long> nums) {
    std::vector<Rational> out;
    out.reserve(nums.size());
    for (long v : nums) out.push_back(Rational(v));
    return out;
}

void expect_amounts(ReplayReport* r, const std::string& what, const std::vector<Rational>& got,
                    const std::vector<Rational>& want) {
    bool ok = got.size() == want.size();
    for (size_t k = 0; ok && k < got.size(); ++k) ok = got[k] == want[k];
    std::string line = what + ": (";
    for (size_t k = 0; k < got.size(); ++k) {
        if (k) line += ", ";
        line += got[k].str();
    }
    line += ")";
    expect(r, ok, line);
}

void replay_1(ReplayReport* r) {
    const Economy e = example_economy("1");
    const RuleId uniform = RuleId::parse("uniform");
    const Allocation x = apply_rule(uniform, e);
    expect_amounts(r, "uniform allocation", x.amounts(),
                   {Rational(0), Rational(2), Rational(7, 2), Rational(13, 2)});
    const Trace tr = uniform_lambda_trace(e);
    struct Step {
        std::vector<Rational> q;
        Rational lambda;
        std::vector<AgentId> frozen;
    };
    const std::vector<Step> want = {
        {{Rational(-9), Rational(3), Rational(3), Rational(3)}, Rational(3), {1}},
        {{Rational(-9), Rational(1), Rational(4), Rational(4)}, Rational(4), {1, 2}},
        {{Rational(-9), Rational(1), Rational(7, 2), Rational(9, 2)}, Rational(9, 2), {1, 2, 3}},
    };
    expect(r, tr.steps.size() == 4, "trace covers steps 0..3");
    for (size_t t = 1; t < tr.steps.size() && t <= want.size(); ++t) {
        const Step& w = want[t - 1];
        expect_amounts(r, "q^" + std::to_string(t), tr.steps[t].net_trades, w.q);
        expect(r, tr.steps[t].lambda && *tr.steps[t].lambda == w.lambda,
               "lambda^" + std::to_string(t) + " = " + w.lambda.str());
        expect(r, tr.steps[t].frozen == w.frozen,
               "frozen set at step " + std::to_string(t) + " has " +
                   std::to_string(w.frozen.size()) + " agents");
    }
    const StepConditionReport cond = check_step_conditions(tr);
    expect(r, cond.pass && cond.stationary && *cond.stationary,
           "step conditions and stationarity");
}

void replay_2(ReplayReport* r) {
    const Economy e = example_economy("2");
    const RuleId uniform = RuleId::parse("uniform");
    const Allocation x = apply_rule(uniform, e);
    expect_amounts(r, "uniform allocation", x.amounts(), rationals({3, 0, 2}));
    const auto w = find_splitting(uniform, e, {Rational(4)}, {Rational(1)});
    expect(r, w.has_value(), "splitting search finds a witness");
    if (!w) return;
    expect(r, w->agents.size() == 2 && w->agents[0] == 1 && w->agents[1] == 4,
           "host 1 splits off guest 4");
    const std::string* combined = w->get("combined");
    expect(r, combined && *combined == Rational(10, 3).str(),
           "host pockets 10/3 against 3");
    expect(r, w->after && w->after->amounts() ==
                              std::vector<Rational>{Rational(5, 3), Rational(0), Rational(5, 3),
                                                    Rational(5, 3)},
           "split economy allocation (5/3, 0, 5/3, 5/3)");
}

void replay_3(ReplayReport* r) {
    const Economy e = example_economy("3");
    const RuleId priority = RuleId::parse("priority");
    const Allocation x = apply_rule(priority, e);
    expect_amounts(r, "priority allocation", x.amounts(), rationals({0, 6, 2}));
    const auto w = find_splitting(priority, e, {Rational(4)}, {Rational(1)});
    expect(r, w.has_value(), "splitting search finds a witness");
    if (!w) return;
    expect(r, w->agents.size() == 2 && w->agents[0] == 4 && w->agents[1] == 2,
           "host 4 splits off guest 2");
    expect(r, w->after && w->after->amounts() == rationals({0, 4, 3, 1}),
           "split economy allocation (0, 4, 3, 1)");
    const std::string* combined = w->get("combined");
    expect(r, combined && *combined == "5", "host pockets 5 against 2");
    expect(r, strictly_prefers(e.pref(4), Rational(5), Rational(2)),
           "5 strictly preferred to 2 by the host");
}

void replay_4(ReplayReport* r) {
    const Economy e = example_economy("4");
    const RuleId uniform = RuleId::parse("uniform");
    const Allocation x = apply_rule(uniform, e);
    expect_amounts(r, "uniform allocation", x.amounts(), rationals({1, 3, 3, 1}));
    const auto strict = find_withdrawal(uniform, e, ImprovementMode::Strict);
    expect(r, !strict.has_value(), "strict withdrawal search returns none");
    const auto weak = find_withdrawal_pair(uniform, e, 2, 4, ImprovementMode::Weak);
    expect(r, weak.has_value(), "weak withdrawal works for the pair (2, 4)");
    if (!weak) return;
    const std::string* si = weak->get("share_i");
    const std::string* sj = weak->get("share_j");
    const std::string* total = weak->get("total");
    expect(r, si && *si == "4" && sj && *sj == "1", "pair splits as x_2 = 4, x_4 = 1");
    expect(r, total && *total == "5", "split total 5");
}

void replay_B1(ReplayReport* r) {
    const Economy e = example_economy("B1");
    const RuleId phi_star = RuleId::parse("phi-star");
    const Allocation x = apply_rule(phi_star, e);
    expect_amounts(r, "phi-star allocation", x.amounts(), rationals({1, 4, 9}));

    Preference heavy = e.pref(1);
    heavy.left_weight = Rational(14);
    const Allocation y = apply_rule(phi_star, e.with_preference(1, heavy));
    expect_amounts(r, "allocation after reweighting agent 1", y.amounts(), rationals({1, 5, 8}));

    Preference misreport = e.pref(2);
    misreport.peak = Rational(11, 2);
    const Allocation z = apply_rule(phi_star, e.with_preference(2, misreport));
    expect_amounts(r, "allocation after agent 2 reports peak 11/2", z.amounts(),
                   {Rational(1), Rational(11, 2), Rational(15, 2)});
    expect(r, strictly_prefers(e.pref(2), z.at(2), x.at(2)),
           "11/2 strictly preferred to 4 under agent 2's true preference");
}

}  // namespace

ReplayReport replay_example(const std::string& name) {
    ReplayReport r;
    r.name = name;
    if (name == "1") replay_1(&r);
    else if (name == "2") replay_2(&r);
    else if (name == "3") replay_3(&r);
    else if (name == "4") replay_4(&r);
    else if (name == "B1") replay_B1(&r);
    else throw ValidationError("unknown example '" + name + "'; have 1, 2, 3, 4, B1");
    return r;
}

}  // namespace reallot
