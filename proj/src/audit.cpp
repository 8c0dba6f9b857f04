#include "reallot/audit.hpp"

#include <algorithm>
#include <utility>

#include "reallot/econ_format.hpp"
#include "reallot/errors.hpp"
#include "reallot/preference.hpp"

namespace reallot {

namespace {

constexpr std::pair<long, long> kWeightPairs[] = {{1, 1}, {2, 1}, {1, 2}, {14, 1}, {1, 14}};

bool has_weights(const Preference& p, long l, long r) {
    return p.left_weight == Rational(l) && p.right_weight == Rational(r);
}

}  // namespace

std::vector<WeightFlip> default_weight_flips(const Economy& e) {
    std::vector<WeightFlip> flips;
    for (int k = 0; k < e.size(); ++k) {
        for (const auto& [l, r] : kWeightPairs) {
            if (has_weights(e.pref_at(k), l, r)) continue;
            flips.push_back({e.id_at(k), Rational(l), Rational(r)});
        }
    }
    return flips;
}

std::vector<std::vector<WeightFlip>> default_flip_sets(const Economy& e) {
    std::vector<std::vector<WeightFlip>> sets;
    for (const WeightFlip& f : default_weight_flips(e)) sets.push_back({f});
    // Joint sets: push everyone to one common pair (agents already there are
    // left out of the set).
    for (const auto& [l, r] : kWeightPairs) {
        std::vector<WeightFlip> set;
        for (int k = 0; k < e.size(); ++k) {
            if (has_weights(e.pref_at(k), l, r)) continue;
            set.push_back({e.id_at(k), Rational(l), Rational(r)});
        }
        if (set.size() > 1) sets.push_back(std::move(set));
    }
    return sets;
}

std::vector<Misreport> default_misreports(const Economy& e) {
    constexpr std::pair<long, long> kReportWeights[] = {{1, 1}, {2, 1}, {1, 2}, {14, 1}};
    const Rational total = e.total_endowment();
    std::vector<Rational> peaks;
    for (int g = 0; g < 16; ++g) {
        const Rational peak = total * Rational(g, 16);
        if (std::find(peaks.begin(), peaks.end(), peak) == peaks.end()) peaks.push_back(peak);
    }
    std::vector<Misreport> out;
    for (int k = 0; k < e.size(); ++k) {
        for (const Rational& peak : peaks) {
            for (const auto& [l, r] : kReportWeights) {
                const Preference reported{peak, Rational(l), Rational(r)};
                if (reported == e.pref_at(k)) continue;
                out.push_back({e.id_at(k), reported});
            }
        }
    }
    return out;
}

std::vector<std::vector<Rational>> default_endowment_raises(const Economy& e) {
    std::vector<std::vector<Rational>> raises;
    const std::vector<Rational>& base = e.endowments();
    auto add_single = [&](int k, const Rational& target) {
        if (target <= base[k]) return;
        std::vector<Rational> v = base;
        v[k] = target;
        raises.push_back(std::move(v));
    };
    for (int k = 0; k < e.size(); ++k) {
        add_single(k, e.pref_at(k).peak);
        add_single(k, base[k] + 1);
        const Rational gap = e.pref_at(k).peak - base[k];
        if (gap <= 0) continue;
        // Raising k until their remaining demand matches another demander's
        // merges otherwise-separated rationing classes; those boundaries are
        // where monotonicity failures live.
        for (int l = 0; l < e.size(); ++l) {
            if (l == k) continue;
            const Rational other = e.pref_at(l).peak - e.endowment_at(l);
            if (other <= 0 || other >= gap) continue;
            add_single(k, e.pref_at(k).peak - other);
        }
    }
    std::vector<Rational> everyone = base;
    for (Rational& v : everyone) v += 1;
    raises.push_back(std::move(everyone));
    std::sort(raises.begin(), raises.end(),
              [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
                  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
              });
    raises.erase(std::unique(raises.begin(), raises.end()), raises.end());
    return raises;
}

namespace {

void ensure_axiom(const std::string& axiom) {
    const auto& names = axiom_catalog();
    if (std::find(names.begin(), names.end(), axiom) != names.end()) return;
    std::string all;
    for (const auto& n : names) {
        if (!all.empty()) all += ", ";
        all += n;
    }
    throw ValidationError("unknown axiom '" + axiom + "'; have " + all);
}

void merge(AuditOutcome* out, CheckResult res) {
    out->comparisons += res.comparisons;
    if (res.status == CheckResult::Status::Inapplicable) ++out->inapplicable;
    else if (res.status == CheckResult::Status::Violation && !out->witness)
        out->witness = std::move(res.witness);
}

void check_one_axiom(const RuleFn& fn, const std::string& label, const std::string& axiom,
                     const Economy& e, AuditOutcome* out) {
    if (axiom == "efficiency") merge(out, check_efficiency(fn, label, e));
    else if (axiom == "elb") merge(out, check_endowments_lower_bound(fn, label, e));
    else if (axiom == "satiation") merge(out, check_satiation(fn, label, e));
    else if (axiom == "envy-free") merge(out, check_envy_free_net_trades(fn, label, e));
    else if (axiom == "own-peak-only") {
        const std::vector<WeightFlip> flips = default_weight_flips(e);
        merge(out, check_own_peak_only(fn, label, e, flips));
    } else if (axiom == "peak-only") {
        const std::vector<std::vector<WeightFlip>> sets = default_flip_sets(e);
        merge(out, check_peak_only(fn, label, e, sets));
    } else if (axiom == "strategy-proofness") {
        const std::vector<Misreport> reports = default_misreports(e);
        merge(out, check_strategy_proofness(fn, label, e, reports));
    } else if (axiom == "non-bossiness") {
        const std::vector<Misreport> reports = default_misreports(e);
        merge(out, check_non_bossiness(fn, label, e, reports));
    } else if (axiom == "endow-mono") {
        for (const std::vector<Rational>& raise : default_endowment_raises(e)) {
            merge(out, check_endowment_monotonicity(fn, label, e, raise));
            if (out->witness) return;
        }
    } else {
        merge(out, check_population_monotonicity(fn, label, e));
    }
}

}  // namespace

AuditOutcome audit_axiom(const RuleId& rule, const std::string& axiom, const AuditConfig& config) {
    ensure_axiom(axiom);
    AuditOutcome out;
    out.rule = rule.str();
    out.property = axiom;
    const RuleFn fn = rule_fn(rule);
    for (long t = 0; t < config.trials && !out.witness; ++t) {
        const Economy e =
            generate_economy(config.generator, config.seed + static_cast<std::uint64_t>(t));
        ++out.economies;
        try {
            check_one_axiom(fn, out.rule, axiom, e, &out);
        } catch (const ZeroEndowmentError&) {
            ++out.skipped;
        }
    }
    return out;
}

std::vector<AuditOutcome> audit_axioms(const RuleId& rule, const std::vector<std::string>& axioms,
                                       const AuditConfig& config) {
    std::vector<AuditOutcome> out;
    out.reserve(axioms.size());
    for (const std::string& axiom : axioms) out.push_back(audit_axiom(rule, axiom, config));
    return out;
}

AuditOutcome audit_manipulation(const RuleId& rule, const std::string& kind,
                                const AuditConfig& config, ImprovementMode mode) {
    if (kind != "withdrawal" && kind != "merging" && kind != "splitting" &&
        kind != "predelivery")
        throw ValidationError("unknown manipulation '" + kind +
                              "'; have withdrawal, merging, splitting, predelivery");
    AuditOutcome out;
    out.rule = rule.str();
    out.property = kind;
    for (long t = 0; t < config.trials && !out.witness; ++t) {
        const Economy e =
            generate_economy(config.generator, config.seed + static_cast<std::uint64_t>(t));
        ++out.economies;
        try {
            if (kind == "withdrawal") out.witness = find_withdrawal(rule, e, mode);
            else if (kind == "merging") out.witness = find_merging(rule, e, mode);
            else if (kind == "splitting")
                out.witness = find_splitting(rule, e, default_guest_peaks(e),
                                             default_split_points(e));
            else out.witness = find_predelivery(rule, e);
        } catch (const ZeroEndowmentError&) {
            ++out.skipped;
        }
    }
    return out;
}

namespace {

bool same_ids(const Economy& a, const Economy& b) {
    return a.ids() == b.ids();
}

bool same_endowments(const Economy& a, const Economy& b) {
    return same_ids(a, b) && a.endowments() == b.endowments();
}

bool prefs_differ_only_at(const Economy& a, const Economy& b, const std::vector<AgentId>& allowed) {
    if (!same_ids(a, b)) return false;
    for (int k = 0; k < a.size(); ++k) {
        if (a.pref_at(k) == b.pref_at(k)) continue;
        if (std::find(allowed.begin(), allowed.end(), a.id_at(k)) == allowed.end()) return false;
    }
    return true;
}

bool peaks_all_match(const Economy& a, const Economy& b) {
    if (!same_ids(a, b)) return false;
    for (int k = 0; k < a.size(); ++k)
        if (a.pref_at(k).peak != b.pref_at(k).peak) return false;
    return true;
}

std::optional<Rational> data_rational(const Witness& w, const std::string& key) {
    const std::string* s = w.get(key);
    if (!s) return std::nullopt;
    return Rational::parse(*s);
}

bool matches_stored(const std::optional<Allocation>& stored, const Allocation& fresh) {
    return !stored || *stored == fresh;
}

// Both share a split of `total` taken against their allocations in x; the
// stored shares must realize the stored mode.
bool replay_pair_split(const Witness& w, const Economy& e, const Allocation& x,
                       const Rational& total) {
    if (w.agents.size() != 2) return false;
    const AgentId i = w.agents[0];
    const AgentId j = w.agents[1];
    const std::optional<Rational> si = data_rational(w, "share_i");
    const std::optional<Rational> sj = data_rational(w, "share_j");
    if (!si || !sj || *si < 0 || *sj < 0 || *si + *sj != total) return false;
    const std::optional<Rational> stored_total = data_rational(w, "total");
    if (stored_total && *stored_total != total) return false;
    const bool strict_i = strictly_prefers(e.pref(i), *si, x.at(i));
    const bool strict_j = strictly_prefers(e.pref(j), *sj, x.at(j));
    const std::string* mode = w.get("mode");
    if (mode && *mode == "weak") {
        const bool weak_i = weakly_prefers(e.pref(i), *si, x.at(i));
        const bool weak_j = weakly_prefers(e.pref(j), *sj, x.at(j));
        return weak_i && weak_j && (strict_i || strict_j);
    }
    return strict_i && strict_j;
}

bool replay_dispatch(const Witness& w) {
    const RuleId rule = RuleId::parse(w.rule);
    const Economy& e = w.economy;
    if (e.size() == 0) return false;

    if (w.kind == "efficiency" || w.kind == "elb" || w.kind == "satiation") {
        if (w.agents.size() != 1 || !e.has_agent(w.agents[0])) return false;
        const AgentId i = w.agents[0];
        const Allocation x = apply_rule(rule, e);
        if (!matches_stored(w.before, x)) return false;
        const bool demand = e.excess_demand();
        const Rational& peak = e.pref(i).peak;
        if (w.kind == "efficiency") return demand ? x.at(i) > peak : x.at(i) < peak;
        if (w.kind == "elb") return strictly_prefers(e.pref(i), e.endowment(i), x.at(i));
        const bool covered = demand ? peak <= e.endowment(i) : peak >= e.endowment(i);
        return covered && x.at(i) != peak;
    }

    if (w.kind == "envy-free") {
        if (w.agents.size() != 2) return false;
        const AgentId i = w.agents[0];
        const AgentId j = w.agents[1];
        if (!e.has_agent(i) || !e.has_agent(j)) return false;
        const Allocation x = apply_rule(rule, e);
        if (!matches_stored(w.before, x)) return false;
        const Rational swapped = e.endowment(i) + x.at(j) - e.endowment(j);
        return swapped >= 0 && strictly_prefers(e.pref(i), swapped, x.at(i));
    }

    if (w.kind == "own-peak-only" || w.kind == "peak-only") {
        if (!w.variant || !peaks_all_match(e, *w.variant) || !same_endowments(e, *w.variant))
            return false;
        const Allocation x = apply_rule(rule, e);
        const Allocation y = apply_rule(rule, *w.variant);
        if (!matches_stored(w.before, x) || !matches_stored(w.after, y)) return false;
        if (w.kind == "peak-only") return !(y == x);
        if (w.agents.size() != 1 || !e.has_agent(w.agents[0])) return false;
        return y.at(w.agents[0]) != x.at(w.agents[0]);
    }

    if (w.kind == "strategy-proofness" || w.kind == "non-bossiness") {
        if (!w.variant || w.agents.empty()) return false;
        const AgentId i = w.agents[0];
        if (!e.has_agent(i)) return false;
        if (!prefs_differ_only_at(e, *w.variant, {i}) || !same_endowments(e, *w.variant))
            return false;
        const Allocation x = apply_rule(rule, e);
        const Allocation y = apply_rule(rule, *w.variant);
        if (!matches_stored(w.before, x) || !matches_stored(w.after, y)) return false;
        if (w.kind == "strategy-proofness")
            return strictly_prefers(e.pref(i), y.at(i), x.at(i));
        return y.at(i) == x.at(i) && !(y == x);
    }

    if (w.kind == "endow-mono") {
        if (!w.variant || w.agents.size() != 1) return false;
        const AgentId i = w.agents[0];
        if (!e.has_agent(i) || !prefs_differ_only_at(e, *w.variant, {})) return false;
        for (int k = 0; k < e.size(); ++k)
            if (w.variant->endowment_at(k) < e.endowment_at(k)) return false;
        const Allocation xb = apply_rule(rule, e);
        const Allocation xr = apply_rule(rule, *w.variant);
        if (!matches_stored(w.before, xb) || !matches_stored(w.after, xr)) return false;
        const bool raised_demand = w.variant->excess() >= 0;
        const bool base_supply = e.excess() <= 0;
        return (raised_demand && strictly_prefers(e.pref(i), xb.at(i), xr.at(i))) ||
               (base_supply && strictly_prefers(e.pref(i), xr.at(i), xb.at(i)));
    }

    if (w.kind == "pop-mono") {
        if (!w.variant || w.agents.size() != 2) return false;
        const Economy& sub = *w.variant;
        if (sub.size() >= e.size() || !(e.restrict(sub.ids()) == sub)) return false;
        const Rational ze = e.excess();
        const Rational zs = sub.excess();
        if (!((ze >= 0 && zs >= 0) || (ze <= 0 && zs <= 0))) return false;
        const AgentId improved = w.agents[0];
        const AgentId worsened = w.agents[1];
        if (!sub.has_agent(improved) || !sub.has_agent(worsened)) return false;
        const Allocation x = apply_rule(rule, e);
        const Allocation y = apply_rule(rule, sub);
        if (!matches_stored(w.before, x) || !matches_stored(w.after, y)) return false;
        return strictly_prefers(e.pref(improved), y.at(improved), x.at(improved)) &&
               strictly_prefers(e.pref(worsened), x.at(worsened), y.at(worsened));
    }

    if (w.kind == "withdrawal" || w.kind == "merging") {
        if (!w.variant || w.agents.size() != 2) return false;
        const AgentId i = w.agents[0];
        const AgentId j = w.agents[1];
        if (!e.has_agent(i) || !e.has_agent(j) || i == j || e.size() < 2) return false;
        const Economy expected =
            w.kind == "withdrawal"
                ? e.without(j)
                : e.without(j).with_endowment(i, e.endowment(i) + e.endowment(j));
        if (!(expected == *w.variant)) return false;
        const Allocation x = apply_rule(rule, e);
        const Allocation y = apply_rule(rule, *w.variant);
        if (!matches_stored(w.before, x) || !matches_stored(w.after, y)) return false;
        const Rational total = w.kind == "withdrawal" ? y.at(i) + e.endowment(j) : y.at(i);
        return replay_pair_split(w, e, x, total);
    }

    if (w.kind == "splitting") {
        if (!w.variant || w.agents.size() != 2) return false;
        const AgentId host = w.agents[0];
        const AgentId guest = w.agents[1];
        if (!e.has_agent(host) || e.has_agent(guest)) return false;
        const std::optional<Rational> split = data_rational(w, "split");
        const std::optional<Rational> guest_peak = data_rational(w, "guest_peak");
        if (!split || !guest_peak || *split < 0 || *split > e.endowment(host) || *guest_peak < 0)
            return false;
        const Economy expected = e.with_endowment(host, *split)
                                     .with_agent(guest, Preference{*guest_peak},
                                                 e.endowment(host) - *split);
        if (!(expected == *w.variant)) return false;
        const Allocation x = apply_rule(rule, e);
        const Allocation y = apply_rule(rule, *w.variant);
        if (!matches_stored(w.before, x) || !matches_stored(w.after, y)) return false;
        const Rational combined = y.at(host) + y.at(guest);
        const std::optional<Rational> stored = data_rational(w, "combined");
        if (stored && *stored != combined) return false;
        return strictly_prefers(e.pref(host), combined, x.at(host));
    }

    if (w.kind == "predelivery") {
        if (!w.variant || w.agents.size() != 2) return false;
        const AgentId i = w.agents[0];
        const AgentId j = w.agents[1];
        if (!e.has_agent(i) || !e.has_agent(j) || i == j || e.size() < 2) return false;
        const Allocation x = apply_rule(rule, e);
        if (!matches_stored(w.before, x)) return false;
        const Rational new_endowment = e.endowment(i) + e.endowment(j) - x.at(j);
        if (new_endowment < 0) return false;
        const Economy expected = e.without(j).with_endowment(i, new_endowment);
        if (!(expected == *w.variant)) return false;
        const Allocation y = apply_rule(rule, *w.variant);
        if (!matches_stored(w.after, y)) return false;
        return strictly_prefers(e.pref(i), y.at(i), x.at(i));
    }

    return false;
}

}  // namespace

bool replay_witness(const Witness& w) {
    try {
        return replay_dispatch(w);
    } catch (const Error&) {
        return false;
    }
}

namespace {

std::optional<WeightFlip> parse_flip(const std::string& text) {
    const size_t a = text.find(':');
    if (a == std::string::npos) return std::nullopt;
    const size_t b = text.find(':', a + 1);
    if (b == std::string::npos) return std::nullopt;
    WeightFlip flip;
    try {
        flip.agent = std::stoi(text.substr(0, a));
    } catch (const std::exception&) {
        return std::nullopt;
    }
    const std::optional<Rational> left = Rational::parse(text.substr(a + 1, b - a - 1));
    const std::optional<Rational> right = Rational::parse(text.substr(b + 1));
    if (!left || !right) return std::nullopt;
    flip.left = *left;
    flip.right = *right;
    return flip;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find(sep, start);
        if (end == std::string::npos) end = text.size();
        if (end > start) out.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

std::vector<WeightFlip> stored_flips(const Witness& w, const Economy& e) {
    std::vector<WeightFlip> flips;
    const std::string* text = w.get("flips");
    if (!text) return flips;
    for (const std::string& part : split_list(*text, ';')) {
        const std::optional<WeightFlip> flip = parse_flip(part);
        if (flip && e.has_agent(flip->agent)) flips.push_back(*flip);
    }
    return flips;
}

std::optional<Misreport> stored_misreport(const Witness& w, const Economy& e) {
    const std::string* agent = w.get("agent");
    const std::string* peak = w.get("reported_peak");
    if (!agent || !peak) return std::nullopt;
    Misreport m;
    try {
        m.agent = std::stoi(*agent);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (!e.has_agent(m.agent)) return std::nullopt;
    const std::optional<Rational> p = Rational::parse(*peak);
    if (!p) return std::nullopt;
    m.reported.peak = *p;
    if (const std::string* l = w.get("reported_left")) {
        const std::optional<Rational> v = Rational::parse(*l);
        if (!v) return std::nullopt;
        m.reported.left_weight = *v;
    }
    if (const std::string* r = w.get("reported_right")) {
        const std::optional<Rational> v = Rational::parse(*r);
        if (!v) return std::nullopt;
        m.reported.right_weight = *v;
    }
    return m;
}

std::optional<Witness> lift(CheckResult res) {
    if (res.status == CheckResult::Status::Violation) return std::move(res.witness);
    return std::nullopt;
}

std::optional<Witness> recheck_dispatch(const Witness& w) {
    const RuleId rule = RuleId::parse(w.rule);
    const Economy& e = w.economy;
    if (e.size() == 0) return std::nullopt;
    const RuleFn fn = rule_fn(rule);

    if (w.kind == "efficiency") return lift(check_efficiency(fn, w.rule, e));
    if (w.kind == "elb") return lift(check_endowments_lower_bound(fn, w.rule, e));
    if (w.kind == "satiation") return lift(check_satiation(fn, w.rule, e));
    if (w.kind == "envy-free") return lift(check_envy_free_net_trades(fn, w.rule, e));

    if (w.kind == "own-peak-only" || w.kind == "peak-only") {
        const std::vector<WeightFlip> flips = stored_flips(w, e);
        if (flips.empty()) return std::nullopt;
        if (w.kind == "own-peak-only") return lift(check_own_peak_only(fn, w.rule, e, flips));
        const std::vector<std::vector<WeightFlip>> sets = {flips};
        return lift(check_peak_only(fn, w.rule, e, sets));
    }

    if (w.kind == "strategy-proofness" || w.kind == "non-bossiness") {
        const std::optional<Misreport> m = stored_misreport(w, e);
        if (!m) return std::nullopt;
        const std::vector<Misreport> battery = {*m};
        if (w.kind == "strategy-proofness")
            return lift(check_strategy_proofness(fn, w.rule, e, battery));
        return lift(check_non_bossiness(fn, w.rule, e, battery));
    }

    if (w.kind == "endow-mono") {
        std::vector<Rational> raised = e.endowments();
        bool any = false;
        if (const std::string* deltas = w.get("deltas")) {
            for (const std::string& part : split_list(*deltas, ';')) {
                const size_t colon = part.find(':');
                if (colon == std::string::npos) continue;
                AgentId id = 0;
                try {
                    id = std::stoi(part.substr(0, colon));
                } catch (const std::exception&) {
                    continue;
                }
                const std::optional<Rational> d = Rational::parse(part.substr(colon + 1));
                const int k = e.index_of(id);
                if (!d || k < 0 || *d <= 0) continue;
                raised[k] += *d;
                any = true;
            }
        }
        if (any) {
            if (auto hit = lift(check_endowment_monotonicity(fn, w.rule, e, raised))) return hit;
        }
        // The stored raise may have lost its bite after the economy changed;
        // fall back to the full default battery.
        for (const std::vector<Rational>& raise : default_endowment_raises(e))
            if (auto hit = lift(check_endowment_monotonicity(fn, w.rule, e, raise))) return hit;
        return std::nullopt;
    }

    if (w.kind == "pop-mono") return lift(check_population_monotonicity(fn, w.rule, e));

    if (w.kind == "withdrawal" || w.kind == "merging") {
        if (w.agents.size() != 2) return std::nullopt;
        const AgentId i = w.agents[0];
        const AgentId j = w.agents[1];
        if (!e.has_agent(i) || !e.has_agent(j) || i == j || e.size() < 2) return std::nullopt;
        const std::string* mode_text = w.get("mode");
        const ImprovementMode mode = mode_text && *mode_text == "weak" ? ImprovementMode::Weak
                                                                      : ImprovementMode::Strict;
        if (w.kind == "withdrawal") return find_withdrawal_pair(rule, e, i, j, mode);
        return find_merging_pair(rule, e, i, j, mode);
    }

    if (w.kind == "splitting") {
        const std::optional<Rational> split = data_rational(w, "split");
        const std::optional<Rational> guest_peak = data_rational(w, "guest_peak");
        if (!split || !guest_peak) return std::nullopt;
        return find_splitting(rule, e, {*guest_peak}, {*split});
    }

    if (w.kind == "predelivery") {
        if (e.size() < 2) return std::nullopt;
        return find_predelivery(rule, e);
    }

    return std::nullopt;
}

}  // namespace

std::optional<Witness> recheck_witness(const Witness& w) {
    try {
        return recheck_dispatch(w);
    } catch (const ZeroEndowmentError&) {
        return std::nullopt;
    }
}

namespace {

std::string alloc_line(const Allocation& x) {
    std::string out;
    for (int k = 0; k < x.size(); ++k) {
        if (k) out += " ";
        out += std::to_string(x.ids()[k]) + "=" + x.at_index(k).str();
    }
    return out;
}

}  // namespace

std::string serialize_witness(const Witness& w) {
    std::string out = "WITNESS " + w.kind + " rule=" + w.rule;
    if (!w.agents.empty()) {
        out += " agents=";
        for (size_t k = 0; k < w.agents.size(); ++k) {
            if (k) out += ",";
            out += std::to_string(w.agents[k]);
        }
    }
    out += "\n";
    for (const auto& [key, value] : w.data) out += "data " + key + "=" + value + "\n";
    if (!w.comparison.empty()) out += "note " + w.comparison + "\n";
    if (w.before) out += "before " + alloc_line(*w.before) + "\n";
    if (w.after) out += "after " + alloc_line(*w.after) + "\n";
    out += "economy\n" + serialize_economy(w.economy);
    if (w.variant) out += "variant\n" + serialize_economy(*w.variant);
    out += "end\n";
    return out;
}

}  // namespace reallot
