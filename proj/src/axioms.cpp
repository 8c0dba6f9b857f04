#include "reallot/axioms.hpp"

#include <algorithm>

#include "reallot/errors.hpp"

namespace reallot {

void Witness::set(const std::string& key, const std::string& value) {
    for (auto& kv : data) {
        if (kv.first == key) {
            kv.second = value;
            return;
        }
    }
    data.emplace_back(key, value);
}

const std::string* Witness::get(const std::string& key) const {
    for (const auto& kv : data)
        if (kv.first == key) return &kv.second;
    return nullptr;
}

const std::vector<std::string>& axiom_catalog() {
    static const std::vector<std::string> names = {
        "efficiency",     "elb",           "own-peak-only", "peak-only",
        "strategy-proofness", "non-bossiness", "endow-mono",    "pop-mono",
        "satiation",      "envy-free",
    };
    return names;
}

RuleFn rule_fn(const RuleId& rule) {
    return [rule](const Economy& e) { return apply_rule(rule, e); };
}

namespace {

Witness base_witness(std::string kind, const std::string& rule_label, const Economy& e) {
    Witness w;
    w.kind = std::move(kind);
    w.rule = rule_label;
    w.economy = e;
    return w;
}

std::string id_str(AgentId id) {
    return std::to_string(id);
}

}  // namespace

CheckResult check_efficiency(const RuleFn& rule, const std::string& rule_label, const Economy& e) {
    CheckResult out;
    const Allocation x = rule(e);
    const bool demand = e.excess_demand();
    for (int k = 0; k < e.size(); ++k) {
        ++out.comparisons;
        const bool beyond = demand ? x.at_index(k) > e.pref_at(k).peak
                                   : x.at_index(k) < e.pref_at(k).peak;
        if (!beyond) continue;
        Witness w = base_witness("efficiency", rule_label, e);
        w.agents = {e.id_at(k)};
        w.before = x;
        w.comparison = "agent " + id_str(e.id_at(k)) + " holds " + x.at_index(k).str() +
                       (demand ? " above" : " below") + " peak " + e.pref_at(k).peak.str() +
                       " under excess " + (demand ? "demand" : "supply");
        out.status = CheckResult::Status::Violation;
        out.witness = std::move(w);
        return out;
    }
    return out;
}

CheckResult check_endowments_lower_bound(const RuleFn& rule, const std::string& rule_label,
                                         const Economy& e) {
    CheckResult out;
    const Allocation x = rule(e);
    for (int k = 0; k < e.size(); ++k) {
        ++out.comparisons;
        if (!strictly_prefers(e.pref_at(k), e.endowment_at(k), x.at_index(k))) continue;
        Witness w = base_witness("elb", rule_label, e);
        w.agents = {e.id_at(k)};
        w.before = x;
        w.comparison = "agent " + id_str(e.id_at(k)) + " strictly prefers endowment " +
                       e.endowment_at(k).str() + " to allocation " + x.at_index(k).str();
        out.status = CheckResult::Status::Violation;
        out.witness = std::move(w);
        return out;
    }
    return out;
}

CheckResult check_satiation(const RuleFn& rule, const std::string& rule_label, const Economy& e) {
    CheckResult out;
    const Allocation x = rule(e);
    const bool demand = e.excess_demand();
    for (int k = 0; k < e.size(); ++k) {
        const bool covered = demand ? e.pref_at(k).peak <= e.endowment_at(k)
                                    : e.pref_at(k).peak >= e.endowment_at(k);
        if (!covered) continue;
        ++out.comparisons;
        if (x.at_index(k) == e.pref_at(k).peak) continue;
        Witness w = base_witness("satiation", rule_label, e);
        w.agents = {e.id_at(k)};
        w.before = x;
        w.comparison = "agent " + id_str(e.id_at(k)) + " can be satiated but holds " +
                       x.at_index(k).str() + " instead of peak " + e.pref_at(k).peak.str();
        out.status = CheckResult::Status::Violation;
        out.witness = std::move(w);
        return out;
    }
    return out;
}

CheckResult check_envy_free_net_trades(const RuleFn& rule, const std::string& rule_label,
                                       const Economy& e) {
    CheckResult out;
    const Allocation x = rule(e);
    for (int i = 0; i < e.size(); ++i) {
        for (int j = 0; j < e.size(); ++j) {
            if (i == j) continue;
            const Rational swapped = e.endowment_at(i) + x.at_index(j) - e.endowment_at(j);
            if (swapped < 0) continue;
            ++out.comparisons;
            if (!strictly_prefers(e.pref_at(i), swapped, x.at_index(i))) continue;
            Witness w = base_witness("envy-free", rule_label, e);
            w.agents = {e.id_at(i), e.id_at(j)};
            w.before = x;
            w.comparison = "agent " + id_str(e.id_at(i)) + " strictly prefers agent " +
                           id_str(e.id_at(j)) + "'s net trade (" + swapped.str() + ") to own " +
                           x.at_index(i).str();
            out.status = CheckResult::Status::Violation;
            out.witness = std::move(w);
            return out;
        }
    }
    return out;
}

namespace {

Preference flipped_pref(const Economy& e, const WeightFlip& flip) {
    if (!e.has_agent(flip.agent))
        throw InvalidPerturbationError("weight flip names agent " + id_str(flip.agent) +
                                       " outside the economy");
    if (flip.left <= 0 || flip.right <= 0)
        throw InvalidPerturbationError("weight flip with nonpositive weight");
    Preference p = e.pref(flip.agent);
    p.left_weight = flip.left;
    p.right_weight = flip.right;
    return p;
}

std::string flip_str(const WeightFlip& flip) {
    return id_str(flip.agent) + ":" + flip.left.str() + ":" + flip.right.str();
}

}  // namespace

CheckResult check_own_peak_only(const RuleFn& rule, const std::string& rule_label,
                                const Economy& e, std::span<const WeightFlip> flips) {
    CheckResult out;
    const Allocation x = rule(e);
    for (const WeightFlip& flip : flips) {
        const Economy variant = e.with_preference(flip.agent, flipped_pref(e, flip));
        const Allocation y = rule(variant);
        ++out.comparisons;
        if (y.at(flip.agent) == x.at(flip.agent)) continue;
        Witness w = base_witness("own-peak-only", rule_label, e);
        w.variant = variant;
        w.agents = {flip.agent};
        w.before = x;
        w.after = y;
        w.set("flips", flip_str(flip));
        w.comparison = "agent " + id_str(flip.agent) + "'s amount moved " +
                       x.at(flip.agent).str() + " -> " + y.at(flip.agent).str() +
                       " under a weights-only change";
        out.status = CheckResult::Status::Violation;
        out.witness = std::move(w);
        return out;
    }
    return out;
}

CheckResult check_peak_only(const RuleFn& rule, const std::string& rule_label, const Economy& e,
                            std::span<const std::vector<WeightFlip>> flip_sets) {
    CheckResult out;
    const Allocation x = rule(e);
    for (const std::vector<WeightFlip>& set : flip_sets) {
        Economy variant = e;
        std::string serialized;
        std::vector<AgentId> touched;
        for (const WeightFlip& flip : set) {
            variant = variant.with_preference(flip.agent, flipped_pref(variant, flip));
            if (!serialized.empty()) serialized += ";";
            serialized += flip_str(flip);
            touched.push_back(flip.agent);
        }
        const Allocation y = rule(variant);
        ++out.comparisons;
        if (y == x) continue;
        Witness w = base_witness("peak-only", rule_label, e);
        w.variant = variant;
        w.agents = touched;
        w.before = x;
        w.after = y;
        w.set("flips", serialized);
        for (int k = 0; k < e.size(); ++k) {
            if (y.at_index(k) != x.at_index(k)) {
                w.comparison = "allocation moved at agent " + id_str(e.id_at(k)) + ": " +
                               x.at_index(k).str() + " -> " + y.at_index(k).str() +
                               " though every peak stayed put";
                break;
            }
        }
        out.status = CheckResult::Status::Violation;
        out.witness = std::move(w);
        return out;
    }
    return out;
}

namespace {

void store_misreport(Witness* w, const Misreport& m) {
    w->set("agent", id_str(m.agent));
    w->set("reported_peak", m.reported.peak.str());
    w->set("reported_left", m.reported.left_weight.str());
    w->set("reported_right", m.reported.right_weight.str());
}

}  // namespace

CheckResult check_strategy_proofness(const RuleFn& rule, const std::string& rule_label,
                                     const Economy& e, std::span<const Misreport> misreports) {
    CheckResult out;
    const Allocation x = rule(e);
    for (const Misreport& m : misreports) {
        if (!e.has_agent(m.agent))
            throw InvalidPerturbationError("misreport names agent " + id_str(m.agent) +
                                           " outside the economy");
        const Economy variant = e.with_preference(m.agent, m.reported);
        const Allocation y = rule(variant);
        ++out.comparisons;
        if (!strictly_prefers(e.pref(m.agent), y.at(m.agent), x.at(m.agent))) continue;
        Witness w = base_witness("strategy-proofness", rule_label, e);
        w.variant = variant;
        w.agents = {m.agent};
        w.before = x;
        w.after = y;
        store_misreport(&w, m);
        w.comparison = "agent " + id_str(m.agent) + " reports peak " + m.reported.peak.str() +
                       " and improves " + x.at(m.agent).str() + " -> " + y.at(m.agent).str() +
                       " under the true preference";
        out.status = CheckResult::Status::Violation;
        out.witness = std::move(w);
        return out;
    }
    return out;
}

CheckResult check_non_bossiness(const RuleFn& rule, const std::string& rule_label,
                                const Economy& e, std::span<const Misreport> misreports) {
    CheckResult out;
    const Allocation x = rule(e);
    for (const Misreport& m : misreports) {
        if (!e.has_agent(m.agent))
            throw InvalidPerturbationError("misreport names agent " + id_str(m.agent) +
                                           " outside the economy");
        const Economy variant = e.with_preference(m.agent, m.reported);
        const Allocation y = rule(variant);
        ++out.comparisons;
        if (y.at(m.agent) != x.at(m.agent) || y == x) continue;
        AgentId moved = 0;
        for (int k = 0; k < e.size(); ++k) {
            if (y.at_index(k) != x.at_index(k)) {
                moved = e.id_at(k);
                break;
            }
        }
        Witness w = base_witness("non-bossiness", rule_label, e);
        w.variant = variant;
        w.agents = {m.agent, moved};
        w.before = x;
        w.after = y;
        store_misreport(&w, m);
        w.comparison = "agent " + id_str(m.agent) + "'s report moves agent " + id_str(moved) +
                       " (" + x.at(moved).str() + " -> " + y.at(moved).str() +
                       ") while their own amount stays " + x.at(m.agent).str();
        out.status = CheckResult::Status::Violation;
        out.witness = std::move(w);
        return out;
    }
    return out;
}

CheckResult check_endowment_monotonicity(const RuleFn& rule, const std::string& rule_label,
                                         const Economy& e,
                                         const std::vector<Rational>& new_endowments) {
    if (new_endowments.size() != static_cast<size_t>(e.size()))
        throw ValidationError("endowment variant length differs from economy size");
    for (int k = 0; k < e.size(); ++k)
        if (new_endowments[k] < e.endowment_at(k))
            throw ValidationError("endowment variant lowers agent " + id_str(e.id_at(k)));

    CheckResult out;
    const Economy raised = e.with_endowments(new_endowments);
    const bool raised_demand = raised.excess() >= 0;
    const bool base_supply = e.excess() <= 0;
    if (!raised_demand && !base_supply) {
        out.status = CheckResult::Status::Inapplicable;
        return out;
    }
    const Allocation xb = rule(e);
    const Allocation xr = rule(raised);
    auto violation = [&](int k, bool better_at_base) {
        Witness w = base_witness("endow-mono", rule_label, e);
        w.variant = raised;
        w.agents = {e.id_at(k)};
        w.before = xb;
        w.after = xr;
        std::string deltas;
        for (int j = 0; j < e.size(); ++j) {
            const Rational d = new_endowments[j] - e.endowment_at(j);
            if (d == 0) continue;
            if (!deltas.empty()) deltas += ";";
            deltas += id_str(e.id_at(j)) + ":" + d.str();
        }
        w.set("deltas", deltas);
        w.comparison = "agent " + id_str(e.id_at(k)) + " moves " + xb.at_index(k).str() +
                       " -> " + xr.at_index(k).str() + " and is strictly worse " +
                       (better_at_base ? "after the endowment increase"
                                       : "before the endowment increase");
        out.status = CheckResult::Status::Violation;
        out.witness = std::move(w);
    };
    if (raised_demand) {
        // More resources, still excess demand: nobody may lose.
        for (int k = 0; k < e.size(); ++k) {
            ++out.comparisons;
            if (strictly_prefers(e.pref_at(k), xb.at_index(k), xr.at_index(k))) {
                violation(k, true);
                return out;
            }
        }
    }
    if (base_supply) {
        // Already excess supply: extra resources may not help anyone.
        for (int k = 0; k < e.size(); ++k) {
            ++out.comparisons;
            if (strictly_prefers(e.pref_at(k), xr.at_index(k), xb.at_index(k))) {
                violation(k, false);
                return out;
            }
        }
    }
    return out;
}

CheckResult check_population_monotonicity(const RuleFn& rule, const std::string& rule_label,
                                          const Economy& e) {
    CheckResult out;
    const Allocation x = rule(e);
    const Rational ze = e.excess();
    const int n = e.size();
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<AgentId> subset;
        for (int k = 0; k < n; ++k)
            if (mask & (1u << k)) subset.push_back(e.id_at(k));
        const Economy sub = e.restrict(subset);
        const Rational zs = sub.excess();
        if (!((ze >= 0 && zs >= 0) || (ze <= 0 && zs <= 0))) continue;
        const Allocation y = rule(sub);
        ++out.comparisons;
        int improved = -1;
        int worsened = -1;
        for (int j = 0; j < sub.size(); ++j) {
            const int k = e.index_of(sub.id_at(j));
            switch (compare(e.pref_at(k), y.at_index(j), x.at_index(k))) {
                case Comparison::Better: improved = j; break;
                case Comparison::Worse: worsened = j; break;
                case Comparison::Indifferent: break;
            }
            if (improved >= 0 && worsened >= 0) break;
        }
        if (improved < 0 || worsened < 0) continue;
        Witness w = base_witness("pop-mono", rule_label, e);
        w.variant = sub;
        w.agents = {sub.id_at(improved), sub.id_at(worsened)};
        w.before = x;
        w.after = y;
        std::string ss;
        for (size_t j = 0; j < subset.size(); ++j) {
            if (j) ss += ",";
            ss += id_str(subset[j]);
        }
        w.set("subset", ss);
        w.comparison = "in subeconomy {" + ss + "} agent " + id_str(sub.id_at(improved)) +
                       " strictly gains while agent " + id_str(sub.id_at(worsened)) +
                       " strictly loses";
        out.status = CheckResult::Status::Violation;
        out.witness = std::move(w);
        return out;
    }
    return out;
}

}  // namespace reallot
