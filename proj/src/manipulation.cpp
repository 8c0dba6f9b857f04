#include "reallot/manipulation.hpp"

#include <algorithm>

#include "reallot/errors.hpp"
#include "reallot/preference.hpp"

namespace reallot {

namespace {

std::string id_str(AgentId id) {
    return std::to_string(id);
}

const char* mode_str(ImprovementMode mode) {
    return mode == ImprovementMode::Strict ? "strict" : "weak";
}

// Profitable values for the first agent when a pair splits total between
// them: first's contour intersected with the reflection of second's, inside
// [0, total].
Interval split_candidates(const Interval& first, const Interval& second, const Rational& total) {
    return first.intersect(second.reflect(total)).intersect(Interval::closed(Rational(0), total));
}

// The split of `total` between i and j acceptable under `mode`, if any:
// strict wants both strictly better; weak tries strict-strict, then each
// one-sided combination with the other agent held weakly better.
std::optional<Rational> pick_split(const Preference& pi, const Rational& xi,
                                   const Preference& pj, const Rational& xj,
                                   const Rational& total, ImprovementMode mode) {
    const Interval si = strict_upper_contour(pi, xi);
    const Interval sj = strict_upper_contour(pj, xj);
    if (auto v = split_candidates(si, sj, total).pick()) return v;
    if (mode == ImprovementMode::Strict) return std::nullopt;
    if (auto v = split_candidates(si, weak_upper_contour(pj, xj), total).pick()) return v;
    if (auto v = split_candidates(weak_upper_contour(pi, xi), sj, total).pick()) return v;
    return std::nullopt;
}

struct PairArrangement {
    Economy variant;
    Allocation variant_alloc;
    Rational total;
};

std::optional<Witness> decide_pair(const std::string& kind, const RuleId& rule, const Economy& e,
                                   const Allocation& x, const Economy& variant,
                                   const Allocation& variant_alloc, const Rational& total,
                                   AgentId i, AgentId j, ImprovementMode mode) {
    const std::optional<Rational> share =
        pick_split(e.pref(i), x.at(i), e.pref(j), x.at(j), total, mode);
    if (!share) return std::nullopt;
    const Rational si = *share;
    const Rational sj = total - si;
    Witness w;
    w.kind = kind;
    w.rule = rule.str();
    w.economy = e;
    w.variant = variant;
    w.agents = {i, j};
    w.before = x;
    w.after = variant_alloc;
    w.set("mode", mode_str(mode));
    w.set("total", total.str());
    w.set("share_i", si.str());
    w.set("share_j", sj.str());
    w.comparison = "agents " + id_str(i) + " and " + id_str(j) + " split " + total.str() +
                   " as (" + si.str() + ", " + sj.str() + ") against allocations (" +
                   x.at(i).str() + ", " + x.at(j).str() + ")";
    return w;
}

PairArrangement withdrawal_arrangement(const RuleId& rule, const Economy& e, AgentId i,
                                       AgentId j) {
    std::vector<AgentId> keep;
    for (AgentId id : e.ids())
        if (id != j) keep.push_back(id);
    Economy variant = e.restrict(keep);
    Allocation y = apply_rule(rule, variant);
    Rational total = y.at(i) + e.endowment(j);
    return {std::move(variant), std::move(y), std::move(total)};
}

PairArrangement merging_arrangement(const RuleId& rule, const Economy& e, AgentId i, AgentId j) {
    Economy variant = e.without(j).with_endowment(i, e.endowment(i) + e.endowment(j));
    Allocation y = apply_rule(rule, variant);
    Rational total = y.at(i);
    return {std::move(variant), std::move(y), std::move(total)};
}

void check_pair(const Economy& e, AgentId i, AgentId j) {
    if (i == j) throw ValidationError("pair needs two distinct agents");
    if (!e.has_agent(i) || !e.has_agent(j))
        throw InvalidSubsetError("pair names an agent outside the economy");
}

}  // namespace

std::optional<Witness> find_withdrawal(const RuleId& rule, const Economy& e,
                                       ImprovementMode mode) {
    if (e.size() < 2) return std::nullopt;
    const Allocation x = apply_rule(rule, e);
    // The reduced economy depends only on the withdrawn agent; cache it.
    std::vector<std::optional<PairArrangement>> cache(e.size());
    for (int ik = 0; ik < e.size(); ++ik) {
        for (int jk = 0; jk < e.size(); ++jk) {
            if (ik == jk) continue;
            const AgentId i = e.id_at(ik);
            const AgentId j = e.id_at(jk);
            if (!cache[jk]) cache[jk] = withdrawal_arrangement(rule, e, i, j);
            const PairArrangement& arr = *cache[jk];
            const Rational total = arr.variant_alloc.at(i) + e.endowment(j);
            if (auto w = decide_pair("withdrawal", rule, e, x, arr.variant, arr.variant_alloc,
                                     total, i, j, mode))
                return w;
        }
    }
    return std::nullopt;
}

std::optional<Witness> find_withdrawal_pair(const RuleId& rule, const Economy& e, AgentId i,
                                            AgentId j, ImprovementMode mode) {
    check_pair(e, i, j);
    const Allocation x = apply_rule(rule, e);
    const PairArrangement arr = withdrawal_arrangement(rule, e, i, j);
    return decide_pair("withdrawal", rule, e, x, arr.variant, arr.variant_alloc, arr.total, i, j,
                       mode);
}

std::optional<Witness> find_merging(const RuleId& rule, const Economy& e, ImprovementMode mode) {
    if (e.size() < 2) return std::nullopt;
    const Allocation x = apply_rule(rule, e);
    for (int ik = 0; ik < e.size(); ++ik) {
        for (int jk = 0; jk < e.size(); ++jk) {
            if (ik == jk) continue;
            const AgentId i = e.id_at(ik);
            const AgentId j = e.id_at(jk);
            const PairArrangement arr = merging_arrangement(rule, e, i, j);
            if (auto w = decide_pair("merging", rule, e, x, arr.variant, arr.variant_alloc,
                                     arr.total, i, j, mode))
                return w;
        }
    }
    return std::nullopt;
}

std::optional<Witness> find_merging_pair(const RuleId& rule, const Economy& e, AgentId i,
                                         AgentId j, ImprovementMode mode) {
    check_pair(e, i, j);
    const Allocation x = apply_rule(rule, e);
    const PairArrangement arr = merging_arrangement(rule, e, i, j);
    return decide_pair("merging", rule, e, x, arr.variant, arr.variant_alloc, arr.total, i, j,
                       mode);
}

namespace {

AgentId fresh_guest_id(const Economy& e) {
    AgentId guest = 1;
    while (e.has_agent(guest)) ++guest;
    return guest;
}

}  // namespace

std::optional<Witness> find_splitting(const RuleId& rule, const Economy& e,
                                      const std::vector<Rational>& guest_peaks,
                                      const std::vector<Rational>& split_points) {
    if (guest_peaks.empty()) throw InvalidBatteryError("splitting search needs guest peaks");
    if (split_points.empty()) throw InvalidBatteryError("splitting search needs split points");
    const Allocation x = apply_rule(rule, e);
    const AgentId guest = fresh_guest_id(e);
    for (int k = 0; k < e.size(); ++k) {
        const AgentId host = e.id_at(k);
        const Rational& endow = e.endowment_at(k);
        // A host already at their peak has nothing to gain from any split.
        if (x.at_index(k) == e.pref_at(k).peak) continue;
        for (const Rational& peak : guest_peaks) {
            if (peak < 0) continue;
            for (const Rational& split : split_points) {
                if (split < 0 || split > endow) continue;
                const Economy variant =
                    e.with_endowment(host, split).with_agent(guest, Preference{peak}, endow - split);
                std::optional<Allocation> split_alloc;
                try {
                    split_alloc = apply_rule(rule, variant);
                } catch (const ZeroEndowmentError&) {
                    continue;  // split leaves the rule's domain; skip it
                }
                const Allocation& y = *split_alloc;
                const Rational combined = y.at(host) + y.at(guest);
                if (!strictly_prefers(e.pref_at(k), combined, x.at_index(k))) continue;
                Witness w;
                w.kind = "splitting";
                w.rule = rule.str();
                w.economy = e;
                w.variant = variant;
                w.agents = {host, guest};
                w.before = x;
                w.after = y;
                w.set("guest_peak", peak.str());
                w.set("split", split.str());
                w.set("combined", combined.str());
                w.comparison = "agent " + id_str(host) + " keeps " + split.str() +
                               ", enters a guest (id " + id_str(guest) + ", peak " + peak.str() +
                               ") with " + (endow - split).str() + ", and pockets " +
                               combined.str() + " against " + x.at_index(k).str();
                return w;
            }
        }
    }
    return std::nullopt;
}

std::vector<Rational> default_guest_peaks(const Economy& e) {
    std::vector<Rational> peaks;
    peaks.push_back(Rational(0));
    for (int k = 0; k < e.size(); ++k) {
        peaks.push_back(e.pref_at(k).peak);
        peaks.push_back(e.endowment_at(k));
    }
    peaks.push_back(e.total_endowment());
    std::sort(peaks.begin(), peaks.end());
    peaks.erase(std::unique(peaks.begin(), peaks.end()), peaks.end());
    return peaks;
}

std::vector<Rational> default_split_points(const Economy& e) {
    std::vector<Rational> points;
    for (int k = 0; k < e.size(); ++k) {
        const Rational& endow = e.endowment_at(k);
        for (int t = 0; t <= 64; ++t) points.push_back(endow * Rational(t, 64));
        // Kink candidates: the host's endowment crossing a peak, and values
        // aligning the host's staged gap with another agent's.
        points.push_back(e.pref_at(k).peak);
        for (int l = 0; l < e.size(); ++l) {
            if (l == k) continue;
            points.push_back(e.pref_at(k).peak - e.pref_at(l).peak + e.endowment_at(l));
            if (e.pref_at(l).peak != 0)
                points.push_back(e.pref_at(k).peak * e.endowment_at(l) / e.pref_at(l).peak);
        }
    }
    std::erase_if(points, [](const Rational& v) { return v < 0; });
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

namespace {

std::optional<Witness> predelivery_pair(const RuleId& rule, const Economy& e,
                                        const Allocation& x, AgentId i, AgentId j) {
    const Rational new_endowment = e.endowment(i) + e.endowment(j) - x.at(j);
    if (new_endowment < 0) return std::nullopt;
    const Economy variant = e.without(j).with_endowment(i, new_endowment);
    std::optional<Allocation> reduced;
    try {
        reduced = apply_rule(rule, variant);
    } catch (const ZeroEndowmentError&) {
        return std::nullopt;  // delivery leaves the rule's domain; skip the pair
    }
    const Allocation& y = *reduced;
    if (!strictly_prefers(e.pref(i), y.at(i), x.at(i))) return std::nullopt;
    Witness w;
    w.kind = "predelivery";
    w.rule = rule.str();
    w.economy = e;
    w.variant = variant;
    w.agents = {i, j};
    w.before = x;
    w.after = y;
    w.set("new_endowment", new_endowment.str());
    w.comparison = "agent " + id_str(j) + " delivers early, leaving agent " + id_str(i) +
                   " endowed with " + new_endowment.str() + "; the reduced economy lifts " +
                   id_str(i) + " from " + x.at(i).str() + " to " + y.at(i).str();
    return w;
}

}  // namespace

std::optional<Witness> find_predelivery(const RuleId& rule, const Economy& e) {
    if (e.size() < 2) return std::nullopt;
    const Allocation x = apply_rule(rule, e);
    for (int ik = 0; ik < e.size(); ++ik) {
        for (int jk = 0; jk < e.size(); ++jk) {
            if (ik == jk) continue;
            if (auto w = predelivery_pair(rule, e, x, e.id_at(ik), e.id_at(jk))) return w;
        }
    }
    return std::nullopt;
}

Witness construct_predelivery_witness(const RuleId& rule, const Rational& p1,
                                      const Rational& p2, const Rational& w1) {
    if (rule.kind == RuleKind::Sprumont || rule.kind == RuleKind::Endowments)
        throw UnsupportedRuleError(
            "the pre-delivery template needs an efficient, endowment-sensitive rule meeting the "
            "endowments lower bound; '" +
            rule.str() + "' does not qualify");
    if (!(0 < p1 && p1 < w1 && w1 < p2))
        throw ValidationError("pre-delivery template needs 0 < p1 < w1 < p2, got p1=" +
                              p1.str() + " w1=" + w1.str() + " p2=" + p2.str());
    const Economy e({1, 2, 3}, {Preference{p1}, Preference{p2}, Preference{p2}},
                    {w1, p1, p1});
    const Allocation x = apply_rule(rule, e);
    // Feasibility leaves the two demanders p1 + w1 < 2*w1 in total, so at
    // least one sits strictly below w1; early delivery lifts them to w1.
    const AgentId lifted = x.at(2) < w1 ? 2 : 3;
    if (!(x.at(lifted) < w1))
        throw Error("pre-delivery template found no rationed demander under '" + rule.str() +
                    "'");
    auto w = predelivery_pair(rule, e, x, lifted, 1);
    if (!w)
        throw Error("pre-delivery template produced no strict improvement under '" + rule.str() +
                    "'");
    w->set("template_p1", p1.str());
    w->set("template_p2", p2.str());
    w->set("template_w1", w1.str());
    return *w;
}

}  // namespace reallot
