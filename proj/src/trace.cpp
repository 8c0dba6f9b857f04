#include "reallot/trace.hpp"

#include <algorithm>

#include "reallot/errors.hpp"

namespace reallot {

std::vector<Rational> Trace::holdings_after(int t) const {
    std::vector<Rational> h;
    h.reserve(economy.size());
    for (int k = 0; k < economy.size(); ++k)
        h.push_back(economy.endowment_at(k) + steps[t].net_trades[k]);
    return h;
}

namespace {

// Frozen test relative to the sign of z(e): holdings at or past the peak.
std::vector<AgentId> frozen_under(const Economy& e, const std::vector<Rational>& holdings,
                                  bool demand) {
    std::vector<AgentId> out;
    for (int k = 0; k < e.size(); ++k) {
        const bool hit = demand ? e.pref_at(k).peak <= holdings[k]
                                : e.pref_at(k).peak >= holdings[k];
        if (hit) out.push_back(e.id_at(k));
    }
    return out;
}

TraceStep make_step(const Economy& e, int t, const std::vector<Rational>& holdings_before,
                    const std::vector<Rational>& x, bool demand,
                    std::optional<Rational> lambda) {
    TraceStep st;
    st.t = t;
    st.staged_endowments = holdings_before;
    st.net_trades.reserve(e.size());
    for (int k = 0; k < e.size(); ++k) st.net_trades.push_back(x[k] - e.endowment_at(k));
    if (t > 0) st.frozen = frozen_under(e, holdings_before, demand);
    st.lambda = std::move(lambda);
    return st;
}

// One staged adjustment: re-run the rule on the full economy re-endowed with
// the staged holdings. The full agent set stays in place so rules sensitive
// to population (parity, pivot choice) see the same economy shape; agents at
// their peak are fixed points of the re-run for same-sided rules meeting the
// endowments lower bound.
std::vector<Rational> staged_adjustment(const RuleId& rule, const Economy& e,
                                        const std::vector<Rational>& holdings) {
    const Economy staged = e.with_endowments(holdings);
    try {
        const Allocation y = apply_rule(rule, staged);
        return {y.amounts().begin(), y.amounts().end()};
    } catch (const ZeroEndowmentError&) {
        // Staging can zero out a holding only for an agent pinned at a zero
        // peak; they are fixed there, so set them aside and re-run on the
        // rest. Anything else is a genuine domain refusal.
        std::vector<AgentId> open;
        for (int k = 0; k < e.size(); ++k) {
            if (holdings[k] == 0 && e.pref_at(k).peak == 0) continue;
            open.push_back(e.id_at(k));
        }
        if (open.empty() || open.size() == static_cast<size_t>(e.size())) throw;
        std::vector<Rational> sub_endows;
        sub_endows.reserve(open.size());
        for (AgentId id : open) sub_endows.push_back(holdings[e.index_of(id)]);
        const Economy sub = e.restrict(open).with_endowments(std::move(sub_endows));
        const Allocation y = apply_rule(rule, sub);
        std::vector<Rational> next = holdings;
        for (int j = 0; j < sub.size(); ++j) next[e.index_of(sub.id_at(j))] = y.at_index(j);
        return next;
    }
}

}  // namespace

Trace derive_trace(const RuleId& rule, const Economy& e) {
    if (rule.kind == RuleKind::Sprumont)
        throw UnsupportedRuleError(
            "trace derivation is defined for rules that respect endowments; 'sprumont' divides "
            "the total while ignoring endowments, so staged holdings are not its fixed points");
    const int n = e.size();
    const bool demand = e.excess_demand();
    Trace tr;
    tr.economy = e;
    std::vector<Rational> holdings = e.endowments();
    tr.steps.push_back(make_step(e, 0, holdings, holdings, demand, std::nullopt));
    if (n >= 2) {
        const Allocation first = apply_rule(rule, e);
        std::vector<Rational> x(first.amounts().begin(), first.amounts().end());
        tr.steps.push_back(make_step(e, 1, holdings, x, demand, std::nullopt));
        holdings = std::move(x);
        for (int t = 2; t <= n - 1; ++t) {
            std::vector<Rational> next = staged_adjustment(rule, e, holdings);
            tr.steps.push_back(make_step(e, t, holdings, next, demand, std::nullopt));
            holdings = std::move(next);
        }
    }
    const std::vector<Rational> probe =
        n == 1 ? std::vector<Rational>(apply_rule(rule, e).amounts())
               : staged_adjustment(rule, e, holdings);
    std::vector<Rational> probe_net;
    probe_net.reserve(n);
    for (int k = 0; k < n; ++k) probe_net.push_back(probe[k] - e.endowment_at(k));
    tr.stationary_probe = std::move(probe_net);
    return tr;
}

Trace uniform_lambda_trace(const Economy& e) {
    const int n = e.size();
    const bool demand = e.excess_demand();
    Trace tr;
    tr.economy = e;
    std::vector<Rational> q(n);
    tr.steps.push_back(make_step(e, 0, e.endowments(), e.endowments(), demand, Rational(0)));

    Rational lambda;
    std::vector<bool> seen(n, false);  // union of earlier frozen sets
    auto advance = [&](const std::vector<Rational>& qprev, Rational* lambda_io,
                       std::vector<bool>* seen_io, std::vector<AgentId>* frozen_out) {
        std::vector<Rational> holdings;
        holdings.reserve(n);
        for (int k = 0; k < n; ++k) holdings.push_back(e.endowment_at(k) + qprev[k]);
        std::vector<bool> frozen(n, false);
        int frozen_count = 0;
        for (int k = 0; k < n; ++k) {
            frozen[k] = demand ? e.pref_at(k).peak <= holdings[k]
                               : e.pref_at(k).peak >= holdings[k];
            if (frozen[k]) ++frozen_count;
        }
        Rational next_lambda = *lambda_io;
        if (frozen_count < n) {
            // Newly frozen agents could not absorb the full lambda; their
            // shortfall is split over the agents still unfrozen.
            Rational shortfall;
            for (int k = 0; k < n; ++k) {
                if (!frozen[k] || (*seen_io)[k]) continue;
                const Rational gap = demand ? e.pref_at(k).peak - e.endowment_at(k)
                                            : e.endowment_at(k) - e.pref_at(k).peak;
                shortfall += *lambda_io - gap;
            }
            next_lambda += shortfall / (n - frozen_count);
        }
        std::vector<Rational> qnext(n);
        for (int k = 0; k < n; ++k) {
            if (frozen[k]) qnext[k] = e.pref_at(k).peak - e.endowment_at(k);
            else qnext[k] = demand ? next_lambda : -next_lambda;
        }
        *lambda_io = next_lambda;
        for (int k = 0; k < n; ++k)
            if (frozen[k]) (*seen_io)[k] = true;
        if (frozen_out) {
            for (int k = 0; k < n; ++k)
                if (frozen[k]) frozen_out->push_back(e.id_at(k));
        }
        return qnext;
    };

    for (int t = 1; t <= n - 1; ++t) {
        std::vector<Rational> holdings;
        holdings.reserve(n);
        for (int k = 0; k < n; ++k) holdings.push_back(e.endowment_at(k) + q[k]);
        std::vector<AgentId> frozen;
        std::vector<Rational> qnext = advance(q, &lambda, &seen, &frozen);
        TraceStep st;
        st.t = t;
        st.staged_endowments = std::move(holdings);
        st.net_trades = qnext;
        st.frozen = std::move(frozen);
        st.lambda = lambda;
        tr.steps.push_back(std::move(st));
        q = std::move(qnext);
    }
    {
        Rational probe_lambda = lambda;
        std::vector<bool> probe_seen = seen;
        tr.stationary_probe = advance(q, &probe_lambda, &probe_seen, nullptr);
    }
    return tr;
}

StepConditionReport check_step_conditions(const Trace& trace) {
    StepConditionReport rep;
    const Economy& e = trace.economy;
    const int n = e.size();
    const bool demand = e.excess_demand();
    auto flag = [&](int t, AgentId agent, std::string condition, std::string detail) {
        rep.pass = false;
        rep.violations.push_back({t, agent, std::move(condition), std::move(detail)});
    };

    for (size_t t = 0; t < trace.steps.size(); ++t) {
        const std::vector<Rational>& q = trace.steps[t].net_trades;
        Rational total;
        for (int k = 0; k < n; ++k) {
            total += q[k];
            if (t == 0 && q[k] != 0)
                flag(0, e.id_at(k), "nonzero-start", "q^0 = " + q[k].str());
            if (e.endowment_at(k) + q[k] < 0)
                flag(static_cast<int>(t), e.id_at(k), "negative-holdings",
                     "holdings " + (e.endowment_at(k) + q[k]).str());
        }
        if (total != 0)
            flag(static_cast<int>(t), 0, "imbalance", "net trades sum to " + total.str());
    }

    for (size_t t = 1; t < trace.steps.size(); ++t) {
        const std::vector<Rational>& qprev = trace.steps[t - 1].net_trades;
        const std::vector<Rational>& q = trace.steps[t].net_trades;
        for (int k = 0; k < n; ++k) {
            const Rational holdings = e.endowment_at(k) + qprev[k];
            const Rational peak_trade = e.pref_at(k).peak - e.endowment_at(k);
            const bool reached =
                demand ? e.pref_at(k).peak <= holdings : e.pref_at(k).peak >= holdings;
            if (reached) {
                if (q[k] != peak_trade)
                    flag(static_cast<int>(t), e.id_at(k), "peak-freezing",
                         "expected " + peak_trade.str() + ", got " + q[k].str());
            } else if (demand ? q[k] < qprev[k] : q[k] > qprev[k]) {
                flag(static_cast<int>(t), e.id_at(k), "monotone-net-trades",
                     q[k].str() + " after " + qprev[k].str());
            }
        }
    }

    if (trace.stationary_probe) {
        const bool stat = *trace.stationary_probe == trace.final_net_trades();
        rep.stationary = stat;
        if (!stat) {
            for (int k = 0; k < n; ++k) {
                if ((*trace.stationary_probe)[k] != trace.final_net_trades()[k]) {
                    flag(static_cast<int>(trace.steps.size()), e.id_at(k), "not-stationary",
                         trace.final_net_trades()[k].str() + " moved to " +
                             (*trace.stationary_probe)[k].str());
                }
            }
        }
    }
    return rep;
}

CrossConditionReport check_cross_conditions(const RuleId& rule, const Economy& e,
                                            const CrossVariant& variant) {
    CrossConditionReport rep;
    const Trace base = derive_trace(rule, e);
    if (variant.kind == CrossVariantKind::EndowmentIncrease) {
        if (variant.new_endowments.size() != static_cast<size_t>(e.size()))
            throw ValidationError("endowment variant length differs from economy size");
        for (int k = 0; k < e.size(); ++k)
            if (variant.new_endowments[k] < e.endowment_at(k))
                throw ValidationError("endowment variant lowers agent " +
                                      std::to_string(e.id_at(k)));
        const Economy raised = e.with_endowments(variant.new_endowments);
        if (!(e.excess() <= 0 || raised.excess() >= 0))
            throw InapplicableVariantError(
                "endowment increase flips excess demand into excess supply; the holdings "
                "comparison does not apply");
        const Trace var = derive_trace(rule, raised);
        for (int k = 0; k < e.size(); ++k) {
            const Rational before = e.endowment_at(k) + base.final_net_trades()[k];
            const Rational after = variant.new_endowments[k] + var.final_net_trades()[k];
            if (after < before) {
                rep.pass = false;
                rep.violations.push_back({0, e.id_at(k), "holdings-drop",
                                          before.str() + " fell to " + after.str()});
            }
        }
        return rep;
    }

    const Economy sub = e.restrict(variant.subset);
    if (sub.size() == e.size())
        throw ValidationError("subpopulation variant must be a proper subset");
    const Rational ze = e.excess();
    const Rational zs = sub.excess();
    if (!((ze >= 0 && zs >= 0) || (ze <= 0 && zs <= 0)))
        throw InapplicableVariantError(
            "economy and subeconomy lie on opposite sides of zero excess; the net-trade "
            "comparison does not apply");
    const Trace var = derive_trace(rule, sub);
    std::vector<Rational> diff;
    diff.reserve(sub.size());
    for (int j = 0; j < sub.size(); ++j) {
        const int k = e.index_of(sub.id_at(j));
        diff.push_back(var.final_net_trades()[j] - base.final_net_trades()[k]);
    }
    for (int a = 0; a < sub.size(); ++a) {
        for (int b = a + 1; b < sub.size(); ++b) {
            if (diff[a] * diff[b] < 0) {
                rep.pass = false;
                rep.violations.push_back(
                    {0, sub.id_at(a), "sign-discordant-pair",
                     "agents " + std::to_string(sub.id_at(a)) + " and " +
                         std::to_string(sub.id_at(b)) + " move " + diff[a].str() + " vs " +
                         diff[b].str()});
            }
        }
    }
    return rep;
}

}  // namespace reallot
