#include "reallot/rules.hpp"

#include <algorithm>
#include <utility>

#include "reallot/errors.hpp"

namespace reallot {

bool PriorityOrderSpec::precedes(AgentId a, AgentId b) const {
    auto key = [&](AgentId id) {
        auto it = std::find(leading.begin(), leading.end(), id);
        if (it != leading.end()) return std::pair<int, long>(0, it - leading.begin());
        return std::pair<int, long>(1, id);
    };
    return dual ? key(b) < key(a) : key(a) < key(b);
}

std::vector<AgentId> PriorityOrderSpec::arrange(std::vector<AgentId> agents) const {
    std::sort(agents.begin(), agents.end(),
              [&](AgentId a, AgentId b) { return precedes(a, b); });
    return agents;
}

PriorityOrderSpec PriorityOrderSpec::reversed() const {
    PriorityOrderSpec out = *this;
    out.dual = !out.dual;
    return out;
}

std::string PriorityOrderSpec::str() const {
    if (leading.empty()) return dual ? "dual" : "natural";
    std::string s;
    if (dual) s = "dual:";
    for (size_t k = 0; k < leading.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(leading[k]);
    }
    return s;
}

PriorityOrderSpec PriorityOrderSpec::parse(const std::string& text) {
    PriorityOrderSpec out;
    if (text.empty() || text == "natural") return out;
    if (text == "dual") {
        out.dual = true;
        return out;
    }
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                       : comma - pos);
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw ValidationError("bad priority order '" + text +
                                  "': expected natural, dual, or a comma-separated id list");
        AgentId id = 0;
        try {
            id = std::stoi(item);
        } catch (const std::exception&) {
            throw ValidationError("bad priority order '" + text + "': id out of range");
        }
        if (id < 1)
            throw ValidationError("bad priority order '" + text + "': agent id must be positive");
        if (std::find(out.leading.begin(), out.leading.end(), id) != out.leading.end())
            throw ValidationError("bad priority order '" + text + "': duplicate id " + item);
        out.leading.push_back(id);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

const std::vector<std::string>& rule_catalog() {
    static const std::vector<std::string> names = {
        "uniform",   "proportional", "priority", "max-satiating",
        "sprumont",  "endowments",   "phi-bar",  "phi-star",
    };
    return names;
}

std::string RuleId::str() const {
    std::string head;
    switch (kind) {
        case RuleKind::Uniform: head = "uniform"; break;
        case RuleKind::Proportional: head = "proportional"; break;
        case RuleKind::Priority: head = "priority"; break;
        case RuleKind::MaxSatiating: head = "max-satiating"; break;
        case RuleKind::Sprumont: head = "sprumont"; break;
        case RuleKind::Endowments: head = "endowments"; break;
        case RuleKind::PhiBar: head = "phi-bar"; break;
        case RuleKind::PhiStar: head = "phi-star"; break;
    }
    if ((kind == RuleKind::Priority || kind == RuleKind::PhiBar) &&
        (order.dual || !order.leading.empty()))
        head += ":" + order.str();
    return head;
}

RuleId RuleId::parse(const std::string& text) {
    std::string head = text;
    std::string suffix;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        head = text.substr(0, colon);
        suffix = text.substr(colon + 1);
    }
    RuleId out;
    if (head == "uniform") out.kind = RuleKind::Uniform;
    else if (head == "proportional") out.kind = RuleKind::Proportional;
    else if (head == "priority") out.kind = RuleKind::Priority;
    else if (head == "max-satiating") out.kind = RuleKind::MaxSatiating;
    else if (head == "sprumont") out.kind = RuleKind::Sprumont;
    else if (head == "endowments") out.kind = RuleKind::Endowments;
    else if (head == "phi-bar") out.kind = RuleKind::PhiBar;
    else if (head == "phi-star") out.kind = RuleKind::PhiStar;
    else throw ValidationError("unknown rule '" + text + "'");
    if (!suffix.empty() || text.find(':') != std::string::npos) {
        if (out.kind != RuleKind::Priority && out.kind != RuleKind::PhiBar)
            throw ValidationError("rule '" + head + "' takes no order parameter");
        out.order = PriorityOrderSpec::parse(suffix);
    }
    return out;
}

bool operator==(const RuleId& a, const RuleId& b) {
    return a.kind == b.kind && a.order.dual == b.order.dual &&
           a.order.leading == b.order.leading;
}

Rational solve_piecewise_linear(const std::function<Rational(const Rational&)>& f,
                                std::vector<Rational> breakpoints, const Rational& lo,
                                const Rational& target, const Rational& final_slope) {
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

    Rational prev = lo;
    Rational fprev = f(lo);
    if (fprev == target) return lo;
    const bool need_increase = fprev < target;
    for (const Rational& b : breakpoints) {
        if (b <= lo) continue;
        const Rational fb = f(b);
        const bool crossed = need_increase ? fb >= target : fb <= target;
        if (crossed) {
            // fb != fprev here, so the piece has nonzero slope.
            Rational sol = prev + (target - fprev) * (b - prev) / (fb - fprev);
            if (f(sol) != target)
                throw Error("piecewise solve: kink missing from breakpoint list");
            return sol;
        }
        prev = b;
        fprev = fb;
    }
    if (final_slope == 0) throw Error("piecewise solve: target unreachable");
    Rational sol = prev + (target - fprev) / final_slope;
    if (sol < prev || f(sol) != target)
        throw Error("piecewise solve: target unreachable");
    return sol;
}

Allocation uniform_rule(const Economy& e) {
    const int n = e.size();
    const Rational target = e.total_endowment();
    std::vector<Rational> x(n);
    std::vector<Rational> bps;
    if (e.excess_demand()) {
        for (int k = 0; k < n; ++k)
            if (e.pref_at(k).peak > e.endowment_at(k))
                bps.push_back(e.pref_at(k).peak - e.endowment_at(k));
        auto f = [&](const Rational& lam) {
            Rational s;
            for (int k = 0; k < n; ++k) s += min(e.pref_at(k).peak, e.endowment_at(k) + lam);
            return s;
        };
        const Rational lam = solve_piecewise_linear(f, std::move(bps), 0, target, 0);
        for (int k = 0; k < n; ++k) x[k] = min(e.pref_at(k).peak, e.endowment_at(k) + lam);
    } else {
        for (int k = 0; k < n; ++k)
            if (e.pref_at(k).peak < e.endowment_at(k))
                bps.push_back(e.endowment_at(k) - e.pref_at(k).peak);
        auto f = [&](const Rational& lam) {
            Rational s;
            for (int k = 0; k < n; ++k) s += max(e.pref_at(k).peak, e.endowment_at(k) - lam);
            return s;
        };
        const Rational lam = solve_piecewise_linear(f, std::move(bps), 0, target, 0);
        for (int k = 0; k < n; ++k) x[k] = max(e.pref_at(k).peak, e.endowment_at(k) - lam);
    }
    return Allocation(e, std::move(x));
}

Allocation proportional_rule(const Economy& e) {
    const int n = e.size();
    for (int k = 0; k < n; ++k)
        if (e.endowment_at(k) == 0)
            throw ZeroEndowmentError("proportional rule needs strictly positive endowments; agent " +
                                     std::to_string(e.id_at(k)) + " has zero");
    const Rational target = e.total_endowment();
    std::vector<Rational> x(n);
    std::vector<Rational> bps;
    if (e.excess_demand()) {
        // Scale endowments up: min{peak, lam*endow} with lam >= 1.
        for (int k = 0; k < n; ++k)
            if (e.pref_at(k).peak > e.endowment_at(k))
                bps.push_back(e.pref_at(k).peak / e.endowment_at(k));
        auto f = [&](const Rational& lam) {
            Rational s;
            for (int k = 0; k < n; ++k) s += min(e.pref_at(k).peak, lam * e.endowment_at(k));
            return s;
        };
        const Rational lam = solve_piecewise_linear(f, std::move(bps), 1, target, 0);
        for (int k = 0; k < n; ++k) x[k] = min(e.pref_at(k).peak, lam * e.endowment_at(k));
    } else {
        // Scale endowments down: max{peak, lam*endow} with lam in [0, 1].
        for (int k = 0; k < n; ++k)
            if (e.pref_at(k).peak < e.endowment_at(k))
                bps.push_back(e.pref_at(k).peak / e.endowment_at(k));
        // Slope past the last supplier breakpoint: only endowments of agents
        // already on the lam*endow branch (peak < endow) keep scaling there;
        // everyone else stays on the constant peak branch until lam > 1.
        Rational tail;
        for (int k = 0; k < n; ++k)
            if (e.pref_at(k).peak < e.endowment_at(k)) tail += e.endowment_at(k);
        auto f = [&](const Rational& lam) {
            Rational s;
            for (int k = 0; k < n; ++k) s += max(e.pref_at(k).peak, lam * e.endowment_at(k));
            return s;
        };
        const Rational lam = solve_piecewise_linear(f, std::move(bps), 0, target, tail);
        for (int k = 0; k < n; ++k) x[k] = max(e.pref_at(k).peak, lam * e.endowment_at(k));
    }
    return Allocation(e, std::move(x));
}

namespace {

// Demand-side serial pass: suppliers sit at their peaks, listed demanders
// absorb the remaining supply in order.
Allocation priority_demand_pass(const Economy& e, const std::vector<AgentId>& demand_order) {
    std::vector<Rational> x(e.size());
    for (int k = 0; k < e.size(); ++k)
        if (e.pref_at(k).peak <= e.endowment_at(k)) x[k] = e.pref_at(k).peak;
    Rational remaining = e.aggregate_supply();
    for (AgentId id : demand_order) {
        const int k = e.index_of(id);
        x[k] = min(e.pref_at(k).peak, e.endowment_at(k) + remaining);
        remaining -= x[k] - e.endowment_at(k);
    }
    return Allocation(e, std::move(x));
}

// Supply-side mirror: demanders sit at their peaks, listed suppliers release
// toward their peaks in order until the demand gap is covered.
Allocation priority_supply_pass(const Economy& e, const std::vector<AgentId>& supply_order) {
    std::vector<Rational> x(e.size());
    for (int k = 0; k < e.size(); ++k)
        if (e.pref_at(k).peak > e.endowment_at(k)) x[k] = e.pref_at(k).peak;
    Rational remaining = e.aggregate_demand();
    for (AgentId id : supply_order) {
        const int k = e.index_of(id);
        x[k] = max(e.pref_at(k).peak, e.endowment_at(k) - remaining);
        remaining -= e.endowment_at(k) - x[k];
    }
    return Allocation(e, std::move(x));
}

}  // namespace

Allocation priority_rule(const Economy& e, const PriorityOrderSpec& order) {
    if (e.excess_demand()) return priority_demand_pass(e, order.arrange(e.demanders()));
    return priority_supply_pass(e, order.arrange(e.suppliers()));
}

Allocation max_satiating_rule(const Economy& e) {
    const int n = e.size();
    std::vector<Rational> x(n);
    // Gap to the peak, in the direction supply (or slack) flows; agents are
    // grouped by equal gap and groups served in increasing-gap order, each
    // member capped at an equal share of what remains.
    std::vector<std::pair<Rational, int>> gaps;
    Rational remaining;
    const bool demand = e.excess_demand();
    if (demand) {
        remaining = e.aggregate_supply();
        for (int k = 0; k < n; ++k) {
            if (e.pref_at(k).peak <= e.endowment_at(k)) x[k] = e.pref_at(k).peak;
            else gaps.emplace_back(e.pref_at(k).peak - e.endowment_at(k), k);
        }
    } else {
        remaining = e.aggregate_demand();
        for (int k = 0; k < n; ++k) {
            if (e.pref_at(k).peak > e.endowment_at(k)) x[k] = e.pref_at(k).peak;
            else gaps.emplace_back(e.endowment_at(k) - e.pref_at(k).peak, k);
        }
    }
    std::sort(gaps.begin(), gaps.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    size_t at = 0;
    while (at < gaps.size()) {
        size_t end = at;
        while (end < gaps.size() && gaps[end].first == gaps[at].first) ++end;
        const Rational share = remaining / static_cast<long>(end - at);
        for (size_t g = at; g < end; ++g) {
            const int k = gaps[g].second;
            const Rational moved = min(gaps[g].first, share);
            x[k] = demand ? e.endowment_at(k) + moved : e.endowment_at(k) - moved;
            remaining -= moved;
        }
        at = end;
    }
    return Allocation(e, std::move(x));
}

Allocation sprumont_rule(const Economy& e) {
    const int n = e.size();
    const Rational target = e.total_endowment();
    std::vector<Rational> x(n);
    std::vector<Rational> bps;
    for (int k = 0; k < n; ++k) bps.push_back(e.pref_at(k).peak);
    if (e.excess_demand()) {
        auto f = [&](const Rational& lam) {
            Rational s;
            for (int k = 0; k < n; ++k) s += min(e.pref_at(k).peak, lam);
            return s;
        };
        const Rational lam = solve_piecewise_linear(f, std::move(bps), 0, target, 0);
        for (int k = 0; k < n; ++k) x[k] = min(e.pref_at(k).peak, lam);
    } else {
        auto f = [&](const Rational& lam) {
            Rational s;
            for (int k = 0; k < n; ++k) s += max(e.pref_at(k).peak, lam);
            return s;
        };
        const Rational lam = solve_piecewise_linear(f, std::move(bps), 0, target, n);
        for (int k = 0; k < n; ++k) x[k] = max(e.pref_at(k).peak, lam);
    }
    return Allocation(e, std::move(x));
}

Allocation endowments_rule(const Economy& e) {
    return Allocation(e, e.endowments());
}

Allocation phi_bar_rule(const Economy& e, const PriorityOrderSpec& order) {
    if (e.size() % 2 == 1) return priority_rule(e, order);
    return priority_rule(e, order.reversed());
}

Allocation phi_star_rule(const Economy& e) {
    if (e.excess_demand()) {
        const std::vector<AgentId> sups = e.suppliers();
        if (sups.empty()) return endowments_rule(e);
        const AgentId pivot = sups.front();
        if (strictly_prefers(e.pref(pivot), 0, e.total_endowment())) {
            // Serve demanders by increasing demand, ties by id.
            std::vector<AgentId> order = e.demanders();
            std::sort(order.begin(), order.end(), [&](AgentId a, AgentId b) {
                const Rational da = e.pref(a).peak - e.endowment(a);
                const Rational db = e.pref(b).peak - e.endowment(b);
                if (da != db) return da < db;
                return a < b;
            });
            return priority_demand_pass(e, order);
        }
        return uniform_rule(e);
    }
    const std::vector<AgentId> dems = e.demanders();
    if (dems.empty()) return endowments_rule(e);
    const AgentId pivot = dems.front();
    if (strictly_prefers(e.pref(pivot), 0, e.total_endowment())) {
        // Mirror: suppliers by increasing release, ties by id.
        std::vector<AgentId> order = e.suppliers();
        std::sort(order.begin(), order.end(), [&](AgentId a, AgentId b) {
            const Rational ra = e.endowment(a) - e.pref(a).peak;
            const Rational rb = e.endowment(b) - e.pref(b).peak;
            if (ra != rb) return ra < rb;
            return a < b;
        });
        return priority_supply_pass(e, order);
    }
    return uniform_rule(e);
}

Allocation apply_rule(const RuleId& rule, const Economy& e) {
    switch (rule.kind) {
        case RuleKind::Uniform: return uniform_rule(e);
        case RuleKind::Proportional: return proportional_rule(e);
        case RuleKind::Priority: return priority_rule(e, rule.order);
        case RuleKind::MaxSatiating: return max_satiating_rule(e);
        case RuleKind::Sprumont: return sprumont_rule(e);
        case RuleKind::Endowments: return endowments_rule(e);
        case RuleKind::PhiBar: return phi_bar_rule(e, rule.order);
        case RuleKind::PhiStar: return phi_star_rule(e);
    }
    throw Error("unhandled rule kind");
}

}  // namespace reallot
