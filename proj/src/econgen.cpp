#include "reallot/econgen.hpp"

#include <algorithm>
#include <array>

#include "reallot/errors.hpp"

namespace reallot {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Economy generate_economy(const GeneratorConfig& config, std::uint64_t seed) {
    if (config.agents_min < 1 || config.agents_max > 8 ||
        config.agents_min > config.agents_max)
        throw ValidationError("generator agent range must sit within [1, 8]");
    if (config.denominator_bound < 1)
        throw ValidationError("generator denominator bound must be at least 1");
    if (config.weight_set.empty())
        throw ValidationError("generator weight set must not be empty");

    SplitMix64 rng(seed);
    const int n =
        config.agents_min +
        static_cast<int>(rng.below(config.agents_max - config.agents_min + 1));

    std::array<AgentId, 12> pool;
    for (int i = 0; i < 12; ++i) pool[i] = i + 1;
    for (int i = 0; i < n; ++i)
        std::swap(pool[i], pool[i + rng.below(12 - i)]);

    auto grid_value = [&]() {
        const long d = 1 + static_cast<long>(rng.below(config.denominator_bound));
        const long k = static_cast<long>(rng.below(16 * d + 1));
        return Rational(k, d);
    };

    std::vector<AgentId> ids;
    std::vector<Preference> prefs;
    std::vector<Rational> endowments;
    for (int i = 0; i < n; ++i) {
        ids.push_back(pool[i]);
        Preference p;
        p.peak = grid_value();
        const auto& weights = config.weight_set[rng.below(config.weight_set.size())];
        p.left_weight = weights.first;
        p.right_weight = weights.second;
        prefs.push_back(std::move(p));
        endowments.push_back(grid_value());
    }
    return Economy(std::move(ids), std::move(prefs), std::move(endowments));
}

namespace {

// Strict well-founded simplicity order: smaller denominator, then smaller
// magnitude. Guarantees the greedy value pass terminates.
bool simpler(const Rational& candidate, const Rational& value) {
    if (candidate == value) return false;
    const mpq_class& c = candidate.raw();
    const mpq_class& v = value.raw();
    if (c.get_den() != v.get_den()) return c.get_den() < v.get_den();
    return ::abs(c.get_num()) < ::abs(v.get_num());
}

bool involved(const Witness& w, AgentId id) {
    return std::find(w.agents.begin(), w.agents.end(), id) != w.agents.end();
}

std::vector<Rational> value_candidates(const Witness& w, const Rational& v) {
    std::vector<Rational> out;
    out.push_back(Rational(0));
    out.push_back(v.floor());
    out.push_back(v.ceil());
    const Economy& e = w.economy;
    for (int k = 0; k < e.size(); ++k) {
        out.push_back(e.pref_at(k).peak);
        out.push_back(e.endowment_at(k));
    }
    std::sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) {
        if (a.raw().get_den() != b.raw().get_den())
            return a.raw().get_den() < b.raw().get_den();
        return ::abs(a.raw().get_num()) < ::abs(b.raw().get_num());
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool try_step(Witness* best, Witness candidate, const ReplayFn& check) {
    if (auto refreshed = check(candidate)) {
        *best = std::move(*refreshed);
        return true;
    }
    return false;
}

bool drop_pass(Witness* best, const ReplayFn& check) {
    const std::vector<AgentId> ids = best->economy.ids();
    for (AgentId id : ids) {
        if (involved(*best, id) || best->economy.size() <= 1) continue;
        Witness cand = *best;
        cand.economy = best->economy.without(id);
        if (try_step(best, std::move(cand), check)) return true;
    }
    return false;
}

bool value_pass(Witness* best, const ReplayFn& check) {
    const Economy& e = best->economy;
    for (int k = 0; k < e.size(); ++k) {
        const AgentId id = e.id_at(k);
        for (int field = 0; field < 2; ++field) {
            const Rational current = field == 0 ? e.pref_at(k).peak : e.endowment_at(k);
            for (const Rational& c : value_candidates(*best, current)) {
                if (!simpler(c, current)) continue;
                Witness cand = *best;
                if (field == 0) {
                    Preference p = e.pref_at(k);
                    p.peak = c;
                    cand.economy = e.with_preference(id, p);
                } else {
                    cand.economy = e.with_endowment(id, c);
                }
                if (try_step(best, std::move(cand), check)) return true;
            }
        }
        const Preference& pref = e.pref_at(k);
        if (pref.left_weight != 1 || pref.right_weight != 1) {
            Witness cand = *best;
            Preference p = pref;
            p.left_weight = Rational(1);
            p.right_weight = Rational(1);
            cand.economy = e.with_preference(id, p);
            if (try_step(best, std::move(cand), check)) return true;
        }
    }
    return false;
}

}  // namespace

Witness shrink_witness(const Witness& w, const ReplayFn& check) {
    auto confirmed = check(w);
    if (!confirmed)
        throw StaleWitnessError("witness no longer replays as a violation; nothing to shrink");
    Witness best = std::move(*confirmed);
    // Each accepted step strictly shrinks (agent count, value simplicity),
    // so this terminates.
    for (;;) {
        if (drop_pass(&best, check)) continue;
        if (value_pass(&best, check)) continue;
        break;
    }
    return best;
}

}  // namespace reallot
