#include "reallot/economy.hpp"

#include <algorithm>
#include <numeric>

#include "reallot/errors.hpp"

namespace reallot {

Economy::Economy(std::vector<AgentId> ids, std::vector<Preference> preferences,
                 std::vector<Rational> endowments) {
    const size_t n = ids.size();
    if (n == 0) throw ValidationError("economy must have at least one agent");
    if (preferences.size() != n || endowments.size() != n)
        throw ValidationError("economy field lengths differ");

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return ids[a] < ids[b]; });

    ids_.reserve(n);
    preferences_.reserve(n);
    endowments_.reserve(n);
    for (size_t k : order) {
        if (!ids_.empty() && ids_.back() == ids[k])
            throw ValidationError("duplicate agent id " + std::to_string(ids[k]));
        if (ids[k] < 1)
            throw ValidationError("agent id " + std::to_string(ids[k]) + " must be positive");
        const Preference& r = preferences[k];
        if (r.peak < 0)
            throw ValidationError("agent " + std::to_string(ids[k]) + " has negative peak");
        if (r.left_weight <= 0 || r.right_weight <= 0)
            throw ValidationError("agent " + std::to_string(ids[k]) + " has nonpositive weight");
        if (endowments[k] < 0)
            throw ValidationError("agent " + std::to_string(ids[k]) + " has negative endowment");
        ids_.push_back(ids[k]);
        preferences_.push_back(r);
        endowments_.push_back(endowments[k]);
    }
}

int Economy::index_of(AgentId id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return -1;
    return static_cast<int>(it - ids_.begin());
}

const Preference& Economy::pref(AgentId id) const {
    int k = index_of(id);
    if (k < 0) throw InvalidSubsetError("agent " + std::to_string(id) + " not in economy");
    return preferences_[k];
}

const Rational& Economy::endowment(AgentId id) const {
    int k = index_of(id);
    if (k < 0) throw InvalidSubsetError("agent " + std::to_string(id) + " not in economy");
    return endowments_[k];
}

Rational Economy::total_endowment() const {
    Rational s;
    for (const Rational& w : endowments_) s += w;
    return s;
}

Rational Economy::excess() const {
    Rational z;
    for (int k = 0; k < size(); ++k) z += preferences_[k].peak - endowments_[k];
    return z;
}

std::vector<AgentId> Economy::demanders() const {
    std::vector<AgentId> out;
    for (int k = 0; k < size(); ++k)
        if (preferences_[k].peak > endowments_[k]) out.push_back(ids_[k]);
    return out;
}

std::vector<AgentId> Economy::suppliers() const {
    std::vector<AgentId> out;
    for (int k = 0; k < size(); ++k)
        if (preferences_[k].peak <= endowments_[k]) out.push_back(ids_[k]);
    return out;
}

Rational Economy::aggregate_supply() const {
    Rational s;
    for (int k = 0; k < size(); ++k)
        if (preferences_[k].peak <= endowments_[k]) s += endowments_[k] - preferences_[k].peak;
    return s;
}

Rational Economy::aggregate_demand() const {
    Rational s;
    for (int k = 0; k < size(); ++k)
        if (preferences_[k].peak > endowments_[k]) s += preferences_[k].peak - endowments_[k];
    return s;
}

Economy Economy::restrict(const std::vector<AgentId>& keep) const {
    if (keep.empty()) throw InvalidSubsetError("restriction to an empty set of agents");
    std::vector<AgentId> ids;
    std::vector<Preference> prefs;
    std::vector<Rational> endows;
    std::vector<AgentId> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    for (size_t k = 0; k + 1 < sorted.size(); ++k)
        if (sorted[k] == sorted[k + 1])
            throw InvalidSubsetError("duplicate agent id " + std::to_string(sorted[k]) +
                                     " in restriction");
    for (AgentId id : sorted) {
        int at = index_of(id);
        if (at < 0) throw InvalidSubsetError("agent " + std::to_string(id) + " not in economy");
        ids.push_back(id);
        prefs.push_back(preferences_[at]);
        endows.push_back(endowments_[at]);
    }
    return Economy(std::move(ids), std::move(prefs), std::move(endows));
}

Economy Economy::without(AgentId id) const {
    if (index_of(id) < 0)
        throw InvalidSubsetError("agent " + std::to_string(id) + " not in economy");
    if (size() == 1) throw InvalidSubsetError("removal would empty the economy");
    std::vector<AgentId> keep;
    for (AgentId other : ids_)
        if (other != id) keep.push_back(other);
    return restrict(keep);
}

Economy Economy::with_endowment(AgentId id, Rational endowment) const {
    int k = index_of(id);
    if (k < 0) throw InvalidSubsetError("agent " + std::to_string(id) + " not in economy");
    Economy out = *this;
    if (endowment < 0)
        throw ValidationError("agent " + std::to_string(id) + " has negative endowment");
    out.endowments_[k] = std::move(endowment);
    return out;
}

Economy Economy::with_endowments(std::vector<Rational> endowments) const {
    if (endowments.size() != ids_.size())
        throw ValidationError("endowment vector length differs from economy size");
    return Economy(ids_, preferences_, std::move(endowments));
}

Economy Economy::with_preference(AgentId id, Preference pref) const {
    int k = index_of(id);
    if (k < 0) throw InvalidSubsetError("agent " + std::to_string(id) + " not in economy");
    std::vector<Preference> prefs = preferences_;
    prefs[k] = std::move(pref);
    return Economy(ids_, std::move(prefs), endowments_);
}

Economy Economy::with_agent(AgentId id, Preference pref, Rational endowment) const {
    if (index_of(id) >= 0)
        throw ValidationError("agent " + std::to_string(id) + " already in economy");
    std::vector<AgentId> ids = ids_;
    std::vector<Preference> prefs = preferences_;
    std::vector<Rational> endows = endowments_;
    ids.push_back(id);
    prefs.push_back(std::move(pref));
    endows.push_back(std::move(endowment));
    return Economy(std::move(ids), std::move(prefs), std::move(endows));
}

bool operator==(const Preference& a, const Preference& b) {
    return a.peak == b.peak && a.left_weight == b.left_weight && a.right_weight == b.right_weight;
}

bool operator==(const Economy& a, const Economy& b) {
    return a.ids_ == b.ids_ && a.preferences_ == b.preferences_ && a.endowments_ == b.endowments_;
}

Allocation::Allocation(const Economy& e, std::vector<Rational> amounts)
    : ids_(e.ids()), amounts_(std::move(amounts)) {
    if (amounts_.size() != ids_.size())
        throw InfeasibleAllocationError("allocation length differs from economy size");
    Rational total;
    for (size_t k = 0; k < amounts_.size(); ++k) {
        if (amounts_[k] < 0)
            throw InfeasibleAllocationError("agent " + std::to_string(ids_[k]) +
                                            " allocated a negative amount");
        total += amounts_[k];
    }
    if (total != e.total_endowment())
        throw InfeasibleAllocationError("allocation total " + total.str() +
                                        " differs from endowment total " +
                                        e.total_endowment().str());
}

const Rational& Allocation::at(AgentId id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id)
        throw InvalidSubsetError("agent " + std::to_string(id) + " not in allocation");
    return amounts_[it - ids_.begin()];
}

std::vector<Rational> Allocation::net_trades(const Economy& e) const {
    if (e.ids() != ids_)
        throw InvalidSubsetError("allocation and economy carry different agents");
    std::vector<Rational> out;
    out.reserve(amounts_.size());
    for (size_t k = 0; k < amounts_.size(); ++k) out.push_back(amounts_[k] - e.endowment_at(static_cast<int>(k)));
    return out;
}

std::string Allocation::str() const {
    std::string s = "(";
    for (size_t k = 0; k < amounts_.size(); ++k) {
        if (k) s += ", ";
        s += amounts_[k].str();
    }
    s += ")";
    return s;
}

bool operator==(const Allocation& a, const Allocation& b) {
    return a.ids_ == b.ids_ && a.amounts_ == b.amounts_;
}

}  // namespace reallot
