#pragma once

#include <vector>

#include "reallot/preference.hpp"
#include "reallot/rational.hpp"

namespace reallot {

using AgentId = int;

// A reallocation economy: agents with single-peaked preferences and private
// endowments of one divisible good. Stored as parallel vectors sorted by
// strictly increasing agent id.
class Economy {
  public:
    Economy() = default;
    Economy(std::vector<AgentId> ids, std::vector<Preference> preferences,
            std::vector<Rational> endowments);

    int size() const { return static_cast<int>(ids_.size()); }
    const std::vector<AgentId>& ids() const { return ids_; }
    bool has_agent(AgentId id) const { return index_of(id) >= 0; }
    // -1 when absent.
    int index_of(AgentId id) const;

    AgentId id_at(int k) const { return ids_[k]; }
    const Preference& pref_at(int k) const { return preferences_[k]; }
    const Rational& endowment_at(int k) const { return endowments_[k]; }
    const Preference& pref(AgentId id) const;
    const Rational& endowment(AgentId id) const;
    const std::vector<Rational>& endowments() const { return endowments_; }

    Rational total_endowment() const;
    // z(e) = sum of (peak - endowment); >= 0 classifies excess demand,
    // < 0 excess supply.
    Rational excess() const;
    bool excess_demand() const { return excess() >= 0; }
    // Agents with peak strictly above endowment.
    std::vector<AgentId> demanders() const;
    // The complement: peak at or below endowment.
    std::vector<AgentId> suppliers() const;
    // Sum over suppliers of (endowment - peak).
    Rational aggregate_supply() const;
    // Sum over demanders of (peak - endowment).
    Rational aggregate_demand() const;

    Economy restrict(const std::vector<AgentId>& keep) const;
    Economy without(AgentId id) const;
    Economy with_endowment(AgentId id, Rational endowment) const;
    // Full replacement, parallel to ids().
    Economy with_endowments(std::vector<Rational> endowments) const;
    Economy with_preference(AgentId id, Preference pref) const;
    Economy with_agent(AgentId id, Preference pref, Rational endowment) const;

    friend bool operator==(const Economy& a, const Economy& b);

  private:
    std::vector<AgentId> ids_;
    std::vector<Preference> preferences_;
    std::vector<Rational> endowments_;
};

bool operator==(const Preference& a, const Preference& b);

// A feasible division of the economy's total endowment: nonnegative amounts,
// one per agent, summing exactly to the endowment total.
class Allocation {
  public:
    Allocation(const Economy& e, std::vector<Rational> amounts);

    const std::vector<AgentId>& ids() const { return ids_; }
    const std::vector<Rational>& amounts() const { return amounts_; }
    const Rational& at_index(int k) const { return amounts_[k]; }
    const Rational& at(AgentId id) const;
    int size() const { return static_cast<int>(ids_.size()); }

    // amounts - endowments, parallel to ids(); e must carry the same agents.
    std::vector<Rational> net_trades(const Economy& e) const;
    std::string str() const;

    friend bool operator==(const Allocation& a, const Allocation& b);

  private:
    std::vector<AgentId> ids_;
    std::vector<Rational> amounts_;
};

}  // namespace reallot
