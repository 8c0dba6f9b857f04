#pragma once

#include <optional>
#include <string>

#include "reallot/rational.hpp"

namespace reallot {

// Single-peaked preference over amounts of the good, represented by a
// weighted two-sided deviation loss:
//   loss(x) = left_weight  * (peak - x)  for x <= peak
//           = right_weight * (x - peak)  for x >  peak
// Lower loss is better; loss(peak) = 0 is the unique maximum. Weights must
// be strictly positive (enforced where preferences enter an Economy).
struct Preference {
    Rational peak;
    Rational left_weight{1};
    Rational right_weight{1};

    Rational loss(const Rational& x) const;
};

enum class Comparison { Better, Indifferent, Worse };

// Compares holding x against holding y under pref; Better means x is
// strictly preferred.
Comparison compare(const Preference& pref, const Rational& x, const Rational& y);
bool strictly_prefers(const Preference& pref, const Rational& x, const Rational& y);
bool weakly_prefers(const Preference& pref, const Rational& x, const Rational& y);

// Interval of amounts. Either empty, or [lo, hi] with independently open
// endpoints; an absent bound means unbounded on that side.
class Interval {
  public:
    static Interval empty();
    static Interval closed(const Rational& lo, const Rational& hi);
    // Normalizes: lo > hi, or lo == hi with an open end, collapses to empty.
    static Interval make(std::optional<Rational> lo, bool lo_open,
                         std::optional<Rational> hi, bool hi_open);

    bool is_empty() const { return empty_; }
    bool contains(const Rational& x) const;
    Interval intersect(const Interval& o) const;
    // Image under x -> t - x (endpoint roles swap).
    Interval reflect(const Rational& t) const;
    // A canonical element: the midpoint when both ends are finite, an
    // endpoint or its unit offset otherwise; nullopt when empty.
    std::optional<Rational> pick() const;
    std::string str() const;

    const std::optional<Rational>& lo() const { return lo_; }
    const std::optional<Rational>& hi() const { return hi_; }
    bool lo_open() const { return lo_open_; }
    bool hi_open() const { return hi_open_; }

  private:
    bool empty_ = true;
    std::optional<Rational> lo_;
    std::optional<Rational> hi_;
    bool lo_open_ = false;
    bool hi_open_ = false;
};

// {y >= 0 : y strictly preferred to x}: empty at the peak, otherwise an open
// interval around the peak clipped to [0, inf).
Interval strict_upper_contour(const Preference& pref, const Rational& x);
// {y >= 0 : y weakly preferred to x}: the closed counterpart; [peak, peak]
// when x is the peak.
Interval weak_upper_contour(const Preference& pref, const Rational& x);

}  // namespace reallot
