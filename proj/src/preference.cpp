#include "reallot/preference.hpp"

namespace reallot {

Rational Preference::loss(const Rational& x) const {
    if (x <= peak) return left_weight * (peak - x);
    return right_weight * (x - peak);
}

Comparison compare(const Preference& pref, const Rational& x, const Rational& y) {
    const Rational dx = pref.loss(x);
    const Rational dy = pref.loss(y);
    if (dx < dy) return Comparison::Better;
    if (dx == dy) return Comparison::Indifferent;
    return Comparison::Worse;
}

bool strictly_prefers(const Preference& pref, const Rational& x, const Rational& y) {
    return compare(pref, x, y) == Comparison::Better;
}

bool weakly_prefers(const Preference& pref, const Rational& x, const Rational& y) {
    return compare(pref, x, y) != Comparison::Worse;
}

Interval Interval::empty() {
    return Interval{};
}

Interval Interval::closed(const Rational& lo, const Rational& hi) {
    return make(lo, false, hi, false);
}

Interval Interval::make(std::optional<Rational> lo, bool lo_open,
                        std::optional<Rational> hi, bool hi_open) {
    if (lo && hi) {
        if (*lo > *hi) return empty();
        if (*lo == *hi && (lo_open || hi_open)) return empty();
    }
    Interval r;
    r.empty_ = false;
    r.lo_ = std::move(lo);
    r.hi_ = std::move(hi);
    r.lo_open_ = r.lo_ ? lo_open : false;
    r.hi_open_ = r.hi_ ? hi_open : false;
    return r;
}

bool Interval::contains(const Rational& x) const {
    if (empty_) return false;
    if (lo_ && (lo_open_ ? x <= *lo_ : x < *lo_)) return false;
    if (hi_ && (hi_open_ ? x >= *hi_ : x > *hi_)) return false;
    return true;
}

Interval Interval::intersect(const Interval& o) const {
    if (empty_ || o.empty_) return empty();
    std::optional<Rational> lo = lo_;
    bool lo_open = lo_open_;
    if (o.lo_) {
        if (!lo || *o.lo_ > *lo) {
            lo = o.lo_;
            lo_open = o.lo_open_;
        } else if (*o.lo_ == *lo) {
            lo_open = lo_open || o.lo_open_;
        }
    }
    std::optional<Rational> hi = hi_;
    bool hi_open = hi_open_;
    if (o.hi_) {
        if (!hi || *o.hi_ < *hi) {
            hi = o.hi_;
            hi_open = o.hi_open_;
        } else if (*o.hi_ == *hi) {
            hi_open = hi_open || o.hi_open_;
        }
    }
    return make(std::move(lo), lo_open, std::move(hi), hi_open);
}

Interval Interval::reflect(const Rational& t) const {
    if (empty_) return empty();
    std::optional<Rational> lo;
    std::optional<Rational> hi;
    if (hi_) lo = t - *hi_;
    if (lo_) hi = t - *lo_;
    return make(std::move(lo), hi_open_, std::move(hi), lo_open_);
}

std::optional<Rational> Interval::pick() const {
    if (empty_) return std::nullopt;
    if (lo_ && hi_) {
        if (*lo_ == *hi_) return *lo_;
        return (*lo_ + *hi_) / 2;
    }
    if (lo_) return lo_open_ ? *lo_ + 1 : *lo_;
    if (hi_) return hi_open_ ? *hi_ - 1 : *hi_;
    return Rational(0);
}

std::string Interval::str() const {
    if (empty_) return "(empty)";
    std::string s = lo_open_ ? "(" : "[";
    s += lo_ ? lo_->str() : "-inf";
    s += ", ";
    s += hi_ ? hi_->str() : "+inf";
    s += hi_open_ ? ")" : "]";
    return s;
}

namespace {

Interval upper_contour(const Preference& pref, const Rational& x, bool strict) {
    const Rational d = pref.loss(x);
    const Rational lo = pref.peak - d / pref.left_weight;
    const Rational hi = pref.peak + d / pref.right_weight;
    Interval around_peak = Interval::make(lo, strict, hi, strict);
    return around_peak.intersect(Interval::make(Rational(0), false, std::nullopt, false));
}

}  // namespace

Interval strict_upper_contour(const Preference& pref, const Rational& x) {
    return upper_contour(pref, x, true);
}

Interval weak_upper_contour(const Preference& pref, const Rational& x) {
    return upper_contour(pref, x, false);
}

}  // namespace reallot
