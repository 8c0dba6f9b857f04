#include "reallot/rational.hpp"

#include <algorithm>
#include <cctype>

#include "reallot/errors.hpp"

namespace reallot {

Rational::Rational(long num, long den) {
    if (den == 0) throw ValidationError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) {
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.v_ == 0) throw ValidationError("rational division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::abs() const {
    return Rational(mpq_class(::abs(v_)));
}

Rational Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return Rational(mpq_class(q));
}

Rational Rational::ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return Rational(mpq_class(q));
}

std::string Rational::str() const {
    return v_.get_str();
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

std::optional<Rational> Rational::parse(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    mpz_class num;
    mpz_class den(1);
    // Base 10 throughout: gmp's base autodetection would read a leading zero
    // (as in the digits of "0.25") as octal.
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view a = s.substr(0, slash);
        std::string_view b = s.substr(slash + 1);
        if (!all_digits(a) || !all_digits(b)) return std::nullopt;
        num = mpz_class(std::string(a), 10);
        den = mpz_class(std::string(b), 10);
        if (den == 0) return std::nullopt;
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view a = s.substr(0, dot);
        std::string_view b = s.substr(dot + 1);
        if (a.empty() && b.empty()) return std::nullopt;
        if (!a.empty() && !all_digits(a)) return std::nullopt;
        if (!b.empty() && !all_digits(b)) return std::nullopt;
        num = mpz_class(std::string(a) + std::string(b), 10);
        mpz_ui_pow_ui(den.get_mpz_t(), 10, b.size());
    } else {
        if (!all_digits(s)) return std::nullopt;
        num = mpz_class(std::string(s), 10);
    }
    mpq_class q(num, den);
    q.canonicalize();
    if (negative) q = -q;
    return Rational(std::move(q));
}

}  // namespace reallot
