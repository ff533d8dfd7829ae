#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qsc {

// Exact rational with int64 parts, always normalized (den > 0, gcd = 1).
// Side ranks and anchor positions stay tiny at desk scale, so no bignum.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rational operator+(const Rational& o) const {
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Rational operator*(const Rational& o) const { return Rational(num_ * o.num_, den_ * o.den_); }
    Rational operator/(const Rational& o) const { return Rational(num_ * o.den_, den_ * o.num_); }
    Rational operator-() const { return Rational(-num_, den_); }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    std::strong_ordering operator<=>(const Rational& o) const {
        // both normalized with positive denominators
        __int128 lhs = static_cast<__int128>(num_) * o.den_;
        __int128 rhs = static_cast<__int128>(o.num_) * den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // Canonical text form: finite decimal when the denominator is 2^a*5^b
    // (at most 9 digits), otherwise "num/den".
    std::string str() const {
        std::int64_t d = den_;
        int twos = 0, fives = 0;
        while (d % 2 == 0) { d /= 2; ++twos; }
        while (d % 5 == 0) { d /= 5; ++fives; }
        int digits = twos > fives ? twos : fives;
        if (d == 1 && digits <= 9) {
            if (digits == 0) return std::to_string(num_);
            std::int64_t scale = 1;
            for (int i = 0; i < digits; ++i) scale *= 10;
            std::int64_t scaled = num_ * (scale / den_);
            bool neg = scaled < 0;
            std::string frac = std::to_string(neg ? -scaled : scaled);
            while (static_cast<int>(frac.size()) < digits) frac.insert(frac.begin(), '0');
            std::string whole = frac.size() > static_cast<size_t>(digits)
                                    ? frac.substr(0, frac.size() - digits)
                                    : std::string("0");
            frac = frac.substr(frac.size() - digits);
            return (neg ? "-" : "") + whole + "." + frac;
        }
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts integers, finite decimals and "p/q".
    static Rational parse(const std::string& text) {
        auto slash = text.find('/');
        if (slash != std::string::npos) {
            std::int64_t n = std::stoll(text.substr(0, slash));
            std::int64_t d = std::stoll(text.substr(slash + 1));
            return Rational(n, d);
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) return Rational(std::stoll(text));
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        if (frac.empty() || frac.size() > 18) throw std::invalid_argument("bad decimal: " + text);
        for (char c : frac)
            if (c < '0' || c > '9') throw std::invalid_argument("bad decimal: " + text);
        bool neg = !whole.empty() && whole[0] == '-';
        std::string wdigits = (neg || (!whole.empty() && whole[0] == '+')) ? whole.substr(1) : whole;
        std::int64_t w = wdigits.empty() ? 0 : std::stoll(wdigits);
        std::int64_t scale = 1;
        for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
        std::int64_t n = w * scale + std::stoll(frac);
        if (neg) n = -n;
        return Rational(n, scale);
    }

  private:
    void normalize() {
        if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_;
    std::int64_t den_;
};

} // namespace qsc
