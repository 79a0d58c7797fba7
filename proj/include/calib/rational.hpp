#pragma once

#include <cstdint>
#include <compare>
#include <string>
#include <string_view>

#include "calib/error.hpp"

namespace calib {

/// Exact signed fraction. Always stored in lowest terms with a positive
/// denominator; zero is 0/1. All arithmetic is exact: any result whose
/// reduced numerator or denominator does not fit in 64 bits throws
/// Error{Overflow} instead of rounding or wrapping.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    Rational operator-() const;
    Rational abs() const { return num_ < 0 ? -*this : *this; }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// Canonical text form: "num/den", integers rendered bare ("0", "-3").
    std::string to_string() const;

    /// Decimal rendering with `sig` significant digits (round half up),
    /// trailing zeros trimmed. Exact values shorter than `sig` digits render
    /// exactly ("1/2" -> "0.5").
    std::string to_decimal(int sig = 12) const;

    /// Nearest double; for reporting only.
    double to_double() const;

    /// Accepts "num/den", plain integers, and decimal literals ("0.25").
    static Rational parse(std::string_view text);

private:
    static Rational reduce(__int128 n, __int128 d);

    std::int64_t num_;
    std::int64_t den_;
};

}  // namespace calib
