#include "calib/rational.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>

namespace calib {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 uabs(i128 v) { return v < 0 ? u128(-(v + 1)) + 1 : u128(v); }

u128 gcd_u128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr i128 kI64Min = std::numeric_limits<std::int64_t>::min();
constexpr i128 kI64Max = std::numeric_limits<std::int64_t>::max();

}  // namespace

Rational Rational::reduce(i128 n, i128 d) {
    if (d == 0) raise(ErrorKind::InvalidArgument, "rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (n == 0) d = 1;
    u128 g = gcd_u128(uabs(n), u128(d));
    if (g > 1) {
        n /= i128(g);
        d /= i128(g);
    }
    if (n < kI64Min || n > kI64Max || d > kI64Max)
        raise(ErrorKind::Overflow, "rational arithmetic overflowed 64 bits");
    Rational r;
    r.num_ = std::int64_t(n);
    r.den_ = std::int64_t(d);
    return r;
}

Rational::Rational(std::int64_t n, std::int64_t d) { *this = reduce(n, d); }

Rational Rational::operator-() const { return reduce(-i128(num_), den_); }

Rational operator+(const Rational& a, const Rational& b) {
    return Rational::reduce(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                            i128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational::reduce(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                            i128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational::reduce(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) raise(ErrorKind::InvalidArgument, "rational division by zero");
    return Rational::reduce(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    i128 lhs = i128(a.num_) * b.den_;
    i128 rhs = i128(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) {
        s += '/';
        s += std::to_string(den_);
    }
    return s;
}

std::string Rational::to_decimal(int sig) const {
    if (sig < 1) raise(ErrorKind::InvalidArgument, "significant digits must be >= 1");
    if (num_ == 0) return "0";

    u128 n = uabs(num_);
    u128 d = u128(den_);

    // count digits of the integer part
    int int_digits = 0;
    for (u128 ip = n / d; ip > 0; ip /= 10) ++int_digits;

    int frac_digits = sig - (int_digits == 0 ? 0 : int_digits);
    if (frac_digits < 0) frac_digits = 0;
    if (int_digits == 0) {
        // leading fractional zeros do not count as significant digits
        u128 x = n;
        while (x * 10 < d) {
            x *= 10;
            ++frac_digits;
            if (frac_digits > 64) break;  // pathological tiny value guard
        }
    }

    u128 scale = 1;
    for (int i = 0; i < frac_digits; ++i) scale *= 10;

    // round half up: floor((2*n*scale + d) / (2*d))
    u128 scaled = (2 * n * scale + d) / (2 * d);

    std::string digits;
    if (scaled == 0) digits = "0";
    while (scaled > 0) {
        digits.insert(digits.begin(), char('0' + int(scaled % 10)));
        scaled /= 10;
    }
    while (int(digits.size()) <= frac_digits) digits.insert(digits.begin(), '0');

    std::string out;
    if (num_ < 0) out += '-';
    out += digits.substr(0, digits.size() - frac_digits);
    if (frac_digits > 0) {
        std::string frac = digits.substr(digits.size() - frac_digits);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) {
            out += '.';
            out += frac;
        }
    }
    return out;
}

double Rational::to_double() const {
    return double(num_) / double(den_);
}

Rational Rational::parse(std::string_view text) {
    auto fail = [&]() -> Rational {
        raise(ErrorKind::Parse, "cannot parse rational: '" + std::string(text) + "'");
    };
    if (text.empty()) return fail();

    auto parse_i64 = [&](std::string_view s, std::int64_t& out) {
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc() && ptr == s.data() + s.size();
    };

    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        std::int64_t n, d;
        if (!parse_i64(text.substr(0, slash), n) || !parse_i64(text.substr(slash + 1), d) || d <= 0)
            return fail();
        return Rational(n, d);
    }

    auto dot = text.find('.');
    if (dot != std::string_view::npos) {
        bool neg = text.front() == '-';
        std::string_view body = neg ? text.substr(1) : text;
        auto bdot = body.find('.');
        std::string_view ip = body.substr(0, bdot);
        std::string_view fp = body.substr(bdot + 1);
        if (ip.empty() && fp.empty()) return fail();
        i128 n = 0;
        i128 d = 1;
        for (char c : ip) {
            if (c < '0' || c > '9') return fail();
            n = n * 10 + (c - '0');
            if (n > i128(1) << 100) return fail();
        }
        for (char c : fp) {
            if (c < '0' || c > '9') return fail();
            n = n * 10 + (c - '0');
            d *= 10;
            if (d > i128(1) << 100) return fail();
        }
        return reduce(neg ? -n : n, d);
    }

    std::int64_t n;
    if (!parse_i64(text, n)) return fail();
    return Rational(n);
}

}  // namespace calib
