#pragma once

// Exact integer / rational substrate. The arbitrary-size arithmetic is
// backed by boost::multiprecision; everything on top (normalization,
// parsing, formatting) keeps the canonical form gcd(num,den)=1, den>0.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "hyperver/errors.hpp"

namespace hyperver {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational rat(long n, long d = 1) { return Rational(n, d); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

inline long to_long(const Int& v) { return v.convert_to<long>(); }

inline long to_long(const Rational& q) {
    if (!is_integer(q)) throw DomainError("to_long: not an integer: " + q.str());
    return to_long(num(q));
}

inline Rational pow_rational(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    const unsigned long m = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational p(boost::multiprecision::pow(num(base), m), boost::multiprecision::pow(den(base), m));
    if (e < 0) {
        if (p == 0) throw DomainError("pow_rational: 0 to negative power");
        p = Rational(1) / p;
    }
    return p;
}

inline std::string to_string(const Rational& q) {
    if (is_integer(q)) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

// Parses "p/q", "p", or a decimal string like "-1.25e-3", exactly.
inline Rational parse_rational(std::string_view s) {
    auto bad = [&] { throw UsageError("cannot parse rational: '" + std::string(s) + "'"); };
    if (s.empty()) bad();
    const auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        try {
            Int n(std::string(s.substr(0, slash)));
            Int d(std::string(s.substr(slash + 1)));
            if (d == 0) bad();
            return Rational(n, d);
        } catch (const std::exception&) {
            bad();
        }
    }
    // decimal form
    size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = (s[i] == '-'), ++i;
    std::string digits;
    long frac_digits = 0;
    bool seen_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            break;
        } else {
            bad();
        }
    }
    long e10 = 0;
    if (i < s.size()) { // exponent part
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i] == '-'), ++i;
        if (i >= s.size()) bad();
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) bad();
            e10 = e10 * 10 + (s[i] - '0');
            if (e10 > 1000000) bad();
        }
        if (eneg) e10 = -e10;
    }
    if (!seen_digit) bad();
    Int n(digits.empty() ? "0" : digits);
    if (neg) n = -n;
    const long p10 = e10 - frac_digits;
    Rational q(n);
    if (p10 > 0) q *= Rational(boost::multiprecision::pow(Int(10), static_cast<unsigned long>(p10)));
    if (p10 < 0) q /= Rational(boost::multiprecision::pow(Int(10), static_cast<unsigned long>(-p10)));
    return q;
}

inline Int factorial_int(unsigned n) {
    Int f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

inline Int binomial_int(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int b = 1;
    for (unsigned i = 1; i <= k; ++i) {
        b *= n - k + i;
        b /= i;
    }
    return b;
}

} // namespace hyperver
