#pragma once

// Exact integer and rational scalars used throughout the library.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace ltla {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline constexpr std::string_view kEngineVersion = "ltla-1.0.0";

inline BigInt numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Always "num/den", also for integers ("5/1"), so the text form is unambiguous.
inline std::string to_fraction_string(const Rational& q)
{
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

/// Human form: "5" for integers, "3/2" otherwise.
inline std::string to_short_string(const Rational& q)
{
    if (denominator_of(q) == 1) {
        return numerator_of(q).str();
    }
    return to_fraction_string(q);
}

/// Parses "a/b", "a" or "-a/b".
inline Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            return Rational(BigInt(std::string(text)));
        }
        BigInt num(std::string(text.substr(0, slash)));
        BigInt den(std::string(text.substr(slash + 1)));
        if (den == 0) {
            throw std::invalid_argument("zero denominator");
        }
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    }
}

inline bool is_integer(const Rational& q) { return denominator_of(q) == 1; }

inline Rational factorial(unsigned n)
{
    BigInt f = 1;
    for (unsigned i = 2; i <= n; ++i) {
        f *= i;
    }
    return Rational(f);
}

inline BigInt binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    BigInt b = 1;
    for (long i = 1; i <= k; ++i) {
        b *= (n - k + i);
        b /= i;
    }
    return b;
}

namespace detail {

// Rounds |num|/den (den > 0) to an integer, ties to even.
inline BigInt round_half_even(const BigInt& num, const BigInt& den)
{
    BigInt q = num / den;
    BigInt r = num % den;
    const BigInt twice = 2 * r;
    if (twice > den || (twice == den && q % 2 != 0)) {
        q += 1;
    }
    return q;
}

} // namespace detail

/// Exact decimal rendering with `digits` significant digits, ties to even,
/// in the style of printf("%.15g"). Used for every floating display of a
/// rational so output never depends on binary rounding.
inline std::string format_significant(const Rational& value, int digits = 15)
{
    if (value == 0) {
        return "0";
    }
    const bool negative = value < 0;
    BigInt num = boost::multiprecision::abs(numerator_of(value));
    const BigInt den = denominator_of(value);

    // Find exponent e with 10^e <= |value| < 10^(e+1).
    int e = static_cast<int>(num.str().size()) - static_cast<int>(den.str().size());
    auto pow10 = [](int k) {
        BigInt p = 1;
        for (int i = 0; i < k; ++i) {
            p *= 10;
        }
        return p;
    };
    auto ge_pow10 = [&](int k) {
        // |value| >= 10^k
        return k >= 0 ? num >= den * pow10(k) : num * pow10(-k) >= den;
    };
    while (!ge_pow10(e)) {
        --e;
    }
    while (ge_pow10(e + 1)) {
        ++e;
    }

    // mantissa = round(|value| * 10^(digits-1-e))
    const int shift = digits - 1 - e;
    BigInt mantissa = shift >= 0 ? detail::round_half_even(num * pow10(shift), den)
                                 : detail::round_half_even(num, den * pow10(-shift));
    if (mantissa >= pow10(digits)) {
        // Rounding carried into a new digit.
        mantissa /= 10;
        ++e;
    }
    std::string m = mantissa.str();
    std::string out;
    if (e < -5 || e >= digits) {
        std::string frac = m.substr(1);
        while (!frac.empty() && frac.back() == '0') {
            frac.pop_back();
        }
        out = m.substr(0, 1);
        if (!frac.empty()) {
            out += "." + frac;
        }
        const int ae = e < 0 ? -e : e;
        out += std::string(e < 0 ? "e-" : "e+") + (ae < 10 ? "0" : "") + std::to_string(ae);
    } else if (e >= 0) {
        std::string ip = m.substr(0, static_cast<std::size_t>(e) + 1);
        std::string frac = m.substr(static_cast<std::size_t>(e) + 1);
        while (!frac.empty() && frac.back() == '0') {
            frac.pop_back();
        }
        out = frac.empty() ? ip : ip + "." + frac;
    } else {
        std::string frac = std::string(static_cast<std::size_t>(-e - 1), '0') + m;
        while (!frac.empty() && frac.back() == '0') {
            frac.pop_back();
        }
        out = "0." + frac;
    }
    return negative ? "-" + out : out;
}

} // namespace ltla
