#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bps {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline Rational make_rational(std::int64_t p, std::int64_t q = 1)
{
    if (q == 0)
        throw std::domain_error("zero denominator");
    return Rational(BigInt(p), BigInt(q));
}

/// Canonical wire form: always "p/q", q > 0, gcd(p, q) = 1.
inline std::string to_string(const Rational& r)
{
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Short form used in human-facing output: "p" for integers, "p/q" otherwise.
inline std::string to_short_string(const Rational& r)
{
    if (is_integer(r))
        return numerator(r).str();
    return to_string(r);
}

/// Accepts "p/q" or "p" with an optional leading sign.
inline Rational parse_rational(std::string_view text)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
            s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
            s.remove_suffix(1);
        return s;
    };
    auto valid_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+'))
            s.remove_prefix(1);
        if (s.empty())
            return false;
        for (char c : s)
            if (c < '0' || c > '9')
                return false;
        return true;
    };
    auto as_int = [&](std::string_view s) {
        s = trim(s);
        if (!valid_int(s))
            throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
        if (s.front() == '+')
            s.remove_prefix(1);
        return BigInt(std::string(s));
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(as_int(text));
    BigInt den = as_int(text.substr(slash + 1));
    if (den == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(as_int(text.substr(0, slash)), den);
}

inline BigInt binomial(unsigned n, unsigned k)
{
    if (k > n)
        return 0;
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

inline BigInt factorial(unsigned n)
{
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i)
        r *= i;
    return r;
}

} // namespace bps
