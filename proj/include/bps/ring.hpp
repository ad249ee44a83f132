#pragma once

// Coefficient-ring customization points. Every ring usable inside QSeries
// provides these as free functions (found by ADL or declared here for
// Rational).

#include "bps/rational.hpp"

#include <concepts>
#include <optional>

namespace bps {

inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline bool is_zero(const Rational& r) { return r == 0; }
inline Rational scale(const Rational& r, const Rational& s) { return r * s; }
inline std::optional<Rational> unit_inverse(const Rational& r)
{
    if (r == 0)
        return std::nullopt;
    return Rational(1) / r;
}

template <class R>
concept CoefficientRing = std::copyable<R> && requires(const R& a, const R& b, const Rational& s) {
    { a + b } -> std::convertible_to<R>;
    { a - b } -> std::convertible_to<R>;
    { a * b } -> std::convertible_to<R>;
    { -a } -> std::convertible_to<R>;
    { a == b } -> std::convertible_to<bool>;
    { zero_like(a) } -> std::convertible_to<R>;
    { one_like(a) } -> std::convertible_to<R>;
    { is_zero(a) } -> std::convertible_to<bool>;
    { scale(a, s) } -> std::convertible_to<R>;
    { unit_inverse(a) } -> std::convertible_to<std::optional<R>>;
};

} // namespace bps
