#pragma once

// Hilbert schemes of points on a surface: classical and refined Goettsche
// products, symmetric powers of a graded character, the partition-indexed
// (Nakajima) assembly, and the BPS numbers n_h(C + gF) for a rational
// elliptic surface.
//
// All characters are centered (shifted Poincare polynomials): a class of
// cohomological degree k on a variety of complex dimension d sits at total
// exponent k - d.

#include "bps/errors.hpp"
#include "bps/laurent.hpp"
#include "bps/qseries.hpp"
#include "bps/sl2.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace bps {

struct BettiVector {
    int b0 = 0, b1 = 0, b2 = 0, b3 = 0, b4 = 0;

    void validate() const
    {
        if (b0 < 0 || b1 < 0 || b2 < 0 || b3 < 0 || b4 < 0)
            throw PreconditionError("Betti numbers must be nonnegative");
        if (b0 != b4 || b1 != b3)
            throw PreconditionError("Betti numbers violate Poincare duality (need b0 = b4, b1 = b3)");
    }

    static BettiVector rational_elliptic() { return {1, 0, 10, 0, 1}; }
};

/// A two-variable character plus a parity on monomials (cohomological degree
/// mod 2). Coefficients count basis vectors. By default the parity of
/// t_L^a t_R^b is (a + b) mod 2.
struct GradedCharacter {
    Laurent2 character;
    std::function<bool(const Laurent2::Exponent&)> is_odd = [](const Laurent2::Exponent& e) {
        return (e[0] + e[1]) % 2 != 0;
    };
};

/// (t_L t_R)^{-1} + t_L t_R + t_L t_R^{-1} + t_L^{-1} t_R + 8.
inline Laurent2 rational_elliptic_character()
{
    Laurent2 p(8);
    p.add_term({-1, -1}, 1);
    p.add_term({1, 1}, 1);
    p.add_term({1, -1}, 1);
    p.add_term({-1, 1}, 1);
    return p;
}

struct Partition {
    std::vector<int> parts; // nonincreasing, positive

    int size() const
    {
        int s = 0;
        for (int p : parts)
            s += p;
        return s;
    }
    int length() const { return static_cast<int>(parts.size()); }

    /// alpha_i = #{l : parts_l = i}, for i = 1..size().
    std::vector<int> multiplicities() const
    {
        std::vector<int> alpha(static_cast<std::size_t>(size() + 1), 0);
        for (int p : parts)
            ++alpha[static_cast<std::size_t>(p)];
        return alpha;
    }
};

/// All partitions of n in reverse lexicographic order; n = 0 yields the empty partition.
inline std::vector<Partition> partitions(int n)
{
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.push_back({cur});
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

namespace detail {

template <std::size_t V>
std::function<std::vector<LaurentPoly<V>>(std::size_t)> linear_factor(const LaurentPoly<V>& coefficient)
{
    return [coefficient](std::size_t) { return std::vector<LaurentPoly<V>>{LaurentPoly<V>(1), coefficient}; };
}

} // namespace detail

/// sum_g P_t(Y^[g]) q^g =
///   prod_n (1 + t^-1 q^n)^b1 (1 + t q^n)^b3 / ((1 - t^-2 q^n)^b0 (1 - t^2 q^n)^b4 (1 - q^n)^b2).
inline QSeries<Laurent1> goettsche_series(const BettiVector& b, std::size_t g_max)
{
    b.validate();
    using detail::linear_factor;
    auto prod = geom_factor_product<Laurent1>(linear_factor(Laurent1::monomial(-1)), b.b1, g_max);
    prod *= geom_factor_product<Laurent1>(linear_factor(Laurent1::monomial(1)), b.b3, g_max);
    prod *= geom_factor_product<Laurent1>(linear_factor(Laurent1::monomial(-2, Rational(-1))), -b.b0, g_max);
    prod *= geom_factor_product<Laurent1>(linear_factor(Laurent1::monomial(2, Rational(-1))), -b.b4, g_max);
    prod *= geom_factor_product<Laurent1>(linear_factor(Laurent1(-1)), -b.b2, g_max);
    return prod;
}

/// Refined product for the rational elliptic surface:
///   prod_n 1 / ((1 - (tL tR)^-1 q^n)(1 - tL tR q^n)(1 - tL tR^-1 q^n)(1 - tL^-1 tR q^n)(1 - q^n)^8).
inline QSeries<Laurent2> refined_goettsche_res(std::size_t g_max)
{
    using detail::linear_factor;
    auto factor = [&](int a, int b) {
        return geom_factor_product<Laurent2>(linear_factor(Laurent2::monomial({a, b}, Rational(-1))), -1, g_max);
    };
    auto prod = factor(-1, -1) * factor(1, 1) * factor(1, -1) * factor(-1, 1);
    prod *= geom_factor_product<Laurent2>(linear_factor(Laurent2(-1)), -8, g_max);
    return prod;
}

/// sum_n P(Sym^n) q^n = prod_{even m} (1 - m q)^{-c_m} prod_{odd m} (1 + m q)^{c_m}.
inline QSeries<Laurent2> sym_power_series(const GradedCharacter& c, std::size_t n_max)
{
    auto prod = QSeries<Laurent2>::constant(Laurent2(1), n_max);
    for (const auto& [e, coeff] : c.character.terms()) {
        if (!is_integer(coeff))
            throw NonIntegerCoefficient("graded character must have integer coefficients");
        const long count = static_cast<long>(numerator(coeff));
        const bool odd = c.is_odd(e);
        auto base = QSeries<Laurent2>::constant(Laurent2(1), n_max) +
                    QSeries<Laurent2>::monomial(Laurent2::monomial(e, odd ? Rational(1) : Rational(-1)), 1, n_max);
        prod *= pow(base, odd ? count : -count);
    }
    return prod;
}

/// sum over partitions nu of n of the characters of
/// Sym^{alpha_1}(S) x ... x Sym^{alpha_n}(S), each multiplied by
/// (tL tR)^{shift (l(nu) - n)}. In the centered grading the strata already
/// line up with S^[n], so the default shift is 0.
inline QSeries<Laurent2> nakajima_assembly(const GradedCharacter& c, std::size_t g_max, int shift = 0)
{
    const QSeries<Laurent2> sym = sym_power_series(c, g_max);
    std::vector<Laurent2> out;
    out.reserve(g_max + 1);
    for (std::size_t n = 0; n <= g_max; ++n) {
        Laurent2 total;
        for (const Partition& nu : partitions(static_cast<int>(n))) {
            Laurent2 term(1);
            const auto alpha = nu.multiplicities();
            for (std::size_t i = 1; i < alpha.size(); ++i)
                if (alpha[i] > 0)
                    term = term * sym[static_cast<std::size_t>(alpha[i])];
            const int s = shift * (nu.length() - static_cast<int>(n));
            total += term.shifted({s, s});
        }
        out.push_back(std::move(total));
    }
    return QSeries<Laurent2>(std::move(out));
}

/// u^{-1} prod_n 1 / ((1 - y^-1 q^n)^2 (1 - y q^n)^2 (1 - q^n)^8), returned without
/// the u^{-1}: the q^g coefficient P_g(y) equals sum_h n_h(C + gF) u^h.
inline QSeries<Laurent1> rational_elliptic_product_side(std::size_t g_max)
{
    using detail::linear_factor;
    auto prod = geom_factor_product<Laurent1>(linear_factor(Laurent1::monomial(-1, Rational(-1))), -2, g_max);
    prod *= geom_factor_product<Laurent1>(linear_factor(Laurent1::monomial(1, Rational(-1))), -2, g_max);
    prod *= geom_factor_product<Laurent1>(linear_factor(Laurent1(-1)), -8, g_max);
    return prod;
}

using BPSByGenus = std::map<std::pair<int, int>, BigInt>; // (g, h) -> n_h(C + gF)

/// n_h(C + gF) from the product side, by expanding each q^g coefficient in u.
inline BPSByGenus bps_from_product_side(std::size_t g_max)
{
    BPSByGenus out;
    const auto prod = rational_elliptic_product_side(g_max);
    for (std::size_t g = 0; g <= g_max; ++g)
        for (const auto& [h, c] : u_expand(prod[g])) {
            if (!is_integer(c))
                throw NonIntegerCoefficient("product side has a non-integer u-coefficient");
            if (c != 0)
                out[{static_cast<int>(g), h}] = numerator(c);
        }
    return out;
}

/// n_h(C + gF) from the refined Goettsche characters via bps_from_character,
/// cross-checked against the product side.
inline BPSByGenus bps_rational_elliptic(std::size_t g_max)
{
    const auto refined = refined_goettsche_res(g_max);
    BPSByGenus out;
    for (std::size_t g = 0; g <= g_max; ++g)
        for (const auto& [h, n] : bps_from_character(refined[g]))
            out[{static_cast<int>(g), h}] = n;
    const auto check = bps_from_product_side(g_max);
    if (check != out)
        throw MismatchAgainstProduct("BPS numbers from the refined characters disagree with the product side");
    return out;
}

} // namespace bps
