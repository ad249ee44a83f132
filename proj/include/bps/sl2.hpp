#pragma once

// Character algebra of virtual sl2 and sl2 x sl2 representations.
//
// Spins are stored doubled (key 2j) so every key is an integer. The variable
// t carries weight t^{2H}; a spin-j ladder contributes t^{2j}, t^{2j-2}, ...,
// t^{-2j}, each with sign (-1)^{2j} in the signed character.

#include "bps/errors.hpp"
#include "bps/laurent.hpp"
#include "bps/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <iterator>
#include <stdexcept>
#include <map>
#include <string>
#include <utility>

namespace bps {

/// Virtual multiplicities keyed by doubled spin 2j >= 0. No zero entries.
class SpinDecomp {
public:
    using Map = std::map<int, BigInt>;

    SpinDecomp() = default;
    SpinDecomp(std::initializer_list<std::pair<const int, BigInt>> init)
    {
        for (const auto& [k, m] : init)
            add(k, m);
    }

    void add(int twice_spin, const BigInt& m)
    {
        if (twice_spin < 0)
            throw std::invalid_argument("negative spin");
        if (m == 0)
            return;
        auto [it, inserted] = mult_.try_emplace(twice_spin, m);
        if (!inserted) {
            it->second += m;
            if (it->second == 0)
                mult_.erase(it);
        }
    }

    BigInt multiplicity(int twice_spin) const
    {
        auto it = mult_.find(twice_spin);
        return it == mult_.end() ? BigInt(0) : it->second;
    }

    const Map& multiplicities() const { return mult_; }
    bool empty() const { return mult_.empty(); }
    friend bool operator==(const SpinDecomp&, const SpinDecomp&) = default;

private:
    Map mult_;
};

/// Virtual multiplicities keyed by (2j_L, 2j_R).
class BiSpinDecomp {
public:
    using Key = std::pair<int, int>;
    using Map = std::map<Key, BigInt>;

    BiSpinDecomp() = default;
    BiSpinDecomp(std::initializer_list<std::pair<const Key, BigInt>> init)
    {
        for (const auto& [k, m] : init)
            add(k, m);
    }

    void add(const Key& k, const BigInt& m)
    {
        if (k.first < 0 || k.second < 0)
            throw std::invalid_argument("negative spin");
        if (m == 0)
            return;
        auto [it, inserted] = mult_.try_emplace(k, m);
        if (!inserted) {
            it->second += m;
            if (it->second == 0)
                mult_.erase(it);
        }
    }

    const Map& multiplicities() const { return mult_; }
    friend bool operator==(const BiSpinDecomp&, const BiSpinDecomp&) = default;

private:
    Map mult_;
};

/// h -> R_h, the (virtual) right factor paired with I_h on the left.
using IBasisDecomp = std::map<int, SpinDecomp>;

/// Signed character of the single spin (2j/2) ladder.
inline Laurent1 signed_spin_char(int twice_spin)
{
    Laurent1 p;
    const Rational sign = twice_spin % 2 == 0 ? Rational(1) : Rational(-1);
    for (int e = -twice_spin; e <= twice_spin; e += 2)
        p.add_term({e}, sign);
    return p;
}

inline Laurent1 signed_char(const SpinDecomp& d)
{
    Laurent1 p;
    for (const auto& [s, m] : d.multiplicities())
        p += signed_spin_char(s).scaled(Rational(m));
    return p;
}

inline Laurent2 signed_char(const BiSpinDecomp& d)
{
    Laurent2 p;
    for (const auto& [k, m] : d.multiplicities())
        p += (embed(signed_spin_char(k.first), 0) * embed(signed_spin_char(k.second), 1)).scaled(Rational(m));
    return p;
}

/// char(I_1) = 2 - t - t^{-1}.
inline Laurent1 u_polynomial()
{
    Laurent1 u(2);
    u.add_term({1}, Rational(-1));
    u.add_term({-1}, Rational(-1));
    return u;
}

/// char(I_h) = (2 - t - t^{-1})^h.
inline Laurent1 i_basis_char(unsigned h) { return pow(u_polynomial(), h); }

namespace detail {

inline void require_symmetric_integer(const Laurent1& p)
{
    if (!p.is_symmetric(0))
        throw NotSymmetric("character is not symmetric under t <-> 1/t: " + p.str());
    if (!p.has_integer_coefficients())
        throw NonIntegerCoefficient("character has non-integer coefficients: " + p.str());
}

inline void require_symmetric_integer(const Laurent2& p)
{
    if (!p.is_symmetric(0) || !p.is_symmetric(1))
        throw NotSymmetric("bigraded character is not symmetric in each variable: " + p.str());
    if (!p.has_integer_coefficients())
        throw NonIntegerCoefficient("bigraded character has non-integer coefficients: " + p.str());
}

} // namespace detail

/// Unique virtual spin content of a symmetric integer character, peeled from
/// the top exponent downward.
inline SpinDecomp decompose_spins(const Laurent1& p)
{
    detail::require_symmetric_integer(p);
    SpinDecomp d;
    Laurent1 rest = p;
    while (!rest.empty()) {
        const int top = *rest.max_exponent(0);
        const Rational c = rest.coefficient(top);
        const Rational m = top % 2 == 0 ? c : Rational(-c);
        d.add(top, numerator(m));
        rest -= signed_spin_char(top).scaled(m);
    }
    return d;
}

/// Coefficients c_h with p = sum_h c_h (2 - t - t^{-1})^h for a symmetric
/// Laurent polynomial p. The top term of u^h is (-t)^h, which makes the
/// expansion triangular.
inline std::map<int, Rational> u_expand(const Laurent1& p)
{
    if (!p.is_symmetric(0))
        throw NotSymmetric("u-expansion needs a symmetric polynomial: " + p.str());
    std::map<int, Rational> out;
    Laurent1 rest = p;
    while (!rest.empty()) {
        const int top = *rest.max_exponent(0);
        const Rational c = rest.coefficient(top);
        const Rational coeff = top % 2 == 0 ? c : Rational(-c);
        out[top] = coeff;
        rest -= i_basis_char(static_cast<unsigned>(top)).scaled(coeff);
    }
    return out;
}

/// (j) = sum_r alpha_r I_r with integer alpha_r.
inline std::map<int, BigInt> spin_to_I_basis(const SpinDecomp& d)
{
    std::map<int, BigInt> out;
    for (const auto& [h, c] : u_expand(signed_char(d)))
        out[h] = numerator(c);
    return out;
}

/// Decompose in t_L with Laurent-in-t_R coefficients, then each coefficient in t_R.
inline BiSpinDecomp bi_decompose(const Laurent2& p)
{
    detail::require_symmetric_integer(p);
    BiSpinDecomp d;
    Laurent2 rest = p;
    while (!rest.empty()) {
        const int top = *rest.max_exponent(0);
        Laurent1 right;
        for (const auto& [e, c] : rest.terms())
            if (e[0] == top)
                right.add_term({e[1]}, c);
        if (top % 2 != 0)
            right = -right;
        const SpinDecomp row = decompose_spins(right);
        for (const auto& [s, m] : row.multiplicities())
            d.add({top, s}, m);
        rest -= embed(signed_spin_char(top), 0) * embed(right, 1);
    }
    return d;
}

/// H = sum_h I_h (x) R_h from a bi-spin decomposition.
inline IBasisDecomp to_I_basis(const BiSpinDecomp& d)
{
    IBasisDecomp out;
    for (const auto& [k, m] : d.multiplicities()) {
        SpinDecomp left;
        left.add(k.first, 1);
        for (const auto& [h, c] : spin_to_I_basis(left))
            out[h].add(k.second, c * m);
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.empty() ? out.erase(it) : std::next(it);
    return out;
}

/// Tr_{R}(-1)^{2H_R}: the signed character at t = 1.
inline BigInt signed_trace(const SpinDecomp& r)
{
    BigInt s = 0;
    for (const auto& [twice_spin, m] : r.multiplicities()) {
        const BigInt dim = twice_spin + 1;
        s += twice_spin % 2 == 0 ? BigInt(m * dim) : BigInt(-m * dim);
    }
    return s;
}

/// n_h by bi-spin peeling and the I_h basis on the left factor.
inline std::map<int, BigInt> bps_via_bispin(const Laurent2& p)
{
    std::map<int, BigInt> out;
    for (const auto& [h, r] : to_I_basis(bi_decompose(p))) {
        BigInt n = signed_trace(r);
        if (n != 0)
            out[h] = n;
    }
    return out;
}

/// n_h by setting t_R = 1 first and expanding in u = 2 - t_L - t_L^{-1}.
inline std::map<int, BigInt> bps_via_specialization(const Laurent2& p)
{
    detail::require_symmetric_integer(p);
    std::map<int, BigInt> out;
    for (const auto& [h, c] : u_expand(specialize_other_to_one(p, 0))) {
        if (!is_integer(c))
            throw NonIntegerCoefficient("u-expansion produced a non-integer coefficient");
        if (c != 0)
            out[h] = numerator(c);
    }
    return out;
}

/// n_h = Tr_{R_h}(-1)^{2H_R}. Both computation paths are run and must agree.
inline std::map<int, BigInt> bps_from_character(const Laurent2& p)
{
    auto a = bps_via_bispin(p);
    auto b = bps_via_specialization(p);
    if (a != b)
        throw VerificationError("bi-spin and specialization routes disagree for character " + p.str());
    return a;
}

/// "2j/2" for spin j.
inline std::string spin_label(int twice_spin) { return std::to_string(twice_spin) + "/2"; }

inline int parse_spin_label(const std::string& s)
{
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        const int j = std::stoi(s);
        if (j < 0)
            throw std::invalid_argument("negative spin '" + s + "'");
        return 2 * j;
    }
    const int num = std::stoi(s.substr(0, slash));
    const int den = std::stoi(s.substr(slash + 1));
    if (den != 2 && den != 1)
        throw std::invalid_argument("spin label must be 2j/2: '" + s + "'");
    const int twice = den == 2 ? num : 2 * num;
    if (twice < 0)
        throw std::invalid_argument("negative spin '" + s + "'");
    return twice;
}

} // namespace bps
