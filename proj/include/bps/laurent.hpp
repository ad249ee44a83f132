#pragma once

#include "bps/errors.hpp"
#include "bps/rational.hpp"
#include "bps/ring.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

namespace bps {

/// Finite-support Laurent polynomial in `Vars` commuting variables with exact
/// rational coefficients. For sl2 characters the exponent of t is 2H, so every
/// weight is an integer exponent. Zero coefficients are never stored.
template <std::size_t Vars>
class LaurentPoly {
    static_assert(Vars >= 1);

public:
    using Exponent = std::array<int, Vars>;
    using TermMap = std::map<Exponent, Rational>;

    LaurentPoly() = default;
    LaurentPoly(int c) : LaurentPoly(Rational(c)) {}
    LaurentPoly(const Rational& c)
    {
        if (c != 0)
            terms_.emplace(Exponent{}, c);
    }

    static LaurentPoly monomial(const Exponent& e, const Rational& c = Rational(1))
    {
        LaurentPoly p;
        if (c != 0)
            p.terms_.emplace(e, c);
        return p;
    }

    /// Single-variable convenience: c * t^e.
    static LaurentPoly monomial(int e, const Rational& c = Rational(1))
        requires(Vars == 1)
    {
        return monomial(Exponent{e}, c);
    }

    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(const Exponent& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational coefficient(int e) const
        requires(Vars == 1)
    {
        return coefficient(Exponent{e});
    }

    void add_term(const Exponent& e, const Rational& c)
    {
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o)
    {
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o)
    {
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator-(const LaurentPoly& a)
    {
        LaurentPoly r;
        for (const auto& [e, c] : a.terms_)
            r.terms_.emplace(e, -c);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
    {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponent e;
                for (std::size_t i = 0; i < Vars; ++i)
                    e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

    LaurentPoly scaled(const Rational& s) const
    {
        if (s == 0)
            return {};
        LaurentPoly r = *this;
        for (auto& [e, c] : r.terms_)
            c *= s;
        return r;
    }

    /// Multiply by the monomial t^shift.
    LaurentPoly shifted(const Exponent& shift) const
    {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) {
            Exponent f;
            for (std::size_t i = 0; i < Vars; ++i)
                f[i] = e[i] + shift[i];
            r.terms_.emplace(f, c);
        }
        return r;
    }

    /// Exponent vector map: each term t^e becomes t'^{f(e)} in `Out` variables.
    template <std::size_t Out, class F>
    LaurentPoly<Out> map_exponents(F&& f) const
    {
        LaurentPoly<Out> r;
        for (const auto& [e, c] : terms_)
            r.add_term(f(e), c);
        return r;
    }

    /// t_i -> t_i^{-1} for variable i.
    LaurentPoly inverted(std::size_t var) const
    {
        return map_exponents<Vars>([var](Exponent e) {
            e[var] = -e[var];
            return e;
        });
    }

    bool is_symmetric(std::size_t var) const { return inverted(var) == *this; }

    bool has_integer_coefficients() const
    {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return is_integer(t.second); });
    }

    /// Sum of all coefficients (every variable set to 1).
    Rational at_one() const
    {
        Rational s = 0;
        for (const auto& [e, c] : terms_)
            s += c;
        return s;
    }

    std::optional<int> max_exponent(std::size_t var) const
    {
        std::optional<int> m;
        for (const auto& [e, c] : terms_)
            if (!m || e[var] > *m)
                m = e[var];
        return m;
    }

    std::string str(const std::array<std::string, Vars>& names) const
    {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            Rational mag = c < 0 ? Rational(-c) : c;
            if (!first)
                os << (c < 0 ? " - " : " + ");
            else if (c < 0)
                os << "-";
            first = false;
            bool constant = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
            if (mag != 1 || constant)
                os << to_short_string(mag);
            for (std::size_t i = 0; i < Vars; ++i) {
                if (e[i] == 0)
                    continue;
                os << names[i];
                if (e[i] != 1)
                    os << "^" << e[i];
            }
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }

    std::string str() const
    {
        std::array<std::string, Vars> names;
        if constexpr (Vars == 1)
            names = {"t"};
        else if constexpr (Vars == 2)
            names = {"tL", "tR"};
        else
            for (std::size_t i = 0; i < Vars; ++i)
                names[i] = "t" + std::to_string(i);
        return str(names);
    }

private:
    TermMap terms_;
};

using Laurent1 = LaurentPoly<1>;
using Laurent2 = LaurentPoly<2>;

template <std::size_t V>
LaurentPoly<V> zero_like(const LaurentPoly<V>&)
{
    return {};
}
template <std::size_t V>
LaurentPoly<V> one_like(const LaurentPoly<V>&)
{
    return LaurentPoly<V>(1);
}
template <std::size_t V>
bool is_zero(const LaurentPoly<V>& p)
{
    return p.empty();
}
template <std::size_t V>
LaurentPoly<V> scale(const LaurentPoly<V>& p, const Rational& s)
{
    return p.scaled(s);
}
/// Units of a Laurent ring over a field are the nonzero monomials.
template <std::size_t V>
std::optional<LaurentPoly<V>> unit_inverse(const LaurentPoly<V>& p)
{
    if (p.size() != 1)
        return std::nullopt;
    const auto& [e, c] = *p.terms().begin();
    typename LaurentPoly<V>::Exponent inv;
    for (std::size_t i = 0; i < V; ++i)
        inv[i] = -e[i];
    return LaurentPoly<V>::monomial(inv, Rational(1) / c);
}

template <std::size_t V>
LaurentPoly<V> pow(const LaurentPoly<V>& base, unsigned e)
{
    LaurentPoly<V> r(1), b = base;
    while (e) {
        if (e & 1U)
            r = r * b;
        e >>= 1U;
        if (e)
            b = b * b;
    }
    return r;
}

/// (t_L, t_R) -> (t, t).
inline Laurent1 diagonal(const Laurent2& p)
{
    return p.map_exponents<1>([](const Laurent2::Exponent& e) { return Laurent1::Exponent{e[0] + e[1]}; });
}

/// Keep variable `keep`, set the other to 1.
inline Laurent1 specialize_other_to_one(const Laurent2& p, std::size_t keep)
{
    return p.map_exponents<1>([keep](const Laurent2::Exponent& e) { return Laurent1::Exponent{e[keep]}; });
}

/// Embed a one-variable polynomial as the `var` slot of a two-variable one.
inline Laurent2 embed(const Laurent1& p, std::size_t var)
{
    return p.map_exponents<2>([var](const Laurent1::Exponent& e) {
        Laurent2::Exponent f{0, 0};
        f[var] = e[0];
        return f;
    });
}

inline Laurent2 swap_variables(const Laurent2& p)
{
    return p.map_exponents<2>([](const Laurent2::Exponent& e) { return Laurent2::Exponent{e[1], e[0]}; });
}

} // namespace bps
