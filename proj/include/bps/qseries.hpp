#pragma once

// Truncated formal power series in one variable over a pluggable exact
// coefficient ring.

#include "bps/errors.hpp"
#include "bps/rational.hpp"
#include "bps/ring.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace bps {

/// Coefficients of q^0..q^order are stored densely and are all meaningful.
/// Binary operations truncate to the smaller order of the two operands.
template <CoefficientRing R>
class QSeries {
public:
    explicit QSeries(std::vector<R> coeffs) : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty())
            throw std::invalid_argument("QSeries needs at least the constant coefficient");
    }

    static QSeries constant(const R& c, std::size_t order)
    {
        std::vector<R> v(order + 1, zero_like(c));
        v[0] = c;
        return QSeries(std::move(v));
    }

    /// c * q^power, truncated at `order` (zero if power > order).
    static QSeries monomial(const R& c, std::size_t power, std::size_t order)
    {
        std::vector<R> v(order + 1, zero_like(c));
        if (power <= order)
            v[power] = c;
        return QSeries(std::move(v));
    }

    std::size_t order() const { return coeffs_.size() - 1; }
    const R& operator[](std::size_t k) const { return coeffs_.at(k); }
    const std::vector<R>& coeffs() const { return coeffs_; }

    QSeries truncated(std::size_t order) const
    {
        if (order > this->order())
            throw InsufficientTruncation("cannot extend a series of order " + std::to_string(this->order()) + " to " +
                                         std::to_string(order));
        return QSeries(std::vector<R>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(order + 1)));
    }

    /// q -> q^n, keeping the order.
    QSeries substitute_power(std::size_t n) const
    {
        if (n == 0)
            throw std::invalid_argument("substitute_power needs n >= 1");
        std::vector<R> v(coeffs_.size(), zero_like(coeffs_[0]));
        for (std::size_t k = 0; k * n <= order(); ++k)
            v[k * n] = coeffs_[k];
        return QSeries(std::move(v));
    }

    /// Apply a coefficient map (e.g. a specialization of Laurent variables).
    template <class F>
    auto map(F&& f) const
    {
        using Out = std::decay_t<decltype(f(coeffs_[0]))>;
        std::vector<Out> v;
        v.reserve(coeffs_.size());
        for (const auto& c : coeffs_)
            v.push_back(f(c));
        return QSeries<Out>(std::move(v));
    }

    QSeries scaled(const Rational& s) const
    {
        return map([&s](const R& c) { return scale(c, s); });
    }

    friend QSeries operator+(const QSeries& a, const QSeries& b)
    {
        const std::size_t n = std::min(a.order(), b.order());
        std::vector<R> v;
        v.reserve(n + 1);
        for (std::size_t k = 0; k <= n; ++k)
            v.push_back(a.coeffs_[k] + b.coeffs_[k]);
        return QSeries(std::move(v));
    }
    friend QSeries operator-(const QSeries& a, const QSeries& b)
    {
        const std::size_t n = std::min(a.order(), b.order());
        std::vector<R> v;
        v.reserve(n + 1);
        for (std::size_t k = 0; k <= n; ++k)
            v.push_back(a.coeffs_[k] - b.coeffs_[k]);
        return QSeries(std::move(v));
    }
    friend QSeries operator-(const QSeries& a)
    {
        return a.map([](const R& c) { return R(-c); });
    }
    friend QSeries operator*(const QSeries& a, const QSeries& b)
    {
        const std::size_t n = std::min(a.order(), b.order());
        std::vector<R> v(n + 1, zero_like(a.coeffs_[0]));
        for (std::size_t i = 0; i <= n; ++i) {
            if (is_zero(a.coeffs_[i]))
                continue;
            for (std::size_t j = 0; i + j <= n; ++j) {
                if (is_zero(b.coeffs_[j]))
                    continue;
                v[i + j] = v[i + j] + a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return QSeries(std::move(v));
    }
    QSeries& operator+=(const QSeries& o) { return *this = *this + o; }
    QSeries& operator-=(const QSeries& o) { return *this = *this - o; }
    QSeries& operator*=(const QSeries& o) { return *this = *this * o; }

    /// Equality compares order as well as coefficients.
    friend bool operator==(const QSeries& a, const QSeries& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::vector<R> coeffs_;
};

template <CoefficientRing R>
QSeries<R> zero_like(const QSeries<R>& s)
{
    return QSeries<R>::constant(zero_like(s[0]), s.order());
}
template <CoefficientRing R>
QSeries<R> one_like(const QSeries<R>& s)
{
    return QSeries<R>::constant(one_like(s[0]), s.order());
}
template <CoefficientRing R>
bool is_zero(const QSeries<R>& s)
{
    return std::all_of(s.coeffs().begin(), s.coeffs().end(), [](const R& c) { return is_zero(c); });
}
template <CoefficientRing R>
QSeries<R> scale(const QSeries<R>& s, const Rational& f)
{
    return s.scaled(f);
}

template <CoefficientRing R>
QSeries<R> series_inv(const QSeries<R>& a);

/// A series is a unit of R[[q]] exactly when its constant term is a unit of R.
template <CoefficientRing R>
std::optional<QSeries<R>> unit_inverse(const QSeries<R>& s)
{
    if (!unit_inverse(s[0]))
        return std::nullopt;
    return series_inv(s);
}

template <CoefficientRing R>
QSeries<R> series_inv(const QSeries<R>& a)
{
    auto b0 = unit_inverse(a[0]);
    if (!b0)
        throw NonUnitConstantTerm();
    const std::size_t n = a.order();
    std::vector<R> b(n + 1, zero_like(a[0]));
    b[0] = *b0;
    for (std::size_t k = 1; k <= n; ++k) {
        R acc = zero_like(a[0]);
        for (std::size_t i = 1; i <= k; ++i)
            if (!is_zero(a[i]) && !is_zero(b[k - i]))
                acc = acc + a[i] * b[k - i];
        b[k] = -(*b0 * acc);
    }
    return QSeries<R>(std::move(b));
}

/// exp(a) for a with vanishing constant term, via n g_n = sum_k k a_k g_{n-k}.
template <CoefficientRing R>
QSeries<R> series_exp(const QSeries<R>& a)
{
    if (!is_zero(a[0]))
        throw BadConstantTerm("series_exp needs constant term 0");
    const std::size_t n = a.order();
    std::vector<R> g(n + 1, zero_like(a[0]));
    g[0] = one_like(a[0]);
    for (std::size_t m = 1; m <= n; ++m) {
        R acc = zero_like(a[0]);
        for (std::size_t k = 1; k <= m; ++k)
            if (!is_zero(a[k]) && !is_zero(g[m - k]))
                acc = acc + scale(a[k] * g[m - k], Rational(static_cast<long>(k)));
        g[m] = scale(acc, Rational(1, static_cast<long>(m)));
    }
    return QSeries<R>(std::move(g));
}

/// log(f) for f with constant term 1, via n h_n = n f_n - sum_{k<n} k h_k f_{n-k}.
template <CoefficientRing R>
QSeries<R> series_log(const QSeries<R>& f)
{
    if (!(f[0] == one_like(f[0])))
        throw BadConstantTerm("series_log needs constant term 1");
    const std::size_t n = f.order();
    std::vector<R> h(n + 1, zero_like(f[0]));
    for (std::size_t m = 1; m <= n; ++m) {
        R acc = scale(f[m], Rational(static_cast<long>(m)));
        for (std::size_t k = 1; k < m; ++k)
            if (!is_zero(h[k]) && !is_zero(f[m - k]))
                acc = acc - scale(h[k] * f[m - k], Rational(static_cast<long>(k)));
        h[m] = scale(acc, Rational(1, static_cast<long>(m)));
    }
    return QSeries<R>(std::move(h));
}

/// Integer power; negative exponents go through series_inv.
template <CoefficientRing R>
QSeries<R> pow(const QSeries<R>& a, long e)
{
    QSeries<R> base = e < 0 ? series_inv(a) : a;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    QSeries<R> r = one_like(a);
    while (k) {
        if (k & 1UL)
            r = r * base;
        k >>= 1UL;
        if (k)
            base = base * base;
    }
    return r;
}

/// prod_{n=1}^{order} (1 - q^n)^exponent.
inline QSeries<Rational> eta_product(long exponent, std::size_t order)
{
    std::vector<Rational> c(order + 1, Rational(0));
    c[0] = 1;
    for (std::size_t n = 1; n <= order; ++n)
        for (std::size_t k = order; k >= n; --k)
            c[k] -= c[k - n];
    return pow(QSeries<Rational>(std::move(c)), exponent);
}

/// prod_{n=1}^{order} F_n(q^n)^exponent, where F_n(x) = sum_j c_j(n) x^j is the
/// polynomial returned by `factor(n)` (its constant coefficient must be 1).
template <CoefficientRing R>
QSeries<R> geom_factor_product(const std::function<std::vector<R>(std::size_t)>& factor, long exponent,
                               std::size_t order)
{
    std::optional<QSeries<R>> result;
    for (std::size_t n = 1; n <= order; ++n) {
        std::vector<R> poly = factor(n);
        if (poly.empty() || !(poly[0] == one_like(poly[0])))
            throw BadConstantTerm("product factor must have constant part 1");
        std::vector<R> v(order + 1, zero_like(poly[0]));
        for (std::size_t j = 0; j < poly.size() && j * n <= order; ++j)
            v[j * n] = poly[j];
        QSeries<R> f = pow(QSeries<R>(std::move(v)), exponent);
        result = result ? *result * f : f;
    }
    if (!result) {
        std::vector<R> probe = factor(1);
        if (probe.empty())
            throw BadConstantTerm("product factor must have constant part 1");
        return QSeries<R>::constant(one_like(probe[0]), order);
    }
    return *result;
}

} // namespace bps
