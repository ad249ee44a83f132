#pragma once

// Eisenstein series and the Bernoulli / even-zeta constants behind them.

#include "bps/errors.hpp"
#include "bps/qseries.hpp"
#include "bps/rational.hpp"

#include <cstddef>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace bps {

/// sum_{d | n} d^k.
inline BigInt divisor_sigma(unsigned k, unsigned long n)
{
    if (n == 0)
        throw std::invalid_argument("divisor_sigma needs n >= 1");
    BigInt s = 0;
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        s += boost::multiprecision::pow(BigInt(d), k);
        const unsigned long e = n / d;
        if (e != d)
            s += boost::multiprecision::pow(BigInt(e), k);
    }
    return s;
}

/// Memoized B_n with B_1 = -1/2, filled through
/// sum_{k=0}^{n} C(n+1, k) B_k = 0. Fills are idempotent and guarded, so the
/// cache behaves as a value shared between threads.
class BernoulliCache {
public:
    Rational get(std::size_t n)
    {
        std::lock_guard lock(mutex_);
        while (values_.size() <= n) {
            const std::size_t m = values_.size();
            if (m == 0) {
                values_.emplace_back(1);
                continue;
            }
            Rational acc = 0;
            for (std::size_t k = 0; k < m; ++k)
                acc += Rational(binomial(static_cast<unsigned>(m + 1), static_cast<unsigned>(k))) * values_[k];
            values_.push_back(-acc / Rational(static_cast<long>(m + 1)));
        }
        return values_[n];
    }

    static BernoulliCache& shared()
    {
        static BernoulliCache cache;
        return cache;
    }

private:
    std::mutex mutex_;
    std::vector<Rational> values_;
};

inline Rational bernoulli(std::size_t n) { return BernoulliCache::shared().get(n); }

/// E_{2k}(q) = 1 - (4k / B_{2k}) sum_{n>=1} sigma_{2k-1}(n) q^n, constant term 1.
inline QSeries<Rational> eisenstein(int weight, std::size_t order)
{
    if (weight < 2 || weight % 2 != 0)
        throw BadWeight(weight);
    const Rational factor = -Rational(2 * weight) / bernoulli(static_cast<std::size_t>(weight));
    std::vector<Rational> c(order + 1);
    c[0] = 1;
    for (std::size_t n = 1; n <= order; ++n)
        c[n] = factor * Rational(divisor_sigma(static_cast<unsigned>(weight - 1), n));
    return QSeries<Rational>(std::move(c));
}

/// zeta(2k) / (2 pi)^{2k} = (-1)^{k+1} B_{2k} / (2 (2k)!).
inline Rational zeta_even_ratio(unsigned k)
{
    if (k == 0)
        throw std::invalid_argument("zeta_even_ratio needs k >= 1");
    Rational r = bernoulli(2 * k) / (Rational(2) * Rational(factorial(2 * k)));
    return k % 2 == 1 ? r : Rational(-r);
}

} // namespace bps
