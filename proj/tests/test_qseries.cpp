#include "bps/laurent.hpp"
#include "bps/qseries.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

using bps::Laurent1;
using bps::QSeries;
using bps::Rational;
using Q = QSeries<Rational>;

namespace {

Q series(std::initializer_list<long> c)
{
    std::vector<Rational> v;
    for (long x : c)
        v.emplace_back(x);
    return Q(std::move(v));
}

// Number of partitions of n, by explicit enumeration.
long count_partitions(int n, int max_part)
{
    if (n == 0)
        return 1;
    long total = 0;
    for (int p = std::min(n, max_part); p >= 1; --p)
        total += count_partitions(n - p, p);
    return total;
}

Q random_series(std::mt19937& rng, std::size_t order, bool unit)
{
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    std::vector<Rational> v;
    for (std::size_t k = 0; k <= order; ++k)
        v.push_back(Rational(num(rng)) / Rational(den(rng)));
    if (unit)
        v[0] = 1;
    return Q(std::move(v));
}

} // namespace

TEST(QSeries, Addition)
{
    EXPECT_EQ(series({1, 1}) + series({1, -1}), series({2, 0}));
    EXPECT_EQ(series({1, 2, 3}) + series({0, 0, 1}), series({1, 2, 4}));
    const Q a = series({3, -1, 7});
    EXPECT_EQ(a + Q::constant(Rational(0), 2), a);
}

TEST(QSeries, AdditionTruncatesToSmallerOrder)
{
    EXPECT_EQ((series({1, 2, 3}) + series({1, 1})).order(), 1u);
}

TEST(QSeries, Multiplication)
{
    EXPECT_EQ(series({1, -1, 0, 0}) * series({1, 1, 1, 1}), series({1, 0, 0, 0}));
    const Q a = series({2, 5, -3});
    EXPECT_EQ(a * Q::constant(Rational(1), 2), a);
    EXPECT_EQ(pow(series({1, 1, 0}), 2), series({1, 2, 1}));
}

TEST(QSeries, Inverse)
{
    EXPECT_EQ(series_inv(Q::constant(Rational(1), 4)), Q::constant(Rational(1), 4));
    EXPECT_EQ(series_inv(series({1, -1, 0, 0, 0})), series({1, 1, 1, 1, 1}));
    EXPECT_THROW(series_inv(series({0, 1})), bps::NonUnitConstantTerm);
    EXPECT_EQ(series_inv(series({2, 0})), Q(std::vector<Rational>{Rational(1, 2), Rational(0)}));
}

TEST(QSeries, InverseOfEulerProductCountsPartitions)
{
    const Q p = series_inv(bps::eta_product(1, 8));
    const std::vector<long> expected{1, 1, 2, 3, 5, 7, 11, 15, 22};
    for (std::size_t n = 0; n <= 8; ++n)
        EXPECT_EQ(p[n], Rational(expected[n])) << n;
}

TEST(QSeries, ExpLog)
{
    EXPECT_EQ(series_exp(Q::constant(Rational(0), 5)), Q::constant(Rational(1), 5));
    const Q log1mq = series_log(series({1, -1, 0, 0, 0}));
    for (std::size_t k = 1; k <= 4; ++k)
        EXPECT_EQ(log1mq[k], Rational(-1) / Rational(static_cast<long>(k)));
    EXPECT_EQ(log1mq[0], 0);
    const Q f = series({1, 1, 0, 5, 0, 0});
    EXPECT_EQ(series_exp(series_log(f)), f);
    EXPECT_THROW(series_exp(series({1, 1})), bps::BadConstantTerm);
    EXPECT_THROW(series_log(series({2, 1})), bps::BadConstantTerm);
}

TEST(QSeries, EtaProduct)
{
    EXPECT_EQ(bps::eta_product(0, 10), Q::constant(Rational(1), 10));
    // (1-q)(1-q^2)...(1-q^6), pentagonal exponents 0, 1, 2, 5
    EXPECT_EQ(bps::eta_product(1, 6), series({1, -1, -1, 0, 0, 1, 0}));
    const Q p = bps::eta_product(-1, 30);
    for (int n = 0; n <= 30; ++n)
        EXPECT_EQ(p[static_cast<std::size_t>(n)], Rational(count_partitions(n, n))) << n;
}

TEST(QSeries, GeomFactorProduct)
{
    const auto one = [](std::size_t) { return std::vector<Rational>{Rational(1)}; };
    EXPECT_EQ(bps::geom_factor_product<Rational>(one, 3, 5), Q::constant(Rational(1), 5));
    const auto euler = [](std::size_t) { return std::vector<Rational>{Rational(1), Rational(-1)}; };
    EXPECT_EQ(bps::geom_factor_product<Rational>(euler, 1, 12), bps::eta_product(1, 12));
    EXPECT_EQ(bps::geom_factor_product<Rational>(euler, -24, 9), bps::eta_product(-24, 9));
    const auto bad = [](std::size_t) { return std::vector<Rational>{Rational(2), Rational(-1)}; };
    EXPECT_THROW(bps::geom_factor_product<Rational>(bad, 1, 3), bps::BadConstantTerm);
}

TEST(QSeries, GeomFactorProductOverLaurent)
{
    // prod 1/(1 - t q^n) = 1 + t q + (t + t^2) q^2 + (t + t^2 + t^3) q^3 + ...
    const auto factor = [](std::size_t) {
        return std::vector<Laurent1>{Laurent1(1), Laurent1::monomial(1, Rational(-1))};
    };
    const auto s = bps::geom_factor_product<Laurent1>(factor, -1, 3);
    const Laurent1 t = Laurent1::monomial(1);
    EXPECT_EQ(s[0], Laurent1(1));
    EXPECT_EQ(s[1], t);
    EXPECT_EQ(s[2], t + pow(t, 2));
    EXPECT_EQ(s[3], t + pow(t, 2) + pow(t, 3));
}

TEST(QSeries, TruncateAndSubstitute)
{
    const Q a = series({1, 2, 3, 4, 5});
    EXPECT_EQ(a.truncated(2), series({1, 2, 3}));
    EXPECT_THROW(a.truncated(7), bps::InsufficientTruncation);
    EXPECT_EQ(a.substitute_power(2), series({1, 0, 2, 0, 3}));
    EXPECT_THROW(Q(std::vector<Rational>{}), std::invalid_argument);
}

TEST(QSeries, NestedCoefficients)
{
    // (1 + x q)^{-1} with x a series variable of order 3
    const Q x = series({0, 1, 0, 0});
    const QSeries<Q> s(std::vector<Q>{Q::constant(Rational(1), 3), x});
    const QSeries<Q> inv = series_inv(s);
    EXPECT_EQ(inv[1], -x);
    const QSeries<Q> e = series_exp(QSeries<Q>(std::vector<Q>{Q::constant(Rational(0), 3), x, Q::constant(Rational(0), 3)}));
    EXPECT_EQ(e[2], (x * x).scaled(Rational(1, 2)));
}

TEST(QSeriesProperty, RingAxiomsOnRandomSeries)
{
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 40; ++trial) {
        const Q a = random_series(rng, 8, false), b = random_series(rng, 8, false), c = random_series(rng, 8, false);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a - a, Q::constant(Rational(0), 8));
    }
}

TEST(QSeriesProperty, InverseExpLogOnRandomUnits)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const Q u = random_series(rng, 7, true);
        EXPECT_EQ(u * series_inv(u), Q::constant(Rational(1), 7));
        EXPECT_EQ(series_exp(series_log(u)), u);
        EXPECT_EQ(pow(u, -3) * pow(u, 3), Q::constant(Rational(1), 7));
        const Q v = random_series(rng, 7, true);
        EXPECT_EQ(series_log(u * v), series_log(u) + series_log(v));
    }
}
