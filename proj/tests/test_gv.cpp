#include "bps/gv.hpp"
#include "bps/modular.hpp"

#include <gtest/gtest.h>

#include <random>

using bps::BigInt;
using bps::BPSTable;
using bps::CurveClass;
using bps::GWTable;
using bps::Rational;

namespace {

// [x^{2g-2}] (2 sin(x/2))^{-2} = (-1)^{g+1} (2g-1) B_{2g} / (2g)!
Rational inverse_sin_square(int g)
{
    const Rational c = Rational(2 * g - 1) * bps::bernoulli(static_cast<std::size_t>(2 * g)) /
                       Rational(bps::factorial(static_cast<unsigned>(2 * g)));
    return g % 2 == 1 ? c : Rational(-c);
}

Rational power(long k, int e)
{
    Rational r = 1;
    for (int i = 0; i < std::abs(e); ++i)
        r *= k;
    return e < 0 ? Rational(1) / r : r;
}

BPSTable rank_one_bps(int max_genus, int max_degree)
{
    BPSTable t;
    t.lattice.degree_weights = {1};
    t.max_genus = max_genus;
    t.max_degree = max_degree;
    return t;
}

GWTable rank_one_gw(int max_genus, int max_degree)
{
    GWTable t;
    t.lattice.degree_weights = {1};
    t.max_genus = max_genus;
    t.max_degree = max_degree;
    return t;
}

} // namespace

TEST(GV, SinPowerSeries)
{
    const auto trivial = bps::sin_power_series(1, 1, 10);
    EXPECT_EQ(trivial.at(0), 1);
    EXPECT_EQ(trivial.at(2), 0);

    const auto inv = bps::sin_power_series(1, 0, 10);
    EXPECT_EQ(inv.min_power, -2);
    EXPECT_EQ(inv.at(-2), 1);
    EXPECT_EQ(inv.at(0), Rational(1, 12));
    EXPECT_EQ(inv.at(2), Rational(1, 240));
    EXPECT_EQ(inv.at(1), 0);
    EXPECT_THROW(inv.at(12), bps::InsufficientTruncation);

    // 2 sin(x) = 2x - x^3/3 + ..., squared: 4x^2 - (4/3) x^4 + ...
    const auto sq = bps::sin_power_series(2, 2, 6);
    EXPECT_EQ(sq.at(2), 4);
    EXPECT_EQ(sq.at(4), Rational(-4, 3));
}

TEST(GV, SinPowerSeriesAgainstBernoulliOracle)
{
    for (int k = 1; k <= 7; ++k) {
        const auto s = bps::sin_power_series(k, 0, 16);
        for (int g = 0; g <= 9; ++g)
            EXPECT_EQ(s.at(2 * g - 2), inverse_sin_square(g) * power(k, 2 * g - 2)) << k << " " << g;
    }
}

TEST(GV, SinPowersMultiply)
{
    // (2 sin)^{2h-2} (2 sin)^{2h'-2} = (2 sin)^{2(h+h'-1)-2}
    const int order = 14;
    for (int k = 1; k <= 3; ++k)
        for (int h = 0; h <= 3; ++h)
            for (int hp = 0; hp <= 3; ++hp) {
                const auto a = bps::sin_power_series(k, h, order), b = bps::sin_power_series(k, hp, order);
                const auto c = bps::sin_power_series(k, h + hp - 1 < 0 ? 0 : h + hp - 1, order);
                if (h + hp - 1 < 0)
                    continue;
                const int top = std::min(order, order + std::min(a.min_power, b.min_power));
                for (int p = c.min_power; p <= top; p += 2) {
                    Rational sum = 0;
                    for (int i = a.min_power; i <= order; i += 2) {
                        const int j = p - i;
                        if (j >= b.min_power && j <= order)
                            sum += a.at(i) * b.at(j);
                    }
                    EXPECT_EQ(sum, c.at(p)) << k << " " << h << " " << hp << " " << p;
                }
            }
}

TEST(GV, ClassEnumeration)
{
    const bps::CurveLattice lattice{{1, 2}};
    const std::vector<CurveClass> expected{{1, 0}, {0, 1}, {2, 0}, {1, 1}, {3, 0}};
    EXPECT_EQ(lattice.classes_up_to(3), expected);
    EXPECT_THROW(lattice.degree({1}), bps::PreconditionError);
    EXPECT_THROW(lattice.degree({-1, 0}), bps::PreconditionError);
    EXPECT_THROW((bps::CurveLattice{{0}}.validate()), bps::PreconditionError);
}

TEST(GV, GenusZeroMultiCover)
{
    BPSTable n = rank_one_bps(0, 6);
    n.set(0, {1}, 1);
    const GWTable gw = bps::gw_from_gv(n, 0, 6);
    for (int k = 1; k <= 6; ++k)
        EXPECT_EQ(gw.value(0, {k}), Rational(1) / Rational(k * k * k)) << k;
}

TEST(GV, EllipticMultiCover)
{
    BPSTable n = rank_one_bps(4, 6);
    for (int d = 1; d <= 6; ++d)
        n.set(1, {d}, 1);
    const GWTable gw = bps::gw_from_gv(n, 6, 6);
    for (int d = 1; d <= 6; ++d) {
        EXPECT_EQ(gw.value(1, {d}), Rational(bps::divisor_sigma(1, static_cast<unsigned long>(d))) / Rational(d)) << d;
        EXPECT_EQ(gw.value(0, {d}), 0);
        for (int g = 2; g <= 4; ++g)
            EXPECT_EQ(gw.value(g, {d}), 0) << g << " " << d;
    }
}

TEST(GV, ZeroTable)
{
    const BPSTable n = rank_one_bps(3, 4);
    EXPECT_TRUE(bps::gw_from_gv(n, 6, 4).entries.empty());
    EXPECT_TRUE(bps::gv_from_gw(rank_one_gw(3, 4), 6, 4).entries.empty());
}

TEST(GV, SuperRigidRationalCurve)
{
    GWTable gw = rank_one_gw(6, 6);
    for (int k = 1; k <= 6; ++k)
        for (int g = 0; g <= 6; ++g)
            gw.set(g, {k}, inverse_sin_square(g) * power(k, 2 * g - 2) / Rational(k));
    const BPSTable n = bps::gv_from_gw(gw, 10, 6);
    ASSERT_EQ(n.entries.size(), 1u);
    EXPECT_EQ(n.value(0, {1}), 1);
}

TEST(GV, SuperRigidEllipticCurve)
{
    GWTable gw = rank_one_gw(6, 6);
    for (int d = 1; d <= 6; ++d)
        gw.set(1, {d}, Rational(bps::divisor_sigma(1, static_cast<unsigned long>(d))) / Rational(d));
    const BPSTable n = bps::gv_from_gw(gw, 10, 6);
    EXPECT_EQ(n.entries.size(), 6u);
    for (int d = 1; d <= 6; ++d)
        EXPECT_EQ(n.value(1, {d}), 1) << d;
}

TEST(GV, NonIntegralInput)
{
    GWTable gw = rank_one_gw(0, 1);
    gw.set(0, {1}, Rational(1, 2));
    try {
        bps::gv_from_gw(gw, 0, 1);
        FAIL() << "expected NonIntegralBPS";
    } catch (const bps::NonIntegralBPS& e) {
        EXPECT_EQ(e.h, 0);
        EXPECT_EQ(e.klass, "[1]");
        EXPECT_EQ(e.value, "1/2");
    }
}

TEST(GV, UnknownEntriesBlockTheTransform)
{
    GWTable gw = rank_one_gw(2, 3);
    gw.absent = bps::AbsentPolicy::unknown;
    EXPECT_THROW(bps::gv_from_gw(gw, 8, 3), bps::InsufficientTruncation);
    EXPECT_NO_THROW(bps::gv_from_gw(gw, 2, 3));
    gw.unknown.insert({1, CurveClass{2}});
    EXPECT_THROW(bps::gv_from_gw(gw, 2, 3), bps::InsufficientTruncation);
    EXPECT_NO_THROW(bps::gv_from_gw(gw, 2, 1));
}

TEST(GV, RoundTripKnownTables)
{
    BPSTable rigid = rank_one_bps(5, 6);
    rigid.set(0, {1}, 1);
    EXPECT_TRUE(bps::roundtrip_check(rigid, 10, 6).ok);
    BPSTable elliptic = rank_one_bps(5, 6);
    for (int d = 1; d <= 6; ++d)
        elliptic.set(1, {d}, 1);
    EXPECT_TRUE(bps::roundtrip_check(elliptic, 10, 6).ok);
}

TEST(GVProperty, RandomRoundTrip)
{
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> rank(1, 2), weight(1, 2), value(-6, 6), genus(0, 4), coin(0, 2);
    for (int trial = 0; trial < 25; ++trial) {
        BPSTable n;
        const int r = rank(rng);
        for (int i = 0; i < r; ++i)
            n.lattice.degree_weights.push_back(weight(rng));
        n.max_genus = 4;
        n.max_degree = 5;
        for (const auto& c : n.lattice.classes_up_to(5))
            for (int h = 0; h <= 4; ++h)
                if (coin(rng) == 0)
                    n.set(h, c, value(rng));
        const auto report = bps::roundtrip_check(n, 8, 5);
        EXPECT_TRUE(report.ok) << (report.differences.empty() ? "" : report.differences.front());
    }
}

TEST(GVProperty, TransformIsLinear)
{
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> value(-3, 3);
    BPSTable a = rank_one_bps(3, 4), b = rank_one_bps(3, 4), sum = rank_one_bps(3, 4);
    for (int d = 1; d <= 4; ++d)
        for (int h = 0; h <= 3; ++h) {
            const int x = value(rng), y = value(rng);
            a.set(h, {d}, x);
            b.set(h, {d}, y);
            sum.set(h, {d}, x + y);
        }
    const auto ga = bps::gw_from_gv(a, 6, 4), gb = bps::gw_from_gv(b, 6, 4), gs = bps::gw_from_gv(sum, 6, 4);
    for (int d = 1; d <= 4; ++d)
        for (int g = 0; g <= 4; ++g)
            EXPECT_EQ(gs.value(g, {d}), ga.value(g, {d}) + gb.value(g, {d}));
}
