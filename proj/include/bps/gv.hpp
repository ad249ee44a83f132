#pragma once

// Gopakumar-Vafa transform between genus-expanded GW invariants N_g(beta)
// and integer BPS invariants n_h(beta):
//
//   sum N_g(b) q^b lambda^{2g-2} = sum_{k,h,b} n_h(b) (1/k) (2 sin(k lambda/2))^{2h-2} q^{kb}
//
// Curve classes live in the effective cone Z_{>=0}^r with a positive linear
// degree functional.

#include "bps/errors.hpp"
#include "bps/parallel.hpp"
#include "bps/qseries.hpp"
#include "bps/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace bps {

using CurveClass = std::vector<int>;

inline std::string class_label(const CurveClass& c)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c.size(); ++i)
        os << (i ? "," : "") << c[i];
    os << "]";
    return os.str();
}

/// Rank and degree functional of the effective cone.
struct CurveLattice {
    std::vector<int> degree_weights;

    std::size_t rank() const { return degree_weights.size(); }

    void validate() const
    {
        if (degree_weights.empty())
            throw PreconditionError("curve lattice needs rank >= 1");
        for (int w : degree_weights)
            if (w <= 0)
                throw PreconditionError("degree weights must be positive");
    }

    int degree(const CurveClass& c) const
    {
        if (c.size() != rank())
            throw PreconditionError("class " + class_label(c) + " does not have rank " + std::to_string(rank()));
        int d = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] < 0)
                throw PreconditionError("class " + class_label(c) + " is not effective");
            d += c[i] * degree_weights[i];
        }
        return d;
    }

    /// Nonzero effective classes of degree <= max_degree, ordered by degree then lexicographically.
    std::vector<CurveClass> classes_up_to(int max_degree) const
    {
        std::vector<CurveClass> out;
        CurveClass cur(rank(), 0);
        auto rec = [&](auto&& self, std::size_t i, int budget) -> void {
            if (i == rank()) {
                if (std::any_of(cur.begin(), cur.end(), [](int x) { return x != 0; }))
                    out.push_back(cur);
                return;
            }
            for (int m = 0; m * degree_weights[i] <= budget; ++m) {
                cur[i] = m;
                self(self, i + 1, budget - m * degree_weights[i]);
            }
            cur[i] = 0;
        };
        rec(rec, 0, max_degree);
        std::stable_sort(out.begin(), out.end(), [this](const CurveClass& a, const CurveClass& b) {
            const int da = degree(a), db = degree(b);
            return da != db ? da < db : a < b;
        });
        return out;
    }
};

/// How entries missing from a table are to be read.
enum class AbsentPolicy { zero, unknown };

/// Map (genus, class) -> value with truncation metadata. Absent entries are
/// zero or unknown according to `absent`; `unknown` lists individually
/// unknown entries inside the window.
template <class Value>
struct InvariantTable {
    CurveLattice lattice;
    int max_genus = 0;
    int max_degree = 0;
    AbsentPolicy absent = AbsentPolicy::zero;
    std::set<std::pair<int, CurveClass>> unknown;
    std::map<std::pair<int, CurveClass>, Value> entries;

    Value value(int genus, const CurveClass& c) const
    {
        auto it = entries.find({genus, c});
        return it == entries.end() ? Value(0) : it->second;
    }

    void set(int genus, const CurveClass& c, const Value& v)
    {
        if (v == 0)
            entries.erase({genus, c});
        else
            entries[{genus, c}] = v;
    }

    /// Throws InsufficientTruncation unless every (genus <= g, degree <= d) value is determined.
    void require_known(int genus_bound, int degree_bound, const char* what) const
    {
        if (absent == AbsentPolicy::unknown && (max_genus < genus_bound || max_degree < degree_bound))
            throw InsufficientTruncation(std::string(what) + " table covers genus <= " + std::to_string(max_genus) +
                                         ", degree <= " + std::to_string(max_degree) + " but genus <= " +
                                         std::to_string(genus_bound) + ", degree <= " +
                                         std::to_string(degree_bound) + " is needed");
        for (const auto& [g, c] : unknown)
            if (g <= genus_bound && lattice.degree(c) <= degree_bound)
                throw InsufficientTruncation(std::string(what) + " entry (genus " + std::to_string(g) + ", class " +
                                             class_label(c) + ") is marked unknown");
    }
};

using GWTable = InvariantTable<Rational>;
using BPSTable = InvariantTable<BigInt>;

/// Even Laurent series in lambda: coeffs[i] multiplies lambda^{min_power + 2i},
/// meaningful up to lambda^{max_power}.
struct LambdaSeries {
    int min_power = 0;
    int max_power = 0;
    std::vector<Rational> coeffs;

    Rational at(int power) const
    {
        if (power > max_power)
            throw InsufficientTruncation("lambda^" + std::to_string(power) + " is beyond the computed order");
        if (power < min_power || (power - min_power) % 2 != 0)
            return 0;
        return coeffs[static_cast<std::size_t>((power - min_power) / 2)];
    }
};

/// (2 sin(k lambda/2))^{2h-2} expanded through lambda^{lambda_order}.
inline LambdaSeries sin_power_series(int k, int h, int lambda_order)
{
    if (k < 1 || h < 0)
        throw PreconditionError("sin_power_series needs k >= 1, h >= 0");
    LambdaSeries out;
    out.min_power = 2 * h - 2;
    out.max_power = lambda_order;
    if (lambda_order < out.min_power)
        return out;
    const auto order = static_cast<std::size_t>((lambda_order - out.min_power) / 2);
    // 2 sin(k lambda/2) = k lambda * S(lambda^2),
    // S(x) = sum_m (-1)^m k^{2m} x^m / (4^m (2m+1)!).
    std::vector<Rational> s(order + 1);
    for (std::size_t m = 0; m <= order; ++m) {
        Rational term = Rational(boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(2 * m))) /
                        Rational(boost::multiprecision::pow(BigInt(4), static_cast<unsigned>(m)) *
                                 factorial(static_cast<unsigned>(2 * m + 1)));
        s[m] = m % 2 == 0 ? term : Rational(-term);
    }
    const QSeries<Rational> powered = pow(QSeries<Rational>(std::move(s)), 2L * h - 2);
    Rational prefactor = Rational(boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(std::abs(2 * h - 2))));
    if (h == 0)
        prefactor = Rational(1) / prefactor;
    out.coeffs.reserve(order + 1);
    for (std::size_t i = 0; i <= order; ++i)
        out.coeffs.push_back(prefactor * powered[i]);
    return out;
}

/// Largest genus g with lambda^{2g-2} inside a lambda_order truncation.
inline int genus_bound_for(int lambda_order)
{
    if (lambda_order < -2)
        throw PreconditionError("lambda order must be >= -2");
    return (lambda_order + 2) / 2;
}

namespace detail {

/// [lambda^{2g-2}] (2 sin(k lambda/2))^{2h-2} for all h, g <= max_genus.
class SinCoefficients {
public:
    explicit SinCoefficients(int max_genus) : max_genus_(max_genus) {}

    const Rational& get(int k, int h, int g)
    {
        auto key = std::make_pair(k, h);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            LambdaSeries s = sin_power_series(k, h, 2 * max_genus_ - 2);
            std::vector<Rational> by_genus(static_cast<std::size_t>(max_genus_ + 1));
            for (int gg = 0; gg <= max_genus_; ++gg)
                by_genus[static_cast<std::size_t>(gg)] = s.at(2 * gg - 2);
            it = cache_.emplace(key, std::move(by_genus)).first;
        }
        return it->second[static_cast<std::size_t>(g)];
    }

private:
    int max_genus_;
    std::map<std::pair<int, int>, std::vector<Rational>> cache_;
};

inline std::optional<CurveClass> divide_class(const CurveClass& c, int k)
{
    CurveClass out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] % k != 0)
            return std::nullopt;
        out[i] = c[i] / k;
    }
    return out;
}

} // namespace detail

/// GW invariants from BPS invariants: N_g(b) for g with 2g-2 <= lambda_order
/// and deg(b) <= degree_order.
inline GWTable gw_from_gv(const BPSTable& bps, int lambda_order, int degree_order)
{
    bps.lattice.validate();
    if (degree_order < 0)
        throw PreconditionError("degree order must be >= 0");
    const int max_genus = genus_bound_for(lambda_order);
    GWTable gw;
    gw.lattice = bps.lattice;
    gw.max_genus = std::max(max_genus, 0);
    gw.max_degree = degree_order;
    if (max_genus < 0)
        return gw;
    bps.require_known(max_genus, degree_order, "BPS");

    const auto classes = bps.lattice.classes_up_to(degree_order);
    // Each target class collects its own contributions, so the parallel loop
    // writes disjoint slots and the sum order is fixed.
    std::vector<std::vector<Rational>> result(classes.size());
    parallel_for(classes.size(), [&](std::size_t idx) {
        detail::SinCoefficients sins(max_genus);
        const CurveClass& target = classes[idx];
        std::vector<Rational> acc(static_cast<std::size_t>(max_genus + 1), Rational(0));
        const int deg = bps.lattice.degree(target);
        for (int k = 1; k <= deg; ++k) {
            auto base = detail::divide_class(target, k);
            if (!base)
                continue;
            for (int h = 0; h <= max_genus; ++h) {
                const BigInt n = bps.value(h, *base);
                if (n == 0)
                    continue;
                for (int g = h; g <= max_genus; ++g)
                    acc[static_cast<std::size_t>(g)] += Rational(n) / Rational(k) * sins.get(k, h, g);
            }
        }
        result[idx] = std::move(acc);
    });
    for (std::size_t idx = 0; idx < classes.size(); ++idx)
        for (int g = 0; g <= max_genus; ++g)
            gw.set(g, classes[idx], result[idx][static_cast<std::size_t>(g)]);
    return gw;
}

/// Inverse transform. Solves class by class in increasing degree (multicover
/// terms only reference strictly smaller degree), and within a class in
/// increasing h (the k = 1 term is unitriangular in (h, g)). Integrality of
/// every solved value is checked.
inline BPSTable gv_from_gw(const GWTable& gw, int lambda_order, int degree_order)
{
    gw.lattice.validate();
    if (degree_order < 0)
        throw PreconditionError("degree order must be >= 0");
    const int max_genus = genus_bound_for(lambda_order);
    BPSTable bps;
    bps.lattice = gw.lattice;
    bps.max_genus = std::max(max_genus, 0);
    bps.max_degree = degree_order;
    if (max_genus < 0)
        return bps;
    gw.require_known(max_genus, degree_order, "GW");

    const auto classes = gw.lattice.classes_up_to(degree_order);
    detail::SinCoefficients sins(max_genus);
    for (const auto& target : classes) {
        const int deg = gw.lattice.degree(target);
        std::vector<Rational> residual(static_cast<std::size_t>(max_genus + 1));
        for (int g = 0; g <= max_genus; ++g)
            residual[static_cast<std::size_t>(g)] = gw.value(g, target);
        for (int k = 2; k <= deg; ++k) {
            auto base = detail::divide_class(target, k);
            if (!base)
                continue;
            for (int h = 0; h <= max_genus; ++h) {
                const BigInt n = bps.value(h, *base);
                if (n == 0)
                    continue;
                for (int g = h; g <= max_genus; ++g)
                    residual[static_cast<std::size_t>(g)] -= Rational(n) / Rational(k) * sins.get(k, h, g);
            }
        }
        for (int h = 0; h <= max_genus; ++h) {
            Rational value = residual[static_cast<std::size_t>(h)];
            if (!is_integer(value))
                throw NonIntegralBPS(class_label(target), h, to_string(value));
            const BigInt n = numerator(value);
            bps.set(h, target, n);
            if (n == 0)
                continue;
            for (int g = h + 1; g <= max_genus; ++g)
                residual[static_cast<std::size_t>(g)] -= Rational(n) * sins.get(1, h, g);
        }
    }
    return bps;
}

struct RoundtripReport {
    bool ok = true;
    std::vector<std::string> differences;
};

/// gv_from_gw(gw_from_gv(bps)) == bps inside the truncation window.
inline RoundtripReport roundtrip_check(const BPSTable& bps, int lambda_order, int degree_order)
{
    const BPSTable back = gv_from_gw(gw_from_gv(bps, lambda_order, degree_order), lambda_order, degree_order);
    RoundtripReport report;
    const int max_genus = genus_bound_for(lambda_order);
    for (const auto& c : bps.lattice.classes_up_to(degree_order))
        for (int h = 0; h <= max_genus; ++h) {
            const BigInt a = bps.value(h, c), b = back.value(h, c);
            if (a != b) {
                report.ok = false;
                report.differences.push_back("n_" + std::to_string(h) + class_label(c) + ": " + a.str() + " -> " +
                                             b.str());
            }
        }
    return report;
}

} // namespace bps
