#pragma once

// Holomorphic anomaly recursion for Z_{g;n}(q) = P_{2g+6n-2}(E2, E4, E6) / prod (1 - q^k)^{12n}:
//
//   dP_{g,n}/dE2 = (1/24) sum_{g'+g''=g} sum_{s=1}^{n-1} s(n-s) P_{g',s} P_{g'',n-s}
//                + n(n+1)/24 P_{g-1,n}
//
// plus the genus resummation for n = 1 and the triple-product identity behind it.

#include "bps/errors.hpp"
#include "bps/modular.hpp"
#include "bps/parallel.hpp"
#include "bps/qseries.hpp"
#include "bps/rational.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace bps {

/// Homogeneous polynomial in E2, E4, E6 (weights 2, 4, 6). Every stored
/// monomial has exactly the declared weight.
class GradedPoly {
public:
    using Monomial = std::array<int, 3>; // exponents of E2, E4, E6

    explicit GradedPoly(int weight) : weight_(weight) {}

    static int monomial_weight(const Monomial& m) { return 2 * m[0] + 4 * m[1] + 6 * m[2]; }

    static GradedPoly monomial(const Monomial& m, const Rational& c = Rational(1))
    {
        GradedPoly p(monomial_weight(m));
        p.add_term(m, c);
        return p;
    }

    int weight() const { return weight_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& m, const Rational& c)
    {
        if (m[0] < 0 || m[1] < 0 || m[2] < 0)
            throw PreconditionError("negative exponent in E-monomial");
        if (monomial_weight(m) != weight_)
            throw WeightMismatch(monomial_weight(m), weight_);
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    GradedPoly scaled(const Rational& s) const
    {
        GradedPoly r(weight_);
        for (const auto& [m, c] : terms_)
            r.add_term(m, c * s);
        return r;
    }

    friend GradedPoly operator+(const GradedPoly& a, const GradedPoly& b)
    {
        if (a.weight_ != b.weight_)
            throw WeightMismatch(a.weight_, b.weight_);
        GradedPoly r = a;
        for (const auto& [m, c] : b.terms_)
            r.add_term(m, c);
        return r;
    }
    friend GradedPoly operator-(const GradedPoly& a, const GradedPoly& b) { return a + b.scaled(Rational(-1)); }
    friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b)
    {
        GradedPoly r(a.weight_ + b.weight_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                r.add_term({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, ca * cb);
        return r;
    }
    friend bool operator==(const GradedPoly&, const GradedPoly&) = default;

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            os << (first ? "" : " + ") << "(" << to_short_string(c) << ")";
            first = false;
            const char* names[] = {"E2", "E4", "E6"};
            for (int i = 0; i < 3; ++i)
                if (m[static_cast<std::size_t>(i)] > 0)
                    os << "*" << names[i]
                       << (m[static_cast<std::size_t>(i)] > 1 ? "^" + std::to_string(m[static_cast<std::size_t>(i)])
                                                               : "");
        }
        return os.str();
    }

private:
    int weight_;
    std::map<Monomial, Rational> terms_;
};

inline GradedPoly E2() { return GradedPoly::monomial({1, 0, 0}); }
inline GradedPoly E4() { return GradedPoly::monomial({0, 1, 0}); }
inline GradedPoly E6() { return GradedPoly::monomial({0, 0, 1}); }

/// Formal partial derivative in E2; weight drops by 2.
inline GradedPoly d_E2(const GradedPoly& p)
{
    GradedPoly r(p.weight() - 2);
    for (const auto& [m, c] : p.terms())
        if (m[0] > 0)
            r.add_term({m[0] - 1, m[1], m[2]}, c * m[0]);
    return r;
}

/// Termwise antiderivative in E2 with no E2-free part; weight rises by 2.
inline GradedPoly integrate_E2(const GradedPoly& p)
{
    GradedPoly r(p.weight() + 2);
    for (const auto& [m, c] : p.terms())
        r.add_term({m[0] + 1, m[1], m[2]}, c / Rational(m[0] + 1));
    return r;
}

/// E4^b E6^c monomials of the given weight (the kernel of d/dE2).
inline std::vector<GradedPoly::Monomial> e2_free_basis(int weight)
{
    std::vector<GradedPoly::Monomial> out;
    if (weight < 0 || weight % 2 != 0)
        return out;
    for (int c = 0; 6 * c <= weight; ++c)
        if ((weight - 6 * c) % 4 == 0)
            out.push_back({0, (weight - 6 * c) / 4, c});
    return out;
}

inline int z_weight(int n, int g) { return 2 * g + 6 * n - 2; }

/// Numerators keyed by (genus, n).
using AnomalyTable = std::map<std::pair<int, int>, GradedPoly>;

struct ZFunction {
    int n = 1;
    int g = 0;
    GradedPoly poly{z_weight(1, 0)};

    void validate() const
    {
        if (n < 1 || g < 0)
            throw PreconditionError("Z_{g;n} needs n >= 1, g >= 0");
        if (poly.weight() != z_weight(n, g))
            throw WeightMismatch(poly.weight(), z_weight(n, g));
    }
};

inline AnomalyTable to_table(const std::vector<ZFunction>& zs)
{
    AnomalyTable t;
    for (const auto& z : zs) {
        z.validate();
        t.insert_or_assign({z.g, z.n}, z.poly);
    }
    return t;
}

/// Right-hand side of the anomaly equation for P_{g,n}, of weight 2g+6n-4.
/// P with negative genus is 0.
inline GradedPoly anomaly_rhs(int n, int g, const AnomalyTable& known)
{
    if (n < 1 || g < 0)
        throw PreconditionError("anomaly_rhs needs n >= 1, g >= 0");
    auto get = [&](int gg, int s) -> const GradedPoly& {
        auto it = known.find({gg, s});
        if (it == known.end())
            throw MissingPrerequisite(gg, s);
        return it->second;
    };
    GradedPoly rhs(z_weight(n, g) - 2);
    for (int gp = 0; gp <= g; ++gp)
        for (int s = 1; s <= n - 1; ++s)
            rhs = rhs + (get(gp, s) * get(g - gp, n - s)).scaled(Rational(s * (n - s), 24));
    if (g >= 1)
        rhs = rhs + get(g - 1, n).scaled(Rational(n * (n + 1), 24));
    return rhs;
}

struct AnomalyCheck {
    int n = 0;
    int g = 0;
    bool pass = false;
    GradedPoly lhs{0};        // dP/dE2
    GradedPoly rhs{0};        // normalization * anomaly_rhs
    GradedPoly difference{0}; // lhs - rhs
};

struct AnomalyReport {
    std::vector<AnomalyCheck> checks;
    std::map<int, Rational> normalization;

    std::size_t passed() const
    {
        std::size_t k = 0;
        for (const auto& c : checks)
            k += c.pass ? 1 : 0;
        return k;
    }
    bool all_pass() const { return passed() == checks.size(); }
};

/// dP/dE2 == normalization[n] * anomaly_rhs for each entry whose prerequisites
/// are in the table. Missing normalizations default to 1.
inline AnomalyReport verify_anomaly(const std::vector<ZFunction>& zs, const std::map<int, Rational>& normalization = {})
{
    const AnomalyTable table = to_table(zs);
    AnomalyReport report;
    for (const auto& z : zs)
        report.normalization.try_emplace(z.n, normalization.count(z.n) ? normalization.at(z.n) : Rational(1));
    report.checks.resize(zs.size());
    parallel_for(zs.size(), [&](std::size_t i) {
        const ZFunction& z = zs[i];
        AnomalyCheck c;
        c.n = z.n;
        c.g = z.g;
        c.lhs = d_E2(z.poly);
        c.rhs = anomaly_rhs(z.n, z.g, table).scaled(report.normalization.at(z.n));
        c.difference = c.lhs - c.rhs;
        c.pass = c.difference.is_zero();
        report.checks[i] = std::move(c);
    });
    return report;
}

/// The constant c with p == c * q, if one exists (q nonzero).
inline std::optional<Rational> proportionality(const GradedPoly& p, const GradedPoly& q)
{
    if (q.is_zero())
        return std::nullopt;
    const auto& [m, qc] = *q.terms().begin();
    const Rational c = p.coefficient(m) / qc;
    if (p.weight() == q.weight() && p == q.scaled(c))
        return c;
    return std::nullopt;
}

/// One constant per n making every entry of that n satisfy the recursion, or
/// nullopt for an n where no single constant works. n values whose entries
/// all have vanishing right-hand side get 1.
inline std::map<int, std::optional<Rational>> find_normalization(const std::vector<ZFunction>& zs)
{
    const AnomalyTable table = to_table(zs);
    std::map<int, std::optional<Rational>> out;
    std::map<int, bool> broken;
    for (const auto& z : zs) {
        const GradedPoly lhs = d_E2(z.poly);
        const GradedPoly rhs = anomaly_rhs(z.n, z.g, table);
        auto& slot = out[z.n];
        if (broken[z.n])
            continue;
        if (rhs.is_zero()) {
            if (!lhs.is_zero())
                broken[z.n] = true;
            continue;
        }
        auto c = proportionality(lhs, rhs);
        if (!c || (slot && *slot != *c)) {
            broken[z.n] = true;
            continue;
        }
        slot = c;
    }
    for (auto& [n, c] : out) {
        if (broken[n])
            c.reset();
        else if (!c)
            c = Rational(1);
    }
    return out;
}

/// Z_{g;n}(q) = P(E2, E4, E6) / prod (1 - q^k)^{12n} through q^order.
inline QSeries<Rational> realize(const GradedPoly& p, int n, std::size_t order)
{
    const std::array<QSeries<Rational>, 3> gens{eisenstein(2, order), eisenstein(4, order), eisenstein(6, order)};
    auto sum = QSeries<Rational>::constant(Rational(0), order);
    for (const auto& [m, c] : p.terms()) {
        auto term = QSeries<Rational>::constant(c, order);
        for (std::size_t i = 0; i < 3; ++i)
            if (m[i] > 0)
                term *= pow(gens[i], m[i]);
        sum += term;
    }
    return sum * eta_product(-12L * n, order);
}

namespace detail {

/// Solves A x = b exactly. Returns nullopt if inconsistent; throws
/// UnderdeterminedBoundary if the solution is not unique.
inline std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                                                        std::size_t unknowns)
{
    const std::size_t rows = a.size();
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < unknowns && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][col] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[rank]);
        std::swap(b[piv], b[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][col] == 0)
                continue;
            const Rational f = a[r][col] / a[rank][col];
            for (std::size_t k = col; k < unknowns; ++k)
                a[r][k] -= f * a[rank][k];
            b[r] -= f * b[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (b[r] != 0)
            return std::nullopt;
    if (rank < unknowns)
        throw UnderdeterminedBoundary("boundary data determine only " + std::to_string(rank) + " of " +
                                      std::to_string(unknowns) + " E2-free coefficients");
    std::vector<Rational> x(unknowns);
    for (std::size_t r = 0; r < rank; ++r)
        x[pivot_col[r]] = b[r] / a[r][pivot_col[r]];
    return x;
}

} // namespace detail

/// Integrates the anomaly equation in E2 and fixes the E2-free part by
/// matching the leading q-coefficients of the realized Z_{g;n}.
inline GradedPoly solve_anomaly(int n, int g, const AnomalyTable& known, const std::vector<Rational>& boundary,
                                const Rational& normalization = Rational(1))
{
    const GradedPoly particular = integrate_E2(anomaly_rhs(n, g, known).scaled(normalization));
    const auto basis = e2_free_basis(z_weight(n, g));
    if (boundary.size() < basis.size())
        throw UnderdeterminedBoundary("need at least " + std::to_string(basis.size()) + " boundary coefficients, got " +
                                      std::to_string(boundary.size()));
    if (boundary.empty())
        return particular;
    const std::size_t order = boundary.size() - 1;
    const auto base = realize(particular, n, order);
    std::vector<QSeries<Rational>> columns;
    for (const auto& m : basis)
        columns.push_back(realize(GradedPoly::monomial(m), n, order));
    std::vector<std::vector<Rational>> a(boundary.size(), std::vector<Rational>(basis.size()));
    std::vector<Rational> b(boundary.size());
    for (std::size_t i = 0; i <= order; ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j)
            a[i][j] = columns[j][i];
        b[i] = boundary[i] - base[i];
    }
    auto x = detail::solve_exact(std::move(a), std::move(b), basis.size());
    if (!x)
        throw InconsistentBoundary("no E2-free completion of weight " + std::to_string(z_weight(n, g)) +
                                   " matches the boundary data");
    GradedPoly result = particular;
    for (std::size_t j = 0; j < basis.size(); ++j)
        result.add_term(basis[j], (*x)[j]);
    return result;
}

/// Z_{0;1} = E4 / prod (1 - q^k)^12.
inline QSeries<Rational> z01(std::size_t q_order) { return eisenstein(4, q_order) * eta_product(-12, q_order); }

/// The exponent 2 sum_k zeta(2k)/(2 pi)^{2k} E_{2k}(q) x^k / k as a series in
/// x = lambda^2 with q-series coefficients.
inline QSeries<QSeries<Rational>> resummation_exponent(std::size_t x_order, std::size_t q_order)
{
    std::vector<QSeries<Rational>> c;
    c.push_back(QSeries<Rational>::constant(Rational(0), q_order));
    for (std::size_t k = 1; k <= x_order; ++k)
        c.push_back(eisenstein(static_cast<int>(2 * k), q_order)
                        .scaled(Rational(2) * zeta_even_ratio(static_cast<unsigned>(k)) / Rational(static_cast<long>(k))));
    return QSeries<QSeries<Rational>>(std::move(c));
}

/// Z_{g;1}(q) for g <= g_max from
/// sum_g Z_{g;1} lambda^{2g} = Z_{0;1} exp(2 sum_k zeta(2k)/k E_{2k} (lambda/2 pi)^{2k}).
inline std::vector<QSeries<Rational>> genus_series_n1(std::size_t g_max, std::size_t q_order)
{
    const auto expo = series_exp(resummation_exponent(g_max, q_order));
    const auto seed = z01(q_order);
    std::vector<QSeries<Rational>> out;
    out.reserve(g_max + 1);
    for (std::size_t g = 0; g <= g_max; ++g)
        out.push_back(seed * expo[g]);
    return out;
}

/// Swap the two variables of a bivariate truncated series.
template <CoefficientRing R>
QSeries<QSeries<R>> transpose(const QSeries<QSeries<R>>& s)
{
    const std::size_t inner = s[0].order();
    std::vector<QSeries<R>> out;
    for (std::size_t j = 0; j <= inner; ++j) {
        std::vector<R> col;
        for (std::size_t i = 0; i <= s.order(); ++i)
            col.push_back(s[i][j]);
        out.emplace_back(std::move(col));
    }
    return QSeries<QSeries<R>>(std::move(out));
}

struct TripleProductReport {
    bool pass = true;
    std::optional<std::pair<int, int>> first_mismatch; // (lambda exponent, q exponent)
    std::string detail;
};

/// Checks, in Q[[lambda^2, q]],
///   exp(2 sum_k zeta(2k)/(2pi)^{2k} E_{2k}(q) lambda^{2k}/k)
///     = lambda^2/(2 - 2 cos lambda) prod_n (1 - q^n)^4 / (1 - 2 cos(lambda) q^n + q^{2n})^2,
/// the prefactor being (2 sin(lambda/2))^{-2}.
inline TripleProductReport triple_product_check(int lambda_order, int q_order)
{
    if (lambda_order < 2 || q_order < 2)
        throw PreconditionError("triple_product_check needs orders >= 2");
    const auto x_order = static_cast<std::size_t>(lambda_order / 2);
    const auto qo = static_cast<std::size_t>(q_order);

    // Left side: series in x with q-series coefficients, transposed to q-outer.
    const auto lhs = transpose(series_exp(resummation_exponent(x_order, qo)));

    // cos(lambda) and (2 - 2 cos lambda) / lambda^2 as series in x.
    std::vector<Rational> cosc(x_order + 1), reduced(x_order + 1);
    for (std::size_t m = 0; m <= x_order; ++m) {
        const Rational c = Rational(1) / Rational(factorial(static_cast<unsigned>(2 * m)));
        cosc[m] = m % 2 == 0 ? c : Rational(-c);
        const Rational r = Rational(2) / Rational(factorial(static_cast<unsigned>(2 * m + 2)));
        reduced[m] = m % 2 == 0 ? r : Rational(-r);
    }
    const QSeries<Rational> cos_x(cosc);
    const QSeries<Rational> prefactor = series_inv(QSeries<Rational>(reduced));
    const auto one = QSeries<Rational>::constant(Rational(1), x_order);

    auto rhs = geom_factor_product<QSeries<Rational>>(
        [&](std::size_t) { return std::vector<QSeries<Rational>>{one, cos_x.scaled(Rational(-2)), one}; }, -2, qo);
    rhs *= geom_factor_product<QSeries<Rational>>(
        [&](std::size_t) { return std::vector<QSeries<Rational>>{one, one.scaled(Rational(-1))}; }, 4, qo);
    rhs = rhs * QSeries<QSeries<Rational>>::constant(prefactor, qo);

    TripleProductReport report;
    for (std::size_t qi = 0; qi <= qo && report.pass; ++qi)
        for (std::size_t xi = 0; xi <= x_order; ++xi)
            if (lhs[qi][xi] != rhs[qi][xi]) {
                report.pass = false;
                report.first_mismatch = std::make_pair(static_cast<int>(2 * xi), static_cast<int>(qi));
                report.detail = "lambda^" + std::to_string(2 * xi) + " q^" + std::to_string(qi) + ": " +
                                to_string(lhs[qi][xi]) + " vs " + to_string(rhs[qi][xi]);
                break;
            }
    return report;
}

} // namespace bps
