#pragma once

// JSON and TSV encodings. Rationals always travel as "p/q" strings.

#include "bps/anomaly.hpp"
#include "bps/errors.hpp"
#include "bps/goettsche.hpp"
#include "bps/gv.hpp"
#include "bps/laurent.hpp"
#include "bps/qseries.hpp"
#include "bps/rational.hpp"
#include "bps/sl2.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace bps::io {

using nlohmann::json;

inline json rational_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const json& j)
{
    try {
        if (j.is_string())
            return parse_rational(j.get<std::string>());
        if (j.is_number_integer())
            return Rational(j.get<long long>());
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad rational: ") + e.what());
    }
    throw ParseError("expected a rational as \"p/q\" string, got " + j.dump());
}

template <std::size_t V>
json laurent_json(const LaurentPoly<V>& p)
{
    json terms = json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back({{"exp", std::vector<int>(e.begin(), e.end())}, {"coeff", to_string(c)}});
    return terms;
}

inline json coefficient_json(const Rational& r) { return rational_json(r); }
template <std::size_t V>
json coefficient_json(const LaurentPoly<V>& p)
{
    return laurent_json(p);
}

template <class R>
json series_json(const QSeries<R>& s, const std::string& var = "q")
{
    json coeffs = json::array();
    for (const auto& c : s.coeffs())
        coeffs.push_back(coefficient_json(c));
    return {{"var", var}, {"order", s.order()}, {"coeffs", coeffs}};
}

inline QSeries<Rational> series_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty())
        throw ParseError("series JSON needs a nonempty \"coeffs\" array");
    std::vector<Rational> c;
    for (const auto& x : j["coeffs"])
        c.push_back(rational_from_json(x));
    if (j.contains("order") && j["order"].get<std::size_t>() + 1 != c.size())
        throw ParseError("series \"order\" disagrees with the number of coefficients");
    return QSeries<Rational>(std::move(c));
}

/// One row per power: power, coefficient.
inline std::string series_tsv(const QSeries<Rational>& s)
{
    std::ostringstream os;
    os << "power\tcoefficient\n";
    for (std::size_t k = 0; k <= s.order(); ++k)
        os << k << '\t' << to_string(s[k]) << '\n';
    return os.str();
}

inline json spin_json(const SpinDecomp& d)
{
    json o = json::object();
    for (const auto& [s, m] : d.multiplicities())
        o[spin_label(s)] = m.str();
    return o;
}

inline json decomposition_json(const IBasisDecomp& d)
{
    json basis = json::object();
    for (const auto& [h, r] : d)
        basis[std::to_string(h)] = spin_json(r);
    return {{"I_basis", basis}};
}

inline IBasisDecomp decomposition_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("I_basis") || !j["I_basis"].is_object())
        throw ParseError("decomposition JSON needs an \"I_basis\" object");
    IBasisDecomp out;
    try {
        for (const auto& [h, r] : j["I_basis"].items())
            for (const auto& [s, m] : r.items())
                out[std::stoi(h)].add(parse_spin_label(s), m.is_string() ? BigInt(m.get<std::string>())
                                                                          : BigInt(m.get<long long>()));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad decomposition entry: ") + e.what());
    }
    return out;
}

namespace detail {

inline const char* absent_name(AbsentPolicy p) { return p == AbsentPolicy::zero ? "zero" : "unknown"; }

template <class Value>
json table_json(const InvariantTable<Value>& t, const char* kind)
{
    json entries = json::array();
    for (const auto& [key, v] : t.entries) {
        const Rational r(v);
        entries.push_back({{"genus", key.first}, {"class", key.second}, {"value", to_string(r)}});
    }
    json out = {{"rank", t.lattice.rank()},
                {"degree_weights", t.lattice.degree_weights},
                {"kind", kind},
                {"max_genus", t.max_genus},
                {"max_degree", t.max_degree},
                {"entries", entries}};
    if (t.absent != AbsentPolicy::zero)
        out["absent"] = absent_name(t.absent);
    if (!t.unknown.empty()) {
        json unk = json::array();
        for (const auto& [g, c] : t.unknown)
            unk.push_back({{"genus", g}, {"class", c}});
        out["unknown"] = unk;
    }
    return out;
}

template <class Value, class Convert>
InvariantTable<Value> table_from_json(const json& j, const char* kind, Convert convert)
{
    InvariantTable<Value> t;
    try {
        if (!j.is_object())
            throw ParseError("table JSON must be an object");
        if (j.contains("kind") && j["kind"].get<std::string>() != kind)
            throw ParseError("expected a \"" + std::string(kind) + "\" table, got \"" +
                             j["kind"].get<std::string>() + "\"");
        t.lattice.degree_weights = j.at("degree_weights").get<std::vector<int>>();
        t.lattice.validate();
        if (j.contains("rank") && j["rank"].get<std::size_t>() != t.lattice.rank())
            throw ParseError("\"rank\" disagrees with \"degree_weights\"");
        t.max_genus = j.value("max_genus", 0);
        t.max_degree = j.value("max_degree", 0);
        const std::string absent = j.value("absent", std::string("zero"));
        if (absent == "zero")
            t.absent = AbsentPolicy::zero;
        else if (absent == "unknown")
            t.absent = AbsentPolicy::unknown;
        else
            throw ParseError("\"absent\" must be \"zero\" or \"unknown\"");
        for (const auto& e : j.value("entries", json::array())) {
            const CurveClass c = e.at("class").get<CurveClass>();
            t.lattice.degree(c);
            const int g = e.at("genus").get<int>();
            if (g < 0)
                throw ParseError("negative genus in table entry");
            t.set(g, c, convert(rational_from_json(e.at("value"))));
        }
        for (const auto& e : j.value("unknown", json::array())) {
            const CurveClass c = e.at("class").get<CurveClass>();
            t.lattice.degree(c);
            t.unknown.insert({e.at("genus").get<int>(), c});
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed table JSON: ") + e.what());
    }
    return t;
}

} // namespace detail

inline json gw_table_json(const GWTable& t) { return detail::table_json(t, "gw"); }
inline json bps_table_json(const BPSTable& t) { return detail::table_json(t, "bps"); }

inline GWTable gw_table_from_json(const json& j)
{
    return detail::table_from_json<Rational>(j, "gw", [](const Rational& r) { return r; });
}

inline BPSTable bps_table_from_json(const json& j)
{
    return detail::table_from_json<BigInt>(j, "bps", [](const Rational& r) {
        if (!is_integer(r))
            throw ParseError("BPS table value " + to_string(r) + " is not an integer");
        return numerator(r);
    });
}

inline json poly_json(const GradedPoly& p)
{
    json monomials = json::array();
    for (const auto& [m, c] : p.terms())
        monomials.push_back({{"e2", m[0]}, {"e4", m[1]}, {"e6", m[2]}, {"coeff", to_string(c)}});
    return {{"weight", p.weight()}, {"monomials", monomials}};
}

inline GradedPoly poly_from_json(const json& j)
{
    try {
        GradedPoly p(j.at("weight").get<int>());
        for (const auto& m : j.at("monomials"))
            p.add_term({m.value("e2", 0), m.value("e4", 0), m.value("e6", 0)}, rational_from_json(m.at("coeff")));
        return p;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed polynomial JSON: ") + e.what());
    }
}

/// {"entries": [{"n": n, "g": g, "poly": {...}}, ...]}
inline std::vector<ZFunction> z_table_from_json(const json& j)
{
    std::vector<ZFunction> out;
    try {
        for (const auto& e : j.at("entries")) {
            ZFunction z{e.at("n").get<int>(), e.at("g").get<int>(), poly_from_json(e.at("poly"))};
            z.validate();
            out.push_back(std::move(z));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed Z table JSON: ") + e.what());
    }
    return out;
}

inline json z_table_json(const std::vector<ZFunction>& zs)
{
    json entries = json::array();
    for (const auto& z : zs)
        entries.push_back({{"n", z.n}, {"g", z.g}, {"poly", poly_json(z.poly)}});
    return {{"entries", entries}};
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace bps::io
