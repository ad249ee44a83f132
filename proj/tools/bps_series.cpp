// bps_series: batch front end for the q-series, GV, Goettsche and anomaly computations.
//
// Exit status: 0 success, 1 verification failure, 2 usage or parse error.

#include "bps/anomaly.hpp"
#include "bps/goettsche.hpp"
#include "bps/gv.hpp"
#include "bps/io.hpp"
#include "bps/modular.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using bps::io::json;

enum class Format { json, tsv };

struct RunConfig {
    std::string command;
    std::size_t q_order = 12;
    int lambda_order = 12;
    std::size_t g_max = 6;
    int degree_order = 6;
    std::string in_path;
    std::string out_path;
    std::string table_path;
    std::string format_name;
    Format format = Format::json;

    int weight = 0;
    std::vector<int> betti;
    bool refined = false;
    int n = 1;
    int g = 0;
    std::vector<std::string> boundary;
    std::vector<std::string> normalization;
};

class Output {
public:
    explicit Output(const std::string& path) : path_(path) {}

    std::ostream& stream() { return buffer_; }

    void flush()
    {
        if (path_.empty()) {
            std::cout << buffer_.str();
            return;
        }
        std::ofstream out(path_, std::ios::binary);
        if (!out)
            throw bps::ParseError("cannot write " + path_);
        out << buffer_.str();
    }

private:
    std::string path_;
    std::ostringstream buffer_;
};

void emit_json(Output& out, const json& j) { out.stream() << j.dump(2) << '\n'; }

int cmd_eisenstein(const RunConfig& c, Output& out)
{
    const auto e = bps::eisenstein(c.weight, c.q_order);
    if (c.format == Format::tsv)
        out.stream() << bps::io::series_tsv(e);
    else
        emit_json(out, bps::io::series_json(e));
    return 0;
}

int cmd_goettsche(const RunConfig& c, Output& out)
{
    if (c.refined) {
        if (!c.betti.empty() && c.betti != std::vector<int>{1, 0, 10, 0, 1})
            throw bps::PreconditionError("--refined is available for the rational elliptic surface (--betti 1,0,10,0,1)");
        const auto s = bps::refined_goettsche_res(c.g_max);
        if (c.format == Format::json) {
            emit_json(out, bps::io::series_json(s));
            return 0;
        }
        out.stream() << "g\ta\tb\tcoefficient\n";
        for (std::size_t g = 0; g <= s.order(); ++g)
            for (const auto& [e, coeff] : s[g].terms())
                out.stream() << g << '\t' << e[0] << '\t' << e[1] << '\t' << bps::to_string(coeff) << '\n';
        return 0;
    }
    if (c.betti.size() != 5)
        throw bps::PreconditionError("--betti needs five values b0,b1,b2,b3,b4");
    const bps::BettiVector b{c.betti[0], c.betti[1], c.betti[2], c.betti[3], c.betti[4]};
    const auto s = bps::goettsche_series(b, c.g_max);
    if (c.format == Format::json) {
        emit_json(out, bps::io::series_json(s));
        return 0;
    }
    out.stream() << "g\texponent\tcoefficient\n";
    for (std::size_t g = 0; g <= s.order(); ++g)
        for (const auto& [e, coeff] : s[g].terms())
            out.stream() << g << '\t' << e[0] << '\t' << bps::to_string(coeff) << '\n';
    return 0;
}

int cmd_bps_rational_elliptic(const RunConfig& c, Output& out)
{
    const auto n = bps::bps_rational_elliptic(c.g_max);
    if (c.format == Format::json) {
        json entries = json::array();
        for (const auto& [key, v] : n)
            entries.push_back({{"g", key.first}, {"h", key.second}, {"n", v.str()}});
        emit_json(out, {{"gmax", c.g_max}, {"entries", entries}});
        return 0;
    }
    out.stream() << "g\th\tn_h\n";
    for (const auto& [key, v] : n)
        out.stream() << key.first << '\t' << key.second << '\t' << v << '\n';
    return 0;
}

int cmd_gv_from_gw(const RunConfig& c, Output& out)
{
    const auto gw = bps::io::gw_table_from_json(bps::io::read_json_file(c.in_path));
    emit_json(out, bps::io::bps_table_json(bps::gv_from_gw(gw, c.lambda_order, c.degree_order)));
    return 0;
}

int cmd_gw_from_gv(const RunConfig& c, Output& out)
{
    const auto bps_table = bps::io::bps_table_from_json(bps::io::read_json_file(c.in_path));
    emit_json(out, bps::io::gw_table_json(bps::gw_from_gv(bps_table, c.lambda_order, c.degree_order)));
    return 0;
}

int cmd_roundtrip(const RunConfig& c, Output& out)
{
    const auto bps_table = bps::io::bps_table_from_json(bps::io::read_json_file(c.in_path));
    const auto report = bps::roundtrip_check(bps_table, c.lambda_order, c.degree_order);
    emit_json(out, {{"ok", report.ok}, {"differences", report.differences}});
    return report.ok ? 0 : 1;
}

std::map<int, bps::Rational> parse_normalization(const std::vector<std::string>& items)
{
    std::map<int, bps::Rational> out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw bps::ParseError("normalization entries look like n=c, got '" + item + "'");
        out[std::stoi(item.substr(0, eq))] = bps::parse_rational(item.substr(eq + 1));
    }
    return out;
}

int cmd_anomaly_verify(const RunConfig& c, Output& out)
{
    const auto zs = bps::io::z_table_from_json(bps::io::read_json_file(c.table_path));
    std::map<int, bps::Rational> norm = parse_normalization(c.normalization);
    json found = json::object();
    bool consistent = true;
    if (norm.empty()) {
        for (const auto& [n, k] : bps::find_normalization(zs)) {
            found[std::to_string(n)] = k ? json(bps::to_string(*k)) : json(nullptr);
            if (k)
                norm[n] = *k;
            else
                consistent = false;
        }
    }
    const auto report = bps::verify_anomaly(zs, norm);
    json checks = json::array();
    for (const auto& chk : report.checks)
        checks.push_back({{"n", chk.n},
                          {"g", chk.g},
                          {"pass", chk.pass},
                          {"difference", bps::io::poly_json(chk.difference)}});
    json used = json::object();
    for (const auto& [n, k] : report.normalization)
        used[std::to_string(n)] = bps::to_string(k);
    const std::string summary = std::to_string(report.passed()) + "/" + std::to_string(report.checks.size()) + " pass";
    json result = {{"summary", summary}, {"normalization", used}, {"checks", checks}};
    if (!found.empty())
        result["normalization_search"] = found;
    emit_json(out, result);
    std::cerr << summary << '\n';
    return report.all_pass() && consistent ? 0 : 1;
}

int cmd_anomaly_solve(const RunConfig& c, Output& out)
{
    const auto zs = bps::io::z_table_from_json(bps::io::read_json_file(c.table_path));
    bps::AnomalyTable known = bps::to_table(zs);
    known.erase({c.g, c.n});
    std::vector<bps::Rational> boundary;
    for (const auto& s : c.boundary)
        boundary.push_back(bps::parse_rational(s));
    const auto norm = parse_normalization(c.normalization);
    const bps::Rational k = norm.count(c.n) ? norm.at(c.n) : bps::Rational(1);
    emit_json(out, bps::io::poly_json(bps::solve_anomaly(c.n, c.g, known, boundary, k)));
    return 0;
}

int cmd_genus_series(const RunConfig& c, Output& out)
{
    const auto zs = bps::genus_series_n1(c.g_max, c.q_order);
    if (c.format == Format::tsv) {
        out.stream() << "g\tpower\tcoefficient\n";
        for (std::size_t g = 0; g < zs.size(); ++g)
            for (std::size_t k = 0; k <= zs[g].order(); ++k)
                out.stream() << g << '\t' << k << '\t' << bps::to_string(zs[g][k]) << '\n';
        return 0;
    }
    json series = json::array();
    for (std::size_t g = 0; g < zs.size(); ++g)
        series.push_back({{"g", g}, {"series", bps::io::series_json(zs[g])}});
    emit_json(out, {{"n", 1}, {"genera", series}});
    return 0;
}

int cmd_triple_product(const RunConfig& c, Output& out)
{
    const auto report = bps::triple_product_check(c.lambda_order, static_cast<int>(c.q_order));
    json j = {{"pass", report.pass}, {"lambda_order", c.lambda_order}, {"q_order", c.q_order}};
    if (report.first_mismatch) {
        j["first_mismatch"] = {{"lambda", report.first_mismatch->first}, {"q", report.first_mismatch->second}};
        j["detail"] = report.detail;
    }
    emit_json(out, j);
    return report.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact q-series, Gopakumar-Vafa and holomorphic anomaly computations"};
    app.require_subcommand(1);
    RunConfig c;

    std::map<CLI::App*, Format> default_format;
    auto add_out = [&](CLI::App* sub) { sub->add_option("--out,-o", c.out_path, "Output file (default: stdout)"); };
    auto add_format = [&](CLI::App* sub, Format def) {
        default_format[sub] = def;
        sub->add_option("--format", c.format_name, def == Format::json ? "json (default) or tsv" : "tsv (default) or json")
            ->check(CLI::IsMember({"json", "tsv"}));
    };
    auto add_q = [&](CLI::App* sub) {
        sub->add_option("--q-order,--order", c.q_order, "Truncation order in q")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
    };
    auto add_lambda = [&](CLI::App* sub) {
        sub->add_option("--lambda-order", c.lambda_order, "Highest power of lambda kept")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
    };
    auto add_gmax = [&](CLI::App* sub) {
        sub->add_option("--gmax", c.g_max, "Highest genus / q-power")->check(CLI::NonNegativeNumber)->capture_default_str();
    };
    auto add_degree = [&](CLI::App* sub) {
        sub->add_option("--degree-order", c.degree_order, "Highest curve degree")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
    };
    auto add_norm = [&](CLI::App* sub) {
        sub->add_option("--normalization", c.normalization, "Per-n constants n=c (comma separated)")->delimiter(',');
    };

    auto* eis = app.add_subcommand("eisenstein", "q-expansion of E_w");
    eis->add_option("--weight", c.weight, "Even weight >= 2")->required();
    add_q(eis);
    add_format(eis, Format::json);
    add_out(eis);

    auto* got = app.add_subcommand("goettsche", "Poincare series of Hilbert schemes of points");
    got->add_option("--betti", c.betti, "b0,b1,b2,b3,b4")->delimiter(',');
    got->add_flag("--refined", c.refined, "Bigraded product for the rational elliptic surface");
    add_gmax(got);
    add_format(got, Format::json);
    add_out(got);

    auto* res = app.add_subcommand("bps-rational-elliptic", "n_h(C + gF) for the rational elliptic surface");
    add_gmax(res);
    add_format(res, Format::tsv);
    add_out(res);

    auto* gv = app.add_subcommand("gv-from-gw", "BPS table from a GW table");
    auto* gw = app.add_subcommand("gw-from-gv", "GW table from a BPS table");
    auto* rt = app.add_subcommand("roundtrip-check", "gv_from_gw(gw_from_gv(n)) == n");
    for (auto* sub : {gv, gw, rt}) {
        sub->add_option("--in,-i", c.in_path, "Input table JSON")->required()->check(CLI::ExistingFile);
        add_lambda(sub);
        add_degree(sub);
        add_out(sub);
    }

    auto* av = app.add_subcommand("anomaly-verify", "Check Z_{g;n} numerators against the anomaly recursion");
    av->add_option("--table", c.table_path, "Z table JSON")->required()->check(CLI::ExistingFile);
    add_norm(av);
    add_out(av);

    auto* as = app.add_subcommand("anomaly-solve", "Solve for P_{g,n} from the recursion and boundary q-coefficients");
    as->add_option("--n", c.n, "Fiber degree")->required()->check(CLI::PositiveNumber);
    as->add_option("--g", c.g, "Genus")->required()->check(CLI::NonNegativeNumber);
    as->add_option("--table", c.table_path, "Z table JSON with the prerequisites")->required()->check(CLI::ExistingFile);
    as->add_option("--boundary", c.boundary, "Leading q-coefficients c0,c1,...")->delimiter(',');
    add_norm(as);
    add_out(as);

    auto* gs = app.add_subcommand("genus-series", "Z_{g;1}(q) from the genus resummation");
    add_gmax(gs);
    add_q(gs);
    add_format(gs, Format::json);
    add_out(gs);

    auto* tp = app.add_subcommand("triple-product-check", "Resummation exponent vs the Jacobi product");
    add_lambda(tp);
    add_q(tp);
    add_out(tp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::map<CLI::App*, int (*)(const RunConfig&, Output&)> handlers{
        {eis, cmd_eisenstein},         {got, cmd_goettsche},    {res, cmd_bps_rational_elliptic},
        {gv, cmd_gv_from_gw},          {gw, cmd_gw_from_gv},    {rt, cmd_roundtrip},
        {av, cmd_anomaly_verify},      {as, cmd_anomaly_solve}, {gs, cmd_genus_series},
        {tp, cmd_triple_product}};

    for (const auto& [sub, handler] : handlers) {
        if (!sub->parsed())
            continue;
        c.command = sub->get_name();
        if (!c.format_name.empty())
            c.format = c.format_name == "tsv" ? Format::tsv : Format::json;
        else if (default_format.count(sub))
            c.format = default_format.at(sub);
        Output out(c.out_path);
        try {
            const int status = handler(c, out);
            out.flush();
            return status;
        } catch (const bps::VerificationError& e) {
            out.flush();
            std::cerr << c.command << ": verification failed: " << e.what() << '\n';
            return 1;
        } catch (const bps::Error& e) {
            std::cerr << c.command << ": " << e.what() << '\n';
            return 2;
        } catch (const std::invalid_argument& e) {
            std::cerr << c.command << ": " << e.what() << '\n';
            return 2;
        }
    }
    return 2;
}
