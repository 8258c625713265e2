#include "equifuse/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "equifuse/formulas.hpp"

namespace equifuse::cli {

using nlohmann::json;

double round12(double x) {
    if (!std::isfinite(x))
        return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r; // no negative zero
}

namespace {

struct Config {
    int m = 0;
    double tolerance = 1e-9;
    bool json = false;
    std::string ring = "c";
    std::string which;
    std::string i, j, k;
    std::string formula = "oracle";
};

class BadInvocation : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

void validate(const Config &cfg) {
    if (cfg.m < 2 || cfg.m % 2 != 0)
        throw Error(ErrorKind::unsupported_case,
                    "m must be even and >= 2 (delta = 4m with 8 | delta), got " + std::to_string(cfg.m));
    if (!(cfg.tolerance > 0.0))
        throw BadInvocation("tolerance must be positive");
}

json envelope(const Config &cfg) {
    json j;
    j["m"] = cfg.m;
    j["kappa"] = 4 * cfg.m + 2;
    j["tolerance"] = round12(cfg.tolerance);
    j["results"] = json::array();
    return j;
}

std::string fmt12(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << round12(x);
    return os.str();
}

std::string render_sum(const std::vector<std::pair<std::string, int>> &terms) {
    std::string s;
    for (const auto &[name, mult] : terms) {
        if (!s.empty())
            s += " ⊕ ";
        if (mult != 1)
            s += std::to_string(mult);
        s += name;
    }
    return s.empty() ? "0" : s;
}

int cmd_table(const Config &cfg, std::ostream &out) {
    json doc = envelope(cfg);
    doc["ring"] = cfg.ring;
    std::vector<std::string> lines;
    auto emit = [&](const std::string &x, const std::string &y,
                    const std::vector<std::pair<std::string, int>> &row) {
        for (const auto &[z, mult] : row)
            doc["results"].push_back({{"x", x}, {"y", y}, {"z", z}, {"mult", mult}});
        lines.push_back(x + " ⊗ " + y + " = " + render_sum(row));
    };

    if (cfg.ring == "d") {
        const ModularDataD d(4 * cfg.m + 2);
        auto name = [](int i) { return "V" + std::to_string(i); };
        for (int i = 0; i <= d.delta(); ++i)
            for (int j = 0; j <= d.delta(); ++j) {
                std::vector<std::pair<std::string, int>> row;
                for (int k = 0; k <= d.delta(); ++k)
                    if (int n = d.n(i, j, k))
                        row.emplace_back(name(k), n);
                emit(name(i), name(j), row);
            }
    } else {
        const TypeDRing ring = build_ring(cfg.m);
        for (const auto &x : ring.labels())
            for (const auto &y : ring.labels()) {
                std::vector<std::pair<std::string, int>> row;
                for (const auto &z : ring.labels())
                    if (int l = ring.coeff(x, y, z))
                        row.emplace_back(to_string(z), l);
                emit(to_string(x), to_string(y), row);
            }
    }

    if (cfg.json) {
        out << doc.dump(2) << '\n';
    } else {
        out << "# " << (cfg.ring == "d" ? "rep U_q(sl2)" : "rep A, type D") << " fusion table, m=" << cfg.m
            << ", kappa=" << 4 * cfg.m + 2 << '\n';
        for (const auto &l : lines)
            out << l << '\n';
    }
    return ok;
}

int cmd_smatrix(const Config &cfg, std::ostream &out) {
    std::vector<std::string> rows, cols;
    Eigen::MatrixXcd mat;
    if (cfg.which == "d") {
        const ModularDataD d(4 * cfg.m + 2);
        mat = d.s_matrix().cast<Scalar>();
        for (int i = 0; i <= d.delta(); ++i)
            rows.push_back("V" + std::to_string(i));
        cols = rows;
    } else {
        const ExtModularData ext = build_extended(cfg.m, Tolerance{cfg.tolerance});
        if (cfg.which == "c-ee") {
            mat = ext.s_ee();
            for (const auto &l : ext.ee_basis())
                rows.push_back(to_string(l));
            cols = rows;
        } else {
            mat = ext.s_ea();
            for (const auto &l : ext.ea_basis())
                rows.push_back(to_string(l));
            for (const auto &l : ext.ae_basis())
                cols.push_back(to_string(l));
        }
    }

    json doc = envelope(cfg);
    doc["which"] = cfg.which;
    for (Eigen::Index r = 0; r < mat.rows(); ++r)
        for (Eigen::Index c = 0; c < mat.cols(); ++c)
            doc["results"].push_back({{"row", rows[static_cast<std::size_t>(r)]},
                                      {"col", cols[static_cast<std::size_t>(c)]},
                                      {"re", round12(mat(r, c).real())},
                                      {"im", round12(mat(r, c).imag())}});
    if (cfg.json) {
        out << doc.dump(2) << '\n';
        return ok;
    }
    out << "# s-matrix block " << cfg.which << ", m=" << cfg.m << ", kappa=" << 4 * cfg.m + 2 << '\n';
    out << std::setw(8) << "";
    for (const auto &c : cols)
        out << std::setw(34) << c;
    out << '\n';
    for (Eigen::Index r = 0; r < mat.rows(); ++r) {
        out << std::setw(8) << rows[static_cast<std::size_t>(r)];
        for (Eigen::Index c = 0; c < mat.cols(); ++c)
            out << std::setw(34) << ("(" + fmt12(mat(r, c).real()) + ", " + fmt12(mat(r, c).imag()) + ")");
        out << '\n';
    }
    return ok;
}

int parse_index(const std::string &s, int hi) {
    std::size_t used = 0;
    int v = -1;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception &) {
        throw BadInvocation("index '" + s + "' is not an integer");
    }
    if (used != s.size() || v < 0 || v > hi)
        throw BadInvocation("index '" + s + "' outside 0.." + std::to_string(hi));
    return v;
}

int cmd_coeff(const Config &cfg, std::ostream &out) {
    Tolerance tol{cfg.tolerance};
    double value = 0.0, imag = 0.0;
    long long oracle = 0;
    std::string ni, nj, nk;

    if (cfg.formula == "verlinde") {
        const ModularDataD d(4 * cfg.m + 2);
        const int i = parse_index(cfg.i, d.delta()), j = parse_index(cfg.j, d.delta()),
                  k = parse_index(cfg.k, d.delta());
        value = verlinde_sum(i, j, k, d);
        oracle = d.n(i, j, k);
        ni = "V" + std::to_string(i);
        nj = "V" + std::to_string(j);
        nk = "V" + std::to_string(k);
    } else {
        CLabel i, j, k;
        try {
            i = parse_clabel(cfg.i, cfg.m);
            j = parse_clabel(cfg.j, cfg.m);
            k = parse_clabel(cfg.k, cfg.m);
        } catch (const Error &e) {
            throw BadInvocation(e.what());
        }
        ni = to_string(i);
        nj = to_string(j);
        nk = to_string(k);
        if (cfg.formula == "oracle") {
            const TypeDRing ring = build_ring(cfg.m);
            oracle = ring.coeff(i, j, k);
            value = static_cast<double>(oracle);
        } else {
            const ExtModularData ext = build_extended(cfg.m, tol);
            Scalar v;
            try {
                v = cfg.formula == "ext-e" ? ext_sum_e(i, j, k, ext) : ext_sum_a(i, j, k, ext);
            } catch (const Error &e) {
                throw BadInvocation(e.what());
            }
            value = v.real();
            imag = v.imag();
            oracle = ext.ring().coeff(i, j, k);
        }
    }

    const double residual = std::hypot(value - static_cast<double>(oracle), imag);
    const bool pass = residual < tol.eps;
    if (cfg.json) {
        json doc = envelope(cfg);
        doc["results"].push_back({{"formula", cfg.formula},
                                  {"i", ni},
                                  {"j", nj},
                                  {"k", nk},
                                  {"value", round12(value)},
                                  {"oracle", oracle},
                                  {"residual", round12(residual)},
                                  {"passed", pass}});
        out << doc.dump(2) << '\n';
    } else {
        out << cfg.formula << " L(" << ni << ", " << nj << ", " << nk << ") = " << fmt12(value)
            << "  oracle " << oracle << "  residual " << fmt12(residual) << (pass ? "  ok" : "  MISMATCH")
            << '\n';
    }
    return pass ? ok : check_failed;
}

int cmd_verify(const Config &cfg, std::ostream &out) {
    const VerificationReport report = verify_all(cfg.m, Tolerance{cfg.tolerance});
    if (cfg.json) {
        json doc = envelope(cfg);
        for (const auto &c : report.checks)
            doc["results"].push_back({{"name", c.name},
                                      {"params", c.params},
                                      {"max_residual", round12(c.max_residual)},
                                      {"passed", c.passed}});
        doc["passed"] = report.passed();
        out << doc.dump(2) << '\n';
    } else {
        std::size_t failed = 0;
        for (const auto &c : report.checks) {
            out << (c.passed ? "PASS " : "FAIL ") << c.name << " [" << c.params << "] max_residual=" << std::setprecision(3)
                << c.max_residual << '\n';
            failed += c.passed ? 0 : 1;
        }
        out << report.checks.size() - failed << "/" << report.checks.size() << " checks passed (m=" << cfg.m
            << ", kappa=" << 4 * cfg.m + 2 << ", tol=" << cfg.tolerance << ")\n";
    }
    return report.passed() ? ok : check_failed;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Config cfg;
    CLI::App app{"Modular data and fusion rules of the type D_{2m+2} extended Verlinde algebra", "equifuse"};
    app.require_subcommand(1);

    auto add_m = [&](CLI::App *sub) { sub->add_option("--m", cfg.m, "even m >= 2; kappa = 4m + 2")->required(); };

    CLI::App *table = app.add_subcommand("table", "print a fusion table");
    add_m(table);
    table->add_option("--ring", cfg.ring, "c: rep A, d: rep U_q(sl2)")->check(CLI::IsMember({"c", "d"}));
    table->add_flag("--json", cfg.json);

    CLI::App *smatrix = app.add_subcommand("smatrix", "print an s-matrix block");
    add_m(smatrix);
    smatrix->add_option("--which", cfg.which, "d, c-ee or c-ea")->required()->check(CLI::IsMember({"d", "c-ee", "c-ea"}));
    smatrix->add_flag("--json", cfg.json);

    CLI::App *coeff = app.add_subcommand("coeff", "evaluate one fusion coefficient");
    add_m(coeff);
    coeff->add_option("--i", cfg.i)->required();
    coeff->add_option("--j", cfg.j)->required();
    coeff->add_option("--k", cfg.k)->required();
    coeff->add_option("--formula", cfg.formula)->check(CLI::IsMember({"verlinde", "ext-e", "ext-a", "oracle"}));
    coeff->add_option("--tol", cfg.tolerance);
    coeff->add_flag("--json", cfg.json);

    CLI::App *verify = app.add_subcommand("verify", "run the verification suite");
    add_m(verify);
    verify->add_option("--tol", cfg.tolerance, "residual tolerance (default 1e-9)");
    verify->add_flag("--json", cfg.json);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError &e) {
        err << "equifuse: " << e.what() << '\n';
        return bad_invocation;
    }

    try {
        validate(cfg);
        if (table->parsed())
            return cmd_table(cfg, out);
        if (smatrix->parsed())
            return cmd_smatrix(cfg, out);
        if (coeff->parsed())
            return cmd_coeff(cfg, out);
        return cmd_verify(cfg, out);
    } catch (const BadInvocation &e) {
        err << "equifuse: " << e.what() << '\n';
        return bad_invocation;
    } catch (const Error &e) {
        err << "equifuse: " << e.what() << '\n';
        return e.kind() == ErrorKind::unsupported_case || e.kind() == ErrorKind::invalid_parameter
                   ? bad_invocation
                   : check_failed;
    }
}

} // namespace equifuse::cli
