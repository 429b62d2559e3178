#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spokess/chart.hpp"
#include "spokess/cobar.hpp"
#include "spokess/hfp.hpp"
#include "spokess/hopf.hpp"
#include "spokess/may.hpp"
#include "spokess/report.hpp"

namespace spokess {

struct CliResult {
    int status = 0;
    std::string text;                                   // main report
    std::vector<std::pair<std::string, std::string>> files;  // name -> contents, written under out_dir
};

namespace cli {

inline std::string hfp_table(const RunConfig& c, ChartDoc* chart)
{
    HfpHomotopy H(c.p, parse_variant(c.variant));
    std::ostringstream os;
    std::map<SpokeDegree, std::vector<std::string>> basis;
    for (auto d : enumerate_window(c.window)) {
        auto b = H.basis_in_degree(d);
        if (b.empty())
            continue;
        std::vector<std::string> ls;
        for (auto& x : b)
            ls.push_back(x.label);
        os << format_degree(d) << " | " << b.size() << " | " << detail::join_labels(ls) << "\n";
        basis[d] = ls;
    }
    if (chart)
        *chart = chart_from_dims(basis, c.window, std::string("pi HF_p ") + variant_name(H.variant()));
    return os.str();
}

inline std::string ext_report(const RunConfig& c)
{
    TruncatedOptions to;
    to.beta = c.beta;
    to.beta_prime = c.beta_prime;
    auto T = instantiate_truncated(c.p, c.n, to);
    ExtOptions o;
    o.threads = c.threads;
    o.labels = true;
    auto t = ext_dimensions(T, c.window, c.route == "literal" ? ExtRoute::literal : ExtRoute::resolution, o);
    return format_ext_table(t);
}

inline MayOptions may_options(const RunConfig& c)
{
    MayOptions o;
    o.beta = c.beta;
    o.beta_prime = c.beta_prime;
    o.d1 = !c.disable_d1;
    o.threads = c.threads;
    return o;
}

inline std::string mk_table(const RunConfig& c, bool& all_equal)
{
    std::ostringstream os;
    all_equal = true;
    auto g = weyl_gamma(c.p);
    SparseMatFp P = g;
    for (std::uint32_t i = 1; i < c.p; ++i)
        P = P.multiply(g);
    bool order_ok = P == SparseMatFp::identity(g.field(), g.rows());
    os << "# gamma^p = id : " << (order_ok ? "yes" : "no") << "\n";
    all_equal = order_ok;
    for (int k = 0; k <= c.k_max; ++k) {
        auto f = m_k_formula(c.p, k);
        auto o = m_k_oracle(c.p, k);
        os << k << " | " << f << " | " << o << "\n";
        if (f != o)
            all_equal = false;
    }
    return os.str();
}

inline std::string axiom_lines(const AxiomReport& R)
{
    std::ostringstream os;
    for (auto& c : R.checks)
        os << R.presentation << " | " << c.name << " | " << c.checked << " | " << (c.passed ? "pass" : "FAIL")
           << (c.passed ? "" : " | " + c.failure) << "\n";
    for (auto& n : R.notes)
        os << "# " << n << "\n";
    return os.str();
}

inline std::string check_report(const RunConfig& c, bool& ok)
{
    DegreeWindow w = c.window;
    std::ostringstream os;
    ok = true;
    auto run = [&](const AxiomReport& R) {
        os << axiom_lines(R);
        ok = ok && R.ok();
    };
    if (c.preset == "sthh") {
        SthhOptions so;
        so.beta = c.beta;
        so.beta_prime = c.beta_prime;
        auto H = instantiate_sthh(c.p, so);
        os << H.name << " | homogeneity of structure maps | " << H.Gamma->size() << " | pass\n";
        run(check_axioms(H, w));
        for (auto g : {"u_lam", "u_sp", "a"}) {
            auto x = AlgebraElement::generator(H.A, g);
            os << "# eta_R(" << g << ") = " << H.eta_R.apply(x).to_string() << "\n";
        }
        TruncatedOptions to;
        to.beta = c.beta;
        to.beta_prime = c.beta_prime;
        auto T = instantiate_truncated(c.p, c.n, to);
        run(check_axioms(T.H, w));
        run(check_comodule(T.H, T.M, w));
    } else if (c.preset == "truncated") {
        TruncatedOptions to;
        to.beta = c.beta;
        to.beta_prime = c.beta_prime;
        auto T = instantiate_truncated(c.p, c.n, to);
        run(check_axioms(T.H, w));
        run(check_comodule(T.H, T.M, w));
    } else if (c.preset == "geometric") {
        run(check_axioms(instantiate_geometric(c.p), w));
    } else if (c.preset == "associated-graded") {
        run(check_axioms(instantiate_associated_graded(c.p, c.n), w));
    } else {
        throw config_error("unknown preset '" + c.preset + "' (sthh, truncated, geometric, associated-graded)");
    }
    return os.str();
}

}  // namespace cli

// Runs one command. Throws Error on config/window/consistency problems.
inline CliResult run_command(const RunConfig& c)
{
    c.validate();
    CliResult R;
    std::ostringstream os;
    os << c.header();
    if (c.command == "pi-hfp") {
        ChartDoc ch;
        os << cli::hfp_table(c, c.svg ? &ch : nullptr);
        if (c.svg)
            R.files.push_back({"pi-hfp.svg", emit_svg(ch)});
    } else if (c.command == "ext") {
        os << cli::ext_report(c);
    } else if (c.command == "may") {
        MayModel M(c.p, c.n, cli::may_options(c));
        auto P = may_pages(M, c.window);
        os << format_may_pages(P);
        for (auto& a : P.higher)
            os << "# nonzero d_" << a.r << " from " << format_tri(a.src) << "\n";
        if (c.svg) {
            for (auto& [r, pg] : P.pages)
                R.files.push_back({"may_E" + std::to_string(r) + ".svg",
                                   emit_svg(chart_from_page(pg, c.window, "E_" + std::to_string(r)))});
            R.files.push_back({"may_Einf.svg", emit_svg(chart_from_page(P.e_inf, c.window, "E_inf"))});
        }
    } else if (c.command == "segal") {
        SegalOptions so;
        so.p = c.p;
        so.n_max = c.n_max;
        so.window = c.window;
        so.may = cli::may_options(c);
        so.may.labels = false;
        auto S = segal_pipeline(so);
        os << format_segal(S);
        if (!S.verdict)
            R.status = static_cast<int>(ErrorCode::verdict);
    } else if (c.command == "mk") {
        bool eq = false;
        os << cli::mk_table(c, eq);
        if (!eq)
            R.status = static_cast<int>(ErrorCode::verdict);
    } else if (c.command == "check") {
        bool ok = false;
        os << cli::check_report(c, ok);
        if (!ok)
            R.status = static_cast<int>(ErrorCode::verdict);
    } else {
        throw config_error("unknown command '" + c.command + "'");
    }
    R.text = os.str();
    return R;
}

inline int main_entry(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"spokess: RO(C_p) spoke-graded cobar and May spectral sequence engine"};
    app.require_subcommand(1);
    RunConfig c;
    std::string window = "-12:2:-14:14";
    bool window_set = false;
    if (const char* e = std::getenv("SPOKESS_OUT_DIR"))
        c.out_dir = e;

    auto common = [&](CLI::App* s, bool with_n, bool with_window) {
        s->add_option("--p", c.p, "odd prime");
        s->add_option("--beta", c.beta, "unit in eta_R(u_lam)");
        s->add_option("--beta-prime", c.beta_prime, "unit in eta_R(u_sp)");
        s->add_option("--threads", c.threads, "worker threads");
        s->add_option("--out", c.out_dir, "output directory (default $SPOKESS_OUT_DIR)");
        s->add_flag("--svg", c.svg, "also write SVG charts");
        s->add_option("--seed", c.seed, "seed recorded in the header");
        if (with_n)
            s->add_option("--n", c.n, "truncation level: Nm^(p^n) = 0");
        if (with_window) {
            s->add_option("--window", window, "m0:m1:n0:n1")->each([&](const std::string&) { window_set = true; });
            s->add_option("--s-max", c.window.s_max, "largest cohomological degree");
        }
    };
    auto* hfp = app.add_subcommand("pi-hfp", "homotopy of HF_p per degree");
    common(hfp, false, true);
    hfp->add_option("--variant", c.variant, "full, a_free, a_inverted, a_completed_inverted, spoke_suspension");
    auto* ext = app.add_subcommand("ext", "cobar Ext over Gamma_n");
    common(ext, true, true);
    ext->add_option("--route", c.route, "resolution or literal");
    auto* may = app.add_subcommand("may", "May spectral sequence pages");
    common(may, true, true);
    may->add_flag("--disable-d1", c.disable_d1, "drop d_1 (negative control)");
    auto* seg = app.add_subcommand("segal", "stabilize, invert a, report the verdict");
    common(seg, false, true);
    seg->add_option("--n-max", c.n_max, "largest truncation level");
    seg->add_flag("--disable-d1", c.disable_d1, "drop d_1 (negative control)");
    auto* mk = app.add_subcommand("mk", "free summands m_k: formula vs Jordan-block oracle");
    common(mk, false, false);
    mk->add_option("--k-max", c.k_max, "largest k");
    auto* chk = app.add_subcommand("check", "Hopf algebroid and comodule axioms");
    common(chk, true, true);
    chk->add_option("--preset", c.preset, "sthh, truncated, geometric, associated-graded");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : static_cast<int>(ErrorCode::config);
    }
    for (auto* s : app.get_subcommands())
        c.command = s->get_name();
    try {
        int s_max = c.window.s_max;
        if (!window_set && c.command == "pi-hfp")
            window = "-6:6:-8:8";
        if (!window_set && c.command == "check")
            window = "-6:6:-8:8";
        if (!window_set && (c.command == "ext" || c.command == "may"))
            window = "-10:6:-12:12";
        if (!window_set && c.command == "segal" && c.p != 3)
            window = "-8:2:-10:10";
        c.window = parse_window(window, s_max);
        if (c.command == "segal" && !seg->count("--n-max") && c.p != 3)
            c.n_max = 2;
        auto R = run_command(c);
        out << R.text;
        if (!c.out_dir.empty()) {
            std::filesystem::create_directories(c.out_dir);
            auto write = [&](const std::string& name, const std::string& body) {
                std::ofstream f(std::filesystem::path(c.out_dir) / name, std::ios::binary);
                if (!f)
                    throw io_error("cannot write " + name + " in " + c.out_dir);
                f << body;
            };
            write(c.command + ".txt", R.text);
            for (auto& [name, body] : R.files)
                write(name, body);
        } else if (!R.files.empty()) {
            err << "note: --svg given without --out or SPOKESS_OUT_DIR; charts not written\n";
        }
        return R.status;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(ErrorCode::consistency);
    }
}

}  // namespace spokess
