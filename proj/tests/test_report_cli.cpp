#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <sys/wait.h>

#include "spokess/cli.hpp"

using namespace spokess;

namespace {

struct Run {
    int rc;
    std::string out, err;
};

Run run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "spokess");
    std::vector<char*> argv;
    for (auto& a : args)
        argv.push_back(a.data());
    std::ostringstream out, err;
    int rc = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {rc, out.str(), err.str()};
}

std::size_t count_of(const std::string& s, const std::string& needle)
{
    std::size_t c = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1))
        ++c;
    return c;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::filesystem::path scratch_dir(const std::string& name)
{
    auto d = std::filesystem::temp_directory_path() / ("spokess_test_" + name);
    std::filesystem::remove_all(d);
    return d;
}

}  // namespace

TEST(Report, HeaderRoundTrip)
{
    RunConfig c;
    c.command = "may";
    c.p = 5;
    c.n = 2;
    c.window = {-3, 4, -5, 6, 3};
    c.beta = 2;
    c.disable_d1 = true;
    c.threads = 7;
    auto h = c.header();
    EXPECT_EQ(h.find("threads"), std::string::npos);
    auto back = parse_header(h + "0 | 0+0@|0|0 | 1 | 1\n");
    EXPECT_EQ(back.fields(), c.fields());
    EXPECT_THROW(parse_header("# p = 3\n"), Error);
}

TEST(Report, ExtTableRoundTrip)
{
    auto T = instantiate_truncated(3, 1);
    ExtOptions o;
    o.labels = true;
    auto t = ext_dimensions(T, {-4, 2, -6, 6, 3}, ExtRoute::resolution, o);
    auto txt = format_ext_table(t);
    auto back = parse_ext_table(txt);
    std::map<std::pair<int, SpokeDegree>, std::size_t> a, b;
    for (auto& [k, e] : t.entries)
        a[{k.s, k.total}] += e.dim;
    for (auto& [k, e] : back) {
        b[k] = e.dim;
        EXPECT_EQ(e.labels.size(), e.dim);
    }
    EXPECT_EQ(a, b);
    EXPECT_EQ(format_ext_table(t), txt);
    EXPECT_THROW(parse_ext_table("1 | 0+0@\n"), Error);
}

TEST(Report, PagesRoundTrip)
{
    MayModel M(3, 1);
    auto P = may_pages(M, {-4, 2, -6, 6, 3});
    auto back = parse_pages(format_may_pages(P));
    for (auto& [r, pg] : P.pages) {
        ASSERT_TRUE(back.count(r));
        EXPECT_EQ(back[r].entries, pg.entries) << r;
        EXPECT_EQ(back[r].arrows, pg.arrows) << r;
    }
    EXPECT_EQ(back[0].entries, P.e_inf.entries);
    EXPECT_THROW(parse_pages("d 2 | 0+0@|0|0\n"), Error);
}

TEST(Report, LabelsWithSpacesRejected)
{
    ExtTable t;
    t.entries[{{0, 0}, 0, 0}] = {1, {"bad label"}};
    EXPECT_THROW(format_ext_table(t), Error);
}

TEST(Chart, EmptyPageHasNoDots)
{
    SSPage P;
    auto svg = emit_svg(chart_from_page(P, {-2, 2, -2, 2, 0}, "empty"));
    EXPECT_EQ(count_of(svg, "<circle"), 0u);
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Chart, DotsMatchDimensions)
{
    MayModel M(3, 1);
    DegreeWindow w{-4, 2, -6, 6, 2};
    auto P = may_pages(M, w);
    for (auto& [r, pg] : P.pages) {
        std::size_t total = 0;
        for (auto& [k, e] : pg.entries)
            total += e.dim;
        auto doc = chart_from_page(pg, w, "E");
        EXPECT_EQ(doc.dots.size(), total);
        auto svg = emit_svg(doc);
        EXPECT_EQ(count_of(svg, "<circle"), total);
        EXPECT_EQ(svg, emit_svg(chart_from_page(pg, w, "E")));
    }
}

TEST(Chart, MissingEndpointRejected)
{
    ChartDoc d{"x", {0, 1, 0, 1, 0}, {{{{0, 0}, 0, 0}, "1"}}, {{{{0, 0}, 0, 0}, {{1, 1}, 1, 1}, 1}}};
    EXPECT_THROW(d.validate(), Error);
    EXPECT_THROW(emit_svg(d), Error);
}

TEST(Chart, EscapesTitles)
{
    ChartDoc d{"a<b & c", {0, 0, 0, 0, 0}, {}, {}};
    auto svg = emit_svg(d);
    EXPECT_NE(svg.find("a&lt;b &amp; c"), std::string::npos);
}

TEST(Cli, PiHfpChart)
{
    auto dir = scratch_dir("pihfp");
    auto r = run_cli({"pi-hfp", "--window", "-4:4:-4:4", "--svg", "--out", dir.string()});
    ASSERT_EQ(r.rc, 0) << r.err;
    auto svg = slurp(dir / "pi-hfp.svg");
    HfpHomotopy H(3, HfpVariant::full);
    std::size_t total = 0;
    for (auto d : enumerate_window({-4, 4, -4, 4, 0}))
        total += H.dim(d);
    EXPECT_EQ(count_of(svg, "<circle"), total);
    EXPECT_EQ(slurp(dir / "pi-hfp.txt"), r.out);
    EXPECT_NE(r.out.find("-3+3@ | 1 | S^-1*u_lam^-1*a^-1"), std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST(Cli, MkTable)
{
    auto r = run_cli({"mk"});
    ASSERT_EQ(r.rc, 0) << r.err;
    std::regex row("^[0-9]+ \\| [0-9]+ \\| [0-9]+$");
    std::istringstream is(r.out);
    std::string line;
    int rows = 0;
    while (std::getline(is, line))
        rows += std::regex_match(line, row);
    EXPECT_EQ(rows, 13);
    EXPECT_NE(r.out.find("# gamma^p = id : yes"), std::string::npos);
    EXPECT_NE(r.out.find("12 | 4 | 4"), std::string::npos);
}

TEST(Cli, CheckPresets)
{
    for (std::string preset : {"sthh", "truncated", "geometric", "associated-graded"}) {
        auto r = run_cli({"check", "--preset", preset, "--window", "-4:4:-6:6"});
        EXPECT_EQ(r.rc, 0) << preset << r.err;
        EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << preset;
    }
    auto r = run_cli({"check"});
    EXPECT_NE(r.out.find("# eta_R(u_lam) = u_lam + a^6*Nm"), std::string::npos);
    EXPECT_EQ(run_cli({"check", "--preset", "nope"}).rc, 2);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run_cli({"ext", "--p", "4"}).rc, 2);
    EXPECT_EQ(run_cli({"ext", "--beta", "3"}).rc, 2);
    EXPECT_EQ(run_cli({"bogus"}).rc, 2);
    EXPECT_EQ(run_cli({}).rc, 2);
    EXPECT_EQ(run_cli({"ext", "--window", "1:0:0:0"}).rc, 2);
    EXPECT_EQ(run_cli({"segal", "--window", "-2:0:-1:1", "--s-max", "1"}).rc, 3);
    auto neg = run_cli({"segal", "--disable-d1"});
    EXPECT_EQ(neg.rc, 1);
    EXPECT_NE(neg.out.find("verdict | false"), std::string::npos);
}

TEST(Cli, SegalPasses)
{
    auto r = run_cli({"segal"});
    EXPECT_EQ(r.rc, 0) << r.err;
    EXPECT_NE(r.out.find("verdict | true"), std::string::npos);
    EXPECT_NE(r.out.find("# stable_n = 2"), std::string::npos);
}

TEST(Cli, ThreadCountDoesNotChangeOutput)
{
    auto a = run_cli({"may", "--window", "-6:4:-8:8", "--s-max", "3"});
    auto b = run_cli({"may", "--window", "-6:4:-8:8", "--s-max", "3", "--threads", "3"});
    ASSERT_EQ(a.rc, 0);
    EXPECT_EQ(a.out, b.out);
    auto c = run_cli({"ext", "--window", "-4:2:-6:6", "--s-max", "3", "--route", "literal"});
    auto d = run_cli({"ext", "--window", "-4:2:-6:6", "--s-max", "3", "--route", "literal", "--threads", "2"});
    ASSERT_EQ(c.rc, 0);
    EXPECT_EQ(c.out, d.out);
}

TEST(Cli, OutDirWritesReportAndCharts)
{
    auto dir = scratch_dir("may");
    auto r = run_cli({"may", "--window", "-4:2:-6:6", "--s-max", "2", "--svg", "--out", dir.string()});
    ASSERT_EQ(r.rc, 0) << r.err;
    EXPECT_EQ(slurp(dir / "may.txt"), r.out);
    EXPECT_TRUE(std::filesystem::exists(dir / "may_E1.svg"));
    EXPECT_TRUE(std::filesystem::exists(dir / "may_Einf.svg"));
    std::filesystem::remove_all(dir);
}

TEST(Cli, BinaryRuns)
{
    auto dir = scratch_dir("bin");
    std::filesystem::create_directories(dir);
    auto out = dir / "out.txt";
    std::string cmd = std::string("\"") + SPOKESS_CLI_PATH + "\" mk --p 5 --k-max 6 > \"" + out.string() + "\"";
    int rc = std::system(cmd.c_str());
    EXPECT_EQ(rc, 0);
    auto txt = slurp(out);
    EXPECT_NE(txt.find("6 | 16 | 16"), std::string::npos) << txt;
    std::string bad = std::string("\"") + SPOKESS_CLI_PATH + "\" ext --p 9 > /dev/null 2>&1";
    int rb = std::system(bad.c_str());
    EXPECT_EQ(WEXITSTATUS(rb), 2);
    std::filesystem::remove_all(dir);
}
