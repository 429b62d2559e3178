#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spokess/cobar.hpp"
#include "spokess/error.hpp"
#include "spokess/grading.hpp"
#include "spokess/may.hpp"

namespace spokess {

// Everything a run depends on; written verbatim at the top of every report.
struct RunConfig {
    std::string command;
    std::uint32_t p = 3;
    int n = 1;
    int n_max = 3;
    DegreeWindow window{-12, 2, -14, 14, 6};
    std::int64_t beta = 1, beta_prime = 1;
    int threads = 1;
    std::string out_dir;
    bool svg = false;
    std::uint64_t seed = 1;
    int k_max = 12;
    std::string preset = "sthh";
    std::string variant = "full";
    std::string route = "resolution";
    bool disable_d1 = false;

    void validate() const
    {
        if (p % 2 == 0 || !is_prime(p))
            throw config_error("p must be an odd prime (got " + std::to_string(p) + ")");
        if (n < 1 || n > 6)
            throw config_error("n must be in 1..6");
        if (n_max < 1 || n_max > 6)
            throw config_error("n-max must be in 1..6");
        if (window.empty())
            throw config_error("empty window");
        if (window.s_max < 0 || window.s_max > 12)
            throw config_error("s-max must be in 0..12");
        if (beta % static_cast<std::int64_t>(p) == 0 || beta_prime % static_cast<std::int64_t>(p) == 0)
            throw config_error("beta and beta' must be units mod p");
        if (threads < 1)
            throw config_error("threads must be positive");
        if (k_max < 0)
            throw config_error("k-max must be nonnegative");
        if (route != "resolution" && route != "literal")
            throw config_error("route must be 'resolution' or 'literal'");
    }

    // Thread count and output location do not affect results and are left out.
    std::vector<std::pair<std::string, std::string>> fields() const
    {
        return {{"command", command},
                {"p", std::to_string(p)},
                {"n", std::to_string(n)},
                {"n_max", std::to_string(n_max)},
                {"window", format_window(window)},
                {"s_max", std::to_string(window.s_max)},
                {"beta", std::to_string(beta)},
                {"beta_prime", std::to_string(beta_prime)},
                {"seed", std::to_string(seed)},
                {"k_max", std::to_string(k_max)},
                {"preset", preset},
                {"variant", variant},
                {"route", route},
                {"disable_d1", disable_d1 ? "1" : "0"}};
    }

    std::string header() const
    {
        std::ostringstream os;
        for (auto& [k, v] : fields())
            os << "# " << k << " = " << v << "\n";
        return os.str();
    }
};

inline RunConfig parse_header(const std::string& text)
{
    RunConfig c;
    std::istringstream is(text);
    std::string line;
    std::map<std::string, std::string> kv;
    while (std::getline(is, line)) {
        if (line.rfind("# ", 0) != 0)
            continue;
        auto eq = line.find(" = ");
        if (eq == std::string::npos)
            continue;
        kv[line.substr(2, eq - 2)] = line.substr(eq + 3);
    }
    auto get = [&](const char* k) -> const std::string& {
        auto it = kv.find(k);
        if (it == kv.end())
            throw io_error(std::string("report header lacks '") + k + "'");
        return it->second;
    };
    c.command = get("command");
    c.p = static_cast<std::uint32_t>(std::stoul(get("p")));
    c.n = std::stoi(get("n"));
    c.n_max = std::stoi(get("n_max"));
    c.window = parse_window(get("window"));
    c.window.s_max = std::stoi(get("s_max"));
    c.beta = std::stoll(get("beta"));
    c.beta_prime = std::stoll(get("beta_prime"));
    c.seed = std::stoull(get("seed"));
    c.k_max = std::stoi(get("k_max"));
    c.preset = get("preset");
    c.variant = get("variant");
    c.route = get("route");
    c.disable_d1 = get("disable_d1") == "1";
    return c;
}

namespace detail {

inline std::vector<std::string> split_bar(const std::string& line)
{
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        auto c = line.find(" | ", pos);
        if (c == std::string::npos) {
            out.push_back(line.substr(pos));
            return out;
        }
        out.push_back(line.substr(pos, c - pos));
        pos = c + 3;
    }
}

inline std::vector<std::string> split_ws(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string w;
    while (is >> w)
        out.push_back(w);
    return out;
}

inline std::string join_labels(const std::vector<std::string>& ls)
{
    std::string out;
    for (auto& l : ls) {
        if (l.find(' ') != std::string::npos || l.find(" | ") != std::string::npos)
            throw consistency_error("label '" + l + "' cannot be serialized");
        out += (out.empty() ? "" : " ") + l;
    }
    return out;
}

inline bool body_line(const std::string& line) { return !line.empty() && line[0] != '#'; }

}  // namespace detail

// Ext table: one line "s | m+n@ | dim | labels..." per nonzero (s, degree), f summed.
inline std::string format_ext_table(const ExtTable& t)
{
    std::map<std::pair<int, SpokeDegree>, ExtEntry> rows;
    for (auto& [k, e] : t.entries) {
        if (!e.dim)
            continue;
        auto& r = rows[{k.s, k.total}];
        r.dim += e.dim;
        r.labels.insert(r.labels.end(), e.labels.begin(), e.labels.end());
    }
    std::ostringstream os;
    for (auto& [k, e] : rows) {
        os << k.first << " | " << format_degree(k.second) << " | " << e.dim << " |";
        auto l = detail::join_labels(e.labels);
        os << (l.empty() ? "" : " " + l) << "\n";
    }
    return os.str();
}

inline std::map<std::pair<int, SpokeDegree>, ExtEntry> parse_ext_table(const std::string& text)
{
    std::map<std::pair<int, SpokeDegree>, ExtEntry> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (!detail::body_line(line))
            continue;
        if (line.back() == '|')
            line += " ";
        auto f = detail::split_bar(line);
        if (f.size() != 4)
            throw io_error("bad Ext line: " + line);
        ExtEntry e{std::stoul(f[2]), detail::split_ws(f[3])};
        out[{std::stoi(f[0]), parse_degree(f[1])}] = e;
    }
    return out;
}

// Page lines "r | m+n@|s|f | dim | labels...", r = 0 for E_infinity.
inline std::string format_page(const SSPage& P)
{
    std::ostringstream os;
    for (auto& [k, e] : P.entries) {
        if (!e.dim)
            continue;
        os << P.r << " | " << format_tri(k) << " | " << e.dim << " |";
        auto l = detail::join_labels(e.labels);
        os << (l.empty() ? "" : " " + l) << "\n";
    }
    return os.str();
}

// Differential lines "d r | src | tgt | rank".
inline std::string format_arrows(const std::vector<Arrow>& as)
{
    std::ostringstream os;
    for (auto& a : as)
        os << "d " << a.r << " | " << format_tri(a.src) << " | " << format_tri(a.tgt) << " | " << a.rank << "\n";
    return os.str();
}

inline std::map<int, SSPage> parse_pages(const std::string& text)
{
    std::map<int, SSPage> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (!detail::body_line(line))
            continue;
        if (line.back() == '|')
            line += " ";
        auto f = detail::split_bar(line);
        if (line.rfind("d ", 0) == 0) {
            if (f.size() != 4)
                throw io_error("bad differential line: " + line);
            int r = std::stoi(f[0].substr(2));
            Arrow a{parse_tri(f[1]), parse_tri(f[2]), r, std::stoul(f[3])};
            out[r].r = r;
            out[r].arrows.push_back(a);
            continue;
        }
        if (f.size() != 4)
            throw io_error("bad page line: " + line);
        int r = std::stoi(f[0]);
        out[r].r = r;
        out[r].entries[parse_tri(f[1])] = {std::stoul(f[2]), detail::split_ws(f[3])};
    }
    return out;
}

inline std::string format_may_pages(const MayPages& R)
{
    std::ostringstream os;
    for (auto& [r, P] : R.pages) {
        os << format_page(P);
        os << format_arrows(P.arrows);
    }
    os << format_page(R.e_inf);
    return os.str();
}

inline std::string format_segal(const SegalReport& R)
{
    std::ostringstream os;
    os << "# stable_n = " << R.stable_n << "\n";
    os << "# stabilized = " << (R.stabilized ? 1 : 0) << "\n";
    for (std::size_t i = 0; i < R.per_n.size(); ++i) {
        std::size_t tot = 0;
        for (auto& [k, v] : R.per_n[i].ext.dims())
            tot += v;
        os << "# total_ext_n" << (i + 1) << " = " << tot << "\n";
    }
    for (auto& c : R.columns)
        os << "col | " << c.m << " | " << c.s << " | " << c.survivors << " | " << c.margin << "\n";
    os << "verdict | " << (R.verdict ? "true" : "false") << " | " << R.explanation << "\n";
    return os.str();
}

}  // namespace spokess
