#pragma once

#include <compare>
#include <cstdlib>
#include <regex>
#include <string>
#include <vector>

#include "spokess/error.hpp"

namespace spokess {

// m + n*spoke, where the spoke sphere has virtual dimension 1 and lambda = 2*spoke.
struct SpokeDegree {
    int m = 0;
    int n = 0;

    int virtual_dim() const { return m + n; }
    SpokeDegree operator+(SpokeDegree o) const { return {m + o.m, n + o.n}; }
    SpokeDegree operator-(SpokeDegree o) const { return {m - o.m, n - o.n}; }
    SpokeDegree operator-() const { return {-m, -n}; }
    SpokeDegree operator*(int k) const { return {m * k, n * k}; }
    auto operator<=>(const SpokeDegree&) const = default;
};

inline constexpr SpokeDegree kLambda{0, 2};
inline constexpr SpokeDegree kSpoke{0, 1};

// Total degree, cohomological degree s, filtration f.
struct TriDegree {
    SpokeDegree total;
    int s = 0;
    int f = 0;
    auto operator<=>(const TriDegree&) const = default;
};

// Internal degree of a class in tri-degree d: the total degree plus s.
inline SpokeDegree internal_degree(const TriDegree& d) { return {d.total.m + d.s, d.total.n}; }

// A differential d_r goes from (t, s, f) to (t - 1, s + 1, f + r).
inline bool is_differential_step(const TriDegree& src, const TriDegree& tgt, int r)
{
    return tgt.total.m == src.total.m - 1 && tgt.total.n == src.total.n && tgt.s == src.s + 1 &&
           tgt.f == src.f + r;
}

inline TriDegree differential_target(const TriDegree& src, int r)
{
    return {{src.total.m - 1, src.total.n}, src.s + 1, src.f + r};
}

struct DegreeWindow {
    int m_min = 0, m_max = 0, n_min = 0, n_max = 0;
    int s_max = 6;

    bool contains(SpokeDegree d) const { return d.m >= m_min && d.m <= m_max && d.n >= n_min && d.n <= n_max; }
    bool empty() const { return m_min > m_max || n_min > n_max || s_max < 0; }
    bool operator==(const DegreeWindow&) const = default;
};

// Enumeration order: m ascending, then n ascending.
inline std::vector<SpokeDegree> enumerate_window(const DegreeWindow& w)
{
    std::vector<SpokeDegree> out;
    for (int m = w.m_min; m <= w.m_max; ++m)
        for (int n = w.n_min; n <= w.n_max; ++n)
            out.push_back({m, n});
    return out;
}

inline std::vector<TriDegree> enumerate_window_s(const DegreeWindow& w)
{
    std::vector<TriDegree> out;
    for (int s = 0; s <= w.s_max; ++s)
        for (auto d : enumerate_window(w))
            out.push_back({d, s, 0});
    return out;
}

// "m+n@" with the sign of n always printed: 0+0@, 2-2@, -3+3@.
inline std::string format_degree(SpokeDegree d)
{
    return std::to_string(d.m) + (d.n < 0 ? "-" : "+") + std::to_string(std::abs(d.n)) + "@";
}

inline std::string format_tri(const TriDegree& t)
{
    return format_degree(t.total) + "|" + std::to_string(t.s) + "|" + std::to_string(t.f);
}

inline SpokeDegree parse_degree(const std::string& s)
{
    static const std::regex re(R"(^\s*(-?\d+)\s*([+-])\s*(\d+)\s*@\s*$)");
    std::smatch mt;
    if (!std::regex_match(s, mt, re))
        throw config_error("malformed degree '" + s + "' (expected m+n@)");
    int m = std::stoi(mt[1].str());
    int n = std::stoi(mt[3].str());
    return {m, mt[2].str() == "-" ? -n : n};
}

inline TriDegree parse_tri(const std::string& s)
{
    auto a = s.find('|');
    auto b = a == std::string::npos ? a : s.find('|', a + 1);
    if (b == std::string::npos)
        throw config_error("malformed tri-degree '" + s + "' (expected m+n@|s|f)");
    TriDegree t;
    t.total = parse_degree(s.substr(0, a));
    try {
        t.s = std::stoi(s.substr(a + 1, b - a - 1));
        t.f = std::stoi(s.substr(b + 1));
    } catch (const std::exception&) {
        throw config_error("malformed tri-degree '" + s + "'");
    }
    return t;
}

// "m0:m1:n0:n1", inclusive.
inline DegreeWindow parse_window(const std::string& s, int s_max = 6)
{
    static const std::regex re(R"(^(-?\d+):(-?\d+):(-?\d+):(-?\d+)$)");
    std::smatch mt;
    if (!std::regex_match(s, mt, re))
        throw config_error("malformed window '" + s + "' (expected m0:m1:n0:n1)");
    DegreeWindow w{std::stoi(mt[1].str()), std::stoi(mt[2].str()), std::stoi(mt[3].str()),
                   std::stoi(mt[4].str()), s_max};
    if (w.empty())
        throw config_error("empty window '" + s + "'");
    return w;
}

inline std::string format_window(const DegreeWindow& w)
{
    return std::to_string(w.m_min) + ":" + std::to_string(w.m_max) + ":" + std::to_string(w.n_min) + ":" +
           std::to_string(w.n_max);
}

}  // namespace spokess
