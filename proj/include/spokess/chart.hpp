#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "spokess/error.hpp"
#include "spokess/grading.hpp"
#include "spokess/may.hpp"

namespace spokess {

struct ChartDot {
    TriDegree at;
    std::string label;
};

struct ChartArrow {
    TriDegree src, tgt;
    int r = 1;
};

// x is the integer degree m, y the spoke weight n.
struct ChartDoc {
    std::string title;
    DegreeWindow window;
    std::vector<ChartDot> dots;
    std::vector<ChartArrow> arrows;

    void validate() const
    {
        for (auto& a : arrows) {
            auto has = [&](const TriDegree& t) {
                return std::any_of(dots.begin(), dots.end(), [&](auto& d) { return d.at == t; });
            };
            if (!has(a.src) || !has(a.tgt))
                throw consistency_error("chart arrow " + format_tri(a.src) + " -> " + format_tri(a.tgt) +
                                        " has a missing endpoint");
        }
    }
};

inline ChartDoc chart_from_page(const SSPage& P, const DegreeWindow& w, const std::string& title)
{
    ChartDoc c{title, w, {}, {}};
    for (auto& [k, e] : P.entries) {
        if (!w.contains(k.total))
            continue;
        for (std::size_t i = 0; i < e.dim; ++i)
            c.dots.push_back({k, i < e.labels.size() ? e.labels[i] : ""});
    }
    for (auto& a : P.arrows) {
        if (!w.contains(a.src.total) || !w.contains(a.tgt.total))
            continue;
        if (!P.entries.count(a.src) || !P.entries.count(a.tgt))
            continue;
        c.arrows.push_back({a.src, a.tgt, a.r});
    }
    return c;
}

// Dots for a plain per-degree dimension table (s and f set to 0).
inline ChartDoc chart_from_dims(const std::map<SpokeDegree, std::vector<std::string>>& basis, const DegreeWindow& w,
                                const std::string& title)
{
    ChartDoc c{title, w, {}, {}};
    for (auto& [d, ls] : basis) {
        if (!w.contains(d))
            continue;
        for (auto& l : ls)
            c.dots.push_back({{d, 0, 0}, l});
    }
    return c;
}

namespace detail {

inline std::string xml_escape(const std::string& s)
{
    std::string o;
    for (char ch : s) {
        switch (ch) {
        case '&': o += "&amp;"; break;
        case '<': o += "&lt;"; break;
        case '>': o += "&gt;"; break;
        case '"': o += "&quot;"; break;
        default: o += ch;
        }
    }
    return o;
}

inline std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

}  // namespace detail

// Fixed-precision coordinates; dots sharing a cell are spread along a short diagonal.
inline std::string emit_svg(const ChartDoc& c)
{
    c.validate();
    const double cell = 28, margin = 40;
    const auto& w = c.window;
    int cols = w.m_max - w.m_min + 1, rows = w.n_max - w.n_min + 1;
    double W = margin * 2 + cols * cell, H = margin * 2 + rows * cell;
    auto X = [&](double m) { return margin + (m - w.m_min + 0.5) * cell; };
    auto Y = [&](double n) { return margin + (w.n_max - n + 0.5) * cell; };

    std::map<SpokeDegree, int> count, seen;
    for (auto& d : c.dots)
        ++count[d.at.total];
    std::map<TriDegree, std::pair<double, double>> where;
    std::vector<std::pair<std::pair<double, double>, const ChartDot*>> placed;
    for (auto& d : c.dots) {
        int k = count[d.at.total], i = seen[d.at.total]++;
        double off = k > 1 ? (i - (k - 1) / 2.0) * std::min(6.0, (cell - 8) / k) : 0;
        double x = X(d.at.total.m) + off, y = Y(d.at.total.n) - off;
        placed.push_back({{x, y}, &d});
        where.emplace(d.at, std::make_pair(x, y));
    }

    std::ostringstream os;
    using detail::num;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(W) << "\" height=\"" << num(H)
       << "\" viewBox=\"0 0 " << num(W) << " " << num(H) << "\">\n";
    os << "<title>" << detail::xml_escape(c.title) << "</title>\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << num(W) << "\" height=\"" << num(H) << "\" fill=\"white\"/>\n";
    os << "<g stroke=\"#ddd\" stroke-width=\"0.5\">\n";
    for (int m = w.m_min; m <= w.m_max + 1; ++m)
        os << "<line x1=\"" << num(X(m - 0.5)) << "\" y1=\"" << num(Y(w.n_max + 0.5)) << "\" x2=\"" << num(X(m - 0.5))
           << "\" y2=\"" << num(Y(w.n_min - 0.5)) << "\"/>\n";
    for (int n = w.n_min - 1; n <= w.n_max; ++n)
        os << "<line x1=\"" << num(X(w.m_min - 0.5)) << "\" y1=\"" << num(Y(n + 0.5)) << "\" x2=\""
           << num(X(w.m_max + 0.5)) << "\" y2=\"" << num(Y(n + 0.5)) << "\"/>\n";
    os << "</g>\n";
    // axes through the origin when it is in the window
    os << "<g stroke=\"black\" stroke-width=\"1\">\n";
    if (w.n_min <= 0 && 0 <= w.n_max)
        os << "<line x1=\"" << num(X(w.m_min - 0.5)) << "\" y1=\"" << num(Y(0)) << "\" x2=\"" << num(X(w.m_max + 0.5))
           << "\" y2=\"" << num(Y(0)) << "\"/>\n";
    if (w.m_min <= 0 && 0 <= w.m_max)
        os << "<line x1=\"" << num(X(0)) << "\" y1=\"" << num(Y(w.n_max + 0.5)) << "\" x2=\"" << num(X(0))
           << "\" y2=\"" << num(Y(w.n_min - 0.5)) << "\"/>\n";
    os << "</g>\n";
    os << "<g font-family=\"monospace\" font-size=\"9\" text-anchor=\"middle\">\n";
    for (int m = w.m_min; m <= w.m_max; ++m)
        os << "<text x=\"" << num(X(m)) << "\" y=\"" << num(H - margin + 14) << "\">" << m << "</text>\n";
    for (int n = w.n_min; n <= w.n_max; ++n)
        os << "<text x=\"" << num(margin - 14) << "\" y=\"" << num(Y(n) + 3) << "\">" << n << "</text>\n";
    os << "<text x=\"" << num(W / 2) << "\" y=\"" << num(H - 6) << "\">m</text>\n";
    os << "<text x=\"10\" y=\"" << num(H / 2) << "\">n</text>\n";
    os << "</g>\n";
    os << "<g stroke-width=\"1\" fill=\"none\">\n";
    for (auto& a : c.arrows) {
        auto [x1, y1] = where.at(a.src);
        auto [x2, y2] = where.at(a.tgt);
        const char* col = a.r == 1 ? "#c33" : "#36c";
        os << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
           << "\" stroke=\"" << col << "\"><title>d" << a.r << "</title></line>\n";
    }
    os << "</g>\n";
    os << "<g fill=\"black\">\n";
    for (auto& [xy, d] : placed)
        os << "<circle cx=\"" << num(xy.first) << "\" cy=\"" << num(xy.second) << "\" r=\"2.5\"><title>"
           << detail::xml_escape(format_tri(d->at) + " " + d->label) << "</title></circle>\n";
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace spokess
