// Small walk through the May spectral sequence for p = 3, n = 1:
// E_1 counts, the pages, and what survives inverting a.
#include <iostream>

#include "spokess/may.hpp"
#include "spokess/report.hpp"

using namespace spokess;

int main()
{
    DegreeWindow w{-6, 2, -8, 8, 3};
    MayModel M(3, 1);
    auto P = may_pages(M, w);
    for (auto& [r, pg] : P.pages) {
        std::size_t tot = 0;
        for (auto& [k, e] : pg.entries)
            tot += e.dim;
        std::cout << "E_" << r << ": " << tot << " classes, " << pg.arrows.size() << " nonzero differentials\n";
    }
    std::cout << "\nE_inf in negative virtual degree:\n";
    for (auto& [k, e] : P.e_inf.entries)
        if (k.total.virtual_dim() < 0 && k.total.m >= -2)
            std::cout << "  " << format_tri(k) << "  " << e.labels.front() << (e.dim > 1 ? " ..." : "") << "\n";

    SegalOptions so;
    so.n_max = 3;
    auto S = segal_pipeline(so);
    std::cout << "\nsegal verdict: " << (S.verdict ? "true" : "false") << " (stable at n = " << S.stable_n << ")\n";
}
