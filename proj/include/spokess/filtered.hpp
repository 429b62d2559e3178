#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "spokess/sparse.hpp"

namespace spokess {

// One cohomological degree of a filtered cochain complex, with its neighbours:
// d_in : C^{s-1} -> C^s and d_out : C^s -> C^{s+1}. The filtration is by weight,
// F^f = span of basis vectors of weight >= f, and d may not lower weight.
struct FilteredSlice {
    PrimeField F{3};
    std::vector<int> w_prev, w_cur, w_next;
    SparseMatFp d_in{PrimeField(3), 0, 0};
    SparseMatFp d_out{PrimeField(3), 0, 0};
    std::vector<std::string> labels;  // of the C^s basis, optional
};

struct PageCell {
    std::size_t dim = 0;
    std::size_t rank_out = 0;  // rank of d_r leaving this cell
    std::vector<std::string> labels;
};

// pages[r][f] for r = 0 .. r_inf; the page r_inf is E_infinity.
struct SlicePages {
    int r_inf = 0;
    std::vector<std::map<int, PageCell>> pages;

    const PageCell* at(int r, int f) const
    {
        int rr = std::min(r, r_inf);
        auto it = pages[rr].find(f);
        return it == pages[rr].end() ? nullptr : &it->second;
    }
};

namespace detail {

// {x in F^f C : d x in F^{f+r} C'}, as vectors in C coordinates.
inline std::vector<SparseVec> filtered_cycles(const PrimeField& F, const SparseMatFp& d, const std::vector<int>& w_src,
                                              const std::vector<int>& w_tgt, int f, int r)
{
    std::vector<std::uint32_t> cols, rows;
    std::vector<int> row_pos(w_tgt.size(), -1);
    for (std::uint32_t j = 0; j < w_src.size(); ++j)
        if (w_src[j] >= f)
            cols.push_back(j);
    for (std::uint32_t i = 0; i < w_tgt.size(); ++i)
        if (w_tgt[i] < f + r) {
            row_pos[i] = static_cast<int>(rows.size());
            rows.push_back(i);
        }
    SparseMatFp A(F, rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        SparseVec v;
        if (d.cols())
            for (auto e : d.column(cols[c]))
                if (row_pos[e.idx] >= 0)
                    v.push_back({static_cast<std::uint32_t>(row_pos[e.idx]), e.val});
        A.set_column(c, std::move(v));
    }
    std::vector<SparseVec> out;
    for (auto& k : kernel_basis(A)) {
        SparseVec v;
        for (auto e : k)
            v.push_back({cols[e.idx], e.val});
        out.push_back(std::move(v));
    }
    return out;
}

inline SparseVec weight_part(const SparseVec& v, const std::vector<int>& w, int f)
{
    SparseVec out;
    for (auto e : v)
        if (w[e.idx] == f)
            out.push_back(e);
    return out;
}

}  // namespace detail

// Spectral sequence of the filtered complex at this degree:
//   E_r^f = LZ_r^f / LB_r^f, with LZ the weight-f leading parts of
//   Z_r^f = {x in F^f : dx in F^{f+r}} and LB those of d(Z_{r-1}^{f-r+1}) in C^{s-1}.
// The rank of d_r leaving E_r^f is dim LZ_r^f - dim LZ_{r+1}^f.
inline SlicePages compute_pages(const FilteredSlice& S, bool with_labels = false)
{
    using namespace detail;
    SlicePages P;
    if (S.w_cur.empty()) {
        P.pages.resize(1);
        return P;
    }
    auto [fmin_it, fmax_it] = std::minmax_element(S.w_cur.begin(), S.w_cur.end());
    int fmin = *fmin_it, fmax = *fmax_it;
    int span_out = 0, span_in = 0;
    if (!S.w_next.empty())
        span_out = *std::max_element(S.w_next.begin(), S.w_next.end()) - fmin + 1;
    if (!S.w_prev.empty())
        span_in = fmax - *std::min_element(S.w_prev.begin(), S.w_prev.end()) + 1;
    P.r_inf = std::max({span_out, span_in + 1, 1});
    P.pages.resize(P.r_inf + 1);
    const auto& F = S.F;

    // LZ dims for r = 0 .. r_inf + 1
    std::map<std::pair<int, int>, std::vector<SparseVec>> lz;
    auto get_lz = [&](int r, int f) -> const std::vector<SparseVec>& {
        auto key = std::make_pair(r, f);
        auto it = lz.find(key);
        if (it != lz.end())
            return it->second;
        EchelonBasis E(F, S.w_cur.size());
        for (auto& z : filtered_cycles(F, S.d_out, S.w_cur, S.w_next, f, r))
            E.insert(weight_part(z, S.w_cur, f));
        return lz.emplace(key, E.rref()).first->second;
    };
    for (int r = 0; r <= P.r_inf; ++r) {
        for (int f = fmin; f <= fmax; ++f) {
            bool any = false;
            for (int w : S.w_cur)
                if (w == f)
                    any = true;
            if (!any)
                continue;
            const auto& LZ = get_lz(r, f);
            EchelonBasis LB(F, S.w_cur.size());
            if (r >= 1 && !S.w_prev.empty()) {
                for (auto& y : filtered_cycles(F, S.d_in, S.w_prev, S.w_cur, f - r + 1, r - 1))
                    LB.insert(weight_part(S.d_in.apply(y), S.w_cur, f));
            }
            PageCell c;
            std::size_t lb = LB.rank();
            c.dim = LZ.size() - lb;
            c.rank_out = LZ.size() - get_lz(r + 1, f).size();
            if (with_labels && c.dim) {
                for (auto& v : LZ) {
                    if (LB.insert(v))
                        c.labels.push_back(S.labels.empty() ? std::to_string(v.front().idx)
                                                            : S.labels[v.front().idx]);
                }
            }
            if (c.dim || c.rank_out)
                P.pages[r][f] = c;
        }
    }
    return P;
}

}  // namespace spokess
