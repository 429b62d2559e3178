#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "spokess/hopf.hpp"
#include "spokess/parallel.hpp"
#include "spokess/sparse.hpp"

namespace spokess {

struct ExtEntry {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    bool operator==(const ExtEntry&) const = default;
};

// Ext^{s, total} (optionally split by filtration f). Keys use f = 0 when unfiltered.
struct ExtTable {
    std::uint32_t p = 3;
    int n = 0;
    DegreeWindow window;
    bool filtered = false;
    std::string route;
    std::map<TriDegree, ExtEntry> entries;

    std::size_t dim(SpokeDegree t, int s) const
    {
        std::size_t d = 0;
        for (auto it = entries.lower_bound({t, s, INT32_MIN}); it != entries.end() && it->first.total == t && it->first.s == s;
             ++it)
            d += it->second.dim;
        return d;
    }

    // Dimension table without labels and without zero entries, summed over f.
    std::map<std::pair<SpokeDegree, int>, std::size_t> dims() const
    {
        std::map<std::pair<SpokeDegree, int>, std::size_t> out;
        for (auto& [k, e] : entries)
            if (e.dim)
                out[{k.total, k.s}] += e.dim;
        return out;
    }
};

// Coaction data with per-degree caches, safe for concurrent use.
class ComoduleCache {
public:
    struct PsiTerm {
        const Monomial* m;  // points into the basis cache
        Monomial gamma;     // exponents of the Gamma generators
        std::uint32_t c;
    };

    ComoduleCache(const HopfAlgebroid& H, const Comodule& C) : H_(H), C_(C) {}

    const Comodule& comodule() const { return C_; }

    const std::vector<Monomial>& basis_at(SpokeDegree E) const
    {
        std::lock_guard<std::mutex> lk(mu_);
        return basis_locked(E);
    }

    // psi(m) as (m', gamma, c), including the m (x) 1 term.
    const std::vector<PsiTerm>& coaction(const Monomial& m) const
    {
        {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = psi_.find(m);
            if (it != psi_.end())
                return it->second;
        }
        auto img = C_.psi.apply(m);
        std::size_t nM = C_.M->size();
        std::vector<std::pair<Monomial, std::pair<Monomial, std::uint32_t>>> raw;
        for (auto& [mono, c] : img.terms()) {
            Monomial mm{std::vector<int>(mono.e.begin(), mono.e.begin() + nM)};
            Monomial g{std::vector<int>(mono.e.begin() + nM, mono.e.end())};
            raw.push_back({mm, {g, c}});
        }
        std::lock_guard<std::mutex> lk(mu_);
        auto it = psi_.find(m);
        if (it != psi_.end())
            return it->second;
        std::vector<PsiTerm> out;
        for (auto& [mm, gc] : raw) {
            auto& b = basis_locked(C_.M->degree(mm).total);
            auto pos = std::lower_bound(b.begin(), b.end(), mm);
            if (pos == b.end() || *pos != mm)
                throw consistency_error("coaction term " + C_.M->label(mm) + " is not a basis monomial");
            out.push_back({&*pos, gc.first, gc.second});
        }
        return psi_.emplace(m, std::move(out)).first->second;
    }

    std::size_t index_in_basis(const Monomial& m) const
    {
        auto& b = basis_at(C_.M->degree(m).total);
        auto pos = std::lower_bound(b.begin(), b.end(), m);
        return static_cast<std::size_t>(pos - b.begin());
    }

private:
    const std::vector<Monomial>& basis_locked(SpokeDegree E) const
    {
        auto it = basis_.find(E);
        if (it != basis_.end())
            return it->second;
        return basis_.emplace(E, C_.M->monomials_in_degree({E, 0, 0})).first->second;
    }

    const HopfAlgebroid& H_;
    const Comodule& C_;
    mutable std::mutex mu_;
    mutable std::map<SpokeDegree, std::vector<Monomial>> basis_;
    mutable std::map<Monomial, std::vector<PsiTerm>> psi_;
};

// Finite Hopf algebra: reduced basis and reduced coproduct.
struct CoalgebraData {
    struct Term {
        std::uint32_t a, b, c;
    };
    std::vector<Monomial> gbar;
    std::vector<SpokeDegree> deg;
    std::vector<int> weight;
    std::map<Monomial, std::uint32_t> index;
    std::vector<std::vector<Term>> dbar;
};

inline CoalgebraData coalgebra_data(const HopfAlgebroid& H)
{
    if (!H.is_hopf_algebra())
        throw config_error("literal cobar complexes need a Hopf algebra over F_p");
    const auto& G = *H.Gamma;
    std::vector<Monomial> all{G.one()};
    for (std::size_t i = 0; i < G.size(); ++i) {
        auto& g = G.gen(i);
        int top = g.kind == GenKind::exterior ? 1 : g.kind == GenKind::truncated ? g.bound - 1 : -1;
        if (top < 0)
            throw config_error("literal cobar complexes need a finite Hopf algebra");
        std::vector<Monomial> next;
        for (auto& m : all)
            for (int e = 0; e <= top; ++e) {
                Monomial x = m;
                x.e[i] = e;
                next.push_back(x);
            }
        all = std::move(next);
    }
    std::sort(all.begin(), all.end());
    CoalgebraData D;
    for (auto& m : all) {
        if (m == G.one())
            continue;
        D.index[m] = static_cast<std::uint32_t>(D.gbar.size());
        D.gbar.push_back(m);
        D.deg.push_back(G.degree(m).total);
        D.weight.push_back(G.degree(m).f);
    }
    std::size_t k = G.size();
    for (auto& m : D.gbar) {
        auto img = H.delta.apply(m);
        std::vector<CoalgebraData::Term> ts;
        for (auto& [mono, c] : img.terms()) {
            Monomial l{std::vector<int>(mono.e.begin(), mono.e.begin() + k)};
            Monomial r{std::vector<int>(mono.e.begin() + k, mono.e.end())};
            if (l == G.one() || r == G.one())
                continue;
            ts.push_back({D.index.at(l), D.index.at(r), c});
        }
        D.dbar.push_back(std::move(ts));
    }
    return D;
}

struct ExtOptions {
    int threads = 1;
    bool labels = false;
    bool filtered = false;  // split by the weight carried on generators
    bool check_d2 = true;
};

// Normalized cobar complex C^s = M (x) Gammabar^{(x)s}, sliced by internal degree
// (and weight when filtered):
//   d(m[g1|...|gs]) = sum m'[g'|g1|...|gs] + sum_i (-1)^i m[g1|...|Dbar gi|...|gs].
class CobarEngine {
public:
    struct Cell {
        std::uint64_t packed;
        const Monomial* m;
    };
    struct Slice {
        SpokeDegree D;
        int s = 0, f = -1;
        std::vector<Cell> cells;
        std::unordered_map<std::uint64_t, std::uint32_t> first;
    };

    CobarEngine(const HopfAlgebroid& H, const Comodule& C) : H_(H), C_(C), M_(H_, C_), G_(coalgebra_data(H_))
    {
        g_ = G_.gbar.size();
        pw_.assign(1, 1);
        while (pw_.size() < 16) {
            unsigned __int128 nxt = static_cast<unsigned __int128>(pw_.back()) * g_;
            if (nxt > (static_cast<unsigned __int128>(1) << 63))
                break;
            pw_.push_back(static_cast<std::uint64_t>(nxt));
        }
    }

    const CoalgebraData& coalgebra() const { return G_; }
    std::size_t max_s() const { return pw_.size() - 2; }

    Slice slice(SpokeDegree D, int s, int f = -1) const
    {
        if (static_cast<std::size_t>(s) + 1 >= pw_.size())
            throw window_error("cobar degree " + std::to_string(s) + " too large for this coalgebra");
        Slice S{D, s, f, {}, {}};
        std::vector<std::uint32_t> t(s);
        rec(S, t, 0, SpokeDegree{0, 0}, 0, 0);
        return S;
    }

    // Matrix of d^s : slice(D, s) -> slice(D, s + 1).
    SparseMatFp differential(const Slice& src, const Slice& tgt) const
    {
        const auto& F = H_.Gamma->field();
        SparseMatFp Dm(F, tgt.cells.size(), src.cells.size());
        int s = src.s;
        std::vector<std::uint32_t> dig(s);
        for (std::size_t j = 0; j < src.cells.size(); ++j) {
            auto& c = src.cells[j];
            std::uint64_t x = c.packed;
            for (int i = s - 1; i >= 0; --i) {
                dig[i] = static_cast<std::uint32_t>(x % g_);
                x /= g_;
            }
            std::vector<std::pair<std::uint32_t, std::int64_t>> raw;
            for (auto& pt : M_.coaction(*c.m)) {
                if (pt.gamma == H_.Gamma->one())
                    continue;
                std::uint64_t np = G_.index.at(pt.gamma) * pw_[s] + c.packed;
                raw.push_back({locate(tgt, np, pt.m), pt.c});
            }
            for (int i = 0; i < s; ++i) {
                std::uint64_t prefix = c.packed / pw_[s - i];
                std::uint64_t suffix = c.packed % pw_[s - 1 - i];
                std::int64_t sign = (i % 2 == 0) ? -1 : 1;
                for (auto& tm : G_.dbar[dig[i]]) {
                    std::uint64_t np = ((prefix * g_ + tm.a) * g_ + tm.b) * pw_[s - 1 - i] + suffix;
                    raw.push_back({locate(tgt, np, c.m), sign * tm.c});
                }
            }
            Dm.set_column(j, canonical(F, std::move(raw)));
        }
        return Dm;
    }

    std::string cell_label(const Slice& S, std::size_t i) const
    {
        auto& c = S.cells[i];
        std::string out = C_.M->label(*c.m) + "[";
        std::uint64_t x = c.packed;
        std::vector<std::uint32_t> dig(S.s);
        for (int k = S.s - 1; k >= 0; --k) {
            dig[k] = static_cast<std::uint32_t>(x % g_);
            x /= g_;
        }
        for (int k = 0; k < S.s; ++k)
            out += (k ? "|" : "") + H_.Gamma->label(G_.gbar[dig[k]]);
        return out + "]";
    }

    // Ext over a window of total degrees; entries keyed by (total, s, f).
    ExtTable ext(const DegreeWindow& w, const ExtOptions& o = {}) const
    {
        std::vector<SpokeDegree> Ds;
        {
            std::set<SpokeDegree> seen;
            for (int s = 0; s <= w.s_max; ++s)
                for (auto t : enumerate_window(w))
                    seen.insert({t.m + s, t.n});
            Ds.assign(seen.begin(), seen.end());
        }
        return ext_at(Ds, w, o);
    }

    // Ext^{s,D,f} for every internal degree and weight with trivial coefficients.
    // Slices are produced by bucketing all s-fold tensors once per s.
    std::map<TriDegree, std::size_t> ext_internal_all(int s_max, const ExtOptions& o = {}) const
    {
        if (C_.M->size() != 0)
            throw config_error("ext_internal_all needs trivial coefficients");
        std::vector<std::map<std::pair<SpokeDegree, int>, Slice>> by_s;
        for (int s = 0; s <= s_max + 1; ++s)
            by_s.push_back(bucketed(s, o.filtered));
        std::vector<std::pair<SpokeDegree, int>> keys;
        for (int s = 0; s <= s_max; ++s)
            for (auto& [k, v] : by_s[s])
                keys.push_back(k);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        std::vector<std::map<TriDegree, std::size_t>> res(keys.size());
        parallel_for(keys.size(), o.threads, [&](std::size_t i) {
            auto [D, f] = keys[i];
            std::vector<std::size_t> r(s_max + 1, 0);
            std::optional<SparseMatFp> prev;
            for (int s = 0; s <= s_max; ++s) {
                auto A = by_s[s].find(keys[i]);
                auto B = by_s[s + 1].find(keys[i]);
                if (A == by_s[s].end() || B == by_s[s + 1].end()) {
                    prev.reset();
                    continue;
                }
                SparseMatFp d = differential(A->second, B->second);
                if (o.check_d2 && prev && !d.multiply(*prev).is_zero())
                    throw consistency_error("cobar d^2 != 0 at " + format_degree(D));
                r[s] = rank(d);
                prev = std::move(d);
            }
            for (int s = 0; s <= s_max; ++s) {
                auto A = by_s[s].find(keys[i]);
                if (A == by_s[s].end())
                    continue;
                std::size_t dim = A->second.cells.size() - r[s] - (s ? r[s - 1] : 0);
                if (dim)
                    res[i][{D, s, f < 0 ? 0 : f}] = dim;
            }
        });
        std::map<TriDegree, std::size_t> out;
        for (auto& r : res)
            out.insert(r.begin(), r.end());
        return out;
    }

    // H^s at internal degree D (and weight f if f >= 0).
    std::pair<std::size_t, std::vector<std::string>> homology(SpokeDegree D, int s, int f, const ExtOptions& o) const
    {
        auto C0 = s > 0 ? slice(D, s - 1, f) : Slice{D, -1, f, {}, {}};
        auto C1 = slice(D, s, f);
        if (C1.cells.empty())
            return {0, {}};
        auto C2 = slice(D, s + 1, f);
        const auto& F = H_.Gamma->field();
        SparseMatFp din = s > 0 ? differential(C0, C1) : SparseMatFp(F, C1.cells.size(), 0);
        SparseMatFp dout = differential(C1, C2);
        if (o.check_d2 && !dout.multiply(din).is_zero())
            throw consistency_error("cobar d^2 != 0 at internal degree " + format_degree(D) + ", s = " +
                                    std::to_string(s));
        auto q = quotient_dimension(din, dout, o.labels);
        std::vector<std::string> labels;
        for (auto& v : q.representatives)
            labels.push_back(cell_label(C1, v.front().idx));
        return {q.dim, labels};
    }

private:
    ExtTable ext_at(const std::vector<SpokeDegree>& Ds, const DegreeWindow& w, const ExtOptions& o) const
    {
        ExtTable T;
        T.p = H_.p;
        T.window = w;
        T.filtered = o.filtered;
        T.route = "literal-cobar";
        std::vector<std::map<TriDegree, ExtEntry>> res(Ds.size());
        parallel_for(Ds.size(), o.threads, [&](std::size_t i) {
            SpokeDegree D = Ds[i];
            std::vector<int> need;
            for (int s = 0; s <= w.s_max; ++s)
                if (w.contains({D.m - s, D.n}))
                    need.push_back(s);
            if (need.empty())
                return;
            int fmax = o.filtered ? max_weight(need.back() + 1) : -1;
            for (int f = o.filtered ? 0 : -1; f <= fmax; ++f) {
                auto dims = slice_homology(D, need.front(), need.back(), f, o.check_d2);
                for (int s : need) {
                    std::size_t dim = dims[s - need.front()];
                    if (!dim)
                        continue;
                    ExtEntry e{dim, {}};
                    if (o.labels)
                        e = {dim, homology(D, s, f, o).second};
                    res[i][{{D.m - s, D.n}, s, f < 0 ? 0 : f}] = e;
                }
            }
        });
        for (auto& r : res)
            T.entries.insert(r.begin(), r.end());
        return T;
    }

    // dim H^s at internal degree D for s in [lo, hi], each differential built once.
    std::vector<std::size_t> slice_homology(SpokeDegree D, int lo, int hi, int f, bool check_d2) const
    {
        int j0 = std::max(lo - 1, 0);
        std::vector<Slice> S;
        for (int j = j0; j <= hi + 1; ++j)
            S.push_back(slice(D, j, f));
        std::vector<std::size_t> r(hi - j0 + 1, 0);
        std::optional<SparseMatFp> prev;
        for (int j = j0; j <= hi; ++j) {
            auto& A = S[j - j0];
            auto& B = S[j - j0 + 1];
            if (A.cells.empty() || B.cells.empty()) {
                prev.reset();
                continue;
            }
            SparseMatFp d = differential(A, B);
            if (check_d2 && prev && !d.multiply(*prev).is_zero())
                throw consistency_error("cobar d^2 != 0 at internal degree " + format_degree(D) + ", s = " +
                                        std::to_string(j));
            r[j - j0] = rank(d);
            prev = std::move(d);
        }
        std::vector<std::size_t> out;
        for (int s = lo; s <= hi; ++s) {
            std::size_t c = S[s - j0].cells.size();
            std::size_t rin = s > 0 ? r[s - 1 - j0] : 0;
            out.push_back(c - r[s - j0] - rin);
        }
        return out;
    }

    int max_weight(int s) const
    {
        int mx = 0;
        for (int w : G_.weight)
            mx = std::max(mx, w);
        return mx * s;
    }

    std::map<std::pair<SpokeDegree, int>, Slice> bucketed(int s, bool filtered) const
    {
        if (static_cast<std::size_t>(s) + 1 >= pw_.size())
            throw window_error("cobar degree " + std::to_string(s) + " too large for this coalgebra");
        std::map<std::pair<SpokeDegree, int>, Slice> out;
        const Monomial* unit = &M_.basis_at({0, 0}).front();
        std::uint64_t total = pw_[s];
        for (std::uint64_t x = 0; x < total; ++x) {
            std::uint64_t y = x;
            SpokeDegree deg{0, 0};
            int wt = 0;
            for (int i = 0; i < s; ++i) {
                auto g = y % g_;
                y /= g_;
                deg = deg + G_.deg[g];
                wt += G_.weight[g];
            }
            std::pair<SpokeDegree, int> key{deg, filtered ? wt : -1};
            auto it = out.find(key);
            if (it == out.end())
                it = out.emplace(key, Slice{deg, s, key.second, {}, {}}).first;
            it->second.first[x] = static_cast<std::uint32_t>(it->second.cells.size());
            it->second.cells.push_back({x, unit});
        }
        return out;
    }

    void rec(Slice& S, std::vector<std::uint32_t>& t, int i, SpokeDegree deg, int wt, std::uint64_t packed) const
    {
        if (i == S.s) {
            if (S.f >= 0 && wt != S.f)
                return;
            auto& b = M_.basis_at(S.D - deg);
            if (b.empty())
                return;
            S.first[packed] = static_cast<std::uint32_t>(S.cells.size());
            for (auto& m : b)
                S.cells.push_back({packed, &m});
            return;
        }
        for (std::uint32_t g = 0; g < g_; ++g) {
            if (S.f >= 0 && wt + G_.weight[g] > S.f)
                continue;
            t[i] = g;
            rec(S, t, i + 1, deg + G_.deg[g], wt + G_.weight[g], packed * g_ + g);
        }
    }

    std::uint32_t locate(const Slice& S, std::uint64_t packed, const Monomial* m) const
    {
        auto it = S.first.find(packed);
        if (it == S.first.end())
            throw consistency_error("cobar differential leaves its slice");
        auto& b = M_.basis_at(C_.M->degree(*m).total);
        auto pos = std::lower_bound(b.begin(), b.end(), *m);
        return it->second + static_cast<std::uint32_t>(pos - b.begin());
    }

    HopfAlgebroid H_;
    Comodule C_;
    ComoduleCache M_;
    CoalgebraData G_;
    std::uint64_t g_ = 0;
    std::vector<std::uint64_t> pw_;
};

// Ext over Gamma_n = F_p[Nm]/(Nm^(p^n)) (x) E[mu] from the tensor product of periodic
// resolutions over the dual algebra F_p[t_0..t_{n-1}]/(t_j^p) (x) E[e], where t_j and e
// act on M by extracting the coefficients of Nm^(p^j) and mu from the coaction.
class ResolutionEngine {
public:
    ResolutionEngine(const TruncatedInstance& T) : T_(T), M_(T_.H, T_.M), p_(T.H.p), n_(T.n)
    {
        const auto& G = *T.H.Gamma;
        inm_ = G.index_of("Nm");
        imu_ = G.index_of("mu");
        if (inm_ < 0 || imu_ < 0)
            throw config_error("resolution route needs generators Nm and mu");
        int q = 1;
        for (int j = 0; j < n_; ++j) {
            step_.push_back(G.gen(inm_).degree * q);
            q *= static_cast<int>(p_);
        }
    }

    // components with total s: k = (k_e, k_0, ..., k_{n-1})
    std::vector<std::vector<int>> components(int s) const
    {
        std::vector<std::vector<int>> out;
        std::vector<int> k(n_ + 1, 0);
        comp_rec(out, k, 0, s);
        return out;
    }

    SpokeDegree comp_degree(const std::vector<int>& k) const
    {
        SpokeDegree d = T_.H.Gamma->gen(imu_).degree * k[0];
        for (int j = 0; j < n_; ++j)
            d = d + step_[j] * ((k[j + 1] / 2) * static_cast<int>(p_) + (k[j + 1] % 2));
        return d;
    }

    int comp_weight(const std::vector<int>& k) const
    {
        int f = k[0];
        for (int j = 0; j < n_; ++j)
            f += (k[j + 1] / 2) * static_cast<int>(p_) + (k[j + 1] % 2);
        return f;
    }

    struct Cell {
        std::size_t comp;
        const Monomial* m;
    };
    struct Slice {
        SpokeDegree D;
        int s;
        std::vector<std::vector<int>> comps;
        std::vector<Cell> cells;
        std::map<std::vector<int>, std::size_t> comp_index;
        std::vector<std::size_t> first;
    };

    Slice slice(SpokeDegree D, int s) const
    {
        Slice S{D, s, components(s), {}, {}, {}};
        for (std::size_t c = 0; c < S.comps.size(); ++c) {
            S.comp_index[S.comps[c]] = c;
            S.first.push_back(S.cells.size());
            for (auto& m : M_.basis_at(D - comp_degree(S.comps[c])))
                S.cells.push_back({c, &m});
        }
        return S;
    }

    SparseMatFp differential(const Slice& src, const Slice& tgt) const
    {
        const auto& F = T_.H.Gamma->field();
        SparseMatFp Dm(F, tgt.cells.size(), src.cells.size());
        for (std::size_t j = 0; j < src.cells.size(); ++j) {
            auto& c = src.cells[j];
            const auto& k = src.comps[c.comp];
            std::vector<std::pair<std::uint32_t, std::int64_t>> raw;
            int sign_acc = 0;
            for (int g = 0; g <= n_; ++g) {
                std::vector<int> k2 = k;
                ++k2[g];
                std::size_t tc = tgt.comp_index.at(k2);
                std::map<Monomial, std::uint32_t> img;
                if (g == 0)
                    img = act(*c.m, -1, 1);
                else
                    img = act(*c.m, g - 1, k[g] % 2 == 0 ? 1 : static_cast<int>(p_) - 1);
                std::int64_t sg = (sign_acc % 2) ? -1 : 1;
                for (auto& [mm, v] : img) {
                    auto& b = M_.basis_at(T_.M.M->degree(mm).total);
                    auto pos = std::lower_bound(b.begin(), b.end(), mm);
                    if (pos == b.end() || *pos != mm)
                        throw consistency_error("resolution differential leaves M");
                    raw.push_back({static_cast<std::uint32_t>(tgt.first[tc] + (pos - b.begin())), sg * v});
                }
                sign_acc += k[g];
            }
            Dm.set_column(j, canonical(F, std::move(raw)));
        }
        return Dm;
    }

    std::string cell_label(const Slice& S, std::size_t i) const
    {
        auto& c = S.cells[i];
        const auto& k = S.comps[c.comp];
        std::string w;
        if (k[0])
            w += "e^" + std::to_string(k[0]);
        for (int j = 0; j < n_; ++j)
            if (k[j + 1])
                w += (w.empty() ? "" : "*") + std::string("t") + std::to_string(j) + "^" + std::to_string(k[j + 1]);
        return T_.M.M->label(*c.m) + "{" + w + "}";
    }

    std::pair<std::size_t, std::vector<std::string>> homology(SpokeDegree D, int s, const ExtOptions& o) const
    {
        auto C1 = slice(D, s);
        if (C1.cells.empty())
            return {0, {}};
        auto C2 = slice(D, s + 1);
        const auto& F = T_.H.Gamma->field();
        SparseMatFp din(F, C1.cells.size(), 0);
        if (s > 0)
            din = differential(slice(D, s - 1), C1);
        SparseMatFp dout = differential(C1, C2);
        if (o.check_d2 && !dout.multiply(din).is_zero())
            throw consistency_error("resolution d^2 != 0 at " + format_degree(D) + ", s = " + std::to_string(s));
        auto q = quotient_dimension(din, dout, o.labels);
        std::vector<std::string> labels;
        for (auto& v : q.representatives)
            labels.push_back(cell_label(C1, v.front().idx));
        return {q.dim, labels};
    }

    ExtTable ext(const DegreeWindow& w, const ExtOptions& o = {}) const
    {
        ExtTable T;
        T.p = p_;
        T.n = n_;
        T.window = w;
        T.route = "resolution";
        auto degs = enumerate_window(w);
        std::vector<std::map<TriDegree, ExtEntry>> res(degs.size());
        parallel_for(degs.size(), o.threads, [&](std::size_t i) {
            for (int s = 0; s <= w.s_max; ++s) {
                SpokeDegree D{degs[i].m + s, degs[i].n};
                auto [dim, labels] = homology(D, s, o);
                if (dim)
                    res[i][{degs[i], s, 0}] = {dim, labels};
            }
        });
        for (auto& r : res)
            T.entries.insert(r.begin(), r.end());
        return T;
    }

private:
    void comp_rec(std::vector<std::vector<int>>& out, std::vector<int>& k, int i, int left) const
    {
        if (i == n_) {
            k[i] = left;
            out.push_back(k);
            k[i] = 0;
            return;
        }
        for (int v = left; v >= 0; --v) {
            k[i] = v;
            comp_rec(out, k, i + 1, left - v);
        }
        k[i] = 0;
    }

    // Apply the dual operator (t_j^times, or e when j < 0) to a basis monomial.
    std::map<Monomial, std::uint32_t> act(const Monomial& m, int j, int times) const
    {
        const auto& F = T_.H.Gamma->field();
        std::map<Monomial, std::uint32_t> cur{{m, 1}};
        Monomial target = T_.H.Gamma->one();
        if (j < 0)
            target.e[imu_] = 1;
        else {
            int q = 1;
            for (int i = 0; i < j; ++i)
                q *= static_cast<int>(p_);
            target.e[inm_] = q;
        }
        for (int r = 0; r < times; ++r) {
            std::map<Monomial, std::uint32_t> nxt;
            for (auto& [x, c] : cur)
                for (auto& pt : M_.coaction(x))
                    if (pt.gamma == target) {
                        auto& v = nxt[*pt.m];
                        v = F.add(v, F.mul(c, pt.c));
                    }
            cur.clear();
            for (auto& [x, c] : nxt)
                if (c)
                    cur[x] = c;
        }
        return cur;
    }

    TruncatedInstance T_;
    ComoduleCache M_;
    std::uint32_t p_;
    int n_;
    int inm_ = -1, imu_ = -1;
    std::vector<SpokeDegree> step_;
};

enum class ExtRoute { literal, resolution };

inline ExtTable ext_dimensions(const TruncatedInstance& T, const DegreeWindow& w, ExtRoute route,
                               const ExtOptions& o = {})
{
    ExtTable t;
    if (route == ExtRoute::literal) {
        CobarEngine E(T.H, T.M);
        t = E.ext(w, o);
    } else {
        ResolutionEngine E(T);
        t = E.ext(w, o);
    }
    t.n = T.n;
    return t;
}

struct StabilizedExt {
    ExtTable table;
    int n = 0;
    bool stabilized = false;
    std::vector<ExtTable> tables;  // one per n
};

inline StabilizedExt stabilize_over_n(std::uint32_t p, const DegreeWindow& w, int n_max, const TruncatedOptions& to = {},
                                      const ExtOptions& o = {}, ExtRoute route = ExtRoute::resolution)
{
    if (n_max < 1)
        throw config_error("n_max must be at least 1");
    StabilizedExt R;
    for (int n = 1; n <= n_max; ++n) {
        auto T = instantiate_truncated(p, n, to);
        R.tables.push_back(ext_dimensions(T, w, route, o));
        if (n >= 2 && R.tables[n - 1].dims() == R.tables[n - 2].dims()) {
            R.table = R.tables[n - 2];
            R.n = n - 1;
            R.stabilized = true;
            return R;
        }
    }
    R.table = R.tables.back();
    R.n = n_max;
    return R;
}

// Dimensions of Ext of a tensor product of Hopf algebras from the factors' Ext,
// keyed by (internal degree, s, f).
inline std::map<TriDegree, std::size_t> kunneth_product(const std::vector<std::map<TriDegree, std::size_t>>& factors,
                                                        int s_max)
{
    std::map<TriDegree, std::size_t> acc{{{{0, 0}, 0, 0}, 1}};
    for (auto& f : factors) {
        std::map<TriDegree, std::size_t> nxt;
        for (auto& [a, da] : acc)
            for (auto& [b, db] : f) {
                if (a.s + b.s > s_max)
                    continue;
                nxt[{a.total + b.total, a.s + b.s, a.f + b.f}] += da * db;
            }
        acc = std::move(nxt);
    }
    return acc;
}

}  // namespace spokess
