#include <gtest/gtest.h>

#include "spokess/may.hpp"

using namespace spokess;

namespace {

Monomial mono(const AlgebraPtr& A, std::vector<std::pair<std::string, int>> es)
{
    Monomial m = A->one();
    for (auto& [g, e] : es)
        m.e[A->index_of(g)] = e;
    return m;
}

const SSPage& page(const MayPages& P, int r) { return r <= P.r_max ? P.pages.at(r) : P.e_inf; }

std::map<std::pair<SpokeDegree, int>, std::size_t> totals(const SSPage& P)
{
    std::map<std::pair<SpokeDegree, int>, std::size_t> out;
    for (auto& [k, e] : P.entries)
        if (e.dim)
            out[{k.total, k.s}] += e.dim;
    return out;
}

int digit_sum(int k, int p)
{
    int s = 0;
    for (; k; k /= p)
        s += k % p;
    return s;
}

MayOptions betas(std::int64_t b, std::int64_t bp)
{
    MayOptions o;
    o.beta = b;
    o.beta_prime = bp;
    return o;
}

const DegreeWindow kWin{-8, 4, -10, 10, 4};

}  // namespace

TEST(MayFiltration, WeightIsDigitSum)
{
    for (std::uint32_t p : {3u, 5u})
        for (int n : {1, 2}) {
            if (p == 5 && n == 2)
                continue;
            auto T = instantiate_truncated(p, n);
            auto F = may_filtration(T.H);
            EXPECT_TRUE(F.monomial_adapted);
            int inm = T.H.Gamma->index_of("Nm"), imu = T.H.Gamma->index_of("mu");
            ASSERT_EQ(F.basis.size(), 2u * ipow(p, n));
            EXPECT_EQ(F.basis[0], T.H.Gamma->one());
            EXPECT_EQ(F.weight[0], 0);
            for (std::size_t i = 0; i < F.basis.size(); ++i)
                EXPECT_EQ(F.weight[i], digit_sum(F.basis[i].e[inm], p) + F.basis[i].e[imu])
                    << T.H.Gamma->label(F.basis[i]);
        }
}

TEST(MayFiltration, AssociatedGradedDims)
{
    auto T = instantiate_truncated(3, 2);
    auto F = may_filtration(T.H);
    std::map<std::pair<SpokeDegree, int>, std::size_t> gr, e0;
    for (std::size_t i = 0; i < F.basis.size(); ++i)
        ++gr[{T.H.Gamma->degree(F.basis[i]).total, F.weight[i]}];
    auto E0 = instantiate_associated_graded(3, 2);
    auto all = coalgebra_data(E0).gbar;
    all.push_back(E0.Gamma->one());
    for (auto& m : all)
        ++e0[{E0.Gamma->degree(m).total, E0.Gamma->degree(m).f}];
    EXPECT_EQ(gr, e0);
}

TEST(MayE1, Generators)
{
    auto g = may_e1_generators(3, 2);
    std::vector<std::string> names;
    for (auto& x : g)
        names.push_back(x.name);
    EXPECT_EQ(names, (std::vector<std::string>{"a", "u_lam", "u_sp", "z", "x0", "x1", "xp0", "xp1"}));
    auto A = may_e1_presentation(3, 2);
    EXPECT_EQ(A->degree(mono(A, {{"x1", 1}})), (TriDegree{{5, 12}, 1, 1}));
    EXPECT_EQ(A->degree(mono(A, {{"xp0", 1}})), (TriDegree{{4, 12}, 2, 3}));
    EXPECT_EQ(A->degree(mono(A, {{"xp1", 1}})), (TriDegree{{16, 36}, 2, 3}));
    EXPECT_EQ(A->degree(mono(A, {{"z", 1}})), (TriDegree{{0, 1}, 1, 1}));
    EXPECT_THROW(may_e1_presentation(3, 1, {"a", "u_lam"}), Error);
    EXPECT_THROW(may_e1_presentation(3, 1, {"a", "u_lam", "u_sp", "z", "x0", "q"}), Error);
}

TEST(MayE1, Examples)
{
    auto P = e1_closed_form(3, 1, {0, 1, 0, 4, 1});
    auto z = P.entries.find({{0, 1}, 1, 1});
    ASSERT_NE(z, P.entries.end());
    // u_lam is a unit on E_1, so a^4 u_lam^-1 u_sp x0 shares the degree of z
    EXPECT_EQ(z->second.labels, (std::vector<std::string>{"z", "a^4*u_lam^-1*u_sp*x0"}));
    auto x = P.entries.find({{1, 4}, 1, 1});
    ASSERT_NE(x, P.entries.end());
    EXPECT_EQ(x->second.labels, (std::vector<std::string>{"x0"}));
    auto one = P.entries.find({{0, 0}, 0, 0});
    ASSERT_NE(one, P.entries.end());
    EXPECT_EQ(one->second.labels, (std::vector<std::string>{"1"}));
    // u_lam^j a^k stay in s = 0 for every sign of j
    auto Q = e1_closed_form(3, 1, {-4, 4, -4, 4, 0});
    EXPECT_EQ(Q.entries.at({{-4, 4}, 0, 0}).labels, (std::vector<std::string>{"u_lam^-2"}));
    EXPECT_EQ(Q.entries.at({{-4, 3}, 0, 0}).labels, (std::vector<std::string>{"a*u_lam^-2"}));
}

TEST(MayE1, ClosedFormMatchesAssociatedGraded)
{
    DegreeWindow w{-6, 4, -8, 8, 4};
    for (int n : {1, 2}) {
        auto P = e1_closed_form(3, n, w);
        std::map<TriDegree, std::size_t> dims;
        for (auto& [k, e] : P.entries)
            dims[k] = e.dim;
        EXPECT_EQ(dims, e1_via_associated_graded(3, n, w, n == 1 ? 4 : 2)) << n;
    }
}

TEST(MayE1, OrderIndependent)
{
    DegreeWindow w{-6, 4, -8, 8, 3};
    auto a = e1_closed_form(3, 1, w), b = e1_closed_form(3, 1, w, {"xp0", "x0", "z", "u_sp", "u_lam", "a"});
    ASSERT_EQ(a.entries.size(), b.entries.size());
    for (auto& [k, e] : a.entries)
        EXPECT_EQ(e.dim, b.entries.at(k).dim);
}

TEST(MayDifferential, D1Examples)
{
    MayModel M(3, 2, betas(2, 1));
    const auto& A = M.e1();
    auto d = [&](std::vector<std::pair<std::string, int>> es) { return M.apply(mono(A, es), true, false); };
    using R = std::map<Monomial, std::uint32_t>;
    EXPECT_EQ(d({{"u_sp", 1}}), (R{{mono(A, {{"a", 2}, {"z", 1}}), 1}}));
    EXPECT_EQ(d({{"u_lam", 1}}), (R{{mono(A, {{"a", 6}, {"x0", 1}}), 2}}));
    // digit_0(2) = 2
    EXPECT_EQ(d({{"u_lam", 2}}), (R{{mono(A, {{"a", 6}, {"u_lam", 1}, {"x0", 1}}), 1}}));
    EXPECT_TRUE(d({{"u_lam", 3}}).size() == 1u);
    EXPECT_EQ(d({{"u_lam", 3}}), (R{{mono(A, {{"a", 18}, {"x1", 1}}), 2}}));
    EXPECT_TRUE(d({{"u_lam", 9}}).empty());
    EXPECT_TRUE(d({{"a", 4}, {"z", 2}, {"xp0", 1}}).empty());
    // u_lam^-1 = u_lam^(...2222) in 3-adic digits
    EXPECT_EQ(d({{"u_lam", -1}}).size(), 2u);
}

TEST(MayDifferential, DPMinus1Examples)
{
    MayModel M(3, 1);
    const auto& A = M.e1();
    auto X = mono(A, {{"u_lam", 2}, {"x0", 1}});
    EXPECT_TRUE(M.apply(X, true, false).empty());
    auto r = M.apply(X, false, true);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r.begin()->first, mono(A, {{"a", 12}, {"xp0", 1}}));
    EXPECT_TRUE(M.apply(mono(A, {{"u_lam", 1}, {"x0", 1}}), false, true).empty());
    EXPECT_TRUE(M.apply(mono(A, {{"u_lam", 3}, {"x0", 1}}), false, true).empty());
    // the degree drops by one in m and the weight rises by p - 1
    auto src = A->degree(X), tgt = A->degree(r.begin()->first);
    EXPECT_TRUE(is_differential_step(src, tgt, 2));
}

TEST(MayDifferential, SquaresToZero)
{
    for (std::uint32_t p : {3u, 5u}) {
        MayModel M(p, 2, betas(1, 2));
        for (int s = 0; s <= 3; ++s)
            for (auto t : enumerate_window({-8, 6, -10, 12, 0}))
                EXPECT_NO_THROW(M.filtered_slice({t.m + s, t.n}, s));
    }
}

TEST(MayPages, NegativeVirtualDegreesP3)
{
    MayModel M(3, 1);
    auto P = may_pages(M, kWin);
    EXPECT_TRUE(P.higher.empty());
    // E_2 = F_3[a, u^{+-3}, x'_0]<u^2 x_0>, E_3 = F_3[a, u^{+-3}] in negative virtual degree
    std::map<std::pair<SpokeDegree, int>, std::size_t> e2, e3;
    for (int l = -20; l <= 20; ++l)
        for (int eps = 0; eps <= 1; ++eps)
            for (int j = 0; eps + 2 * j <= kWin.s_max; ++j) {
                SpokeDegree base = SpokeDegree{6, -6} * l + SpokeDegree{5, 0} * eps + SpokeDegree{4, 12} * j;
                for (int k = 0; k <= 60; ++k) {
                    SpokeDegree t = base + kDegA * k;
                    if (!kWin.contains(t) || t.virtual_dim() >= 0)
                        continue;
                    ++e2[{t, eps + 2 * j}];
                    if (!eps && !j)
                        ++e3[{t, 0}];
                }
            }
    auto neg = [&](const SSPage& pg) {
        std::map<std::pair<SpokeDegree, int>, std::size_t> out;
        for (auto& [k, d] : totals(pg))
            if (k.first.virtual_dim() < 0)
                out[k] = d;
        return out;
    };
    EXPECT_EQ(neg(page(P, 2)), e2);
    EXPECT_EQ(neg(page(P, 3)), e3);
    EXPECT_EQ(neg(P.e_inf), e3);
}

TEST(MayPages, PageBookkeeping)
{
    MayModel M(5, 1);
    auto P = may_pages(M, kWin);
    for (int r = 1; r <= P.r_max; ++r) {
        const auto& cur = page(P, r);
        const auto& nxt = page(P, r + 1);
        std::map<TriDegree, std::size_t> out, in;
        for (auto& a : cur.arrows) {
            EXPECT_TRUE(is_differential_step(a.src, a.tgt, r));
            EXPECT_EQ(a.r, r);
            out[a.src] += a.rank;
            in[a.tgt] += a.rank;
        }
        for (auto& [k, e] : cur.entries) {
            if (k.total.m >= kWin.m_max)
                continue;  // sources at m + 1 are outside the window
            std::size_t after = nxt.entries.count(k) ? nxt.entries.at(k).dim : 0;
            EXPECT_EQ(after + out[k] + in[k], e.dim) << "r=" << r << " " << format_tri(k);
        }
        for (auto& [k, e] : nxt.entries)
            EXPECT_TRUE(cur.entries.count(k)) << format_tri(k);
    }
    // p = 5 differentials live on pages 1 and 4 only
    EXPECT_TRUE(P.higher.empty());
    EXPECT_TRUE(page(P, 2).arrows.empty());
    EXPECT_TRUE(page(P, 3).arrows.empty());
    EXPECT_FALSE(page(P, 4).arrows.empty());
}

TEST(MayPages, EInfinityIsExt)
{
    for (int n : {1, 2}) {
        MayModel M(3, n);
        auto P = may_pages(M, kWin);
        auto res = ext_dimensions(instantiate_truncated(3, n), kWin, ExtRoute::resolution);
        EXPECT_EQ(P.ext.dims(), res.dims()) << n;
    }
    MayModel M5(5, 1);
    DegreeWindow w{-6, 2, -8, 8, 3};
    EXPECT_EQ(may_pages(M5, w).ext.dims(), ext_dimensions(instantiate_truncated(5, 1), w, ExtRoute::literal).dims());
}

TEST(MayPages, Invariance)
{
    DegreeWindow w{-6, 4, -8, 8, 3};
    MayModel base(3, 1);
    auto ref = may_pages(base, w);
    MayOptions b2;
    b2.beta = 2;
    b2.beta_prime = 2;
    EXPECT_EQ(may_pages(MayModel(3, 1, b2), w).ext.dims(), ref.ext.dims());
    MayOptions ord;
    ord.order = {"xp0", "x0", "z", "u_sp", "u_lam", "a"};
    auto re = may_pages(MayModel(3, 1, ord), w);
    for (int r = 1; r <= 3; ++r)
        EXPECT_EQ(totals(page(re, r)), totals(page(ref, r))) << r;
    MayOptions th;
    th.threads = 3;
    auto pt = may_pages(MayModel(3, 1, th), w);
    for (int r = 1; r <= ref.r_max; ++r) {
        EXPECT_EQ(pt.pages.at(r).entries, ref.pages.at(r).entries);
        EXPECT_EQ(pt.pages.at(r).arrows, ref.pages.at(r).arrows);
    }
}

TEST(MayPages, NegativeControls)
{
    DegreeWindow w{-6, 4, -8, 8, 3};
    auto ref = may_pages(MayModel(3, 1), w).ext.dims();
    MayOptions o;
    o.d1 = false;
    EXPECT_NE(may_pages(MayModel(3, 1, o), w).ext.dims(), ref);
    MayOptions q;
    q.d_p_minus_1 = false;
    EXPECT_NE(may_pages(MayModel(3, 1, q), w).ext.dims(), ref);
    EXPECT_THROW(MayModel(3, 1, betas(3, 1)), Error);
}

TEST(MayPages, StagedD1Agrees)
{
    for (int n : {1, 2}) {
        MayModel M(3, n);
        auto S = staged_d1(M, kWin);
        EXPECT_TRUE(S.agrees) << n;
        auto P = may_pages(M, kWin);
        std::map<TriDegree, std::size_t> e2;
        for (auto& [k, e] : page(P, 2).entries)
            e2[k] = e.dim;
        EXPECT_EQ(S.direct, e2) << n;
    }
}

TEST(Segal, Verdict)
{
    auto R = segal_pipeline({});
    EXPECT_TRUE(R.verdict) << R.explanation;
    EXPECT_TRUE(R.stabilized);
    EXPECT_EQ(R.stable_n, 2);
    for (auto& c : R.columns) {
        EXPECT_GE(c.margin, 2);
        EXPECT_EQ(c.survivors, (c.m == 0 && c.s == 0) ? 1u : 0u);
    }
}

TEST(Segal, NegativeControl)
{
    SegalOptions o;
    o.may.d1 = false;
    auto R = segal_pipeline(o);
    EXPECT_FALSE(R.verdict);
    EXPECT_FALSE(R.explanation.empty());
}

TEST(Segal, TinyWindow)
{
    SegalOptions o;
    o.window = {-2, 0, -1, 1, 1};
    try {
        segal_pipeline(o);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::window);
    }
}
