#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "spokess/algebra.hpp"
#include "spokess/hfp.hpp"
#include "spokess/sparse.hpp"

namespace spokess {

// Hopf algebroid (A, Gamma) with Gamma free over A on extra generators via eta_L.
// Presentations of Gamma^{(x)_A k} list the A generators first, then one copy of the
// extra generators per tensor factor, suffixed _1, _2, _3.
struct HopfAlgebroid {
    std::string name;
    std::uint32_t p = 3;
    std::size_t nA = 0, nE = 0;
    AlgebraPtr A, Gamma, Gamma2, Gamma3;
    AlgebraMap eta_L, eta_R;  // A -> Gamma
    AlgebraMap delta;         // Gamma -> Gamma2
    AlgebraMap epsilon;       // Gamma -> A
    std::vector<std::string> notes;

    bool is_hopf_algebra() const { return nA == 0; }
};

// Comodule algebra over a Hopf algebra (A = F_p).
struct Comodule {
    std::string name;
    AlgebraPtr M, MG, MGG;  // M, M (x) Gamma, M (x) Gamma (x) Gamma
    AlgebraMap psi;         // M -> MG
};

struct GammaExtra {
    GeneratorSpec spec;
};

namespace detail {

inline std::vector<GeneratorSpec> suffixed(const std::vector<GeneratorSpec>& g, const std::string& sfx)
{
    std::vector<GeneratorSpec> out = g;
    for (auto& x : out)
        x.name += sfx;
    return out;
}

inline std::vector<GeneratorSpec> concat(std::vector<GeneratorSpec> a, const std::vector<GeneratorSpec>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// Map with images given as functions of the generator index.
inline AlgebraMap map_by(const AlgebraPtr& src, const AlgebraPtr& tgt, const std::string& name,
                         const std::function<AlgebraElement(std::size_t)>& f)
{
    std::vector<AlgebraElement> ims;
    for (std::size_t i = 0; i < src->size(); ++i)
        ims.push_back(f(i));
    return AlgebraMap(src, tgt, std::move(ims), name);
}

inline AlgebraElement gen_el(const AlgebraPtr& A, std::size_t i) { return AlgebraElement::monomial(A, A->gen_monomial(i)); }


}  // namespace detail

// Builds the tensor powers and structure maps from eta_R, Delta and epsilon on the extra generators.
// delta_extra[i] and epsilon_extra[i] are given as term lists in Gamma2 and A.
struct AlgebroidData {
    std::string name;
    std::uint32_t p;
    std::vector<GeneratorSpec> base, extra;
    // eta_R on base generators, as terms over Gamma
    std::vector<std::vector<std::pair<Monomial, std::int64_t>>> eta_R;
    // Delta on extra generators, as terms over Gamma2
    std::vector<std::vector<std::pair<Monomial, std::int64_t>>> delta;
    // epsilon on extra generators, as terms over A (empty list means zero)
    std::vector<std::vector<std::pair<Monomial, std::int64_t>>> epsilon;
    std::vector<std::string> notes;
};

inline HopfAlgebroid build_algebroid(const AlgebroidData& D)
{
    using namespace detail;
    HopfAlgebroid H;
    H.name = D.name;
    H.p = D.p;
    H.nA = D.base.size();
    H.nE = D.extra.size();
    H.notes = D.notes;
    H.A = make_algebra(D.p, D.base);
    H.Gamma = make_algebra(D.p, concat(D.base, D.extra));
    H.Gamma2 = make_algebra(D.p, concat(concat(D.base, suffixed(D.extra, "_1")), suffixed(D.extra, "_2")));
    H.Gamma3 = make_algebra(
        D.p, concat(concat(concat(D.base, suffixed(D.extra, "_1")), suffixed(D.extra, "_2")), suffixed(D.extra, "_3")));
    H.eta_L = map_by(H.A, H.Gamma, "eta_L", [&](std::size_t i) { return gen_el(H.Gamma, i); });
    H.eta_R = map_by(H.A, H.Gamma, "eta_R", [&](std::size_t i) {
        return AlgebraElement::from_terms(H.Gamma, D.eta_R[i], "eta_R(" + D.base[i].name + ")");
    });
    H.delta = map_by(H.Gamma, H.Gamma2, "Delta", [&](std::size_t i) {
        if (i < H.nA)
            return gen_el(H.Gamma2, i);
        return AlgebraElement::from_terms(H.Gamma2, D.delta[i - H.nA], "Delta(" + D.extra[i - H.nA].name + ")");
    });
    H.epsilon = map_by(H.Gamma, H.A, "epsilon", [&](std::size_t i) {
        if (i < H.nA)
            return gen_el(H.A, i);
        auto& ts = D.epsilon[i - H.nA];
        if (ts.empty())
            return AlgebraElement::zero(H.A, D.extra[i - H.nA].tri());
        return AlgebraElement::from_terms(H.A, ts, "epsilon(" + D.extra[i - H.nA].name + ")");
    });
    return H;
}

// Structure maps between tensor powers.
struct AlgebroidMaps {
    AlgebraMap i1, i2;                    // Gamma -> Gamma2
    AlgebraMap delta_id, id_delta;        // Gamma2 -> Gamma3
    AlgebraMap eps_id, id_eps;            // Gamma2 -> Gamma
};

inline AlgebroidMaps algebroid_maps(const HopfAlgebroid& H)
{
    using namespace detail;
    const std::size_t nA = H.nA, nE = H.nE;
    AlgebroidMaps R;
    R.i1 = map_by(H.Gamma, H.Gamma2, "i1", [&](std::size_t i) { return gen_el(H.Gamma2, i); });
    R.i2 = map_by(H.Gamma, H.Gamma2, "i2", [&](std::size_t i) {
        if (i < nA)
            return R.i1.apply(H.eta_R.image(i));
        return gen_el(H.Gamma2, nA + nE + (i - nA));
    });
    // Gamma2 -> Gamma3 placing the two factors at positions (1,2) and (2,3)
    AlgebraMap r12 = map_by(H.Gamma2, H.Gamma3, "r12", [&](std::size_t i) { return gen_el(H.Gamma3, i); });
    AlgebraMap g_to_1 = map_by(H.Gamma, H.Gamma3, "g1", [&](std::size_t i) { return gen_el(H.Gamma3, i); });
    AlgebraMap s23 = map_by(H.Gamma2, H.Gamma3, "s23", [&](std::size_t i) {
        if (i < nA)
            return g_to_1.apply(H.eta_R.image(i));
        return gen_el(H.Gamma3, i + nE);
    });
    R.delta_id = map_by(H.Gamma2, H.Gamma3, "Delta(x)id", [&](std::size_t i) {
        if (i < nA)
            return gen_el(H.Gamma3, i);
        if (i < nA + nE)
            return r12.apply(H.delta.image(i));
        return gen_el(H.Gamma3, i + nE);
    });
    R.id_delta = map_by(H.Gamma2, H.Gamma3, "id(x)Delta", [&](std::size_t i) {
        if (i < nA + nE)
            return gen_el(H.Gamma3, i);
        return s23.apply(H.delta.image(i - nE));
    });
    R.eps_id = map_by(H.Gamma2, H.Gamma, "epsilon(x)id", [&](std::size_t i) {
        if (i < nA)
            return gen_el(H.Gamma, i);
        if (i < nA + nE)
            return H.eta_L.apply(H.epsilon.image(i));
        return gen_el(H.Gamma, i - nE);
    });
    R.id_eps = map_by(H.Gamma2, H.Gamma, "id(x)epsilon", [&](std::size_t i) {
        if (i < nA + nE)
            return gen_el(H.Gamma, i);
        return H.eta_R.apply(H.epsilon.image(i - nE));
    });
    return R;
}

inline Comodule build_comodule(const HopfAlgebroid& H, const std::string& name, const std::vector<GeneratorSpec>& gens,
                               const std::vector<std::vector<std::pair<Monomial, std::int64_t>>>& psi_terms)
{
    using namespace detail;
    if (!H.is_hopf_algebra())
        throw config_error("comodules are supported over Hopf algebras only");
    std::vector<GeneratorSpec> extra(H.Gamma->gens().begin(), H.Gamma->gens().end());
    Comodule C;
    C.name = name;
    C.M = make_algebra(H.p, gens);
    C.MG = make_algebra(H.p, concat(gens, extra));
    C.MGG = make_algebra(H.p, concat(concat(gens, suffixed(extra, "_1")), suffixed(extra, "_2")));
    C.psi = map_by(C.M, C.MG, "psi", [&](std::size_t i) {
        return AlgebraElement::from_terms(C.MG, psi_terms[i], "psi(" + gens[i].name + ")");
    });
    return C;
}

// Degree of a basis monomial of a tensor power restricted to the non-base part is handled
// by the general enumeration; here we only need monomials of a presentation by window.
inline std::vector<Monomial> basis_in_window(const AlgebraPtr& A, const DegreeWindow& w)
{
    std::vector<Monomial> out;
    for (auto d : enumerate_window(w))
        for (auto& m : A->monomials_in_degree({d, 0, 0}))
            out.push_back(m);
    return out;
}

struct AxiomCheck {
    std::string name;
    std::size_t checked = 0;
    bool passed = true;
    std::string failure;
};

struct AxiomReport {
    std::string presentation;
    std::vector<AxiomCheck> checks;
    std::vector<std::string> notes;
    bool ok() const
    {
        for (auto& c : checks)
            if (!c.passed)
                return false;
        return true;
    }
};

namespace detail {

inline void compare_maps(AxiomCheck& c, const AlgebraPtr& src, const std::vector<Monomial>& basis,
                         const std::function<AlgebraElement(const AlgebraElement&)>& lhs,
                         const std::function<AlgebraElement(const AlgebraElement&)>& rhs)
{
    for (auto& m : basis) {
        auto x = AlgebraElement::monomial(src, m);
        auto l = lhs(x), r = rhs(x);
        ++c.checked;
        if (!(l == r)) {
            c.passed = false;
            if (c.failure.empty())
                c.failure = "on " + src->label(m) + ": " + l.to_string() + " != " + r.to_string();
        }
    }
}

}  // namespace detail

inline AxiomReport check_axioms(const HopfAlgebroid& H, const DegreeWindow& w)
{
    using detail::compare_maps;
    AxiomReport R;
    R.presentation = H.name;
    R.notes = H.notes;
    auto M = algebroid_maps(H);
    auto basisA = basis_in_window(H.A, w);
    auto basisG = basis_in_window(H.Gamma, w);
    auto id = [](const AlgebraElement& x) { return x; };
    auto add = [&](const std::string& name, const AlgebraPtr& src, const std::vector<Monomial>& b, auto lhs, auto rhs) {
        AxiomCheck c{name, 0, true, {}};
        compare_maps(c, src, b, lhs, rhs);
        R.checks.push_back(c);
    };
    add("counit o eta_L = id", H.A, basisA, [&](auto& x) { return H.epsilon.apply(H.eta_L.apply(x)); }, id);
    add("counit o eta_R = id", H.A, basisA, [&](auto& x) { return H.epsilon.apply(H.eta_R.apply(x)); }, id);
    add("(counit x id) o Delta = id", H.Gamma, basisG, [&](auto& x) { return M.eps_id.apply(H.delta.apply(x)); }, id);
    add("(id x counit) o Delta = id", H.Gamma, basisG, [&](auto& x) { return M.id_eps.apply(H.delta.apply(x)); }, id);
    add("coassociativity", H.Gamma, basisG, [&](auto& x) { return M.delta_id.apply(H.delta.apply(x)); },
        [&](auto& x) { return M.id_delta.apply(H.delta.apply(x)); });
    add("Delta o eta_L = i1 o eta_L", H.A, basisA, [&](auto& x) { return H.delta.apply(H.eta_L.apply(x)); },
        [&](auto& x) { return M.i1.apply(H.eta_L.apply(x)); });
    add("Delta o eta_R = i2 o eta_R", H.A, basisA, [&](auto& x) { return H.delta.apply(H.eta_R.apply(x)); },
        [&](auto& x) { return M.i2.apply(H.eta_R.apply(x)); });
    return R;
}

inline AxiomReport check_comodule(const HopfAlgebroid& H, const Comodule& C, const DegreeWindow& w)
{
    using namespace detail;
    AxiomReport R;
    R.presentation = C.name;
    const std::size_t nM = C.M->size(), nE = H.nE;
    auto counit = map_by(C.MG, C.M, "id(x)epsilon", [&](std::size_t i) {
        if (i < nM)
            return gen_el(C.M, i);
        auto e = H.epsilon.image(i - nM);
        // epsilon lands in F_p
        AlgebraElement out = AlgebraElement::zero(C.M, C.MG->gen(i).tri());
        for (auto& [m, c] : e.terms())
            out = AlgebraElement::constant(C.M, c);
        return out;
    });
    auto psi_id = map_by(C.MG, C.MGG, "psi(x)id", [&](std::size_t i) {
        if (i < nM) {
            auto r = map_by(C.MG, C.MGG, "r", [&](std::size_t j) { return gen_el(C.MGG, j); });
            return r.apply(C.psi.image(i));
        }
        return gen_el(C.MGG, i + nE);
    });
    auto id_delta = map_by(C.MG, C.MGG, "id(x)Delta", [&](std::size_t i) {
        if (i < nM)
            return gen_el(C.MGG, i);
        auto shift = map_by(H.Gamma2, C.MGG, "shift", [&](std::size_t j) { return gen_el(C.MGG, nM + j); });
        return shift.apply(H.delta.image(i - nM));
    });
    auto basis = basis_in_window(C.M, w);
    AxiomCheck c1{"(id x counit) o psi = id", 0, true, {}};
    compare_maps(c1, C.M, basis, [&](auto& x) { return counit.apply(C.psi.apply(x)); }, [](auto& x) { return x; });
    AxiomCheck c2{"coaction coassociativity", 0, true, {}};
    compare_maps(c2, C.M, basis, [&](auto& x) { return psi_id.apply(C.psi.apply(x)); },
                 [&](auto& x) { return id_delta.apply(C.psi.apply(x)); });
    R.checks = {c1, c2};
    return R;
}

// Exponent e with |target| = e*|a| + |rest|, or a config error when none exists.
inline int forced_a_exponent(SpokeDegree target, SpokeDegree rest)
{
    SpokeDegree diff = target - rest;
    if (diff.m != 0)
        throw consistency_error("no power of a has degree " + format_degree(diff));
    return -diff.n;
}

struct SthhOptions {
    std::int64_t beta = 1, beta_prime = 1;
    int force_eta_lambda_exponent = -1;  // override for negative testing
};

inline SpokeDegree deg_norm(std::uint32_t p) { return {2, 2 * static_cast<int>(p - 1)}; }
inline constexpr SpokeDegree kDegMuTilde{1, 1};

// The Hopf algebroid of the C_p-spectrum THH(HF_p) in spoke grading.
inline HopfAlgebroid instantiate_sthh(std::uint32_t p, SthhOptions o = {})
{
    if (p % 2 == 0 || !is_prime(p))
        throw config_error("p must be an odd prime");
    if (o.beta % p == 0 || o.beta_prime % p == 0)
        throw config_error("beta and beta' must be units mod p");
    AlgebroidData D;
    D.name = "sthh";
    D.p = p;
    D.base = {{"a", kDegA, GenKind::polynomial}, {"u_lam", kDegULambda, GenKind::polynomial},
              {"u_sp", kDegUSpoke, GenKind::exterior}};
    D.extra = {{"Nm", deg_norm(p), GenKind::polynomial}, {"mu", kDegMuTilde, GenKind::exterior}};
    int e1 = forced_a_exponent(kDegULambda, deg_norm(p));
    int e2 = forced_a_exponent(kDegUSpoke, kDegMuTilde);
    D.notes.push_back("eta_R(u_lam) a-exponent forced by degree: " + std::to_string(e1) + " (= 2p)");
    D.notes.push_back("eta_R(u_sp) a-exponent forced by degree: " + std::to_string(e2));
    if (o.force_eta_lambda_exponent >= 0)
        e1 = o.force_eta_lambda_exponent;
    auto mono = [](std::vector<int> e) { return Monomial{std::move(e)}; };
    // Gamma order: a, u_lam, u_sp, Nm, mu
    D.eta_R = {{{mono({1, 0, 0, 0, 0}), 1}},
               {{mono({0, 1, 0, 0, 0}), 1}, {mono({e1, 0, 0, 1, 0}), o.beta}},
               {{mono({0, 0, 1, 0, 0}), 1}, {mono({e2, 0, 0, 0, 1}), o.beta_prime}}};
    // Gamma2 order: a, u_lam, u_sp, Nm_1, mu_1, Nm_2, mu_2
    D.delta = {{{mono({0, 0, 0, 1, 0, 0, 0}), 1}, {mono({0, 0, 0, 0, 0, 1, 0}), 1}},
               {{mono({0, 0, 0, 0, 1, 0, 0}), 1}, {mono({0, 0, 0, 0, 0, 0, 1}), 1}}};
    D.epsilon = {{}, {}};
    return build_algebroid(D);
}

// Geometric fixed points: A = F_p[y]<x>, Gamma = A (x) A with eta_R the second copy.
inline HopfAlgebroid instantiate_geometric(std::uint32_t p)
{
    AlgebroidData D;
    D.name = "geometric";
    D.p = p;
    D.base = {{"y", {2, 0}, GenKind::polynomial}, {"x", {1, 0}, GenKind::exterior}};
    D.extra = {{"yb", {2, 0}, GenKind::polynomial}, {"xb", {1, 0}, GenKind::exterior}};
    auto mono = [](std::vector<int> e) { return Monomial{std::move(e)}; };
    D.eta_R = {{{mono({0, 0, 1, 0}), 1}}, {{mono({0, 0, 0, 1}), 1}}};
    // Gamma2 order: y, x, yb_1, xb_1, yb_2, xb_2
    D.delta = {{{mono({0, 0, 0, 0, 1, 0}), 1}}, {{mono({0, 0, 0, 0, 0, 1}), 1}}};
    D.epsilon = {{{mono({1, 0}), 1}}, {{mono({0, 1}), 1}}};
    return build_algebroid(D);
}

struct TruncatedOptions {
    std::int64_t beta = 1, beta_prime = 1;
    // permutation of the comodule generators (a, u_lam, u_sp); identity if empty
    std::vector<int> order;
};

struct TruncatedInstance {
    int n = 1;
    HopfAlgebroid H;
    Comodule M;
};

// Gamma_n = F_p[Nm]/(Nm^(p^n)) (x) E[mu] coacting on M = F_p[a, u_lam^{+-1}]<u_sp>.
inline TruncatedInstance instantiate_truncated(std::uint32_t p, int n, TruncatedOptions o = {})
{
    if (p % 2 == 0 || !is_prime(p))
        throw config_error("p must be an odd prime");
    if (n < 1 || n > 6)
        throw config_error("n must be in 1..6");
    if (o.beta % p == 0 || o.beta_prime % p == 0)
        throw config_error("beta and beta' must be units mod p");
    int pn = 1;
    for (int i = 0; i < n; ++i)
        pn *= static_cast<int>(p);
    AlgebroidData D;
    D.name = "Gamma_" + std::to_string(n);
    D.p = p;
    D.extra = {{"Nm", deg_norm(p), GenKind::truncated, pn}, {"mu", kDegMuTilde, GenKind::exterior}};
    auto mono = [](std::vector<int> e) { return Monomial{std::move(e)}; };
    D.delta = {{{mono({1, 0, 0, 0}), 1}, {mono({0, 0, 1, 0}), 1}}, {{mono({0, 1, 0, 0}), 1}, {mono({0, 0, 0, 1}), 1}}};
    D.epsilon = {{}, {}};
    TruncatedInstance T;
    T.n = n;
    T.H = build_algebroid(D);

    std::vector<GeneratorSpec> g0 = {{"a", kDegA, GenKind::polynomial},
                                     {"u_lam", kDegULambda, GenKind::invertible},
                                     {"u_sp", kDegUSpoke, GenKind::exterior}};
    std::vector<int> ord = o.order.empty() ? std::vector<int>{0, 1, 2} : o.order;
    if (ord.size() != 3)
        throw config_error("generator order must permute three generators");
    std::vector<GeneratorSpec> g;
    std::vector<int> pos(3);
    for (int i = 0; i < 3; ++i) {
        g.push_back(g0.at(ord[i]));
        pos[ord[i]] = i;
    }
    int e1 = forced_a_exponent(kDegULambda, deg_norm(p));
    int e2 = forced_a_exponent(kDegUSpoke, kDegMuTilde);
    // MG order: M generators (permuted), Nm, mu
    auto mg = [&](int ea, int eu, int es, int en, int em) {
        std::vector<int> e(5, 0);
        e[pos[0]] = ea, e[pos[1]] = eu, e[pos[2]] = es, e[3] = en, e[4] = em;
        return mono(e);
    };
    std::vector<std::vector<std::pair<Monomial, std::int64_t>>> psi(3);
    psi[pos[0]] = {{mg(1, 0, 0, 0, 0), 1}};
    psi[pos[1]] = {{mg(0, 1, 0, 0, 0), 1}, {mg(e1, 0, 0, 1, 0), o.beta}};
    psi[pos[2]] = {{mg(0, 0, 1, 0, 0), 1}, {mg(e2, 0, 0, 0, 1), o.beta_prime}};
    T.M = build_comodule(T.H, "M_" + std::to_string(n), g, psi);
    return T;
}

// Primitively generated Hopf algebra over F_p on the given generators.
inline HopfAlgebroid primitive_hopf_algebra(std::uint32_t p, const std::string& name, const std::vector<GeneratorSpec>& gens)
{
    AlgebroidData D;
    D.name = name;
    D.p = p;
    D.extra = gens;
    std::size_t k = gens.size();
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<int> e1(2 * k, 0), e2(2 * k, 0);
        e1[i] = 1;
        e2[k + i] = 1;
        D.delta.push_back({{Monomial{e1}, 1}, {Monomial{e2}, 1}});
        D.epsilon.push_back({});
    }
    return build_algebroid(D);
}

// Tensor factors of E_0 Gamma_n: F_p[y_j]/(y_j^p) for j < n, then E[mu]; all weight 1.
inline std::vector<GeneratorSpec> associated_graded_generators(std::uint32_t p, int n)
{
    std::vector<GeneratorSpec> g;
    int pj = 1;
    for (int j = 0; j < n; ++j) {
        GeneratorSpec y{"y" + std::to_string(j), deg_norm(p) * pj, GenKind::truncated, static_cast<int>(p)};
        y.f = 1;
        g.push_back(y);
        pj *= static_cast<int>(p);
    }
    GeneratorSpec mu{"mu", kDegMuTilde, GenKind::exterior};
    mu.f = 1;
    g.push_back(mu);
    return g;
}

inline HopfAlgebroid instantiate_associated_graded(std::uint32_t p, int n)
{
    return primitive_hopf_algebra(p, "E0Gamma_" + std::to_string(n), associated_graded_generators(p, n));
}

inline Comodule trivial_comodule(const HopfAlgebroid& H) { return build_comodule(H, "F_p", {}, {}); }

// d^0(m) = eta_R(m) - eta_L(m) for the cobar complex of A over itself.
inline AlgebraElement algebroid_d0(const HopfAlgebroid& H, const AlgebraElement& x)
{
    return H.eta_R.apply(x) - H.eta_L.apply(x);
}

// Weyl-group action on span(mu_1..mu_{p-1}): gamma(mu_i) = mu_{i+1}, gamma(mu_{p-1}) = -sum mu_j.
inline SparseMatFp weyl_gamma(std::uint32_t p)
{
    PrimeField F(p);
    std::size_t d = p - 1;
    std::vector<Triplet> ts;
    for (std::size_t i = 0; i + 1 < d; ++i)
        ts.push_back({static_cast<std::uint32_t>(i + 1), static_cast<std::uint32_t>(i), 1});
    for (std::size_t j = 0; j < d; ++j)
        ts.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(d - 1), -1});
    return SparseMatFp::from_triplets(F, d, d, ts);
}

inline std::uint64_t binom_u64(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return static_cast<std::uint64_t>(r);
}

// Number of free C_p-summands in Sym^k of the reduced regular representation.
inline std::uint64_t m_k_formula(std::uint32_t p, std::uint64_t k) { return binom_u64(k + p - 2, p - 2) / p; }

// Oracle: rank of (gamma - 1)^(p-1) on Sym^k, i.e. the number of Jordan blocks of size p.
inline std::uint64_t m_k_oracle(std::uint32_t p, int k)
{
    std::vector<GeneratorSpec> g;
    for (std::uint32_t i = 1; i < p; ++i)
        g.push_back({"mu" + std::to_string(i), {2, 0}, GenKind::polynomial});
    auto S = make_algebra(p, g);
    auto G = weyl_gamma(p);
    std::vector<AlgebraElement> ims;
    for (std::size_t i = 0; i + 1 < p; ++i) {
        auto x = AlgebraElement::zero(S, {{2, 0}, 0, 0});
        for (auto e : G.column(i))
            x = x + AlgebraElement::monomial(S, S->gen_monomial(e.idx), e.val);
        ims.push_back(x);
    }
    AlgebraMap gamma(S, S, ims, "gamma");
    auto basis = S->monomials_in_degree({{2 * k, 0}, 0, 0});
    std::map<Monomial, std::uint32_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i)
        index[basis[i]] = static_cast<std::uint32_t>(i);
    PrimeField F(p);
    std::vector<Triplet> ts;
    for (std::size_t j = 0; j < basis.size(); ++j) {
        auto y = gamma.apply(basis[j]);
        for (auto& [m, c] : y.terms())
            ts.push_back({index.at(m), static_cast<std::uint32_t>(j), c});
        ts.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(j), -1});
    }
    auto T = SparseMatFp::from_triplets(F, basis.size(), basis.size(), ts);
    auto P = T;
    for (std::uint32_t i = 1; i + 1 < p; ++i)
        P = P.multiply(T);
    return rank(P);
}

}  // namespace spokess
