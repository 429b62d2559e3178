#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spokess/algebra.hpp"

namespace spokess {

// Homotopy of the spoke-graded Eilenberg-MacLane spectrum and its variants.
enum class HfpVariant { full, a_free, a_inverted, a_completed_inverted, spoke_suspension };

inline const char* variant_name(HfpVariant v)
{
    switch (v) {
    case HfpVariant::full: return "full";
    case HfpVariant::a_free: return "a_free";
    case HfpVariant::a_inverted: return "a_inverted";
    case HfpVariant::a_completed_inverted: return "a_completed_inverted";
    case HfpVariant::spoke_suspension: return "spoke_suspension";
    }
    return "?";
}

inline HfpVariant parse_variant(const std::string& s)
{
    for (auto v : {HfpVariant::full, HfpVariant::a_free, HfpVariant::a_inverted, HfpVariant::a_completed_inverted,
                   HfpVariant::spoke_suspension})
        if (s == variant_name(v))
            return v;
    throw config_error("unknown variant '" + s + "'");
}

inline constexpr SpokeDegree kDegA{0, -1};
inline constexpr SpokeDegree kDegULambda{2, -2};
inline constexpr SpokeDegree kDegUSpoke{1, -1};

// Positive-cone presentations. Generator order: a, u_lam, u_sp.
inline AlgebraPtr hfp_positive_algebra(std::uint32_t p, bool a_inv = false, bool u_inv = false)
{
    return make_algebra(p, {{"a", kDegA, a_inv ? GenKind::invertible : GenKind::polynomial},
                            {"u_lam", kDegULambda, u_inv ? GenKind::invertible : GenKind::polynomial},
                            {"u_sp", kDegUSpoke, GenKind::exterior}});
}

// Negative-cone class S^-1 u_sp^eps u_lam^-j a^-k with j, k >= 1.
struct NegConeElement {
    int eps = 0, j = 1, k = 1;
    SpokeDegree degree() const { return SpokeDegree{-1, 0} + kDegUSpoke * eps + SpokeDegree{-2, 2} * j + SpokeDegree{0, 1} * k; }
    std::string label() const
    {
        std::string s = "S^-1";
        if (eps)
            s += "*u_sp";
        s += "*u_lam^-" + std::to_string(j) + "*a^-" + std::to_string(k);
        return s;
    }
    auto operator<=>(const NegConeElement&) const = default;
};

inline std::optional<NegConeElement> negative_cone_at(SpokeDegree d)
{
    // m = -1 + eps - 2j, n = -eps + 2j + k
    int eps = (d.m + 1) & 1;
    int twoj = eps - 1 - d.m;
    if (twoj < 2)
        return std::nullopt;
    int j = twoj / 2;
    int k = d.n + eps - 2 * j;
    if (k < 1)
        return std::nullopt;
    return NegConeElement{eps, j, k};
}

// The class theta = S^-1 kappa u_lam^-1 a_lam^-1 = S^-1 u_sp u_lam^-1 a^-1.
inline NegConeElement theta() { return {1, 1, 1}; }

// theta / x for a positive monomial x = u_sp^(1-eps) u_lam^(j-1) a^(k-1).
inline NegConeElement theta_over(int x_a, int x_u, int x_sp) { return {1 - x_sp, x_u + 1, x_a + 1}; }

struct HfpBasisElement {
    std::string label;
    std::optional<Monomial> positive;       // in the variant's positive algebra
    std::optional<NegConeElement> negative; // full variant only
    int spoke_class = -1;                   // spoke suspension: 0 for 1^sp, i >= 1 for the extra classes
};

class HfpHomotopy {
public:
    HfpHomotopy(std::uint32_t p, HfpVariant v) : p_(p), v_(v)
    {
        if (p % 2 == 0 || !is_prime(p))
            throw config_error("p must be an odd prime");
        switch (v) {
        case HfpVariant::a_inverted: pos_ = hfp_positive_algebra(p, true, false); break;
        case HfpVariant::a_completed_inverted: pos_ = hfp_positive_algebra(p, true, true); break;
        default: pos_ = hfp_positive_algebra(p); break;
        }
    }

    HfpVariant variant() const { return v_; }
    const AlgebraPtr& positive_algebra() const { return pos_; }

    std::vector<HfpBasisElement> basis_in_degree(SpokeDegree d) const
    {
        std::vector<HfpBasisElement> out;
        if (v_ == HfpVariant::spoke_suspension) {
            // 1^sp times the full homotopy, plus p-2 classes in each degree u_lam^j * (0,1).
            HfpHomotopy full(p_, HfpVariant::full);
            for (auto& b : full.basis_in_degree(d - kSpoke)) {
                auto c = b;
                c.label = (b.label == "1" ? std::string("1^sp") : b.label + "*1^sp");
                c.spoke_class = 0;
                out.push_back(c);
            }
            SpokeDegree r = d - kSpoke;
            if (r.m % 2 == 0 && r.n == -r.m) {
                int j = r.m / 2;
                for (std::uint32_t i = 1; i + 2 <= p_; ++i) {
                    HfpBasisElement b;
                    b.label = (j ? "u_lam^" + std::to_string(j) + "*" : std::string()) + "1~" + std::to_string(i);
                    b.spoke_class = static_cast<int>(i);
                    out.push_back(b);
                }
            }
            return out;
        }
        for (auto& m : pos_->monomials_in_degree({d, 0, 0}))
            out.push_back({pos_->label(m), m, std::nullopt, -1});
        if (v_ == HfpVariant::full)
            if (auto n = negative_cone_at(d))
                out.push_back({n->label(), std::nullopt, n, -1});
        return out;
    }

    std::size_t dim(SpokeDegree d) const { return basis_in_degree(d).size(); }

private:
    std::uint32_t p_;
    HfpVariant v_;
    AlgebraPtr pos_;
};

// Element of the full variant: positive part plus negative-cone coefficients.
struct HfpElement {
    SpokeDegree degree;
    AlgebraElement pos;
    std::map<NegConeElement, std::uint32_t> neg;

    bool is_zero() const { return pos.is_zero() && neg.empty(); }
};

inline HfpElement hfp_positive(const AlgebraPtr& A, const Monomial& m, std::int64_t c = 1)
{
    auto x = AlgebraElement::monomial(A, m, c);
    return {x.degree().total, x, {}};
}

inline HfpElement hfp_negative(const AlgebraPtr& A, const NegConeElement& n, std::uint32_t c = 1)
{
    HfpElement e{n.degree(), AlgebraElement::zero(A, {n.degree(), 0, 0}), {}};
    c %= A->p();
    if (c)
        e.neg[n] = c;
    return e;
}

// Product in the full variant. Negative times negative is zero; a positive monomial g
// acts on theta/x by theta/(x/g) when g divides x and by zero otherwise.
inline HfpElement multiply_full(const HfpElement& x, const HfpElement& y)
{
    const AlgebraPtr& A = x.pos.algebra();
    const auto& F = A->field();
    SpokeDegree d = x.degree + y.degree;
    HfpElement out{d, AlgebraElement::zero(A, {d, 0, 0}), {}};
    out.pos = x.pos * y.pos;
    out.pos = out.pos.is_zero() ? AlgebraElement::zero(A, {d, 0, 0}) : out.pos;
    auto act = [&](const AlgebraElement& P, const std::map<NegConeElement, std::uint32_t>& N, bool neg_first) {
        for (auto& [m, c] : P.terms())
            for (auto& [n, c2] : N) {
                int xa = n.k - 1, xu = n.j - 1, xs = 1 - n.eps;
                int ga = m.e[0], gu = m.e[1], gs = m.e[2];
                if (ga > xa || gu > xu || gs > xs)
                    continue;
                NegConeElement r = theta_over(xa - ga, xu - gu, xs - gs);
                std::uint32_t coef = F.mul(c, c2);
                // graded commutativity by m-parity when the negative class comes first
                if (neg_first && (gs & 1) && ((n.degree().m) & 1))
                    coef = F.neg(coef);
                auto& v = out.neg[r];
                v = F.add(v, coef);
                if (!v)
                    out.neg.erase(r);
            }
    };
    act(x.pos, y.neg, false);
    act(y.pos, x.neg, true);
    return out;
}

// Variant comparison maps on basis elements: full -> a_free kills the negative cone,
// a_free -> a_inverted -> a_completed_inverted are inclusions of monomials.
inline std::optional<Monomial> variant_map(HfpVariant from, HfpVariant to, const HfpBasisElement& b)
{
    bool ok = (from == HfpVariant::full && to == HfpVariant::a_free) ||
              (from == HfpVariant::a_free && to == HfpVariant::a_inverted) ||
              (from == HfpVariant::a_inverted && to == HfpVariant::a_completed_inverted);
    if (!ok)
        throw config_error(std::string("no comparison map ") + variant_name(from) + " -> " + variant_name(to));
    if (!b.positive)
        return std::nullopt;
    return b.positive;
}

// kappa_lambda = a * u_sp in the a-free presentation.
inline AlgebraElement kappa_lambda(const AlgebraPtr& A)
{
    return AlgebraElement::generator(A, "a") * AlgebraElement::generator(A, "u_sp");
}

// Largest r with a^r * y != 0 plus one, for a negative-cone class.
inline int a_torsion_order(const AlgebraPtr& A, const NegConeElement& n)
{
    HfpElement y = hfp_negative(A, n);
    for (int r = 1; r < 10000; ++r) {
        auto ar = hfp_positive(A, A->gen_monomial(0, r));
        if (multiply_full(ar, y).is_zero())
            return r;
    }
    throw consistency_error("a-torsion order not found");
}

}  // namespace spokess
