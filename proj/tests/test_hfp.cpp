#include <gtest/gtest.h>

#include "spokess/hfp.hpp"

using namespace spokess;

namespace {

std::vector<std::string> labels_at(const HfpHomotopy& H, SpokeDegree d)
{
    std::vector<std::string> out;
    for (auto& b : H.basis_in_degree(d))
        out.push_back(b.label);
    return out;
}

// brute force over the negative-cone exponents
int neg_cone_count(SpokeDegree d)
{
    int c = 0;
    for (int eps = 0; eps <= 1; ++eps)
        for (int j = 1; j <= 40; ++j)
            for (int k = 1; k <= 80; ++k)
                if (NegConeElement{eps, j, k}.degree() == d)
                    ++c;
    return c;
}

// brute force over a^k u^j u_sp^e with k, j >= 0
int pos_cone_count(SpokeDegree d)
{
    int c = 0;
    for (int e = 0; e <= 1; ++e)
        for (int j = 0; j <= 40; ++j)
            for (int k = 0; k <= 80; ++k)
                if (kDegA * k + kDegULambda * j + kDegUSpoke * e == d)
                    ++c;
    return c;
}

}  // namespace

TEST(Hfp, Examples)
{
    HfpHomotopy H(3, HfpVariant::full);
    EXPECT_EQ(labels_at(H, {0, 0}), (std::vector<std::string>{"1"}));
    EXPECT_EQ(labels_at(H, {-3, 3}), (std::vector<std::string>{"S^-1*u_lam^-1*a^-1"}));
    EXPECT_EQ(labels_at(H, {0, -3}), (std::vector<std::string>{"a^3"}));
    EXPECT_EQ(labels_at(H, {-2, 2}), (std::vector<std::string>{"S^-1*u_sp*u_lam^-1*a^-1"}));
    EXPECT_TRUE(H.basis_in_degree({-1, 0}).empty());
    EXPECT_TRUE(H.basis_in_degree({0, 1}).empty());
}

TEST(Hfp, ThetaIsTheDegreeOfTheDualizingClass)
{
    EXPECT_EQ(theta().degree(), (SpokeDegree{-2, 2}));
    EXPECT_EQ(theta().label(), "S^-1*u_sp*u_lam^-1*a^-1");
}

TEST(Hfp, SpokeSuspension)
{
    for (std::uint32_t p : {3u, 5u, 7u}) {
        HfpHomotopy S(p, HfpVariant::spoke_suspension);
        EXPECT_EQ(S.dim(kSpoke), p - 1);
        EXPECT_EQ(S.dim(kSpoke + kDegULambda), p - 1);
        HfpHomotopy F(p, HfpVariant::full);
        EXPECT_EQ(S.dim(kSpoke + kDegA), F.dim(kDegA));
    }
}

TEST(Hfp, ModuleStructureOnNegativeCone)
{
    auto A = hfp_positive_algebra(3);
    auto a = hfp_positive(A, A->gen_monomial(0));
    auto th_a = hfp_negative(A, theta_over(1, 0, 0));
    auto r = multiply_full(a, th_a);
    EXPECT_EQ(r.degree, (SpokeDegree{-2, 2}));
    ASSERT_EQ(r.neg.size(), 1u);
    EXPECT_EQ(r.neg.begin()->first, theta());
    EXPECT_EQ(r.neg.begin()->second, 1u);
    EXPECT_TRUE(r.pos.is_zero());

    auto u2 = hfp_positive(A, A->gen_monomial(1, 2));
    EXPECT_TRUE(multiply_full(u2, hfp_negative(A, theta_over(0, 1, 0))).is_zero());
    EXPECT_FALSE(multiply_full(hfp_positive(A, A->gen_monomial(1)), hfp_negative(A, theta_over(0, 1, 0))).is_zero());

    // negative times negative
    EXPECT_TRUE(multiply_full(hfp_negative(A, theta()), hfp_negative(A, theta_over(2, 1, 1))).is_zero());

    // u_sp reaches theta from theta/u_sp
    auto us = hfp_positive(A, A->gen_monomial(2));
    auto t0 = multiply_full(us, hfp_negative(A, theta_over(0, 0, 1)));
    ASSERT_EQ(t0.neg.size(), 1u);
    EXPECT_EQ(t0.neg.begin()->first, theta());
}

TEST(Hfp, ModuleAssociativity)
{
    auto A = hfp_positive_algebra(5);
    std::vector<Monomial> gs;
    for (int ea = 0; ea <= 3; ++ea)
        for (int eu = 0; eu <= 2; ++eu)
            for (int es = 0; es <= 1; ++es)
                gs.push_back(Monomial{{ea, eu, es}});
    NegConeElement y = theta_over(3, 2, 1);
    for (auto& g1 : gs)
        for (auto& g2 : gs) {
            auto x1 = hfp_positive(A, g1), x2 = hfp_positive(A, g2), yy = hfp_negative(A, y);
            auto lhs = multiply_full(multiply_full(x1, x2), yy);
            auto rhs = multiply_full(x1, multiply_full(x2, yy));
            EXPECT_EQ(lhs.neg, rhs.neg) << A->label(g1) << " " << A->label(g2);
        }
}

TEST(Hfp, VariantMaps)
{
    HfpHomotopy F(3, HfpVariant::full);
    auto b = F.basis_in_degree({-3, 3});
    ASSERT_EQ(b.size(), 1u);
    EXPECT_FALSE(variant_map(HfpVariant::full, HfpVariant::a_free, b[0]).has_value());
    auto c = F.basis_in_degree({0, -2});
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(*variant_map(HfpVariant::full, HfpVariant::a_free, c[0]), (Monomial{{2, 0, 0}}));
    EXPECT_TRUE(variant_map(HfpVariant::a_free, HfpVariant::a_inverted, c[0]).has_value());
    EXPECT_THROW(variant_map(HfpVariant::full, HfpVariant::a_inverted, c[0]), Error);
    EXPECT_THROW(variant_map(HfpVariant::a_inverted, HfpVariant::a_free, c[0]), Error);
}

TEST(Hfp, InvertedVariants)
{
    HfpHomotopy C(3, HfpVariant::a_completed_inverted);
    EXPECT_EQ(labels_at(C, {1, 5}), (std::vector<std::string>{"a^-6*u_sp"}));
    HfpHomotopy I(3, HfpVariant::a_inverted);
    EXPECT_EQ(labels_at(I, {1, 5}), (std::vector<std::string>{"a^-6*u_sp"}));
    EXPECT_EQ(labels_at(C, {-3, 5}), (std::vector<std::string>{"a^-2*u_lam^-2*u_sp"}));
    EXPECT_TRUE(I.basis_in_degree({-3, 5}).empty());
    // u_sp u_lam^-2 a^2 sits at (-3, 1)
    EXPECT_EQ(labels_at(C, {-3, 1}), (std::vector<std::string>{"a^2*u_lam^-2*u_sp"}));
    EXPECT_EQ(labels_at(I, {1, -5}), (std::vector<std::string>{"a^4*u_sp"}));
    // a-inverted: one class per (m, n) with m >= 0
    for (auto d : enumerate_window({0, 8, -8, 8, 0}))
        EXPECT_EQ(I.dim(d), 1u) << format_degree(d);
    EXPECT_EQ(I.dim({-1, 0}), 0u);
    // completing u_lam too: also m < 0
    for (auto d : enumerate_window({-8, 8, -8, 8, 0}))
        EXPECT_EQ(C.dim(d), 1u) << format_degree(d);
}

TEST(Hfp, TorsionOrderIsTheAExponent)
{
    auto A = hfp_positive_algebra(3);
    for (int eps = 0; eps <= 1; ++eps)
        for (int j = 1; j <= 4; ++j)
            for (int k = 1; k <= 6; ++k)
                EXPECT_EQ(a_torsion_order(A, {eps, j, k}), k);
}

TEST(Hfp, KappaLambda)
{
    auto A = hfp_positive_algebra(3);
    auto k = kappa_lambda(A);
    EXPECT_EQ(k.degree().total, (SpokeDegree{1, -2}));
    EXPECT_EQ(k.to_string(), "a*u_sp");
    EXPECT_TRUE((k * k).is_zero());
}

TEST(Hfp, DimensionsAgainstBruteForce)
{
    for (std::uint32_t p : {3u, 5u}) {
        HfpHomotopy F(p, HfpVariant::full), Z(p, HfpVariant::a_free);
        for (auto d : enumerate_window({-12, 12, -14, 14, 0})) {
            EXPECT_EQ(static_cast<int>(Z.dim(d)), pos_cone_count(d)) << format_degree(d);
            EXPECT_EQ(static_cast<int>(F.dim(d)), pos_cone_count(d) + neg_cone_count(d)) << format_degree(d);
            EXPECT_LE(neg_cone_count(d), 1);
        }
    }
}

TEST(Hfp, RejectsBadPrime)
{
    EXPECT_THROW(HfpHomotopy(4, HfpVariant::full), Error);
    EXPECT_THROW(HfpHomotopy(2, HfpVariant::full), Error);
    EXPECT_THROW(parse_variant("nope"), Error);
    EXPECT_EQ(parse_variant("a_free"), HfpVariant::a_free);
}
