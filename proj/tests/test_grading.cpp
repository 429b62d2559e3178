#include <gtest/gtest.h>

#include <random>

#include "spokess/grading.hpp"

using namespace spokess;

TEST(Grading, DegreeAdd)
{
    EXPECT_EQ((SpokeDegree{0, -1} + SpokeDegree{0, -1}), (SpokeDegree{0, -2}));
    EXPECT_EQ((SpokeDegree{0, -2}), -kLambda);  // a^2 has the degree of a_lambda
    EXPECT_EQ((SpokeDegree{1, -1} + SpokeDegree{0, 0}), (SpokeDegree{1, -1}));
    EXPECT_EQ((SpokeDegree{2, -2} + SpokeDegree{1, 1}), (SpokeDegree{3, -1}));
    EXPECT_EQ(kSpoke + kSpoke, kLambda);
}

TEST(Grading, VirtualDim)
{
    EXPECT_EQ((SpokeDegree{0, -1}).virtual_dim(), -1);
    for (int p : {3, 5, 7})
        EXPECT_EQ((SpokeDegree{2, 2 * (p - 1)}).virtual_dim(), 2 * p);
    EXPECT_EQ((SpokeDegree{1, 1}).virtual_dim(), 2);
}

TEST(Grading, EnumerateWindow)
{
    auto a = enumerate_window({0, 0, 0, 0, 0});
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0], (SpokeDegree{0, 0}));
    auto b = enumerate_window({0, 1, -1, 0, 0});
    std::vector<SpokeDegree> expect{{0, -1}, {0, 0}, {1, -1}, {1, 0}};
    EXPECT_EQ(b, expect);
    EXPECT_EQ(enumerate_window({-2, 2, -2, 2, 0}).size(), 25u);
    EXPECT_EQ(enumerate_window_s({-2, 2, -2, 2, 3}).size(), 100u);
}

TEST(Grading, GroupLaws)
{
    std::mt19937 g(1);
    std::uniform_int_distribution<int> u(-50, 50);
    for (int i = 0; i < 200; ++i) {
        SpokeDegree a{u(g), u(g)}, b{u(g), u(g)}, c{u(g), u(g)};
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a + (SpokeDegree{0, 0}), a);
        EXPECT_EQ(a + (-a), (SpokeDegree{0, 0}));
        EXPECT_EQ((a + b).virtual_dim(), a.virtual_dim() + b.virtual_dim());
    }
}

TEST(Grading, DifferentialStep)
{
    TriDegree src{{3, 4}, 1, 2};
    auto t = differential_target(src, 2);
    EXPECT_EQ(t.total, (SpokeDegree{2, 4}));
    EXPECT_EQ(t.s, 2);
    EXPECT_EQ(t.f, 4);
    EXPECT_TRUE(is_differential_step(src, t, 2));
    EXPECT_FALSE(is_differential_step(src, t, 1));
    EXPECT_EQ(internal_degree(src), internal_degree(t));
}

TEST(Grading, TextRoundTrip)
{
    EXPECT_EQ(format_degree({2, -2}), "2-2@");
    EXPECT_EQ(format_degree({1, -1}), "1-1@");
    EXPECT_EQ(format_degree({0, 0}), "0+0@");
    EXPECT_EQ(parse_degree("-3+3@"), (SpokeDegree{-3, 3}));
    EXPECT_EQ(format_tri({{5, 0}, 1, 1}), "5+0@|1|1");
    for (int m = -5; m <= 5; ++m)
        for (int n = -5; n <= 5; ++n) {
            SpokeDegree d{m, n};
            EXPECT_EQ(parse_degree(format_degree(d)), d);
            TriDegree t{d, (m + 5) % 4, (n + 5) % 3};
            EXPECT_EQ(parse_tri(format_tri(t)), t);
        }
    EXPECT_THROW(parse_degree("2,-2"), Error);
    EXPECT_THROW(parse_tri("2-2@|1"), Error);
    auto w = parse_window("-12:2:-14:14");
    EXPECT_EQ(w.m_min, -12);
    EXPECT_EQ(w.n_max, 14);
    EXPECT_EQ(format_window(w), "-12:2:-14:14");
    EXPECT_THROW(parse_window("3:1:0:0"), Error);
    EXPECT_THROW(parse_window("1:2:3"), Error);
}
