#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "weyltail/error.hpp"
#include "weyltail/windows.hpp"

using namespace wt;

namespace {

// brute force norms on a fine grid (trapezoid rule); TV from successive differences
Norms brute(const Window& f, double lo, double hi, int n = 100000)
{
    Norms r;
    double h = (hi - lo) / n, prev = f(lo);
    for (int i = 0; i <= n; ++i) {
        double v = f(lo + i * h);
        double wgt = (i == 0 || i == n) ? 0.5 : 1.0;
        r.L1 += wgt * std::abs(v) * h;
        r.L2 += wgt * v * v * h;
        r.Linf = std::max(r.Linf, std::abs(v));
        if (i > 0) r.TV += std::abs(v - prev);
        prev = v;
    }
    r.L2 = std::sqrt(r.L2);
    return r;
}

} // namespace

TEST(Windows, TrapezoidValues)
{
    Window T = trapezoid(0.4, 0.9, 0.2, 0.1);
    EXPECT_EQ(T(0.4 - 0.2), 0.0);
    EXPECT_DOUBLE_EQ(T(0.4), 1.0);
    EXPECT_DOUBLE_EQ(T(0.9), 1.0);
    EXPECT_EQ(T(1.0 + 1e-12), 0.0);
    Window D = delta_window();
    EXPECT_NEAR(D(0.25), 0.5, 1e-15);
    EXPECT_THROW(trapezoid(1, 0, 0.1, 0.1), Error);
}

TEST(Windows, TrapezoidContinuity)
{
    Window T = trapezoid(0.3, 1.1, 0.25, 0.4);
    const auto& p = T.poly();
    for (double J : p.jumps()) EXPECT_LE(std::abs(J), 1e-12);
    // first derivative is continuous too
    for (double J : p.derivative().jumps()) EXPECT_LE(std::abs(J), 1e-12);
}

TEST(Windows, TrapezoidL1)
{
    for (auto [a, b, e, d] : {std::array<double, 4>{0, 1, 0.1, 0.3}, {2, 2, 0.5, 0.25}, {-1, 3, 0, 1}}) {
        Window T = trapezoid(a, b, e, d);
        EXPECT_NEAR(T.norms().L1, (b - a) + (e + d) / 2, 1e-13);
        EXPECT_NEAR(T.norms().Linf, 1.0, 1e-15);
        EXPECT_NEAR(T.norms().TV, 2.0, 1e-13);
    }
}

TEST(Windows, DyadicExamples)
{
    Window F = dyadic_truncation(1, 1);
    Window T = trapezoid(1.0 / 3, 2.0 / 3, 1.0 / 6, 1.0 / 6);
    for (int i = 0; i <= 1000; ++i) {
        double w = -0.1 + 1.2 * i / 1000;
        EXPECT_NEAR(F(w), T(w), 1e-14);
    }
    for (double s : {1.0, 2.0, 5.0})
        for (int J = 1; J <= 8; ++J) {
            Window full = dyadic_truncation(s, J);
            Window L = dyadic_truncation(s, J, DyadicPart::Left);
            Window R = dyadic_truncation(s, J, DyadicPart::Right);
            EXPECT_NEAR(full.norms().L1, s * (1 - std::ldexp(1.0, -J)), 1e-12);
            // || chi_s - chi_s^(J) ||_1 = s 2^{-J}, since 0 <= chi^(J) <= chi_s
            EXPECT_NEAR(s - full.norms().L1, s * std::ldexp(1.0, -J), 1e-12);
            for (int i = 0; i <= 1000; ++i) {
                double w = -0.1 + (s + 0.2) * i / 1000;
                EXPECT_NEAR(L(w) + R(w), full(w), 1e-12);
            }
        }
}

TEST(Windows, PartitionSum)
{
    EXPECT_NEAR(partition_sum(0.5, 2), 1.0, 1e-15);
    for (int J = 1; J < 10; ++J) EXPECT_EQ(partition_sum(0.0, J), 0.0);
    EXPECT_NEAR(partition_sum(1.0 / 3, 1), 1.0, 1e-15);
    const int n = 10000;
    const double lo = std::ldexp(1.0, -10), hi = 1 - lo;
    for (int i = 0; i <= n; ++i) {
        double w = lo + (hi - lo) * i / n;
        EXPECT_NEAR(partition_sum(w, 12), 1.0, 1e-12) << w;
    }
}

TEST(Windows, DilateIdentities)
{
    Window chi = Window::indicator(1.0);
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> U(-1, 7);
    for (double s : {1.0, 2.5, 5.0}) {
        Window d = scale(dilate(chi, 2 * std::log(s)), std::sqrt(s));
        Window ref = Window::indicator(s);
        for (int i = 0; i < 1000; ++i) {
            double w = U(gen);
            EXPECT_NEAR(d(w), ref(w), 1e-12);
        }
    }
    Window T = trapezoid(0.2, 0.7, 0.1, 0.2);
    Window same = dilate(T, 0.0);
    for (int i = 0; i < 100; ++i) {
        double w = U(gen);
        EXPECT_NEAR(same(w), T(w), 1e-15);
    }
    // 2^{j/2} f(2^j w) is the flow by -2 j log 2
    for (int j = 0; j < 4; ++j) {
        Window d = dilate(T, -2.0 * j * std::log(2.0));
        for (int i = 0; i < 200; ++i) {
            double w = U(gen) / 8;
            EXPECT_NEAR(d(w), std::pow(2.0, j / 2.0) * T(std::ldexp(w, j)), 1e-12);
        }
    }
}

TEST(Windows, DyadicAsDeltaBlocks)
{
    // chi^(J) = sum_{j<J} [Delta(2^j w) + Delta(2^j (1-w))], and chi_L^(J) = sum_{j<J} Delta(2^j w)
    for (int J = 1; J <= 6; ++J) {
        Window full = dyadic_truncation(1, J), L = dyadic_truncation(1, J, DyadicPart::Left);
        Window blocks = Window::piecewise({});
        Window D = delta_window();
        for (int j = 0; j < J; ++j) blocks = sum(blocks, scale(dilate(D, -2.0 * j * std::log(2.0)), std::pow(2.0, -j / 2.0)));
        for (int i = 0; i <= 2000; ++i) {
            double w = -0.1 + 1.2 * i / 2000;
            EXPECT_NEAR(blocks(w), L(w), 1e-12);
            EXPECT_NEAR(partition_sum(w, J), full(w), 1e-12);
        }
    }
}

TEST(Windows, MirrorAndSum)
{
    Window D = delta_window(), Dm = delta_minus_window();
    for (int i = 0; i <= 1000; ++i) {
        double w = -1 + 2.0 * i / 1000;
        EXPECT_NEAR(Dm(w), D(-w), 1e-14);
    }
    Window S = sum(D, Dm);
    EXPECT_NEAR(S.norms().L1, 2 * D.norms().L1, 1e-13);
}

TEST(Windows, CachedNormsMatchBruteForce)
{
    std::vector<Window> ws = {delta_window(), dyadic_truncation(2, 3), dyadic_truncation(1, 5, DyadicPart::Left),
                              trapezoid(0.1, 0.4, 0.3, 0.05)};
    for (const auto& f : ws) {
        Norms b = brute(f, f.poly().lo() - 0.01, f.poly().hi() + 0.01);
        EXPECT_NEAR(f.norms().L1, b.L1, 1e-8);
        EXPECT_NEAR(f.norms().L2, b.L2, 1e-8);
        EXPECT_NEAR(f.norms().Linf, b.Linf, 1e-8);
        EXPECT_NEAR(f.norms().TV, b.TV, 1e-8);
    }
    Window chi = Window::indicator(1.5);
    EXPECT_NEAR(chi.norms().L1, 1.5, 1e-15);
    EXPECT_NEAR(chi.norms().L2, std::sqrt(1.5), 1e-15);
    EXPECT_NEAR(chi.norms().TV, 2.0, 1e-15);
    Window g = Window::gaussian(1.7, 0.8);
    Norms b = brute(g, -8, 8);
    EXPECT_NEAR(g.norms().L1, b.L1, 1e-8);
    EXPECT_NEAR(g.norms().L2, b.L2, 1e-8);
    EXPECT_NEAR(g.norms().TV, b.TV, 1e-8);
    Window h = Window::hermite1(0.6, -1.3);
    b = brute(h, -10, 10);
    EXPECT_NEAR(h.norms().L1, b.L1, 1e-8);
    EXPECT_NEAR(h.norms().L2, b.L2, 1e-8);
    EXPECT_NEAR(h.norms().Linf, b.Linf, 1e-8);
    EXPECT_NEAR(h.norms().TV, b.TV, 1e-8);
}

TEST(Windows, SpNorms)
{
    for (double s : {1.0, 3.0, 4.5, 7.0, 20.0}) {
        EXPECT_NEAR(sp_norm(Window::indicator(s)), std::max(2 * s, 9.0), 1e-12);
        EXPECT_NEAR(sp_norm(Window::indicator(0, s / 2)), std::max(s, 9.0), 1e-12);
        for (int J = 1; J <= 6; ++J)
            EXPECT_NEAR(sp_norm(dyadic_truncation(s, J)), std::max(2 * (1 - std::ldexp(1.0, -J)) * s, 9.0), 1e-12);
    }
    EXPECT_THROW(sp_norm(Window::gaussian()), Error);
}

TEST(Windows, HNormsOfDyadicTruncation)
{
    for (double s : {1.0, 2.0, 5.0})
        for (int J = 1; J <= 6; ++J) {
            Window f = dyadic_truncation(s, J);
            double tJ = std::ldexp(1.0, J);
            EXPECT_NEAR(h_norm(f, 0, 1, NormKind::L1), 2.0, 1e-12);
            EXPECT_NEAR(h_norm(f, 0, 2, NormKind::L1), 24 * tJ / s, 1e-9);
            EXPECT_NEAR(h_norm(f, 1, 0, NormKind::L1), 0.5 * s * s * (1 - 1 / tJ), 1e-11);
            EXPECT_NEAR(h_norm(f, 1, 1, NormKind::L1), s, 1e-11);
            EXPECT_LE(h_norm(f, 2, 0, NormKind::L1), s * s * s / 3);
            EXPECT_LE(h_norm(f, 1, 0, NormKind::Sp), std::max(s * s, 9 * s) + 1e-12);
            EXPECT_LE(h_norm(f, 2, 0, NormKind::Sp), std::max(2 * s * s * s / 3, 9 * s * s) + 1e-12);

            Window L = dyadic_truncation(s, J, DyadicPart::Left);
            EXPECT_NEAR(h_norm(L, 1, 0, NormKind::L1), 55.0 / 432 * s * s * (1 - 1 / (tJ * tJ)), 1e-11);
            EXPECT_NEAR(h_norm(L, 1, 1, NormKind::L1), 0.5 * s * (1 + 1 / tJ), 1e-11);
            EXPECT_NEAR(h_norm(L, 0, 2, NormKind::L1), 12 / s * (1 + tJ), 1e-9);
            // printed with 2^{3J}; the computed value carries 2^{-3J}
            EXPECT_NEAR(h_norm(L, 2, 0, NormKind::L1), 19.0 / 432 * s * s * s * (1 - 1 / (tJ * tJ * tJ)), 1e-11);
            EXPECT_NEAR(h_norm(L, 2, 1, NormKind::L1), 55.0 / 216 * s * s * (1 + 1 / (tJ * tJ)), 1e-11);
            EXPECT_LE(h_norm(L, 0, 0, NormKind::Sp), std::max(s, 9.0) + 1e-12);
            EXPECT_LE(h_norm(L, 1, 0, NormKind::Sp), std::max(55.0 / 216 * s * s, 23.0 / 4 * s) + 1e-12);
            EXPECT_LE(h_norm(L, 2, 0, NormKind::Sp), std::max(19.0 / 216 * s * s * s, 293.0 / 96 * s * s) + 1e-12);
        }
}

TEST(Windows, HNormDiscontinuous)
{
    Window chi = Window::indicator(2.0);
    EXPECT_NEAR(h_norm(chi, 0, 1, NormKind::L1), 2.0, 1e-15);
    EXPECT_NEAR(h_norm(chi, 1, 1, NormKind::L1), 2.0, 1e-15);
    EXPECT_THROW(h_norm(chi, 0, 2, NormKind::L1), Error);
}
