#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "weyltail/weyl.hpp"

using namespace wt;

namespace {

// per-term evaluation, phase reduced in binary128
cplx naive(long n0, long n1, double x, double c, double a, const Window* f = nullptr, long N = 1)
{
    long double re = 0, im = 0;
    const long double tp = 2 * std::numbers::pi_v<long double>;
    for (long n = n0; n <= n1; ++n) {
        __float128 nq = n;
        __float128 tq = (nq * nq / 2 + (__float128)c * nq) * (__float128)x + (__float128)a * nq;
        tq -= (__float128)(long long)tq;
        long double th = (long double)tq;
        th -= std::floor(th);
        long double w = f ? (*f)(static_cast<double>(n) / N) : 1.0L;
        re += w * std::cos(tp * th);
        im += w * std::sin(tp * th);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

} // namespace

TEST(Weyl, Examples)
{
    EXPECT_NEAR(std::abs(weyl_sum(1000, 0, 0, 0) - 1000.0), 0.0, 1e-9);
    EXPECT_LT(std::abs(weyl_sum(2, 1, 0, 0)), 1e-14);
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 1000; ++i) {
        double x = U(gen);
        cplx s = weyl_sum(1, x);
        EXPECT_NEAR(std::abs(s), 1.0, 1e-15);
        EXPECT_LT(std::abs(s - std::polar(1.0, std::numbers::pi * x)), 1e-14);
    }
}

TEST(Weyl, RecurrenceMatchesNaive)
{
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 1000; ++i) {
        long N = 1 + static_cast<long>(U(gen) * 10000);
        double x = U(gen), c = U(gen), a = 4 * U(gen) - 2;
        cplx s = weyl_sum(N, x, c, a);
        cplx r = naive(1, N, x, c, a);
        EXPECT_LE(std::abs(s - r), 1e-9 * std::max(1.0, std::abs(r)));
        EXPECT_LE(std::abs(s), N + 1e-9);
    }
}

TEST(Weyl, LongSumStaysAccurate)
{
    // N = 10^6 against long double per-term evaluation
    long N = 1000000;
    double x = 0.3183098861837907, c = 0.2, a = 0.7071067811865476;
    cplx s = weyl_sum(N, x, c, a), r = naive(1, N, x, c, a);
    EXPECT_LE(std::abs(s - r), 1e-9 * std::max(1.0, std::abs(r)));
}

TEST(Weyl, WeightedSums)
{
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> U(0, 1);
    Window chi = Window::indicator(1.0);
    for (int i = 0; i < 100; ++i) {
        long N = 10 + static_cast<long>(U(gen) * 2000);
        double x = U(gen), c = U(gen), a = U(gen);
        cplx w = weighted_weyl_sum(chi, N, x, c, a);
        cplx s = weyl_sum(N, x, c, a);
        // chi(1) = 0 drops the n = N term
        EXPECT_LE(std::abs(w - s), 1.0 + 1e-9);
        EXPECT_LT(std::abs(w + std::polar(1.0, 2 * std::numbers::pi * weyl_phase(N, x, c, a)) - s), 1e-9);
        for (int J = 1; J <= 6; ++J) {
            Window f = dyadic_truncation(1, J);
            cplx wf = weighted_weyl_sum(f, N, x, c, a);
            EXPECT_LE(std::abs(wf - s), N * std::ldexp(1.0, -J) + 2 + 1e-9);
            cplx r = naive(0, N, x, c, a, &f, N);
            EXPECT_LT(std::abs(wf - r), 1e-9 * std::max(1.0, std::abs(r)));
        }
    }
    Window g = Window::gaussian();
    cplx v = weighted_weyl_sum(g, 100, 0.0);
    EXPECT_NEAR(v.real(), 100.0, 1e-6 * 100);
    cplx r = naive(-2000, 2000, 0.37, 0.1, 0.2, &g, 100);
    EXPECT_LT(std::abs(weighted_weyl_sum(g, 100, 0.37, 0.1, 0.2) - r), 1e-10);
}

TEST(Weyl, ProductStatistic)
{
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 50; ++i) {
        long N = 1 + static_cast<long>(U(gen) * 500);
        double x = U(gen);
        cplx p = product_statistic(N, 1.0, x);
        EXPECT_NEAR(std::abs(p), std::norm(weyl_sum(N, x)) / N, 1e-9);
        EXPECT_NEAR(product_statistic(N, 1.7, 0.0).real(), static_cast<double>(scaled_length(N, 1.7)), 1e-9);
    }
    EXPECT_EQ(scaled_length(3, 2.0), 6);
    EXPECT_EQ(scaled_length(10, 0.3 * 10 / 3), 10);
    cplx direct = naive(1, 3, 0.2, 0, 0) * std::conj(naive(1, 6, 0.2, 0, 0)) / 3.0;
    EXPECT_LT(std::abs(product_statistic(3, 2.0, 0.2) - direct), 1e-13);
}
