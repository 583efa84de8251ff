#include <gtest/gtest.h>

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "weyltail/error.hpp"
#include "weyltail/measures.hpp"
#include "weyltail/quadrature.hpp"

using namespace wt;

namespace {
constexpr double kPi = std::numbers::pi;

double ks_uniform(std::vector<double> v, double lo, double hi)
{
    std::sort(v.begin(), v.end());
    double n = static_cast<double>(v.size()), d = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double F = (v[i] - lo) / (hi - lo);
        d = std::max({d, (i + 1) / n - F, F - i / n});
    }
    return d;
}
} // namespace

// Random123 known-answer vectors
TEST(Philox, KnownAnswers)
{
    auto a = philox4x32({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(a[0], 0x6627e8d5u);
    EXPECT_EQ(a[1], 0xe169c58du);
    EXPECT_EQ(a[2], 0xbc57ac4cu);
    EXPECT_EQ(a[3], 0x9b00dbd8u);
    auto b = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
    EXPECT_EQ(b[0], 0x408f276du);
    EXPECT_EQ(b[1], 0x41c83b0eu);
    EXPECT_EQ(b[2], 0xa20bc7c6u);
    EXPECT_EQ(b[3], 0x6d5451fdu);
    auto c = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
    EXPECT_EQ(c[0], 0xd16cfe09u);
    EXPECT_EQ(c[1], 0x94fdccebu);
    EXPECT_EQ(c[2], 0x5001e420u);
    EXPECT_EQ(c[3], 0x24126ea1u);
}

TEST(Philox, StreamsDeterministicAndDistinct)
{
    RngStream a(42, 3), b(42, 3), c(42, 4), d(43, 3);
    int same_c = 0, same_d = 0;
    for (int i = 0; i < 1000; ++i) {
        double x = a.uniform();
        ASSERT_EQ(x, b.uniform());
        same_c += x == c.uniform();
        same_d += x == d.uniform();
        ASSERT_GE(x, 0.0);
        ASSERT_LT(x, 1.0);
    }
    EXPECT_LT(same_c, 2);
    EXPECT_LT(same_d, 2);
}

TEST(Measures, BaseExamples)
{
    auto [x, y] = base_from_uniforms(0.5, 0.0);
    EXPECT_NEAR(x, 0.0, 1e-15);
    EXPECT_NEAR(y, 1.0, 1e-15);
    auto [x1, y1] = base_from_uniforms(1.0, 0.0);
    EXPECT_NEAR(x1, 0.5, 1e-15);
    EXPECT_NEAR(y1, std::sqrt(3.0) / 2, 1e-15);
}

TEST(Measures, TailProbabilityAndXMarginal)
{
    RngStream rng(2024, 0);
    const int n = 1000000, bins = 50;
    int above = 0;
    std::vector<long> counts(bins, 0);
    for (int i = 0; i < n; ++i) {
        auto [x, y] = sample_base(rng);
        ASSERT_GE(x, -0.5);
        ASSERT_LT(x, 0.5);
        ASSERT_GE(x * x + y * y, 1.0 - 1e-12);
        above += y > 3;
        int k = std::min(bins - 1, static_cast<int>((x + 0.5) * bins));
        ++counts[k];
    }
    EXPECT_NEAR(above / double(n), 1 / kPi, 0.002);
    // marginal 3/(pi sqrt(1-x^2)) has CDF (3/pi)(asin x + pi/6)
    double chi2 = 0;
    for (int k = 0; k < bins; ++k) {
        double lo = -0.5 + double(k) / bins, hi = lo + 1.0 / bins;
        double e = n * (3 / kPi) * (std::asin(hi) - std::asin(lo));
        chi2 += (counts[k] - e) * (counts[k] - e) / e;
    }
    boost::math::chi_squared dist(bins - 1);
    EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi2)), 0.01);
}

TEST(Measures, Mu0AtomsAndPhi)
{
    RngStream rng(11, 5);
    const int n = 300000;
    int atoms[3] = {0, 0, 0};
    std::vector<double> phis;
    phis.reserve(n);
    for (int i = 0; i < n; ++i) {
        auto s = sample_mu0(rng);
        ASSERT_EQ(s.tag, MeasureTag::Rational);
        ASSERT_TRUE(in_fundamental_domain(s.point, 0.0));
        const auto& p = s.point;
        if (p.xi1 == 0.0 && p.xi2 == 0.0) ++atoms[0];
        else if (p.xi1 == 0.5 && p.xi2 == 0.0) ++atoms[1];
        else if (p.xi1 == 0.0 && p.xi2 == 0.5) ++atoms[2];
        else FAIL() << "xi off the atom set";
        phis.push_back(p.phi);
    }
    for (int a : atoms) EXPECT_NEAR(a / double(n), 1.0 / 3, 0.005);
    EXPECT_LT(ks_uniform(phis, 0, kPi), 1.63 / std::sqrt(double(n)));
}

TEST(Measures, MuXiUniformAndMeanInverseY)
{
    RngStream rng(99, 1);
    const int n = 1000000;
    std::vector<double> xa, xb;
    xa.reserve(n);
    xb.reserve(n);
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n; ++i) {
        auto s = sample_mu(rng);
        ASSERT_TRUE(in_fundamental_domain(s.point, 0.0));
        xa.push_back(s.point.xi1);
        xb.push_back(s.point.xi2);
        double v = 1 / s.point.y;
        sum += v;
        sum2 += v * v;
    }
    EXPECT_LT(ks_uniform(xa, -0.5, 0.5), 1.63 / std::sqrt(double(n)));
    EXPECT_LT(ks_uniform(xb, -0.5, 0.5), 1.63 / std::sqrt(double(n)));
    double mean = sum / n, se = std::sqrt((sum2 / n - mean * mean) / n);
    // oracle: (3/pi) int int y^-3 over the modular domain, y = 1/v
    auto inner = [](double x) {
        QuadOptions o;
        o.abs_tol = 1e-13;
        return integrate_gk<double>([](double v) { return v; }, 0.0, 1 / std::sqrt(1 - x * x), o).value;
    };
    QuadOptions o;
    o.abs_tol = 1e-12;
    double oracle = 3 / kPi * integrate_gk<double>(inner, -0.5, 0.5, o).value;
    EXPECT_LT(std::abs(mean - oracle), 3 * se);
}

TEST(Measures, DensityValues)
{
    ThetaPoint a{0.1, 1.0, 0.3, 0.2, -0.1}, b{0.1, 2.0, 0.3, 0.2, -0.1};
    EXPECT_NEAR(density(a, MeasureTag::Irrational) / density(b, MeasureTag::Irrational), 4.0, 1e-14);
    ThetaPoint atom{0.1, 2.0, 0.3, 0.5, 0.0};
    EXPECT_NEAR(density(atom, MeasureTag::Rational), 1 / (4 * kPi * kPi), 1e-16);
    EXPECT_EQ(density(a, MeasureTag::Rational), 0.0);
    ThetaPoint out{0.1, 0.5, 0.3, 0.0, 0.0};
    EXPECT_THROW(density(out, MeasureTag::Irrational), Error);
    ThetaPoint out2{0.6, 2.0, 0.3, 0.0, 0.0};
    EXPECT_THROW(density(out2, MeasureTag::Rational), Error);
}

TEST(Measures, TotalMassOne)
{
    // phi integrates to pi, xi to 1 (or 3 atoms); y = 1/v makes the y-integrand constant
    auto mass = [](MeasureTag tag, double xi1, double xi2) {
        auto inner = [&](double x) {
            auto f = [&](double v) {
                ThetaPoint p{x, 1 / v, 1.0, xi1, xi2};
                return density(p, tag) / (v * v);
            };
            QuadOptions o;
            o.abs_tol = 1e-13;
            return integrate_gk<double>(f, 1e-300, 1 / std::sqrt(1 - x * x) * (1 - 1e-15), o).value;
        };
        QuadOptions o;
        o.abs_tol = 1e-12;
        return kPi * integrate_gk<double>(inner, -0.5, 0.5 - 1e-15, o).value;
    };
    EXPECT_NEAR(mass(MeasureTag::Irrational, 0.1, 0.2), 1.0, 1e-6);
    double m0 = mass(MeasureTag::Rational, 0, 0) + mass(MeasureTag::Rational, 0.5, 0) + mass(MeasureTag::Rational, 0, 0.5);
    EXPECT_NEAR(m0, 1.0, 1e-6);
}

TEST(Measures, CsvAndDeterminism)
{
    auto draw = [](std::uint64_t sid) {
        RngStream r(7, sid);
        std::vector<MeasureSample> v;
        for (int i = 0; i < 50; ++i) v.push_back(sample_mu(r));
        return v;
    };
    std::ostringstream a, b;
    write_samples_csv(a, draw(2));
    write_samples_csv(b, draw(2));
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.str().rfind("x,y,phi,xi1,xi2,tag\n", 0), 0u);
    std::istringstream in(a.str());
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    auto v = draw(2);
    double x = std::stod(line.substr(0, line.find(',')));
    EXPECT_EQ(x, v[0].point.x);
}
