#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "weyltail/error.hpp"
#include "weyltail/group.hpp"

using namespace wt;

namespace {

GroupElement random_element(std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> U(0, 1);
    IwasawaCoords k{4 * U(gen) - 2, std::exp(3 * U(gen) - 1.5), 2 * std::numbers::pi * U(gen)};
    return from_iwasawa(k, 4 * U(gen) - 2, 4 * U(gen) - 2);
}

} // namespace

TEST(Group, IdentityAndInverse)
{
    std::mt19937_64 gen(1);
    for (int i = 0; i < 1000; ++i) {
        GroupElement g = random_element(gen);
        EXPECT_LT(max_entry_diff(compose(g, identity()), g), 1e-15);
        EXPECT_LT(max_entry_diff(compose(g, inverse(g)), identity()), 1e-12);
        EXPECT_LT(max_entry_diff(compose(inverse(g), g), identity()), 1e-12);
    }
}

TEST(Group, Associativity)
{
    std::mt19937_64 gen(2);
    for (int i = 0; i < 1000; ++i) {
        GroupElement a = random_element(gen), b = random_element(gen), c = random_element(gen);
        EXPECT_LT(max_entry_diff(compose(compose(a, b), c), compose(a, compose(b, c))), 1e-11);
    }
}

TEST(Group, DeterminantAfterLongChain)
{
    std::mt19937_64 gen(3);
    GroupElement g = identity();
    for (int i = 0; i < 1000; ++i) {
        GroupElement h = random_element(gen);
        // keep the entries bounded so that 1e-12 is meaningful
        IwasawaCoords k = iwasawa(h);
        k.x = 0.1 * k.x;
        k.y = 1.0 + 0.1 * (k.y - 1.0) / (1.0 + k.y);
        g = compose(from_iwasawa(k), g);
        IwasawaCoords kg = iwasawa(g);
        g = from_iwasawa({0.5 * std::tanh(kg.x), 1.0, kg.phi}, 0, 0);
        EXPECT_NEAR(det(g), 1.0, 1e-12);
    }
}

TEST(Group, TranslationsCommute)
{
    GroupElement g = compose(special_element(Special::Gamma3), special_element(Special::Gamma4));
    EXPECT_EQ(g.xi1, 1.0);
    EXPECT_EQ(g.xi2, 1.0);
    EXPECT_LT(max_entry_diff(g, GroupElement{1, 0, 0, 1, 1, 1}), 0.0 + 1e-300);
}

TEST(Group, IwasawaExamples)
{
    auto k = iwasawa(identity());
    EXPECT_EQ(k.x, 0.0);
    EXPECT_EQ(k.y, 1.0);
    EXPECT_EQ(k.phi, 0.0);
    k = iwasawa(GroupElement{2, 0, 0, 0.5, 0, 0});
    EXPECT_NEAR(k.x, 0, 1e-15);
    EXPECT_NEAR(k.y, 4, 1e-14);
    EXPECT_NEAR(k.phi, 0, 1e-15);
    double p = std::numbers::pi / 3;
    k = iwasawa(GroupElement{std::cos(p), -std::sin(p), std::sin(p), std::cos(p), 0, 0});
    EXPECT_NEAR(k.x, 0, 1e-15);
    EXPECT_NEAR(k.y, 1, 1e-15);
    EXPECT_NEAR(k.phi, p, 1e-15);
    EXPECT_THROW(iwasawa(GroupElement{2, 0, 0, 1, 0, 0}), Error);
}

TEST(Group, IwasawaRoundTrip)
{
    std::mt19937_64 gen(4);
    for (int i = 0; i < 1000; ++i) {
        GroupElement g = random_element(gen);
        IwasawaCoords k = iwasawa(g);
        EXPECT_GT(k.y, 0);
        EXPECT_GE(k.phi, 0);
        EXPECT_LT(k.phi, 2 * std::numbers::pi);
        EXPECT_LT(max_entry_diff(from_iwasawa(k, g.xi1, g.xi2), g), 1e-12);
    }
}

TEST(Group, SpecialElements)
{
    EXPECT_LT(max_entry_diff(special_element(Special::Geodesic, 0), identity()), 1e-16);
    GroupElement g1 = special_element(Special::Gamma1);
    GroupElement g4 = compose(compose(g1, g1), compose(g1, g1));
    EXPECT_LT(max_entry_diff(g4, identity()), 1e-16);
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> U(-3, 3);
    for (int i = 0; i < 100; ++i) {
        double u = U(gen), t = U(gen);
        auto k = iwasawa(compose(special_element(Special::Horocycle, u), special_element(Special::Geodesic, t)));
        EXPECT_NEAR(k.x, u, 1e-12);
        EXPECT_NEAR(k.y, std::exp(-t), 1e-12 * std::exp(-t));
        EXPECT_NEAR(k.phi, 0, 1e-15);
    }
}

TEST(Group, HorocycleLift)
{
    EXPECT_LT(max_entry_diff(horocycle_lift(0, 0, 0, 0), identity()), 1e-16);
    GroupElement g = horocycle_lift(0.3, 1.2, 0.7, 0.25);
    EXPECT_EQ(g.xi1, 0.25 + 0.7 * 0.3);
    EXPECT_EQ(g.xi2, 0.0);
    auto k = iwasawa(horocycle_lift(0.3, 1.2, 0, 0));
    EXPECT_NEAR(k.x, 0.3, 1e-14);
    EXPECT_NEAR(k.y, std::exp(-1.2), 1e-14);
}

TEST(Group, ReduceAlreadyReduced)
{
    GroupElement g = from_iwasawa({0.1, 1.5, 1.0}, 0.2, -0.3);
    auto r = reduce_to_fundamental(g);
    EXPECT_TRUE(r.word.empty());
    EXPECT_LT(max_entry_diff(r.reduced, g), 1e-15);
}

TEST(Group, ReduceTranslation)
{
    GroupElement g{1, 0, 0, 1, 3, -2};
    auto r = reduce_to_fundamental(g);
    EXPECT_EQ(r.reduced.xi1, 0.0);
    EXPECT_EQ(r.reduced.xi2, 0.0);
    for (const auto& s : r.word) EXPECT_TRUE(s.gen == Generator::G3 || s.gen == Generator::G4);
}

TEST(Group, ReductionProperties)
{
    std::mt19937_64 gen(6);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 1000; ++i) {
        GroupElement g = horocycle_lift(U(gen), 5 + 15 * U(gen), 2 * U(gen) - 1, U(gen));
        auto r = reduce_to_fundamental(g);
        EXPECT_TRUE(in_fundamental_domain(r.reduced));
        EXPECT_LT(max_entry_diff(apply_word(r.word, g), r.reduced), 1e-9);
        auto again = reduce_to_fundamental(r.reduced);
        EXPECT_TRUE(again.word.empty());
    }
}

TEST(Group, RationalOrbitLandsOnAtoms)
{
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 1000; ++i) {
        auto r = reduce_to_fundamental(horocycle_lift(U(gen), 5 + 15 * U(gen), 0, 0));
        double a = r.reduced.xi1, b = r.reduced.xi2;
        bool atom = (std::abs(a) < 1e-9 && std::abs(b) < 1e-9) || (std::abs(a - 0.5) < 1e-9 && std::abs(b) < 1e-9) ||
                    (std::abs(a) < 1e-9 && std::abs(b - 0.5) < 1e-9);
        EXPECT_TRUE(atom) << a << " " << b;
    }
}

TEST(Group, RationalOrbitAtT15)
{
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 200; ++i) {
        auto r = reduce_to_fundamental(horocycle_lift(U(gen), 15, 0, 0));
        double a = r.reduced.xi1, b = r.reduced.xi2;
        double d = std::min({std::hypot(a, b), std::hypot(a - 0.5, b), std::hypot(a, b - 0.5)});
        EXPECT_LT(d, 1e-9);
    }
}
