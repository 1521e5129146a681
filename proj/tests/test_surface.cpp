#include <teich/catalog.hpp>
#include <teich/surface.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace teich;

namespace {

const double kInvPhi = std::numbers::phi - 1;
constexpr double kSqrt5 = 2.2360679774997896964;
constexpr double kHalfLog2 = 0.34657359027997265471;

OrigamiRef l22() { return catalog_origami("L22"); }

WeightedSurface<Rational> unit() { return WeightedSurface<Rational>::unit(l22()); }

WeightedSurface<double> golden() { return WeightedSurface<double>(l22(), {1, kInvPhi}, {1, kInvPhi}); }

CurveFamily defining(const WeightedSurface<double>& x) {
    return {defining_foliation(x, Side::Vertical), defining_foliation(x, Side::Horizontal)};
}

} // namespace

TEST(Area, Unit) { EXPECT_EQ(area(unit()), Rational(3)); }

TEST(Area, Golden) { EXPECT_NEAR(area(golden()), kSqrt5, 1e-12); }

TEST(FoliationExt, UnitAndScaled) {
    const auto x = unit();
    EXPECT_EQ(foliation_ext(x, Side::Vertical, Rational(1)), Rational(3));
    EXPECT_EQ(foliation_ext(x, Side::Vertical, Rational(2)), Rational(12));
    EXPECT_NEAR(foliation_ext(golden(), Side::Vertical, 1.0), kSqrt5, 1e-12);
}

TEST(FoliationExt, ProportionalMulticurve) {
    const auto x = unit();
    auto f = WeightedMulticurve<Rational>::from_dense(x.host(), Side::Vertical, {Rational(1, 2), Rational(1, 2)});
    EXPECT_EQ(foliation_ext(x, f), Rational(3, 4));
    auto g = WeightedMulticurve<Rational>::from_dense(x.host(), Side::Vertical, {1, 2});
    EXPECT_THROW(foliation_ext(x, g), InvalidInput);
}

TEST(CurveExtBounds, CoreA1) {
    const auto x = unit();
    const auto b = curve_ext_bounds(x, WeightedMulticurve<Rational>::core(x.host(), "A1"));
    EXPECT_NEAR(b.lo, 4.0 / 3, 1e-13);
    EXPECT_NEAR(b.hi, 2.0, 1e-13);
    EXPECT_LE(b.lo, 4.0 / 3);
    EXPECT_GE(b.hi, 2.0);
}

TEST(CurveExtBounds, FoliationInside) {
    const auto x = unit();
    const auto b = curve_ext_bounds(x, defining_foliation(x, Side::Vertical));
    EXPECT_TRUE(b.contains(3.0));
    EXPECT_NEAR(b.lo, 3, 1e-13);
    EXPECT_NEAR(b.hi, 3, 1e-13);
}

TEST(CurveExtBounds, OrderedOnRandomSurfaces) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> w(0.1, 4);
    auto o = catalog_origami("eierlegende");
    for (int k = 0; k < 50; ++k) {
        std::vector<double> h(o->cylinder_count(Side::Horizontal)), v(o->cylinder_count(Side::Vertical));
        for (double& e : h)
            e = w(rng);
        for (double& e : v)
            e = w(rng);
        WeightedSurface<double> x(o, h, v);
        for (const auto& c : all_cores(o)) {
            const auto b = curve_ext_bounds(x, c);
            EXPECT_LE(b.lo, b.hi);
        }
    }
}

TEST(QcUpper, WidthDoubling) {
    const auto x = WeightedSurface<double>::unit(l22());
    EXPECT_NEAR(qc_upper(x, x.scaled(2, 1)), kHalfLog2, 1e-13);
    EXPECT_GE(qc_upper(x, x.scaled(2, 1)), kHalfLog2);
    EXPECT_EQ(qc_upper(x, x), 0);
}

TEST(QcUpper, Flow) {
    const auto x = WeightedSurface<double>::unit(l22());
    for (double t : {0.25, 1.0, 3.0})
        EXPECT_NEAR(qc_upper(x, x.scaled(std::exp(t), std::exp(-t))), t, 1e-13);
}

TEST(KerckhoffLower, WidthDoubling) {
    const auto x = WeightedSurface<double>::unit(l22());
    const CurveFamily fam{defining_foliation(x, Side::Vertical)};
    EXPECT_NEAR(kerckhoff_lower(x, x.scaled(2, 1), fam), kHalfLog2, 1e-13);
    EXPECT_LE(kerckhoff_lower(x, x.scaled(2, 1), fam), kHalfLog2);
    EXPECT_EQ(kerckhoff_lower(x, x, fam), 0);
    EXPECT_THROW(kerckhoff_lower(x, x, CurveFamily{}), InvalidInput);
}

TEST(DistanceInterval, WidthDoublingDegenerate) {
    const auto x = WeightedSurface<double>::unit(l22());
    const auto d = distance_interval(x, x.scaled(2, 1), defining(x));
    EXPECT_NEAR(d.lo, kHalfLog2, 1e-12);
    EXPECT_NEAR(d.hi, kHalfLog2, 1e-12);
    EXPECT_LE(d.width(), 1e-12);
}

TEST(DistanceInterval, Identity) {
    const auto x = golden();
    const auto d = distance_interval(x, x, defining(x));
    EXPECT_EQ(d.lo, 0);
    EXPECT_EQ(d.hi, 0);
}

TEST(DistanceInterval, FlowPairCollapses) {
    const auto x = golden();
    for (double t : {-2.5, -1.0, 0.5, 2.0}) {
        const auto d = distance_interval(x, x.scaled(std::exp(t), std::exp(-t)), defining(x));
        EXPECT_NEAR(d.lo, std::abs(t), 1e-12);
        EXPECT_NEAR(d.hi, std::abs(t), 1e-12);
    }
}

TEST(DistanceInterval, LowerNeverAboveUpper) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> w(0.2, 5);
    for (const auto& e : origami_catalog()) {
        auto o = make_origami(e.h, e.v);
        const auto fam = as_family(all_cores(o));
        for (int k = 0; k < 20; ++k) {
            std::vector<double> h1(o->cylinder_count(Side::Horizontal)), w1(o->cylinder_count(Side::Vertical));
            auto h2 = h1;
            auto w2 = w1;
            for (auto* v : {&h1, &w1, &h2, &w2})
                for (double& x : *v)
                    x = w(rng);
            WeightedSurface<double> x(o, h1, w1), y(o, h2, w2);
            EXPECT_LE(kerckhoff_lower(x, y, fam), qc_upper(x, y)) << e.name;
            EXPECT_NEAR(qc_upper(x, y), qc_upper(y, x), 1e-14);
        }
    }
}

TEST(WeightedSurface, RejectsNonPositive) {
    EXPECT_THROW(WeightedSurface<double>(l22(), {1, 0}, {1, 1}), InvalidInput);
    EXPECT_THROW(WeightedSurface<double>(l22(), {1}, {1, 1}), InvalidInput);
}
