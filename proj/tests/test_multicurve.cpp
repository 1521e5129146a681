#include <teich/catalog.hpp>
#include <teich/multicurve.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace teich;

namespace {

const double kInvPhi = std::numbers::phi - 1;

OrigamiRef l22() { return catalog_origami("L22"); }

} // namespace

TEST(PairIntersection, UnitWeightsSumEntries) {
    auto o = l22();
    auto a = WeightedMulticurve<Rational>::from_dense(o, Side::Horizontal, {1, 1});
    auto b = WeightedMulticurve<Rational>::from_dense(o, Side::Vertical, {1, 1});
    EXPECT_EQ(pair_intersection(a, b, o->intersection_matrix()), Rational(3));
}

TEST(PairIntersection, HomogeneousInFirstArgument) {
    auto o = l22();
    auto a = WeightedMulticurve<Rational>::from_dense(o, Side::Horizontal, {2, 2});
    auto b = WeightedMulticurve<Rational>::from_dense(o, Side::Vertical, {1, 1});
    EXPECT_EQ(pair_intersection(a, b, o->intersection_matrix()), Rational(6));
}

TEST(PairIntersection, GoldenWeights) {
    auto o = l22();
    auto a = WeightedMulticurve<double>::from_dense(o, Side::Horizontal, {1, kInvPhi});
    auto b = WeightedMulticurve<double>::from_dense(o, Side::Vertical, {1, kInvPhi});
    EXPECT_NEAR(pair_intersection(a, b, o->intersection_matrix()), 2.23606797749978969, 1e-12);
}

TEST(PairIntersection, SameSideIsZero) {
    auto o = l22();
    auto a = WeightedMulticurve<Rational>::from_dense(o, Side::Horizontal, {1, 3});
    EXPECT_EQ(intersection(a, a), Rational(0));
}

TEST(PairIntersection, Bilinear) {
    auto o = catalog_origami("eierlegende");
    auto a1 = WeightedMulticurve<Rational>::from_dense(o, Side::Horizontal, std::vector<Rational>(o->cylinder_count(Side::Horizontal), Rational(1, 3)));
    std::vector<Rational> w2;
    for (std::size_t i = 0; i < o->cylinder_count(Side::Horizontal); ++i)
        w2.emplace_back(static_cast<int>(i) + 1, 7);
    auto a2 = WeightedMulticurve<Rational>::from_dense(o, Side::Horizontal, w2);
    std::vector<Rational> wsum;
    for (std::size_t i = 0; i < w2.size(); ++i)
        wsum.push_back(Rational(2) * Rational(1, 3) + Rational(5) * w2[i]);
    auto asum = WeightedMulticurve<Rational>::from_dense(o, Side::Horizontal, wsum);
    auto b = WeightedMulticurve<Rational>::from_dense(o, Side::Vertical, std::vector<Rational>(o->cylinder_count(Side::Vertical), Rational(2)));
    EXPECT_EQ(intersection(asum, b), Rational(2) * intersection(a1, b) + Rational(5) * intersection(a2, b));
}

TEST(PairIntersection, Symmetric) {
    auto o = catalog_origami("L33");
    auto a = WeightedMulticurve<Rational>::from_dense(o, Side::Horizontal, std::vector<Rational>(o->cylinder_count(Side::Horizontal), Rational(3, 2)));
    auto b = WeightedMulticurve<Rational>::from_dense(o, Side::Vertical, std::vector<Rational>(o->cylinder_count(Side::Vertical), Rational(5, 4)));
    EXPECT_EQ(intersection(a, b), intersection(b, a));
}

TEST(PairIntersection, RejectsNegativeWeight) {
    auto o = l22();
    EXPECT_THROW(WeightedMulticurve<Rational>::from_dense(o, Side::Horizontal, {1, -1}), InvalidInput);
}

TEST(FillingStatus, FullCores) {
    auto o = l22();
    EXPECT_EQ(filling_status(BusemannSpec::all_cores(o, Side::Vertical), BusemannSpec::all_cores(o, Side::Horizontal)),
              FillingStatus::FillingCertified);
}

TEST(FillingStatus, BlockDiagonalNotFilling) {
    auto o = l22();
    const IntersectionMatrix diag{{1, 0}, {0, 1}};
    EXPECT_EQ(filling_status(BusemannSpec::all_cores(o, Side::Horizontal), BusemannSpec::all_cores(o, Side::Vertical),
                             diag),
              FillingStatus::NotFilling);
}

TEST(FillingStatus, ProperSubsetIsMatrixOnly) {
    auto o = l22();
    BusemannSpec a1(o, Side::Horizontal, {{0, 1.0}});
    EXPECT_EQ(filling_status(a1, BusemannSpec::all_cores(o, Side::Vertical)), FillingStatus::MatrixPrimitiveOnly);
}

TEST(FillingStatus, SameSideNotFilling) {
    auto o = l22();
    EXPECT_EQ(filling_status(BusemannSpec::all_cores(o, Side::Vertical), BusemannSpec::all_cores(o, Side::Vertical)),
              FillingStatus::NotFilling);
}

TEST(BusemannSpec, RejectsBadComponents) {
    auto o = l22();
    EXPECT_THROW(BusemannSpec(o, Side::Vertical, {}), InvalidInput);
    EXPECT_THROW(BusemannSpec(o, Side::Vertical, {{0, 0.0}}), InvalidInput);
    EXPECT_THROW(BusemannSpec(o, Side::Vertical, {{5, 1.0}}), InvalidInput);
    EXPECT_THROW(BusemannSpec(o, Side::Vertical, {{0, 1.0}, {0, 2.0}}), InvalidInput);
}
