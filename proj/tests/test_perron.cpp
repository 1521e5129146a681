#include <teich/catalog.hpp>
#include <teich/oracle.hpp>
#include <teich/perron.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace teich;

namespace {

// (3 + sqrt5) / 2 and the l1-normalised ray (1, 1/phi) / phi.
constexpr double kGoldenLambda = 2.6180339887498948482;
constexpr double kRay0 = 0.61803398874989484820;
constexpr double kRay1 = 0.38196601125010515180;

DenseMatrix<double> golden_t() { return DenseMatrix<double>{{2, 1}, {1, 1}}; }

} // namespace

TEST(Gram, LShape) {
    const IntersectionMatrix n{{1, 1}, {1, 0}};
    const auto t = gram(n);
    EXPECT_EQ(t(0, 0), 2);
    EXPECT_EQ(t(0, 1), 1);
    EXPECT_EQ(t(1, 0), 1);
    EXPECT_EQ(t(1, 1), 1);
}

TEST(Gram, OneByOne) {
    const IntersectionMatrix n{{5}};
    EXPECT_EQ(gram(n)(0, 0), 25);
}

TEST(Gram, ZeroRowGivesZeroLine) {
    const IntersectionMatrix n{{1, 1, 0}, {0, 0, 0}};
    const auto t = gram(n);
    EXPECT_EQ(t(1, 0), 0);
    EXPECT_EQ(t(1, 1), 0);
    EXPECT_FALSE(is_primitive(n));
}

TEST(Primitivity, Examples) {
    EXPECT_TRUE(is_primitive(IntersectionMatrix{{1, 1}, {1, 0}}));
    EXPECT_FALSE(is_primitive(IntersectionMatrix{{1, 0}, {0, 1}}));
    EXPECT_FALSE(is_primitive(IntersectionMatrix{{1, 1, 0}, {0, 0, 0}}));
    EXPECT_TRUE(oracle::primitive_by_powers(IntersectionMatrix{{1, 1}, {1, 0}}));
    EXPECT_FALSE(oracle::primitive_by_powers(IntersectionMatrix{{1, 0}, {0, 1}}));
}

TEST(Perron, GoldenEigenpair) {
    const auto r = perron_solve(golden_t());
    EXPECT_NEAR(r.lambda, kGoldenLambda, 1e-12);
    ASSERT_EQ(r.x.size(), 2u);
    EXPECT_NEAR(r.x[0], kRay0, 1e-12);
    EXPECT_NEAR(r.x[1], kRay1, 1e-12);
    EXPECT_LE(r.residual, 1e-12);
    EXPECT_LE(r.ray_spread, 1e-11);
}

TEST(Perron, OneByOne) {
    const auto r = perron_solve(DenseMatrix<double>{{4}});
    EXPECT_DOUBLE_EQ(r.lambda, 4);
    EXPECT_DOUBLE_EQ(r.x[0], 1);
}

TEST(Perron, Homogeneous) {
    const auto a = perron_solve(golden_t());
    const auto b = perron_solve(DenseMatrix<double>{{6, 3}, {3, 3}});
    EXPECT_NEAR(b.lambda, 3 * a.lambda, 1e-11);
    EXPECT_NEAR(b.x[0], a.x[0], 1e-12);
    EXPECT_NEAR(b.x[1], a.x[1], 1e-12);
}

TEST(Perron, CubicOracle) {
    // det(lambda - T) = lambda^3 - 17 lambda^2 + 66 lambda - 25
    const IntersectionMatrix n{{1, 2, 0}, {0, 1, 1}, {1, 0, 3}};
    const double frozen = 11.405499116883090730;
    EXPECT_NEAR(static_cast<double>(oracle::largest_eigenvalue(n)), frozen, 1e-12);
    EXPECT_NEAR(perron_solve(gram(n).cast<double>()).lambda, frozen, 1e-10);
}

TEST(Perron, SeedsAgree) {
    PerronOptions a, b;
    b.seed = 99;
    const auto ra = perron_solve(golden_t(), a), rb = perron_solve(golden_t(), b);
    EXPECT_NEAR(ra.x[0], rb.x[0], 1e-12);
    EXPECT_NEAR(ra.lambda, rb.lambda, 1e-12);
}

TEST(Perron, RejectsBipartite) {
    EXPECT_THROW(perron_solve(DenseMatrix<double>{{0, 1}, {1, 0}}), NotPrimitive);
}

TEST(Perron, RejectsDisconnected) {
    EXPECT_THROW(perron_solve(DenseMatrix<double>{{1, 0}, {0, 1}}), NotPrimitive);
}

TEST(Perron, RejectsMalformed) {
    EXPECT_THROW(perron_solve(DenseMatrix<double>{{1, 2}, {1, 1}}), InvalidInput);
    EXPECT_THROW(perron_solve(DenseMatrix<double>{{1, -1}, {-1, 1}}), InvalidInput);
    PerronOptions opt;
    opt.tol = 0;
    EXPECT_THROW(perron_solve(golden_t(), opt), InvalidInput);
}

TEST(Perron, UnreachableToleranceFails) {
    PerronOptions opt;
    opt.tol = 1e-30;
    opt.max_iters = 10'000;
    EXPECT_THROW(perron_solve(golden_t(), opt), NoConvergence);
}

TEST(Perron, RandomSmallAgainstOracle) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> dim(1, 3);
    int checked = 0;
    while (checked < 100) {
        const auto n = random_intersection_matrix(rng, dim(rng), dim(rng), 3);
        if (!is_primitive(n))
            continue;
        const double exact = static_cast<double>(oracle::largest_eigenvalue(n));
        EXPECT_NEAR(perron_solve(gram(n).cast<double>()).lambda, exact, 1e-10 * std::max(1.0, exact));
        ++checked;
    }
}
