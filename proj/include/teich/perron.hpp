#pragma once

// Gram matrix, primitivity diagnosis and Perron eigenpairs for T = N N^T.

#include "errors.hpp"
#include "matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace teich {

/// T = N N^T, exact.
inline DenseMatrix<Rational> gram(const IntersectionMatrix& n) {
    return n.entries() * n.entries().transposed();
}

namespace detail {

template <class Weight>
bool bipartite_support_connected(const DenseMatrix<Weight>& m) {
    const std::size_t k = m.rows(), l = m.cols();
    std::vector<char> seen(k + l, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        auto visit = [&](std::size_t w) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        };
        if (u < k) {
            for (std::size_t j = 0; j < l; ++j)
                if (m(u, j) > 0)
                    visit(k + j);
        } else {
            for (std::size_t i = 0; i < k; ++i)
                if (m(i, u - k) > 0)
                    visit(i);
        }
    }
    return reached == k + l;
}

template <class Weight>
bool has_zero_line(const DenseMatrix<Weight>& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        bool any = false;
        for (std::size_t j = 0; j < m.cols(); ++j)
            any = any || m(i, j) > 0;
        if (!any)
            return true;
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
        bool any = false;
        for (std::size_t i = 0; i < m.rows(); ++i)
            any = any || m(i, j) > 0;
        if (!any)
            return true;
    }
    return false;
}

/// Primitivity of a symmetric nonnegative matrix: connected support graph
/// that is not bipartite (a loop counts as an odd cycle).
inline bool symmetric_primitive(const DenseMatrix<double>& t) {
    const std::size_t k = t.rows();
    if (k == 0)
        return false;
    std::vector<int> colour(k, -1);
    std::vector<std::size_t> stack{0};
    colour[0] = 0;
    bool odd_cycle = false;
    std::size_t reached = 1;
    while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t w = 0; w < k; ++w) {
            if (!(t(u, w) > 0))
                continue;
            if (colour[w] < 0) {
                colour[w] = 1 - colour[u];
                ++reached;
                stack.push_back(w);
            } else if (colour[w] == colour[u]) {
                odd_cycle = true;
            }
        }
    }
    return reached == k && odd_cycle;
}

} // namespace detail

/// True iff N has no zero row or column and the bipartite graph
/// {rows} u {cols} with edges n_ij > 0 is connected. Then N N^T has a
/// positive diagonal and connected support, hence is primitive.
inline bool is_primitive(const IntersectionMatrix& n) {
    return !detail::has_zero_line(n.entries()) && detail::bipartite_support_connected(n.entries());
}

struct PerronOptions {
    double tol = 1e-12;
    std::size_t max_iters = 1'000'000;
    std::size_t seed_count = 8;
    std::uint64_t seed = 0x5eed;
};

struct PerronResult {
    double lambda = 0;
    std::vector<double> x; ///< positive, ||x||_1 = 1
    /// ||T x - lambda x||_inf / max(1, lambda)
    double residual = 0;
    std::size_t iterations = 0;
    /// Largest ||x_run - x||_inf over the random restarts.
    double ray_spread = 0;
};

namespace detail {

struct PowerRun {
    std::vector<double> x;
    double lambda = 0;
    double residual = 0;
    std::size_t iterations = 0;
};

inline double scaled_residual(const DenseMatrix<double>& t, const std::vector<double>& x, double& lambda) {
    auto tx = t * x;
    double num = 0, den = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += x[i] * tx[i];
        den += x[i] * x[i];
    }
    lambda = num / den;
    double r = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        r = std::max(r, std::abs(tx[i] - lambda * x[i]));
    return r / std::max(1.0, lambda);
}

inline PowerRun power_iterate(const DenseMatrix<double>& t, std::vector<double> x, const PerronOptions& opt) {
    const double noise = 256 * std::numeric_limits<double>::epsilon();
    auto normalize = [](std::vector<double>& v) {
        double s = 0;
        for (double e : v)
            s += e;
        for (double& e : v)
            e /= s;
    };
    normalize(x);
    double prev_diff = std::numeric_limits<double>::infinity();
    for (std::size_t it = 1; it <= opt.max_iters; ++it) {
        auto y = t * x;
        normalize(y);
        double diff = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            diff = std::max(diff, std::abs(y[i] - x[i]));
        x = std::move(y);

        // Geometric-rate estimate bounds the remaining distance to the ray.
        double rho = std::isfinite(prev_diff) && prev_diff > 0 ? std::min(diff / prev_diff, 0.999999) : 0.999999;
        double remaining = diff * rho / (1 - rho);
        prev_diff = diff;
        bool settled = diff == 0 || diff <= noise || (diff <= opt.tol && remaining <= opt.tol / 2);
        if (!settled)
            continue;
        double lambda = 0;
        double res = scaled_residual(t, x, lambda);
        if (res > opt.tol)
            continue;
        // Polish towards the rounding floor while the iterates still improve.
        for (std::size_t extra = 0; extra < it && diff > noise; ++extra) {
            auto z = t * x;
            normalize(z);
            double d = 0;
            for (std::size_t i = 0; i < x.size(); ++i)
                d = std::max(d, std::abs(z[i] - x[i]));
            if (d >= diff)
                break;
            diff = d;
            x = std::move(z);
        }
        res = scaled_residual(t, x, lambda);
        return {std::move(x), lambda, res, it};
    }
    throw NoConvergence("power iteration exceeded " + std::to_string(opt.max_iters) + " iterations at tol " +
                        format_decimal(opt.tol, 3));
}

} // namespace detail

/// Perron eigenpair of a symmetric nonnegative primitive matrix by power
/// iteration, certified by `seed_count` random positive restarts landing on
/// the same ray within 10 * tol.
inline PerronResult perron_solve(const DenseMatrix<double>& t, const PerronOptions& opt = {}) {
    if (!t.square() || t.rows() == 0)
        throw InvalidInput("Perron matrix must be square and non-empty");
    if (!(opt.tol > 0))
        throw InvalidInput("Perron tolerance must be positive");
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j) {
            if (!(t(i, j) >= 0) || !std::isfinite(t(i, j)))
                throw InvalidInput("Perron matrix must be finite and nonnegative");
            if (t(i, j) != t(j, i))
                throw InvalidInput("Perron matrix must be symmetric");
        }
    if (!detail::symmetric_primitive(t))
        throw NotPrimitive("support graph of T is disconnected or bipartite");

    const std::size_t k = t.rows();
    auto base = detail::power_iterate(t, std::vector<double>(k, 1.0), opt);

    PerronResult out;
    out.lambda = base.lambda;
    out.residual = base.residual;
    out.iterations = base.iterations;

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> start(0.05, 1.0);
    for (std::size_t s = 0; s < opt.seed_count; ++s) {
        std::vector<double> x0(k);
        for (double& e : x0)
            e = start(rng);
        auto run = detail::power_iterate(t, std::move(x0), opt);
        double spread = 0;
        for (std::size_t i = 0; i < k; ++i)
            spread = std::max(spread, std::abs(run.x[i] - base.x[i]));
        out.ray_spread = std::max(out.ray_spread, spread);
        if (spread > 10 * opt.tol)
            throw RayMismatch("restart " + std::to_string(s) + " differs by " + format_decimal(spread, 3));
    }
    for (double e : base.x)
        if (!(e > 0))
            throw RayMismatch("Perron vector has a non-positive entry");
    out.x = std::move(base.x);
    return out;
}

} // namespace teich
