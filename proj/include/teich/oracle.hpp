#pragma once

// Verification oracles. Deliberately independent of perron.hpp and
// geodesic.hpp: they recompute T from N with their own loops and never call
// the power iteration.

#include "matrix.hpp"
#include "rational.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace teich::oracle {

/// T = N N^T with plain integer arithmetic.
inline std::vector<std::vector<long long>> integer_gram(const IntersectionMatrix& n) {
    std::vector<std::vector<long long>> t(n.rows(), std::vector<long long>(n.rows(), 0));
    for (std::size_t a = 0; a < n.rows(); ++a)
        for (std::size_t b = 0; b < n.rows(); ++b)
            for (std::size_t j = 0; j < n.cols(); ++j)
                t[a][b] += n(a, j).convert_to<long long>() * n(b, j).convert_to<long long>();
    return t;
}

/// Coefficients of det(lambda I - T) = lambda^k - c[1] lambda^{k-1} + c[2] ... for k <= 3.
inline std::vector<long long> characteristic_coefficients(const std::vector<std::vector<long long>>& t) {
    const std::size_t k = t.size();
    if (k == 1)
        return {1, t[0][0]};
    if (k == 2)
        return {1, t[0][0] + t[1][1], t[0][0] * t[1][1] - t[0][1] * t[1][0]};
    if (k == 3) {
        const long long tr = t[0][0] + t[1][1] + t[2][2];
        const long long minors = (t[0][0] * t[1][1] - t[0][1] * t[1][0]) + (t[0][0] * t[2][2] - t[0][2] * t[2][0]) +
                                 (t[1][1] * t[2][2] - t[1][2] * t[2][1]);
        const long long det = t[0][0] * (t[1][1] * t[2][2] - t[1][2] * t[2][1]) -
                              t[0][1] * (t[1][0] * t[2][2] - t[1][2] * t[2][0]) +
                              t[0][2] * (t[1][0] * t[2][1] - t[1][1] * t[2][0]);
        return {1, tr, minors, det};
    }
    throw std::invalid_argument("characteristic oracle handles k <= 3 only");
}

/// Largest root of the characteristic polynomial by closed form (quadratic
/// formula, trigonometric cubic), polished by Newton steps on the exact
/// integer polynomial.
inline long double largest_eigenvalue(const IntersectionMatrix& n) {
    const auto t = integer_gram(n);
    const auto c = characteristic_coefficients(t);
    const std::size_t k = t.size();
    long double root = 0;
    if (k == 1) {
        root = static_cast<long double>(c[1]);
    } else if (k == 2) {
        const long double tr = c[1], det = c[2];
        root = (tr + std::sqrt(std::max<long double>(0, tr * tr - 4 * det))) / 2;
    } else {
        // lambda^3 + a lambda^2 + b lambda + d
        const long double a = -static_cast<long double>(c[1]), b = c[2], d = -static_cast<long double>(c[3]);
        const long double p = b - a * a / 3, q = 2 * a * a * a / 27 - a * b / 3 + d;
        if (std::abs(p) < 1e-18L) {
            root = -a / 3;
        } else {
            long double arg = (3 * q / (2 * p)) * std::sqrt(-3 / p);
            arg = std::max<long double>(-1, std::min<long double>(1, arg));
            root = 2 * std::sqrt(-p / 3) * std::cos(std::acos(arg) / 3) - a / 3;
        }
    }
    auto poly = [&](long double x, long double& deriv) {
        long double v = 0;
        deriv = 0;
        for (std::size_t i = 0; i <= k; ++i) {
            const long double coeff = (i % 2 ? -1.0L : 1.0L) * static_cast<long double>(c[i]);
            deriv = deriv * x + v;
            v = v * x + coeff;
        }
        return v;
    };
    for (int it = 0; it < 3; ++it) {
        long double dp = 0;
        const long double v = poly(root, dp);
        if (dp == 0)
            break;
        root -= v / dp;
    }
    return root;
}

/// Some power T^m with m <= (k-1)^2 + 1 is entrywise positive (Wielandt).
inline bool primitive_by_powers(const IntersectionMatrix& n) {
    const auto t = integer_gram(n);
    const std::size_t k = t.size();
    std::vector<std::vector<char>> base(k, std::vector<char>(k)), power;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            base[a][b] = t[a][b] > 0;
    power = base;
    const std::size_t bound = (k - 1) * (k - 1) + 1;
    for (std::size_t m = 1; m <= bound; ++m) {
        bool positive = true;
        for (const auto& row : power)
            for (char e : row)
                positive = positive && e;
        if (positive)
            return true;
        std::vector<std::vector<char>> next(k, std::vector<char>(k, 0));
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                for (std::size_t c = 0; c < k && !next[a][b]; ++c)
                    next[a][b] = power[a][c] && base[c][b];
        power = std::move(next);
    }
    return false;
}

/// Closed forms for the L-shaped three-cell origami with unit coefficients.
struct GoldenOracle {
    static constexpr double phi = std::numbers::phi;
    static constexpr double lambda = phi * phi; // (3 + sqrt5) / 2
    static double inverse_phi() { return phi - 1; }
    static double sqrt5() { return std::sqrt(5.0); }
};

} // namespace teich::oracle
