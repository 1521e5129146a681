#pragma once

#include "errors.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace teich {

/// Relative slack applied when an enclosure is rounded outward.
inline constexpr double kEnclosureSlack = 64 * std::numeric_limits<double>::epsilon();

inline double round_down(double v) noexcept { return v - kEnclosureSlack * std::abs(v); }
inline double round_up(double v) noexcept { return v + kEnclosureSlack * std::abs(v); }

struct ValueInterval {
    double lo = 0;
    double hi = 0;

    static ValueInterval exact(double v) noexcept { return {round_down(v), round_up(v)}; }
    static ValueInterval outward(double lo, double hi) {
        if (!(lo <= hi))
            throw CertificationViolation("interval with lo > hi");
        return {round_down(lo), round_up(hi)};
    }

    double width() const noexcept { return hi - lo; }
    double mid() const noexcept { return 0.5 * (lo + hi); }
    bool contains(double v, double tol = 0) const noexcept { return lo - tol <= v && v <= hi + tol; }

    friend ValueInterval operator-(const ValueInterval& a, const ValueInterval& b) noexcept {
        return {round_down(a.lo - b.hi), round_up(a.hi - b.lo)};
    }
};

/// Certified enclosure of a Teichmueller distance.
struct DistanceInterval {
    double lo = 0;
    double hi = 0;

    double width() const noexcept { return hi - lo; }
    bool contains(double v, double tol = 0) const noexcept { return lo - tol <= v && v <= hi + tol; }
    ValueInterval value() const noexcept { return {lo, hi}; }
};

} // namespace teich
