#pragma once

// Flat metrics on an origami (one height per horizontal cylinder, one width
// per vertical cylinder), extremal lengths and Teichmueller distance bounds.

#include "errors.hpp"
#include "interval.hpp"
#include "multicurve.hpp"
#include "origami.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace teich {

/// Relative tolerance for recognising a multicurve as a multiple of a
/// surface's defining foliation when weights are doubles.
inline constexpr double kProportionalTol = 1e-12;

/// Cell (i, j) = A_i cap B_j is a width_j x height_i rectangle.
template <Scalar S>
class WeightedSurface {
public:
    WeightedSurface(OrigamiRef host, std::vector<S> heights, std::vector<S> widths)
        : host_(std::move(host)), heights_(std::move(heights)), widths_(std::move(widths)) {
        if (!host_)
            throw InvalidInput("weighted surface needs a host origami");
        if (heights_.size() != host_->cylinder_count(Side::Horizontal) ||
            widths_.size() != host_->cylinder_count(Side::Vertical))
            throw InvalidInput("weighted surface needs one height per horizontal and one width per vertical cylinder");
        for (const auto& h : heights_)
            if (!(h > 0))
                throw InvalidInput("cylinder heights must be positive");
        for (const auto& w : widths_)
            if (!(w > 0))
                throw InvalidInput("cylinder widths must be positive");
    }

    static WeightedSurface unit(OrigamiRef host) {
        auto k = host->cylinder_count(Side::Horizontal), l = host->cylinder_count(Side::Vertical);
        return WeightedSurface(std::move(host), std::vector<S>(k, S(1)), std::vector<S>(l, S(1)));
    }

    static WeightedSurface from_maps(OrigamiRef host, const std::map<std::string, S>& heights,
                                     const std::map<std::string, S>& widths) {
        std::vector<S> h(host->cylinder_count(Side::Horizontal), S(0)), w(host->cylinder_count(Side::Vertical), S(0));
        for (const auto& [id, v] : heights)
            h[host->index_of(id, Side::Horizontal)] = v;
        for (const auto& [id, v] : widths)
            w[host->index_of(id, Side::Vertical)] = v;
        return WeightedSurface(std::move(host), std::move(h), std::move(w));
    }

    const OrigamiRef& host() const noexcept { return host_; }
    const std::vector<S>& heights() const noexcept { return heights_; }
    const std::vector<S>& widths() const noexcept { return widths_; }
    const S& height(std::size_t i) const { return heights_.at(i); }
    const S& width(std::size_t j) const { return widths_.at(j); }

    /// Dimension transverse to the cores of `side`: heights for horizontal
    /// cylinders, widths for vertical ones.
    const std::vector<S>& transverse(Side side) const noexcept {
        return side == Side::Horizontal ? heights_ : widths_;
    }

    /// Core length of cylinder `index` on `side`.
    S circumference(Side side, std::size_t index) const {
        const auto& n = host_->intersection_matrix();
        S c(0);
        if (side == Side::Horizontal) {
            for (std::size_t j = 0; j < n.cols(); ++j)
                c += scalar_cast<S>(n(index, j)) * widths_[j];
        } else {
            for (std::size_t i = 0; i < n.rows(); ++i)
                c += scalar_cast<S>(n(i, index)) * heights_[i];
        }
        return c;
    }

    WeightedSurface scaled(const S& width_factor, const S& height_factor) const {
        auto h = heights_;
        auto w = widths_;
        for (auto& e : h)
            e *= height_factor;
        for (auto& e : w)
            e *= width_factor;
        return WeightedSurface(host_, std::move(h), std::move(w));
    }

    template <Scalar T>
    WeightedSurface<T> cast() const {
        std::vector<T> h, w;
        for (const auto& e : heights_)
            h.push_back(scalar_cast<T>(e));
        for (const auto& e : widths_)
            w.push_back(scalar_cast<T>(e));
        return WeightedSurface<T>(host_, std::move(h), std::move(w));
    }

private:
    OrigamiRef host_;
    std::vector<S> heights_;
    std::vector<S> widths_;
};

using CurveFamily = std::vector<WeightedMulticurve<double>>;

template <Scalar S>
CurveFamily as_family(const std::vector<WeightedMulticurve<S>>& curves) {
    CurveFamily out;
    for (const auto& c : curves)
        out.push_back(c.template cast<double>());
    return out;
}

/// Sum of n_ij * height_i * width_j.
template <Scalar S>
S area(const WeightedSurface<S>& x) {
    const auto& n = x.host()->intersection_matrix();
    S total(0);
    for (std::size_t i = 0; i < n.rows(); ++i)
        for (std::size_t j = 0; j < n.cols(); ++j)
            if (n(i, j) != 0)
                total += scalar_cast<S>(n(i, j)) * x.height(i) * x.width(j);
    return total;
}

/// Vertical foliation sum_j width_j beta_j, or horizontal sum_i height_i alpha_i.
template <Scalar S>
WeightedMulticurve<S> defining_foliation(const WeightedSurface<S>& x, Side side) {
    return WeightedMulticurve<S>::from_dense(x.host(), side, x.transverse(side));
}

/// Ext of r times the defining foliation on `side`; equals r^2 * area.
template <Scalar S>
S foliation_ext(const WeightedSurface<S>& x, Side /*side*/, const S& r) {
    if (!(r > 0))
        throw InvalidInput("foliation scale must be positive");
    return r * r * area(x);
}

/// The factor r with f = r * (defining foliation of x on f's side), if any.
template <Scalar SX, Scalar SF>
std::optional<promote_t<SX, SF>> proportionality(const WeightedSurface<SX>& x, const WeightedMulticurve<SF>& f) {
    using R = promote_t<SX, SF>;
    detail::require_same_host(x.host(), f.host());
    const auto& dims = x.transverse(f.side());
    if (f.empty() || f.components().size() != dims.size())
        return std::nullopt;
    const auto& cs = f.components();
    R r = scalar_cast<R>(cs[0].weight) / scalar_cast<R>(dims[cs[0].index]);
    for (const auto& c : cs) {
        R rk = scalar_cast<R>(c.weight) / scalar_cast<R>(dims[c.index]);
        if constexpr (std::same_as<R, Rational>) {
            if (rk != r)
                return std::nullopt;
        } else {
            if (std::abs(rk - r) > kProportionalTol * std::abs(r))
                return std::nullopt;
        }
    }
    return r;
}

/// Exact Ext_X(F) for F a positive multiple of X's own vertical or
/// horizontal foliation. Anything else must go through curve_ext_bounds.
template <Scalar SX, Scalar SF>
promote_t<SX, SF> foliation_ext(const WeightedSurface<SX>& x, const WeightedMulticurve<SF>& f) {
    using R = promote_t<SX, SF>;
    auto r = proportionality(x, f);
    if (!r)
        throw InvalidInput("multicurve " + f.describe() +
                           " is not proportional to the defining foliation; use curve_ext_bounds");
    return foliation_ext(x.template cast<R>(), f.side(), *r);
}

/// Enclosure of Ext_X(c) for a multicurve of cores. The lower end is
/// Minsky's i(c, F)^2 / Ext_X(F) against both defining foliations; the upper
/// end is sum w^2 / modulus over the disjoint flat cylinders.
template <Scalar SX, Scalar SF>
ValueInterval curve_ext_bounds(const WeightedSurface<SX>& x, const WeightedMulticurve<SF>& c) {
    detail::require_same_host(x.host(), c.host());
    if (c.empty())
        return {0, 0};
    const auto xd = x.template cast<double>();
    const double a = area(xd);
    const auto& dims = xd.transverse(c.side());
    double hi = 0, transverse_pairing = 0;
    for (const auto& comp : c.components()) {
        const double w = to_double(comp.weight);
        const double circ = xd.circumference(c.side(), comp.index);
        hi += w * w * circ / dims[comp.index];
        transverse_pairing += w * circ;
    }
    // The same-side defining foliation pairs to zero with c.
    double lo = transverse_pairing * transverse_pairing / a;
    if (lo > hi) {
        if (lo - hi > 1e-12 * hi)
            throw CertificationViolation("extremal length bounds crossed for " + c.describe());
        lo = hi;
    }
    return ValueInterval::outward(lo, hi);
}

/// Exact value when c is a multiple of a defining foliation of X, otherwise
/// the certified bounds.
template <Scalar SX, Scalar SF>
ValueInterval ext_interval(const WeightedSurface<SX>& x, const WeightedMulticurve<SF>& c) {
    if (auto r = proportionality(x, c))
        return ValueInterval::exact(to_double(foliation_ext(x.template cast<promote_t<SX, SF>>(), c.side(), *r)));
    return curve_ext_bounds(x, c);
}

/// Half the log of the largest cellwise dilatation of the piecewise-affine
/// map X -> Y. An upper bound for d_T(X, Y).
template <Scalar SX, Scalar SY>
double qc_upper(const WeightedSurface<SX>& x, const WeightedSurface<SY>& y) {
    detail::require_same_host(x.host(), y.host());
    const auto& n = x.host()->intersection_matrix();
    double worst = 0;
    for (std::size_t i = 0; i < n.rows(); ++i) {
        const double log_rv = std::log(to_double(y.height(i))) - std::log(to_double(x.height(i)));
        for (std::size_t j = 0; j < n.cols(); ++j) {
            if (n(i, j) == 0)
                continue;
            const double log_rh = std::log(to_double(y.width(j))) - std::log(to_double(x.width(j)));
            worst = std::max(worst, std::abs(log_rh - log_rv));
        }
    }
    return round_up(0.5 * worst);
}

/// Kerckhoff's formula restricted to a finite family, with lower Ext bounds
/// in the numerator and upper bounds in the denominator.
template <Scalar SX, Scalar SY>
double kerckhoff_lower(const WeightedSurface<SX>& x, const WeightedSurface<SY>& y, const CurveFamily& family) {
    if (family.empty())
        throw InvalidInput("kerckhoff_lower needs a non-empty curve family");
    detail::require_same_host(x.host(), y.host());
    double best = 1;
    for (const auto& gamma : family) {
        const auto ex = ext_interval(x, gamma), ey = ext_interval(y, gamma);
        if (ey.hi > 0)
            best = std::max(best, ex.lo / ey.hi);
        if (ex.hi > 0)
            best = std::max(best, ey.lo / ex.hi);
    }
    return std::max(0.0, round_down(0.5 * std::log(best)));
}

template <Scalar SX, Scalar SY>
DistanceInterval distance_interval(const WeightedSurface<SX>& x, const WeightedSurface<SY>& y,
                                   const CurveFamily& family, double tol = 1e-12) {
    const double lo = kerckhoff_lower(x, y, family);
    const double hi = qc_upper(x, y);
    if (lo > hi + tol)
        throw CertificationViolation("distance lower bound " + format_decimal(lo) + " exceeds upper bound " +
                                     format_decimal(hi));
    return {std::min(lo, hi), hi};
}

} // namespace teich
