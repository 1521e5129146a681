#pragma once

// Horofunction and Busemann-function enclosures, Miyachi's intersection of
// interior points, and the inequality audits.
//
// Unless stated otherwise, values attached to a line G are taken relative to
// G(0): psi_F(Y) = 1/2 log Ext_Y(F_v) - 1/2 log Ext_G(0)(F_v),
// psi_xi(Y) = log sup_mu i(xi, mu) / sqrt(Ext_Y(mu)) with i(xi, .) in the
// ray's own Walsh normalisation (so psi_xi(G(0)) = 0), and
// b(Y) = lim d(Y, G(t)) - t. Along these normalisations
// psi_F <= psi_xi <= b, with equality on the line.

#include "errors.hpp"
#include "geodesic.hpp"
#include "interval.hpp"
#include "surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace teich {

/// Psi_F(X) = 1/2 log Ext_X(F) - 1/2 log Ext_X0(F), exact when F is a
/// multiple of the defining foliation at both X and X0.
template <Scalar SF>
double psi_foliation(const WeightedMulticurve<SF>& f, const WeightedSurface<double>& x,
                     const WeightedSurface<double>& x0) {
    return 0.5 * std::log(to_double(foliation_ext(x, f))) - 0.5 * std::log(to_double(foliation_ext(x0, f)));
}

/// Psi_Z(X) = d(X, Z) - d(X0, Z) from the two distance enclosures.
inline ValueInterval psi_interior(const WeightedSurface<double>& z, const WeightedSurface<double>& x,
                                  const WeightedSurface<double>& x0, const CurveFamily& family) {
    const auto dx = distance_interval(x, z, family);
    const auto d0 = distance_interval(x0, z, family);
    return ValueInterval{round_down(dx.lo - d0.hi), round_up(dx.hi - d0.lo)};
}

/// i(xi, mu) for the line's forward limit, normalised so that
/// sup_mu i(xi, mu) / sqrt(Ext_G(0)(mu)) = 1.
template <Scalar S>
double ray_walsh(const GeodesicLine& g, const WeightedMulticurve<S>& mu) {
    return walsh_limit_values(g.f_vert(), g.f_hor(), std::vector<WeightedMulticurve<S>>{mu}).front();
}

struct BusemannBound {
    double lo = 0;
    double hi = 0;
    /// d(Y, G(T_k)) - T_k was non-increasing over the horizon samples.
    bool monotone = true;
};

inline constexpr std::size_t kHorizonSamples = 8;

/// Enclosure of b(Y) = lim d(Y, G(t)) - t relative to G(0).
inline BusemannBound busemann_bound(const GeodesicLine& g, const WeightedSurface<double>& y, double horizon,
                                    const CurveFamily& family) {
    if (!(horizon >= 0) || !std::isfinite(horizon))
        throw InvalidInput("Busemann horizon must be finite and nonnegative");
    BusemannBound b;
    const auto base = point_at(g, 0);
    const auto ext = ext_interval(y, g.f_vert());
    b.lo = ext.lo > 0 ? round_down(0.5 * std::log(ext.lo) - 0.5 * std::log(area(base)))
                      : -std::numeric_limits<double>::infinity();
    b.hi = std::numeric_limits<double>::infinity();
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= kHorizonSamples; ++k) {
        const double t = horizon * static_cast<double>(k) / kHorizonSamples;
        const double v = round_up(distance_interval(y, point_at(g, t), family).hi - t);
        if (v > prev + 1e-12 * std::max(1.0, std::abs(prev)))
            b.monotone = false;
        prev = v;
        b.hi = std::min(b.hi, v);
    }
    return b;
}

/// B_xi(X) - B_xi(X0) for xi the forward limit of g.
inline ValueInterval busemann_interval(const GeodesicLine& g, const WeightedSurface<double>& x,
                                       const WeightedSurface<double>& x0, double horizon, const CurveFamily& family) {
    const auto bx = busemann_bound(g, x, horizon, family);
    const auto b0 = busemann_bound(g, x0, horizon, family);
    return ValueInterval{round_down(bx.lo - b0.hi), round_up(bx.hi - b0.lo)};
}

/// psi_F(Y) for F = F_v of the line, relative to G(0).
inline ValueInterval psi_fv_bound(const GeodesicLine& g, const WeightedSurface<double>& y) {
    const auto ext = ext_interval(y, g.f_vert());
    const double a = area(point_at(g, 0));
    const double lo = ext.lo > 0 ? 0.5 * std::log(ext.lo) : -std::numeric_limits<double>::infinity();
    return ValueInterval{round_down(lo - 0.5 * std::log(a)), round_up(0.5 * std::log(ext.hi) - 0.5 * std::log(a))};
}

/// psi_xi(Y): the lower end is the supremum restricted to `family`, the upper
/// end comes from psi_xi <= b.
inline ValueInterval psi_xi_bound(const GeodesicLine& g, const WeightedSurface<double>& y, double horizon,
                                  const CurveFamily& family) {
    double lo = -std::numeric_limits<double>::infinity();
    for (const auto& mu : family) {
        const double num = ray_walsh(g, mu);
        const double ext_hi = ext_interval(y, mu).hi;
        if (num > 0 && ext_hi > 0)
            lo = std::max(lo, std::log(num) - 0.5 * std::log(ext_hi));
    }
    return ValueInterval{round_down(lo), busemann_bound(g, y, horizon, family).hi};
}

/// Miyachi's e^{-2<X|Y>} with the Gromov product based at X0.
inline ValueInterval miyachi_intersection(const WeightedSurface<double>& x, const WeightedSurface<double>& y,
                                          const WeightedSurface<double>& x0, const CurveFamily& family) {
    const auto d0x = distance_interval(x0, x, family);
    const auto d0y = distance_interval(x0, y, family);
    const auto dxy = distance_interval(x, y, family);
    const double g_lo = std::max(0.0, round_down(0.5 * (d0x.lo + d0y.lo - dxy.hi)));
    const double g_hi = round_up(0.5 * (d0x.hi + d0y.hi - dxy.lo));
    if (g_hi < 0)
        throw CertificationViolation("Gromov product enclosure is negative");
    return ValueInterval{round_down(std::exp(-2 * g_hi)), round_up(std::exp(-2 * g_lo))};
}

enum class CheckStatus { Exact, Certified, Probe };

inline const char* to_string(CheckStatus s) noexcept {
    switch (s) {
    case CheckStatus::Exact: return "exact";
    case CheckStatus::Certified: return "certified";
    case CheckStatus::Probe: return "probe";
    }
    return "?";
}

/// One audited inequality lhs <= rhs (or equality for exact identities).
struct AuditCheck {
    std::string label;
    CheckStatus status;
    double lhs;
    double rhs;
    double tolerance;
    bool passed;
    double margin() const noexcept { return rhs - lhs; }
};

struct AuditReport {
    std::string name;
    std::vector<AuditCheck> checks;

    bool passed() const noexcept {
        return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.passed; });
    }

    const AuditCheck* first_failure() const noexcept {
        for (const auto& c : checks)
            if (!c.passed)
                return &c;
        return nullptr;
    }

    void require() const {
        if (const auto* f = first_failure())
            throw CertificationViolation(name + ": " + f->label + " (lhs " + format_decimal(f->lhs) + ", rhs " +
                                         format_decimal(f->rhs) + ")");
    }

    void add_le(std::string label, CheckStatus status, double lhs, double rhs, double tol) {
        checks.push_back({std::move(label), status, lhs, rhs, tol, lhs <= rhs + tol});
    }

    void add_eq(std::string label, double lhs, double rhs, double tol) {
        checks.push_back({std::move(label), CheckStatus::Exact, lhs, rhs, tol, std::abs(lhs - rhs) <= tol});
    }
};

/// Minsky's i(nu, mu)^2 <= Ext(nu) Ext(mu) in the direction upper bounds can
/// certify, plus the defining-pair equality i(F_v, F_h)^2 = Ext(F_v) Ext(F_h).
template <Scalar S>
AuditReport minsky_audit(const WeightedSurface<S>& x,
                         const std::vector<std::pair<WeightedMulticurve<double>, WeightedMulticurve<double>>>& pairs) {
    AuditReport r{"minsky", {}};
    for (const auto& [nu, mu] : pairs) {
        const double i = intersection(nu, mu);
        const double rhs = ext_interval(x, nu).hi * ext_interval(x, mu).hi;
        r.add_le("i(" + nu.describe() + ", " + mu.describe() + ")^2 <= ExtHi*ExtHi", CheckStatus::Certified, i * i,
                 rhs, 1e-12 * std::max(1.0, rhs));
    }
    const auto fv = defining_foliation(x, Side::Vertical), fh = defining_foliation(x, Side::Horizontal);
    const auto i = intersection(fv, fh);
    const auto lhs = i * i;
    const auto rhs = foliation_ext(x, fv) * foliation_ext(x, fh);
    if constexpr (std::same_as<S, Rational>) {
        r.checks.push_back({"i(F_v, F_h)^2 = Ext(F_v) Ext(F_h)", CheckStatus::Exact, to_double(lhs), to_double(rhs),
                            0.0, lhs == rhs});
    } else {
        r.add_eq("i(F_v, F_h)^2 = Ext(F_v) Ext(F_h)", lhs, rhs, 1e-12 * std::max(1.0, rhs));
    }
    return r;
}

/// Every (horizontal core, vertical core) pair of the host.
inline std::vector<std::pair<WeightedMulticurve<double>, WeightedMulticurve<double>>> core_pairs(const OrigamiRef& o) {
    std::vector<std::pair<WeightedMulticurve<double>, WeightedMulticurve<double>>> out;
    for (std::size_t i = 0; i < o->cylinder_count(Side::Horizontal); ++i)
        for (std::size_t j = 0; j < o->cylinder_count(Side::Vertical); ++j)
            out.emplace_back(WeightedMulticurve<double>::core(o, Side::Horizontal, i),
                             WeightedMulticurve<double>::core(o, Side::Vertical, j));
    return out;
}

/// i(F, gamma) <= i(xi, gamma) with F the unit-area vertical foliation at
/// G(0) and i(xi, .) the ray-normalised Walsh function (the limit of
/// sqrt(Ext_{G(t)}(gamma) / K(G(0), G(t)))).
template <Scalar S>
AuditReport lower_bound_audit(const GeodesicLine& g, const std::vector<WeightedMulticurve<S>>& tests) {
    AuditReport r{"lower-bound", {}};
    const double root_area = std::sqrt(area(point_at(g, 0)));
    for (const auto& gamma : tests) {
        const double lhs = to_double(intersection(g.f_vert(), gamma)) / root_area;
        const double rhs = ray_walsh(g, gamma);
        r.add_le("i(F, " + gamma.describe() + ") <= i(xi, " + gamma.describe() + ")", CheckStatus::Certified, lhs, rhs,
                 1e-12 * std::max(1.0, rhs));
    }
    return r;
}

/// Psi_F <= Psi_xi <= B_xi at each sample point, relative to G(0). A check
/// fails only if the enclosures certify a violation.
inline AuditReport sandwich_audit(const GeodesicLine& g, const std::vector<WeightedSurface<double>>& points,
                                  double horizon, const CurveFamily& family) {
    AuditReport r{"sandwich", {}};
    for (std::size_t k = 0; k < points.size(); ++k) {
        const auto& y = points[k];
        const auto pf = psi_fv_bound(g, y);
        const auto px = psi_xi_bound(g, y, horizon, family);
        const auto b = busemann_bound(g, y, horizon, family);
        const std::string at = "point " + std::to_string(k);
        const double tol = 1e-12;
        r.add_le(at + ": psi_F <= psi_xi", CheckStatus::Certified, pf.lo, px.hi, tol);
        r.add_le(at + ": psi_xi <= B_xi", CheckStatus::Certified, px.lo, b.hi, tol);
        r.add_le(at + ": psi_F <= B_xi", CheckStatus::Certified, pf.lo, b.hi, tol);
    }
    return r;
}

struct DeltaProbe {
    double value = 0;
    std::size_t argmin = 0;
    static constexpr const char* label = "probe";
};

/// min over the family of i(xi, g) + i(eta, g), each g scaled to
/// ExtHi_X0(g) = 1. An upper estimate of delta(xi, eta), never a certificate.
inline DeltaProbe delta_probe(const BusemannSpec& xi, const BusemannSpec& eta, const WeightedSurface<double>& x0,
                              const CurveFamily& family) {
    if (family.empty())
        throw InvalidInput("delta_probe needs a non-empty family");
    DeltaProbe p{std::numeric_limits<double>::infinity(), 0};
    for (std::size_t k = 0; k < family.size(); ++k) {
        const double ext_hi = ext_interval(x0, family[k]).hi;
        if (!(ext_hi > 0))
            continue;
        const double v = (walsh_eval(xi, family[k]) + walsh_eval(eta, family[k])) / std::sqrt(ext_hi);
        if (v < p.value) {
            p.value = v;
            p.argmin = k;
        }
    }
    return p;
}

} // namespace teich
