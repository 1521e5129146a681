#pragma once

// The optimal geodesic between two filling Busemann points.
//
// With xi = sqrt(sum c_i^2 i(gamma_i, .)^2) on vertical cores and
// eta = sqrt(sum d_j^2 i(delta_j, .)^2) on horizontal cores, the line's
// vertical foliation is sum x_i c_i gamma_i and its horizontal foliation is
// sum y_j d_j delta_j, where x is the Perron vector of M M^T with
// M_ij = c_i d_j i(gamma_i, delta_j) and y = M^T x / sqrt(lambda).

#include "errors.hpp"
#include "interval.hpp"
#include "multicurve.hpp"
#include "perron.hpp"
#include "surface.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

namespace teich {

/// Cosine threshold for the forward/backward limit certificates.
inline constexpr double kWalshCosineFloor = 1 - 1e-9;

struct BusemannSystemSolution {
    PerronResult eigen;
    double scale = 0;                      ///< sqrt(lambda)
    std::vector<double> x;                 ///< Perron vector, max-norm 1
    std::vector<double> y;                 ///< M^T x / sqrt(lambda)
    std::vector<double> vertical_weights;  ///< x_i c_i
    std::vector<double> horizontal_weights; ///< y_j d_j
    double closure_residual = 0;           ///< max |x s - M y|, |y s - M^T x|
};

/// Solves the rescaled system on a bare intersection matrix whose rows are
/// the xi-components and columns the eta-components.
inline BusemannSystemSolution solve_busemann_system(const IntersectionMatrix& xi_by_eta, std::span<const double> c,
                                                    std::span<const double> d, const PerronOptions& opt = {}) {
    const std::size_t k = xi_by_eta.rows(), l = xi_by_eta.cols();
    if (c.size() != k || d.size() != l)
        throw InvalidInput("coefficient count does not match the intersection matrix");
    for (double v : c)
        if (!(v > 0))
            throw InvalidInput("xi coefficients must be positive");
    for (double v : d)
        if (!(v > 0))
            throw InvalidInput("eta coefficients must be positive");
    if (!is_primitive(xi_by_eta))
        throw NotFilling("intersection graph of the two supports has a zero line or is disconnected");

    DenseMatrix<double> m(k, l);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < l; ++j)
            m(i, j) = c[i] * d[j] * to_double(xi_by_eta(i, j));
    const auto mt = m.transposed();
    auto t = m * mt;
    // Round-off can break exact symmetry of the product.
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < i; ++j)
            t(i, j) = t(j, i);

    BusemannSystemSolution sol;
    sol.eigen = perron_solve(t, opt);
    sol.scale = std::sqrt(sol.eigen.lambda);

    const double xmax = *std::max_element(sol.eigen.x.begin(), sol.eigen.x.end());
    sol.x = sol.eigen.x;
    for (double& e : sol.x)
        e /= xmax;
    sol.y = mt * sol.x;
    for (double& e : sol.y)
        e /= sol.scale;

    const auto my = m * sol.y;
    const auto mtx = mt * sol.x;
    for (std::size_t i = 0; i < k; ++i)
        sol.closure_residual = std::max(sol.closure_residual, std::abs(sol.x[i] * sol.scale - my[i]));
    for (std::size_t j = 0; j < l; ++j)
        sol.closure_residual = std::max(sol.closure_residual, std::abs(sol.y[j] * sol.scale - mtx[j]));
    if (sol.closure_residual > 10 * opt.tol * std::max(1.0, sol.scale))
        throw CertificationViolation("system closure residual " + format_decimal(sol.closure_residual, 3));

    for (std::size_t i = 0; i < k; ++i)
        sol.vertical_weights.push_back(sol.x[i] * c[i]);
    for (std::size_t j = 0; j < l; ++j)
        sol.horizontal_weights.push_back(sol.y[j] * d[j]);
    for (double w : sol.vertical_weights)
        if (!(w > 0))
            throw CertificationViolation("non-positive vertical weight");
    for (double w : sol.horizontal_weights)
        if (!(w > 0))
            throw CertificationViolation("non-positive horizontal weight");
    return sol;
}

/// Walsh's formula sqrt(sum_i i(F_i, mu)^2 / i(F_i, F_t)) evaluated on each
/// test curve, where F_i = w_i * gamma_i are the components of `components`
/// and F_t is the transverse foliation.
template <Scalar S>
std::vector<double> walsh_limit_values(const WeightedMulticurve<double>& components,
                                       const WeightedMulticurve<double>& transverse,
                                       const std::vector<WeightedMulticurve<S>>& tests) {
    std::vector<double> denom;
    for (const auto& comp : components.components()) {
        auto f = WeightedMulticurve<double>::core(components.host(), components.side(), comp.index, comp.weight);
        denom.push_back(intersection(f, transverse));
    }
    std::vector<double> out;
    for (const auto& mu : tests) {
        double sum = 0;
        std::size_t k = 0;
        for (const auto& comp : components.components()) {
            auto f = WeightedMulticurve<double>::core(components.host(), components.side(), comp.index, comp.weight);
            const double v = intersection(f, mu);
            sum += v * v / denom[k++];
        }
        out.push_back(std::sqrt(sum));
    }
    return out;
}

inline std::vector<double> l2_normalized(std::vector<double> v) {
    double n = 0;
    for (double e : v)
        n += e * e;
    n = std::sqrt(n);
    if (n > 0)
        for (double& e : v)
            e /= n;
    return v;
}

inline double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw InvalidInput("cosine of vectors of different length");
    double ab = 0, aa = 0, bb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    if (aa == 0 || bb == 0)
        return 0;
    return ab / std::sqrt(aa * bb);
}

struct WalshCertificate {
    double forward_cosine = 0;
    double backward_cosine = 0;
    bool ok() const noexcept { return forward_cosine > kWalshCosineFloor && backward_cosine > kWalshCosineFloor; }
};

/// Walsh-limit certificate for a solution on a bare matrix. The test curves
/// are the eta-side curves followed by the xi-side curves; curves on the same
/// side are disjoint.
inline WalshCertificate abstract_walsh_certificate(const IntersectionMatrix& xi_by_eta, std::span<const double> c,
                                                   std::span<const double> d, const BusemannSystemSolution& sol) {
    const std::size_t k = xi_by_eta.rows(), l = xi_by_eta.cols();
    const auto n = xi_by_eta.real();
    const auto& w = sol.vertical_weights;
    const auto& h = sol.horizontal_weights;
    std::vector<double> forward(k + l, 0.0), backward(k + l, 0.0), xi_direct(k + l, 0.0), eta_direct(k + l, 0.0);
    for (std::size_t j = 0; j < l; ++j)
        for (std::size_t i = 0; i < k; ++i) {
            double transverse = 0;
            for (std::size_t jj = 0; jj < l; ++jj)
                transverse += n(i, jj) * h[jj];
            const double meet = w[i] * n(i, j);
            forward[j] += meet * meet / (w[i] * transverse);
            xi_direct[j] += c[i] * c[i] * n(i, j) * n(i, j);
        }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            double transverse = 0;
            for (std::size_t ii = 0; ii < k; ++ii)
                transverse += n(ii, j) * w[ii];
            const double meet = h[j] * n(i, j);
            backward[l + i] += meet * meet / (h[j] * transverse);
            eta_direct[l + i] += d[j] * d[j] * n(i, j) * n(i, j);
        }
    for (auto* v : {&forward, &backward, &xi_direct, &eta_direct})
        for (double& e : *v)
            e = std::sqrt(e);
    return {cosine_similarity(forward, xi_direct), cosine_similarity(backward, eta_direct)};
}

/// Bi-infinite Teichmueller geodesic built from two Busemann points.
class GeodesicLine {
public:
    GeodesicLine(BusemannSpec xi, BusemannSpec eta, BusemannSystemSolution solution, FillingStatus status,
                 const PerronOptions& opt)
        : xi_(std::move(xi)), eta_(std::move(eta)), solution_(std::move(solution)), status_(status),
          base_(xi_.host(), dense_on(eta_, solution_.horizontal_weights), dense_on(xi_, solution_.vertical_weights)),
          f_vert_(defining_foliation(base_, Side::Vertical)), f_hor_(defining_foliation(base_, Side::Horizontal)),
          tol_(opt.tol) {
        const double a = area(base_);
        const double pairing = intersection(f_hor_, f_vert_);
        if (std::abs(a - pairing) > 1e-12 * a)
            throw CertificationViolation("area differs from i(F_h, F_v)");
    }

    const OrigamiRef& host() const noexcept { return xi_.host(); }
    const BusemannSpec& xi() const noexcept { return xi_; }
    const BusemannSpec& eta() const noexcept { return eta_; }
    const PerronResult& eigen() const noexcept { return solution_.eigen; }
    const BusemannSystemSolution& solution() const noexcept { return solution_; }
    double scale_factor() const noexcept { return solution_.scale; }
    FillingStatus filling() const noexcept { return status_; }
    double tolerance() const noexcept { return tol_; }

    /// Time-0 point in this line's own time direction.
    const WeightedSurface<double>& base_surface() const noexcept { return base_; }
    /// Foliation whose measure grows along positive time (F_v for a fresh line).
    const WeightedMulticurve<double>& f_vert() const noexcept { return f_vert_; }
    /// Foliation whose measure shrinks along positive time (F_h for a fresh line).
    const WeightedMulticurve<double>& f_hor() const noexcept { return f_hor_; }
    /// +1, or -1 once reversed: point_at(t) flows by time_sign * t.
    int time_sign() const noexcept { return time_sign_; }

    CurveFamily defining_family() const { return {f_vert_, f_hor_}; }

    /// Same geodesic traversed backwards: the roles of F_v and F_h and of
    /// xi and eta swap, and t is negated.
    GeodesicLine reversed() const {
        GeodesicLine r = *this;
        std::swap(r.f_vert_, r.f_hor_);
        std::swap(r.xi_, r.eta_);
        r.time_sign_ = -time_sign_;
        return r;
    }

private:
    static std::vector<double> dense_on(const BusemannSpec& spec, const std::vector<double>& weights) {
        std::vector<double> d(spec.host()->cylinder_count(spec.side()), 0.0);
        for (std::size_t k = 0; k < spec.components().size(); ++k)
            d[spec.components()[k].index] = weights.at(k);
        return d;
    }

    BusemannSpec xi_;
    BusemannSpec eta_;
    BusemannSystemSolution solution_;
    FillingStatus status_;
    WeightedSurface<double> base_;
    WeightedMulticurve<double> f_vert_;
    WeightedMulticurve<double> f_hor_;
    double tol_;
    int time_sign_ = 1;
};

/// The point at time t: widths times e^t, heights times e^-t.
inline WeightedSurface<double> point_at(const GeodesicLine& g, double t) {
    if (!std::isfinite(t))
        throw InvalidInput("geodesic time must be finite");
    const double s = g.time_sign() * t;
    return g.base_surface().scaled(std::exp(s), std::exp(-s));
}

/// Walsh-limit of the line as t -> +infinity, on every core, l2-normalised.
inline std::vector<double> forward_limit(const GeodesicLine& g) {
    return l2_normalized(walsh_limit_values(g.f_vert(), g.f_hor(), all_cores(g.host())));
}

/// Limit as t -> -infinity: components of F_h measured against F_v.
inline std::vector<double> backward_limit(const GeodesicLine& g) {
    return l2_normalized(walsh_limit_values(g.f_hor(), g.f_vert(), all_cores(g.host())));
}

/// sqrt(sum_i c_i^2 i(gamma_i, mu)^2).
template <Scalar S>
double walsh_eval(const BusemannSpec& xi, const WeightedMulticurve<S>& mu) {
    detail::require_same_host(xi.host(), mu.host());
    double sum = 0;
    for (const auto& comp : xi.components()) {
        auto gamma = WeightedMulticurve<double>::core(xi.host(), xi.side(), comp.index);
        const double v = to_double(intersection(gamma, mu));
        sum += comp.coeff * comp.coeff * v * v;
    }
    return std::sqrt(sum);
}

inline std::vector<double> walsh_profile(const BusemannSpec& xi) {
    std::vector<double> out;
    for (const auto& mu : all_cores(xi.host()))
        out.push_back(walsh_eval(xi, mu));
    return out;
}

inline WalshCertificate walsh_certificate(const GeodesicLine& g) {
    return {cosine_similarity(forward_limit(g), walsh_profile(g.xi())),
            cosine_similarity(backward_limit(g), walsh_profile(g.eta()))};
}

/// The unique geodesic whose forward limit is xi and backward limit is eta.
/// xi must sit on vertical cores and eta on horizontal cores, both full.
inline GeodesicLine optimal_geodesic(const BusemannSpec& xi, const BusemannSpec& eta, const PerronOptions& opt = {}) {
    detail::require_same_host(xi.host(), eta.host());
    if (xi.side() == eta.side())
        throw NotFilling("both Busemann points sit on " + std::string(to_string(xi.side())) +
                         " cores and are disjoint");
    if (xi.side() != Side::Vertical)
        throw InvalidInput("xi must be supported on vertical cores and eta on horizontal cores");

    const auto& n = xi.host()->intersection_matrix(); // rows horizontal
    const auto status = filling_status(xi, eta, n);
    if (status == FillingStatus::NotFilling)
        throw NotFilling("intersection graph of the supports is disconnected or has a zero line");
    if (status == FillingStatus::MatrixPrimitiveOnly)
        throw NotFilling("supports use a proper subset of cores; the flat surface is not realizable on this origami");

    const auto xi_by_eta = n.transposed().submatrix(xi.support(), eta.support());
    const auto c = xi.coeffs(), d = eta.coeffs();
    auto sol = solve_busemann_system(xi_by_eta, c, d, opt);
    GeodesicLine line(xi, eta, std::move(sol), status, opt);
    const auto cert = walsh_certificate(line);
    if (!cert.ok())
        throw WalshMismatch("forward cosine " + format_decimal(cert.forward_cosine) + ", backward cosine " +
                            format_decimal(cert.backward_cosine));
    return line;
}

/// |t - s|, cross-checked against the certified distance interval.
inline double flow_distance(const GeodesicLine& g, double s, double t, double tol = 1e-12) {
    const double d = std::abs(t - s);
    const auto iv = distance_interval(point_at(g, s), point_at(g, t), g.defining_family(), tol);
    if (!iv.contains(d, tol) || iv.width() > tol * std::max(1.0, d))
        throw CertificationViolation("flow distance " + format_decimal(d) + " not pinned by [" +
                                     format_decimal(iv.lo) + ", " + format_decimal(iv.hi) + "]");
    return d;
}

} // namespace teich
