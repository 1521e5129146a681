#pragma once

// Weighted multicurves supported on cylinder cores, Busemann-point
// specifications and the filling diagnosis.

#include "errors.hpp"
#include "matrix.hpp"
#include "origami.hpp"
#include "perron.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace teich {

/// Sum of w_i * gamma_i over disjoint cores of one side of an origami.
/// Components are kept in canonical cylinder order.
template <Scalar S>
class WeightedMulticurve {
public:
    struct Component {
        std::size_t index; ///< cylinder index on `side`
        S weight;
    };

    WeightedMulticurve(OrigamiRef host, Side side, std::vector<Component> components)
        : host_(std::move(host)), side_(side), components_(std::move(components)) {
        if (!host_)
            throw InvalidInput("multicurve needs a host origami");
        std::sort(components_.begin(), components_.end(),
                  [](const Component& a, const Component& b) { return a.index < b.index; });
        for (std::size_t k = 0; k < components_.size(); ++k) {
            if (components_[k].index >= host_->cylinder_count(side_))
                throw InvalidInput("multicurve component outside the host's cylinders");
            if (!(components_[k].weight > 0))
                throw InvalidInput("multicurve weights must be positive");
            if (k > 0 && components_[k].index == components_[k - 1].index)
                throw InvalidInput("repeated multicurve component");
        }
    }

    static WeightedMulticurve from_weights(OrigamiRef host, Side side, const std::map<std::string, S>& weights) {
        std::vector<Component> cs;
        for (const auto& [id, w] : weights)
            cs.push_back({host->index_of(id, side), w});
        return WeightedMulticurve(std::move(host), side, std::move(cs));
    }

    /// Dense weights over every cylinder of `side`; zeros are dropped.
    static WeightedMulticurve from_dense(OrigamiRef host, Side side, const std::vector<S>& dense) {
        if (dense.size() != host->cylinder_count(side))
            throw InvalidInput("dense weight vector has the wrong length");
        std::vector<Component> cs;
        for (std::size_t i = 0; i < dense.size(); ++i) {
            if (dense[i] < 0)
                throw InvalidInput("multicurve weights must be nonnegative");
            if (dense[i] > 0)
                cs.push_back({i, dense[i]});
        }
        return WeightedMulticurve(std::move(host), side, std::move(cs));
    }

    static WeightedMulticurve core(OrigamiRef host, Side side, std::size_t index, S weight = S(1)) {
        return WeightedMulticurve(std::move(host), side, {{index, weight}});
    }

    static WeightedMulticurve core(OrigamiRef host, const std::string& id) {
        auto hit = host->find(id);
        if (!hit)
            throw InvalidInput("no cylinder \"" + id + "\"");
        return core(std::move(host), hit->first, hit->second);
    }

    const OrigamiRef& host() const noexcept { return host_; }
    Side side() const noexcept { return side_; }
    const std::vector<Component>& components() const noexcept { return components_; }
    bool empty() const noexcept { return components_.empty(); }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> s;
        for (const auto& c : components_)
            s.push_back(c.index);
        return s;
    }

    std::vector<S> dense() const {
        std::vector<S> d(host_->cylinder_count(side_), S(0));
        for (const auto& c : components_)
            d[c.index] = c.weight;
        return d;
    }

    WeightedMulticurve scaled(const S& r) const {
        if (!(r > 0))
            throw InvalidInput("scale factor must be positive");
        auto cs = components_;
        for (auto& c : cs)
            c.weight *= r;
        return WeightedMulticurve(host_, side_, std::move(cs));
    }

    template <Scalar T>
    WeightedMulticurve<T> cast() const {
        std::vector<typename WeightedMulticurve<T>::Component> cs;
        for (const auto& c : components_)
            cs.push_back({c.index, scalar_cast<T>(c.weight)});
        return WeightedMulticurve<T>(host_, side_, std::move(cs));
    }

    std::string describe() const {
        std::string out;
        for (const auto& c : components_) {
            if (!out.empty())
                out += " + ";
            out += format_scalar(c.weight) + "*" + host_->cylinders(side_)[c.index].id;
        }
        return out.empty() ? "0" : out;
    }

private:
    OrigamiRef host_;
    Side side_;
    std::vector<Component> components_;
};

/// A Busemann point given by i(xi, .)^2 = sum_i c_i^2 i(gamma_i, .)^2 over
/// disjoint cores gamma_i of one side.
class BusemannSpec {
public:
    struct Component {
        std::size_t index;
        double coeff;
    };

    BusemannSpec(OrigamiRef host, Side side, std::vector<Component> components, bool approx = false)
        : host_(std::move(host)), side_(side), components_(std::move(components)), approx_(approx) {
        if (!host_)
            throw InvalidInput("Busemann spec needs a host origami");
        if (components_.empty())
            throw InvalidInput("Busemann spec needs at least one component");
        std::sort(components_.begin(), components_.end(),
                  [](const Component& a, const Component& b) { return a.index < b.index; });
        for (std::size_t k = 0; k < components_.size(); ++k) {
            if (components_[k].index >= host_->cylinder_count(side_))
                throw InvalidInput("Busemann component outside the host's cylinders");
            if (!(components_[k].coeff > 0) || !std::isfinite(components_[k].coeff))
                throw InvalidInput("Busemann coefficients must be positive");
            if (k > 0 && components_[k].index == components_[k - 1].index)
                throw InvalidInput("repeated Busemann component");
        }
    }

    static BusemannSpec from_coeffs(OrigamiRef host, Side side,
                                    const std::vector<std::pair<std::string, double>>& coeffs, bool approx = false) {
        std::vector<Component> cs;
        for (const auto& [id, c] : coeffs)
            cs.push_back({host->index_of(id, side), c});
        return BusemannSpec(std::move(host), side, std::move(cs), approx);
    }

    /// Unit coefficients on every core of `side`.
    static BusemannSpec all_cores(OrigamiRef host, Side side) {
        std::vector<Component> cs;
        for (std::size_t i = 0; i < host->cylinder_count(side); ++i)
            cs.push_back({i, 1.0});
        return BusemannSpec(std::move(host), side, std::move(cs));
    }

    const OrigamiRef& host() const noexcept { return host_; }
    Side side() const noexcept { return side_; }
    const std::vector<Component>& components() const noexcept { return components_; }
    bool approx() const noexcept { return approx_; }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> s;
        for (const auto& c : components_)
            s.push_back(c.index);
        return s;
    }

    std::vector<double> coeffs() const {
        std::vector<double> c;
        for (const auto& comp : components_)
            c.push_back(comp.coeff);
        return c;
    }

    BusemannSpec scaled(double r) const {
        auto cs = components_;
        for (auto& c : cs)
            c.coeff *= r;
        return BusemannSpec(host_, side_, std::move(cs), approx_);
    }

    bool empty() const noexcept { return components_.empty(); }

private:
    OrigamiRef host_;
    Side side_;
    std::vector<Component> components_;
    bool approx_;
};

namespace detail {

inline void require_same_host(const OrigamiRef& a, const OrigamiRef& b) {
    if (a != b && !(*a == *b))
        throw InvalidInput("objects live on different origamis");
}

} // namespace detail

/// a^T N b for multicurves on opposite sides; N's rows must be A's side.
template <Scalar SA, Scalar SB>
promote_t<SA, SB> pair_intersection(const WeightedMulticurve<SA>& a, const WeightedMulticurve<SB>& b,
                                    const IntersectionMatrix& n) {
    using R = promote_t<SA, SB>;
    detail::require_same_host(a.host(), b.host());
    if (a.side() == b.side())
        throw InvalidInput("pair_intersection needs multicurves on opposite sides");
    if (n.row_side() != a.side())
        throw InvalidInput("intersection matrix rows do not match the first argument's side");
    if (n.rows() != a.host()->cylinder_count(a.side()) || n.cols() != b.host()->cylinder_count(b.side()))
        throw InvalidInput("intersection matrix dimension mismatch");
    R total(0);
    for (const auto& ca : a.components())
        for (const auto& cb : b.components()) {
            const auto& nij = n(ca.index, cb.index);
            if (nij == 0)
                continue;
            total += scalar_cast<R>(ca.weight) * scalar_cast<R>(nij) * scalar_cast<R>(cb.weight);
        }
    return total;
}

/// Same pairing using the host's own matrix; same-side multicurves are
/// disjoint and pair to zero.
template <Scalar SA, Scalar SB>
promote_t<SA, SB> intersection(const WeightedMulticurve<SA>& a, const WeightedMulticurve<SB>& b) {
    detail::require_same_host(a.host(), b.host());
    if (a.side() == b.side())
        return promote_t<SA, SB>(0);
    const auto& n = a.host()->intersection_matrix();
    return a.side() == n.row_side() ? pair_intersection(a, b, n) : pair_intersection(a, b, n.transposed());
}

/// Every core of the host, horizontal cores first, in canonical order.
inline std::vector<WeightedMulticurve<Rational>> all_cores(const OrigamiRef& host) {
    std::vector<WeightedMulticurve<Rational>> out;
    for (Side side : {Side::Horizontal, Side::Vertical})
        for (std::size_t i = 0; i < host->cylinder_count(side); ++i)
            out.push_back(WeightedMulticurve<Rational>::core(host, side, i));
    return out;
}

enum class FillingStatus { FillingCertified, MatrixPrimitiveOnly, NotFilling };

inline const char* to_string(FillingStatus s) noexcept {
    switch (s) {
    case FillingStatus::FillingCertified: return "FillingCertified";
    case FillingStatus::MatrixPrimitiveOnly: return "MatrixPrimitiveOnly";
    case FillingStatus::NotFilling: return "NotFilling";
    }
    return "?";
}

template <class T>
concept CoreSupported = requires(const T& t) {
    { t.host() } -> std::convertible_to<OrigamiRef>;
    { t.side() } -> std::convertible_to<Side>;
    { t.support() } -> std::convertible_to<std::vector<std::size_t>>;
};

/// Filling diagnosis from the restriction of N to the two supports. Only the
/// full-core case is certified topologically; proper subsets get the matrix
/// shadow only.
template <CoreSupported A, CoreSupported B>
FillingStatus filling_status(const A& a, const B& b, const IntersectionMatrix& n) {
    detail::require_same_host(a.host(), b.host());
    const auto sa = a.support(), sb = b.support();
    if (sa.empty() || sb.empty())
        throw InvalidInput("filling_status on an empty component set");
    // Cores of one side are pairwise disjoint.
    if (a.side() == b.side())
        return FillingStatus::NotFilling;
    const IntersectionMatrix oriented = n.row_side() == a.side() ? n : n.transposed();
    if (!is_primitive(oriented.submatrix(sa, sb)))
        return FillingStatus::NotFilling;
    const bool full = sa.size() == oriented.rows() && sb.size() == oriented.cols();
    return full ? FillingStatus::FillingCertified : FillingStatus::MatrixPrimitiveOnly;
}

template <CoreSupported A, CoreSupported B>
FillingStatus filling_status(const A& a, const B& b) {
    return filling_status(a, b, a.host()->intersection_matrix());
}

} // namespace teich
