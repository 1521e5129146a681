#pragma once

// Seeded invariant suites behind `teich check` and the acceptance run.
// Every case is drawn from one mt19937_64 per suite, so a suite's output
// depends only on (seed, sizes, tolerance).

#include "catalog.hpp"
#include "errors.hpp"
#include "geodesic.hpp"
#include "horo.hpp"
#include "oracle.hpp"
#include "origami.hpp"
#include "perron.hpp"
#include "surface.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace teich {

struct SuiteSizes {
    std::size_t random_origamis = 100;
    std::size_t eigen_instances = 200;
    std::size_t primitivity_instances = 500;
    std::size_t minsky_surfaces = 100;
    std::size_t sandwich_points = 100;
    std::size_t walsh_instances = 50;
    std::size_t walsh_origamis = 20;
    std::size_t interval_pairs = 200;
};

struct SuiteResult {
    SuiteResult(std::string suite, std::uint64_t s) : name(std::move(suite)), seed(s) {}

    std::string name;
    std::uint64_t seed = 0;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;
    /// Smallest slack seen over the passing checks; negative on failure.
    double min_margin = std::numeric_limits<double>::infinity();

    bool passed() const noexcept { return failures == 0; }

    void record(bool ok, double margin, const std::string& what) {
        ++cases;
        min_margin = std::min(min_margin, margin);
        if (!ok && failures++ == 0)
            first_failure = what;
    }

    /// Runs one case, turning a library error into a failed case.
    template <class F>
    void guard(const std::string& what, F&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            record(false, -std::numeric_limits<double>::infinity(), what + ": " + e.what());
        }
    }
};

struct SuiteConfig {
    std::uint64_t seed = 1;
    double tol = 1e-12;
    double horizon = 8;
    SuiteSizes sizes;
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"gauss-bonnet", "perron",  "primitivity", "minsky",
                                                "sandwich",     "walsh",   "intervals"};
    return names;
}

namespace detail {

inline std::uint64_t suite_seed(std::uint64_t seed, const std::string& name) {
    const auto& names = suite_names();
    const auto k = static_cast<std::uint64_t>(std::find(names.begin(), names.end(), name) - names.begin());
    return seed + 0x9e3779b97f4a7c15ULL * (k + 1);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

inline WeightedSurface<double> random_surface(std::mt19937_64& rng, const OrigamiRef& o, double lo = 0.2,
                                              double hi = 5) {
    std::vector<double> h(o->cylinder_count(Side::Horizontal)), w(o->cylinder_count(Side::Vertical));
    for (double& e : h)
        e = log_uniform(rng, lo, hi);
    for (double& e : w)
        e = log_uniform(rng, lo, hi);
    return WeightedSurface<double>(o, std::move(h), std::move(w));
}

inline OrigamiRef pick_catalog(std::mt19937_64& rng) {
    const auto& cat = origami_catalog();
    std::uniform_int_distribution<std::size_t> pick(0, cat.size() - 1);
    const auto& e = cat[pick(rng)];
    return make_origami(e.h, e.v);
}

/// Primitive k x l matrix, k, l in [1, max_dim], entries in [0, max_entry].
inline IntersectionMatrix random_primitive(std::mt19937_64& rng, std::size_t max_dim, int max_entry) {
    std::uniform_int_distribution<std::size_t> dim(1, max_dim);
    for (;;) {
        const std::size_t k = dim(rng), l = dim(rng);
        auto n = random_intersection_matrix(rng, k, l, max_entry);
        if (is_primitive(n))
            return n;
    }
}

inline GeodesicLine golden_line(double tol) {
    auto o = catalog_origami("L22");
    PerronOptions opt;
    opt.tol = tol;
    return optimal_geodesic(BusemannSpec::all_cores(o, Side::Vertical), BusemannSpec::all_cores(o, Side::Horizontal),
                            opt);
}

inline CurveFamily full_family(const GeodesicLine& g) {
    auto fam = g.defining_family();
    for (auto& c : as_family(all_cores(g.host())))
        fam.push_back(std::move(c));
    return fam;
}

inline double relative_margin(double bound, double err) { return (bound - err) / bound; }

} // namespace detail

/// Genus from the corner walk against the catalog, Gauss-Bonnet and the
/// row/column partition of N on built-ins and random permutation pairs.
inline SuiteResult suite_gauss_bonnet(const SuiteConfig& cfg) {
    SuiteResult r("gauss-bonnet", cfg.seed);
    for (const auto& e : origami_catalog())
        r.guard(e.name, [&] {
            auto o = make_origami(e.h, e.v);
            const bool ok = o->genus() == e.genus && gauss_bonnet_holds(o->structure()) && partition_holds(*o);
            r.record(ok, ok ? 0 : -1, e.name + ": genus or Gauss-Bonnet identity");
        });
    std::mt19937_64 rng(detail::suite_seed(cfg.seed, r.name));
    std::uniform_int_distribution<int> size(3, 10);
    for (std::size_t k = 0; k < cfg.sizes.random_origamis; ++k) {
        const std::string what = "random origami " + std::to_string(k);
        r.guard(what, [&] {
            auto o = random_origami(rng, size(rng));
            const bool ok = gauss_bonnet_holds(o->structure()) && partition_holds(*o);
            r.record(ok, ok ? 0 : -1, what + ": Gauss-Bonnet or partition identity");
        });
    }
    return r;
}

/// Power iteration against the characteristic-polynomial oracle (k <= 3)
/// and ray agreement over the seeded restarts.
inline SuiteResult suite_perron(const SuiteConfig& cfg) {
    SuiteResult r("perron", cfg.seed);
    std::mt19937_64 rng(detail::suite_seed(cfg.seed, r.name));
    PerronOptions opt;
    opt.tol = cfg.tol;
    for (std::size_t k = 0; k < cfg.sizes.eigen_instances; ++k) {
        const std::string what = "eigen instance " + std::to_string(k);
        r.guard(what, [&] {
            const auto n = detail::random_primitive(rng, 3, 3);
            const auto res = perron_solve(gram(n).cast<double>(), opt);
            const double exact = static_cast<double>(oracle::largest_eigenvalue(n));
            const double bound = 1e-10 * std::max(1.0, exact);
            const double err = std::abs(res.lambda - exact);
            r.record(err <= bound, detail::relative_margin(bound, err), what + ": eigenvalue differs from the oracle");
            r.record(res.ray_spread <= 1e-8, detail::relative_margin(1e-8, res.ray_spread),
                     what + ": restarts left the ray");
            r.record(res.residual <= cfg.tol, detail::relative_margin(cfg.tol, res.residual),
                     what + ": residual above tolerance");
        });
    }
    return r;
}

/// is_primitive against the Wielandt power oracle.
inline SuiteResult suite_primitivity(const SuiteConfig& cfg) {
    SuiteResult r("primitivity", cfg.seed);
    std::mt19937_64 rng(detail::suite_seed(cfg.seed, r.name));
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    std::bernoulli_distribution zero(0.55);
    std::uniform_int_distribution<int> entry(1, 3);
    for (std::size_t k = 0; k < cfg.sizes.primitivity_instances; ++k) {
        const std::string what = "matrix " + std::to_string(k);
        r.guard(what, [&] {
            const std::size_t rows = dim(rng), cols = dim(rng);
            DenseMatrix<Rational> m(rows, cols);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j)
                    m(i, j) = zero(rng) ? 0 : entry(rng);
            const IntersectionMatrix n(std::move(m));
            // The oracle decides primitivity of N N^T; zero columns of N are
            // invisible to it, so compare on the columns that are used.
            std::vector<std::size_t> used_rows, used_cols;
            for (std::size_t i = 0; i < rows; ++i)
                used_rows.push_back(i);
            for (std::size_t j = 0; j < cols; ++j) {
                bool any = false;
                for (std::size_t i = 0; i < rows; ++i)
                    any = any || n(i, j) > 0;
                if (any)
                    used_cols.push_back(j);
            }
            const bool lib = !used_cols.empty() && is_primitive(n.submatrix(used_rows, used_cols));
            const bool ref = oracle::primitive_by_powers(n);
            r.record(lib == ref, lib == ref ? 0 : -1, what + ": is_primitive disagrees with the power oracle");
        });
    }
    return r;
}

/// Minsky's inequality on all core pairs, and the exact defining-pair
/// equality over rational weights.
inline SuiteResult suite_minsky(const SuiteConfig& cfg) {
    SuiteResult r("minsky", cfg.seed);
    std::mt19937_64 rng(detail::suite_seed(cfg.seed, r.name));
    std::uniform_int_distribution<int> num(1, 9);
    auto take = [&](const AuditReport& rep, const std::string& what) {
        for (const auto& c : rep.checks)
            r.record(c.passed, c.margin(), what + ": " + c.label);
    };
    for (std::size_t k = 0; k < cfg.sizes.minsky_surfaces; ++k) {
        const std::string what = "surface " + std::to_string(k);
        r.guard(what, [&] {
            auto o = detail::pick_catalog(rng);
            take(minsky_audit(detail::random_surface(rng, o), core_pairs(o)), what);
            std::vector<Rational> h, w;
            for (std::size_t i = 0; i < o->cylinder_count(Side::Horizontal); ++i)
                h.emplace_back(num(rng), num(rng));
            for (std::size_t j = 0; j < o->cylinder_count(Side::Vertical); ++j)
                w.emplace_back(num(rng), num(rng));
            take(minsky_audit(WeightedSurface<Rational>(o, h, w), core_pairs(o)), what + " (exact)");
        });
    }
    return r;
}

/// Psi_F <= Psi_xi <= B_xi at jittered points off the golden line, plus the
/// lower-bound audit on every core.
inline SuiteResult suite_sandwich(const SuiteConfig& cfg) {
    SuiteResult r("sandwich", cfg.seed);
    std::mt19937_64 rng(detail::suite_seed(cfg.seed, r.name));
    r.guard("golden line", [&] {
        const auto g = detail::golden_line(cfg.tol);
        const auto family = detail::full_family(g);
        for (const auto& c : lower_bound_audit(g, all_cores(g.host())).checks)
            r.record(c.passed, c.margin(), "lower bound: " + c.label);
        std::uniform_real_distribution<double> time(-2, 2), jitter(-0.5, 0.5);
        std::vector<WeightedSurface<double>> points;
        for (std::size_t k = 0; k < cfg.sizes.sandwich_points; ++k) {
            const auto p = point_at(g, time(rng));
            auto h = p.heights();
            auto w = p.widths();
            for (double& e : h)
                e *= std::exp(jitter(rng));
            for (double& e : w)
                e *= std::exp(jitter(rng));
            points.emplace_back(g.host(), std::move(h), std::move(w));
        }
        for (const auto& c : sandwich_audit(g, points, cfg.horizon, family).checks)
            r.record(c.passed, c.margin(), c.label);
    });
    return r;
}

/// Forward and backward limits against i(xi, .) and i(eta, .): the golden
/// line, random primitive matrices and random origamis.
inline SuiteResult suite_walsh(const SuiteConfig& cfg) {
    SuiteResult r("walsh", cfg.seed);
    std::mt19937_64 rng(detail::suite_seed(cfg.seed, r.name));
    PerronOptions opt;
    opt.tol = cfg.tol;
    auto take = [&](const WalshCertificate& c, const std::string& what) {
        const double m = std::min(c.forward_cosine, c.backward_cosine) - kWalshCosineFloor;
        r.record(c.ok(), m, what + ": Walsh cosine below the floor");
    };
    r.guard("golden line", [&] { take(walsh_certificate(detail::golden_line(cfg.tol)), "golden line"); });
    std::uniform_real_distribution<double> coeff(0.5, 2.0);
    for (std::size_t k = 0; k < cfg.sizes.walsh_instances; ++k) {
        const std::string what = "matrix instance " + std::to_string(k);
        r.guard(what, [&] {
            const auto n = detail::random_primitive(rng, 4, 3);
            std::vector<double> c(n.rows()), d(n.cols());
            for (double& e : c)
                e = coeff(rng);
            for (double& e : d)
                e = coeff(rng);
            const auto sol = solve_busemann_system(n, c, d, opt);
            take(abstract_walsh_certificate(n, c, d, sol), what);
        });
    }
    std::uniform_int_distribution<int> size(3, 8);
    for (std::size_t k = 0; k < cfg.sizes.walsh_origamis; ++k) {
        const std::string what = "origami instance " + std::to_string(k);
        r.guard(what, [&] {
            auto o = random_origami(rng, size(rng));
            std::vector<BusemannSpec::Component> xs, es;
            for (std::size_t j = 0; j < o->cylinder_count(Side::Vertical); ++j)
                xs.push_back({j, coeff(rng)});
            for (std::size_t i = 0; i < o->cylinder_count(Side::Horizontal); ++i)
                es.push_back({i, coeff(rng)});
            const auto g = optimal_geodesic(BusemannSpec(o, Side::Vertical, xs),
                                             BusemannSpec(o, Side::Horizontal, es), opt);
            take(walsh_certificate(g), what);
        });
    }
    return r;
}

/// kerckhoff_lower <= qc_upper on random pairs, defining-foliation Ext
/// inside the core bounds, and collapsed intervals along Teichmueller flow.
inline SuiteResult suite_intervals(const SuiteConfig& cfg) {
    SuiteResult r("intervals", cfg.seed);
    std::mt19937_64 rng(detail::suite_seed(cfg.seed, r.name));
    std::uniform_real_distribution<double> time(-4, 4);
    for (std::size_t k = 0; k < cfg.sizes.interval_pairs; ++k) {
        const std::string what = "pair " + std::to_string(k);
        r.guard(what, [&] {
            auto o = detail::pick_catalog(rng);
            const auto x = detail::random_surface(rng, o), y = detail::random_surface(rng, o);
            const auto family = as_family(all_cores(o));
            const double lo = kerckhoff_lower(x, y, family), hi = qc_upper(x, y);
            r.record(lo <= hi, hi - lo, what + ": kerckhoff_lower above qc_upper");

            for (Side side : {Side::Vertical, Side::Horizontal}) {
                const auto f = defining_foliation(x, side);
                const double exact = foliation_ext(x, f);
                const auto b = curve_ext_bounds(x, f);
                const bool ok = b.contains(exact, 1e-12 * exact);
                r.record(ok, std::min(exact - b.lo, b.hi - exact), what + ": Ext of the defining foliation escaped");
            }

            const double u = time(rng);
            const auto z = x.scaled(std::exp(u), std::exp(-u));
            CurveFamily defining{defining_foliation(x, Side::Vertical), defining_foliation(x, Side::Horizontal)};
            const auto d = distance_interval(x, z, defining, cfg.tol);
            const double err = std::max(d.width(), d.contains(std::abs(u)) ? 0.0 : 1.0);
            r.record(err <= 1e-12 * std::max(1.0, std::abs(u)), 1e-12 * std::max(1.0, std::abs(u)) - err,
                     what + ": flow distance not pinned");
        });
    }
    return r;
}

inline SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "gauss-bonnet")
        return suite_gauss_bonnet(cfg);
    if (name == "perron")
        return suite_perron(cfg);
    if (name == "primitivity")
        return suite_primitivity(cfg);
    if (name == "minsky")
        return suite_minsky(cfg);
    if (name == "sandwich")
        return suite_sandwich(cfg);
    if (name == "walsh")
        return suite_walsh(cfg);
    if (name == "intervals")
        return suite_intervals(cfg);
    throw InvalidInput("unknown suite \"" + name + "\"");
}

} // namespace teich
