#pragma once

// The five CLI subcommands. Each writes its report to `out`, diagnostics to
// `err`, and returns the process exit code.

#include "errors.hpp"
#include "geodesic.hpp"
#include "horo.hpp"
#include "json_io.hpp"
#include "suites.hpp"

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace teich {

struct RunConfig {
    double tol = 1e-12;
    std::uint64_t seed = 1;
    double t_min = -3;
    double t_max = 3;
    double step = 0.5;
    std::optional<double> horizon; ///< defaults to t_max + 5
    int n_max = 20;
    double eps = 0.1;
    std::string suite = "all";

    double horizon_or_default() const { return horizon.value_or(t_max + 5); }

    void validate() const {
        if (!(tol > 0) || !std::isfinite(tol))
            throw InvalidInput("--tol must be positive");
        if (!std::isfinite(t_min) || !std::isfinite(t_max) || !(t_min <= t_max))
            throw InvalidInput("time grid needs t-min <= t-max");
        if (!(step > 0) || !std::isfinite(step))
            throw InvalidInput("--step must be positive");
        if (horizon && (!(*horizon >= 0) || !std::isfinite(*horizon)))
            throw InvalidInput("--horizon must be nonnegative");
        if (n_max < 1)
            throw InvalidInput("--n-max must be at least 1");
        if (!(eps >= 0) || !std::isfinite(eps))
            throw InvalidInput("--eps must be nonnegative");
    }

    /// t_min + k * step for k = 0, 1, ... while <= t_max (with a half-ulp
    /// allowance so that the end point survives rounding).
    std::vector<double> grid() const {
        std::vector<double> ts;
        const double slack = 1e-9 * step;
        for (std::size_t k = 0;; ++k) {
            const double t = t_min + static_cast<double>(k) * step;
            if (t > t_max + slack)
                break;
            ts.push_back(t);
        }
        return ts;
    }
};

/// Runs `body`, mapping library errors onto the exit-code contract.
template <class F>
int run_command(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const json::exception& e) {
        err << "error: malformed JSON: " << e.what() << "\n";
        return exit_code(ErrorKind::InvalidInput);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

inline int cmd_validate(const std::string& origami_file, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        auto o = origami_from_json(read_json_file(origami_file));
        out << origami_summary(*o).dump(2) << "\n";
        return 0;
    });
}

inline int cmd_geodesic(const std::string& origami_file, const std::string& xi_file, const std::string& eta_file,
                        const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        cfg.validate();
        LineInputs in{read_json_file(origami_file), read_json_file(xi_file), read_json_file(eta_file), cfg.tol,
                      cfg.seed};
        const auto g = build_line(in);
        out << geodesic_report(g, in).dump(2) << "\n";
        return 0;
    });
}

/// Flow table along the line recorded in a report.
inline int cmd_flow(const std::string& report_file, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        cfg.validate();
        const auto g = line_from_report(read_json_file(report_file));
        const auto& o = *g.host();
        const auto base = point_at(g, 0);
        const auto family = g.defining_family();
        const double horizon = cfg.horizon_or_default();

        std::ostringstream csv;
        csv << "t";
        for (const auto& c : o.cylinders(Side::Vertical))
            csv << ",width_" << c.id;
        for (const auto& c : o.cylinders(Side::Horizontal))
            csv << ",height_" << c.id;
        csv << ",ext_fv,ext_fh,psi_fv,psi_fh,busemann_lo,busemann_hi,d_to_base\n";

        std::string failure;
        for (double t : cfg.grid()) {
            const auto x = point_at(g, t);
            const double psi_fv = psi_foliation(g.f_vert(), x, base);
            const double psi_fh = psi_foliation(g.f_hor(), x, base);
            if (failure.empty() && (std::abs(psi_fv + t) > 1e-12 || std::abs(psi_fh - t) > 1e-12))
                failure = "psi identity fails at t = " + format_decimal(t) + " (psi_fv " + format_decimal(psi_fv) +
                          ", psi_fh " + format_decimal(psi_fh) + ")";
            const auto b = busemann_interval(g, x, base, horizon, family);
            csv << format_decimal(t);
            for (double w : x.widths())
                csv << "," << format_decimal(w);
            for (double h : x.heights())
                csv << "," << format_decimal(h);
            csv << "," << format_decimal(foliation_ext(x, g.f_vert())) << ","
                << format_decimal(foliation_ext(x, g.f_hor())) << "," << format_decimal(psi_fv) << ","
                << format_decimal(psi_fh) << "," << format_decimal(b.lo) << "," << format_decimal(b.hi) << ","
                << format_decimal(flow_distance(g, 0, t, g.tolerance())) << "\n";
        }
        out << csv.str();
        if (!failure.empty()) {
            err << "error: certificate violation: " << failure << "\n";
            return exit_code(ErrorKind::Certificate);
        }
        return 0;
    });
}

/// Convergence experiment on X_n = G(n), Y_n = G(-n), with a jittered
/// companion that is reported but never certified.
inline int cmd_converge(const std::string& report_file, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        cfg.validate();
        const auto g = line_from_report(read_json_file(report_file));
        const double tol = g.tolerance();
        const auto base = point_at(g, 0);
        const auto family = g.defining_family();
        const auto o = g.host();

        std::string failure;
        json rows = json::array();
        for (int n = 1; n <= cfg.n_max; ++n) {
            const double dn = static_cast<double>(n);
            const auto xn = point_at(g, dn), yn = point_at(g, -dn);
            const double d_xy = flow_distance(g, dn, -dn, tol);
            const double d_0x = flow_distance(g, 0, dn, tol);
            const double d_0y = flow_distance(g, 0, -dn, tol);
            const double gap = d_xy - d_0x;
            const auto mi = miyachi_intersection(xn, yn, base, family);
            const bool contains_one = mi.contains(1.0);
            if (failure.empty() && gap != dn)
                failure = "gap at n = " + std::to_string(n) + " is " + format_decimal(gap);
            if (failure.empty() && !contains_one)
                failure = "Miyachi interval at n = " + std::to_string(n) + " misses 1";
            rows.push_back({{"n", n},
                            {"dXnYn", fixed(d_xy)},
                            {"dX0Xn", fixed(d_0x)},
                            {"dX0Yn", fixed(d_0y)},
                            {"gap", fixed(gap)},
                            {"miyachi", {{"lo", fixed(mi.lo)}, {"hi", fixed(mi.hi)}}},
                            {"miyachiContainsOne", contains_one}});
        }

        // X'_n and Y'_n scale each cylinder by e^u with |u| <= eps; the proxy
        // is their cellwise geometric mean.
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> u(-cfg.eps, cfg.eps);
        auto draw = [&](std::size_t count) {
            std::vector<double> v(count);
            for (double& e : v)
                e = cfg.eps > 0 ? u(rng) : 0.0;
            return v;
        };
        const std::size_t k = o->cylinder_count(Side::Horizontal), l = o->cylinder_count(Side::Vertical);
        CurveFamily jitter_family = family;
        for (auto& c : as_family(all_cores(o)))
            jitter_family.push_back(std::move(c));
        json jrows = json::array();
        for (int n = 1; n <= cfg.n_max; ++n) {
            const double dn = static_cast<double>(n);
            const auto uw = draw(l), uh = draw(k), vw = draw(l), vh = draw(k);
            std::vector<double> w(l), h(k);
            for (std::size_t j = 0; j < l; ++j)
                w[j] = base.width(j) * std::exp(0.5 * ((dn + uw[j]) + (-dn + vw[j])));
            for (std::size_t i = 0; i < k; ++i)
                h[i] = base.height(i) * std::exp(0.5 * ((-dn + uh[i]) + (dn + vh[i])));
            const WeightedSurface<double> proxy(o, std::move(h), std::move(w));
            const auto d = distance_interval(base, proxy, jitter_family, tol);
            jrows.push_back({{"n", n}, {"proxyDistance", {{"lo", fixed(d.lo)}, {"hi", fixed(d.hi)}}}});
        }

        json report;
        report["nMax"] = cfg.n_max;
        report["rows"] = rows;
        report["jitter"] = {{"label", "demonstration, not certificate"},
                            {"eps", fixed(cfg.eps)},
                            {"seed", cfg.seed},
                            {"rows", jrows}};
        report["status"] = failure.empty() ? "ok" : "violation";
        out << report.dump(2) << "\n";
        if (!failure.empty()) {
            err << "error: certificate violation: " << failure << "\n";
            return exit_code(ErrorKind::Certificate);
        }
        return 0;
    });
}

/// Comma-separated suite names, or "all".
inline std::vector<std::string> select_suites(const std::string& spec) {
    if (spec.empty() || spec == "all")
        return suite_names();
    std::vector<std::string> out;
    std::stringstream ss(spec);
    for (std::string name; std::getline(ss, name, ',');) {
        const auto& names = suite_names();
        if (std::find(names.begin(), names.end(), name) == names.end())
            throw InvalidInput("unknown suite \"" + name + "\"");
        out.push_back(name);
    }
    if (out.empty())
        throw InvalidInput("empty suite selection");
    return out;
}

inline json suite_to_json(const SuiteResult& r) {
    return {{"name", r.name},
            {"cases", r.cases},
            {"failures", r.failures},
            {"status", r.passed() ? "pass" : "fail"},
            {"minMargin", fixed(r.min_margin)},
            {"firstFailure", r.passed() ? json(nullptr) : json(r.first_failure)}};
}

inline int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err,
                     const SuiteSizes& sizes = {}) {
    return run_command(err, [&] {
        cfg.validate();
        const auto names = select_suites(cfg.suite);
        SuiteConfig sc{cfg.seed, cfg.tol, cfg.horizon_or_default(), sizes};
        json suites = json::array();
        std::string failure;
        for (const auto& name : names) {
            const auto r = run_suite(name, sc);
            suites.push_back(suite_to_json(r));
            if (failure.empty() && !r.passed())
                failure = name + ": " + r.first_failure;
        }
        json report;
        report["seed"] = cfg.seed;
        report["tolerance"] = fixed(cfg.tol);
        report["horizon"] = fixed(sc.horizon);
        report["suites"] = suites;
        report["status"] = failure.empty() ? "pass" : "fail";
        out << report.dump(2) << "\n";
        if (!failure.empty()) {
            err << "error: certificate violation: " << failure << "\n";
            return exit_code(ErrorKind::Certificate);
        }
        return 0;
    });
}

} // namespace teich
