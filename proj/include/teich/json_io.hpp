#pragma once

// JSON reading and writing for origamis, Busemann specs, weights and
// geodesic reports. Doubles pass through format_decimal first so that
// reports are byte-stable.

#include "errors.hpp"
#include "geodesic.hpp"
#include "multicurve.hpp"
#include "origami.hpp"
#include "rational.hpp"
#include "surface.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace teich {

using json = nlohmann::ordered_json;

/// Number rounded to 15 significant digits.
inline json fixed(double v) {
    if (!std::isfinite(v))
        return format_decimal(v);
    return std::stod(format_decimal(v));
}

inline json fixed(const std::vector<double>& v) {
    json a = json::array();
    for (double e : v)
        a.push_back(fixed(e));
    return a;
}

inline json parse_json_text(const std::string& text, const std::string& where) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput("JSON parse error in " + where + ": " + e.what());
    }
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

namespace detail {

inline const json& field(const json& j, const char* key) {
    if (!j.is_object())
        throw InvalidInput(std::string("expected a JSON object holding \"") + key + "\"");
    auto it = j.find(key);
    if (it == j.end())
        throw InvalidInput(std::string("missing field \"") + key + "\"");
    return *it;
}

inline std::vector<int> int_array(const json& j, const char* key) {
    const auto& a = field(j, key);
    if (!a.is_array())
        throw InvalidInput(std::string("\"") + key + "\" must be an array");
    std::vector<int> out;
    for (const auto& e : a) {
        if (!e.is_number_integer())
            throw InvalidInput(std::string("\"") + key + "\" must hold integers");
        out.push_back(e.get<int>());
    }
    return out;
}

inline std::string text(const json& j, const char* what) {
    if (!j.is_string())
        throw InvalidInput(std::string(what) + " must be a string");
    return j.get<std::string>();
}

} // namespace detail

inline OrigamiRef origami_from_json(const json& j) {
    auto h = detail::int_array(j, "h");
    auto v = detail::int_array(j, "v");
    if (j.contains("squares")) {
        const auto& n = j["squares"];
        if (!n.is_number_integer() || n.get<long long>() != static_cast<long long>(h.size()))
            throw InvalidInput("\"squares\" does not match the length of \"h\"");
    }
    return make_origami(h, v);
}

inline json origami_to_json(const Origami& o) {
    json h = json::array(), v = json::array();
    for (int s = 0; s < o.squares(); ++s) {
        h.push_back(o.right(s) + 1);
        v.push_back(o.top(s) + 1);
    }
    return {{"squares", o.squares()}, {"h", h}, {"v", v}};
}

inline json cylinders_to_json(const Origami& o, Side side) {
    json a = json::array();
    for (const auto& c : o.cylinders(side)) {
        json cells = json::array();
        for (int s : c.squares)
            cells.push_back(s + 1);
        a.push_back({{"id", c.id}, {"squares", cells}});
    }
    return a;
}

/// Cylinders, intersection matrix, genus and cone points.
inline json origami_summary(const Origami& o) {
    const auto& st = o.structure();
    json n = json::array();
    for (std::size_t i = 0; i < o.cylinder_count(Side::Horizontal); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < o.cylinder_count(Side::Vertical); ++j)
            row.push_back(o.count(i, j));
        n.push_back(row);
    }
    json cones = json::array();
    for (const auto& c : st.vertices)
        cones.push_back({{"multiplicity", c.multiplicity},
                         {"coneAngle", std::to_string(2 * c.multiplicity) + "pi"},
                         {"corners", c.corners.size()}});
    return {{"squares", st.squares},
            {"genus", st.genus},
            {"eulerCharacteristic", st.euler_characteristic},
            {"horizontal", cylinders_to_json(o, Side::Horizontal)},
            {"vertical", cylinders_to_json(o, Side::Vertical)},
            {"N", n},
            {"vertices", cones},
            {"gaussBonnet", gauss_bonnet_holds(st)},
            {"partition", partition_holds(o)}};
}

/// {"side": ..., "coeffs": [[id, "p/q"], ...], "approx": bool}. Exact specs
/// take rational strings only; approximate ones also take decimals.
inline BusemannSpec spec_from_json(const json& j, const OrigamiRef& host) {
    const Side side = parse_side(detail::text(detail::field(j, "side"), "\"side\""));
    bool approx = false;
    if (j.contains("approx")) {
        if (!j["approx"].is_boolean())
            throw InvalidInput("\"approx\" must be a boolean");
        approx = j["approx"].get<bool>();
    }
    const auto& cs = detail::field(j, "coeffs");
    if (!cs.is_array() || cs.empty())
        throw InvalidInput("\"coeffs\" must be a non-empty array of [id, value] pairs");
    std::vector<std::pair<std::string, double>> coeffs;
    for (const auto& e : cs) {
        if (!e.is_array() || e.size() != 2)
            throw InvalidInput("each coefficient must be an [id, value] pair");
        const auto id = detail::text(e[0], "cylinder id");
        double c = 0;
        if (approx && e[1].is_number())
            c = e[1].get<double>();
        else if (approx)
            c = parse_real(detail::text(e[1], "coefficient"));
        else
            c = to_double(parse_rational(detail::text(e[1], "exact coefficient")));
        coeffs.emplace_back(id, c);
    }
    return BusemannSpec::from_coeffs(host, side, coeffs, approx);
}

/// {"heights": {"A1": "1"}, "widths": {"B1": "3/2"}}; omitted cylinders
/// are rejected.
template <Scalar S>
WeightedSurface<S> surface_from_json(const json& j, const OrigamiRef& host) {
    auto read = [&](const char* key) {
        const auto& m = detail::field(j, key);
        if (!m.is_object())
            throw InvalidInput(std::string("\"") + key + "\" must be an object");
        std::map<std::string, S> out;
        for (const auto& [id, val] : m.items()) {
            const auto s = detail::text(val, "weight");
            if constexpr (std::same_as<S, Rational>)
                out[id] = parse_rational(s);
            else
                out[id] = parse_real(s);
        }
        return out;
    };
    const auto heights = read("heights"), widths = read("widths");
    if (heights.size() != host->cylinder_count(Side::Horizontal) ||
        widths.size() != host->cylinder_count(Side::Vertical))
        throw InvalidInput("weights must name every cylinder once");
    return WeightedSurface<S>::from_maps(host, heights, widths);
}

template <Scalar S>
json surface_to_json(const WeightedSurface<S>& x) {
    json h = json::object(), w = json::object();
    const auto& o = *x.host();
    for (std::size_t i = 0; i < x.heights().size(); ++i)
        h[o.cylinders(Side::Horizontal)[i].id] = format_scalar(x.height(i));
    for (std::size_t j = 0; j < x.widths().size(); ++j)
        w[o.cylinders(Side::Vertical)[j].id] = format_scalar(x.width(j));
    return {{"heights", h}, {"widths", w}};
}

inline json foliation_to_json(const WeightedMulticurve<double>& f) {
    json m = json::object();
    for (const auto& c : f.components())
        m[f.host()->cylinders(f.side())[c.index].id] = fixed(c.weight);
    return m;
}

/// Everything needed to rebuild a line: the raw origami and spec objects,
/// the tolerance and the restart seed.
struct LineInputs {
    json origami;
    json xi;
    json eta;
    double tol = 1e-12;
    std::uint64_t seed = 0x5eed;
};

inline GeodesicLine build_line(const LineInputs& in) {
    auto host = origami_from_json(in.origami);
    auto xi = spec_from_json(in.xi, host);
    auto eta = spec_from_json(in.eta, host);
    PerronOptions opt;
    opt.tol = in.tol;
    opt.seed = in.seed;
    return optimal_geodesic(xi, eta, opt);
}

inline json geodesic_report(const GeodesicLine& g, const LineInputs& in) {
    const auto& sol = g.solution();
    const auto cert = walsh_certificate(g);
    json report;
    report["lambda"] = format_decimal(sol.eigen.lambda);
    report["x"] = fixed(sol.x);
    report["y"] = fixed(sol.y);
    report["residual"] = fixed(sol.eigen.residual);
    report["iterations"] = sol.eigen.iterations;
    report["raySpread"] = fixed(sol.eigen.ray_spread);
    report["scaleFactor"] = format_decimal(sol.scale);
    report["fVert"] = foliation_to_json(g.f_vert());
    report["fHor"] = foliation_to_json(g.f_hor());
    report["area"] = format_decimal(area(g.base_surface()));
    report["baseSurface"] = surface_to_json(g.base_surface());
    report["walshForwardCosine"] = fixed(cert.forward_cosine);
    report["walshBackwardCosine"] = fixed(cert.backward_cosine);
    report["closureResidual"] = fixed(sol.closure_residual);
    report["fillingStatus"] = to_string(g.filling());
    report["inputs"] = {{"origami", in.origami},
                        {"xi", in.xi},
                        {"eta", in.eta},
                        {"tol", in.tol},
                        {"seed", in.seed}};
    return report;
}

/// Rebuilds the line recorded in a report and checks lambda against it.
inline GeodesicLine line_from_report(const json& report) {
    const auto& in = detail::field(report, "inputs");
    LineInputs li;
    li.origami = detail::field(in, "origami");
    li.xi = detail::field(in, "xi");
    li.eta = detail::field(in, "eta");
    const auto& tol = detail::field(in, "tol");
    const auto& seed = detail::field(in, "seed");
    if (!tol.is_number() || !seed.is_number_unsigned())
        throw InvalidInput("report inputs need numeric \"tol\" and \"seed\"");
    li.tol = tol.get<double>();
    li.seed = seed.get<std::uint64_t>();
    auto g = build_line(li);
    const double recorded = parse_real(detail::text(detail::field(report, "lambda"), "\"lambda\""));
    const double lambda = g.eigen().lambda;
    if (std::abs(lambda - recorded) > 1e-12 * std::max(1.0, std::abs(lambda)))
        throw CertificationViolation("rebuilt lambda " + format_decimal(lambda) + " differs from the report's " +
                                     format_decimal(recorded));
    return g;
}

} // namespace teich
