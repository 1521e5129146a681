#include <teich/commands.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace teich;

namespace {

std::string data(const std::string& name) { return std::string(TEICH_DATA_DIR) + "/" + name; }

std::string golden_report_path() {
    static const std::string path = [] {
        std::ostringstream out, err;
        RunConfig cfg;
        EXPECT_EQ(cmd_geodesic(data("l22.json"), data("golden_xi.json"), data("golden_eta.json"), cfg, out, err), 0)
            << err.str();
        auto p = std::filesystem::temp_directory_path() / "teich_golden_report.json";
        std::ofstream(p) << out.str();
        return p.string();
    }();
    return path;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');)
            cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST(Validate, LShape) {
    std::ostringstream out, err;
    ASSERT_EQ(cmd_validate(data("l22.json"), out, err), 0);
    const auto j = json::parse(out.str());
    EXPECT_EQ(j["genus"], 2);
    EXPECT_EQ(j["N"], json::parse("[[1,1],[1,0]]"));
    EXPECT_EQ(j["vertices"][0]["coneAngle"], "6pi");
}

TEST(Validate, TorusAndCorrupt) {
    std::ostringstream out, err;
    EXPECT_EQ(cmd_validate(data("torus.json"), out, err), 2);
    EXPECT_NE(err.str().find("complexity"), std::string::npos);
    std::ostringstream err2;
    EXPECT_EQ(cmd_validate(data("corrupt.json"), out, err2), 2);
    EXPECT_NE(err2.str().find("parse error"), std::string::npos);
    EXPECT_EQ(cmd_validate(data("missing.json"), out, err2), 2);
}

TEST(Geodesic, GoldenReport) {
    std::ifstream in(golden_report_path());
    const auto j = json::parse(in);
    EXPECT_NEAR(std::stod(j["lambda"].get<std::string>()), 2.6180339887, 1e-10);
    EXPECT_GT(j["walshForwardCosine"].get<double>(), 1 - 1e-9);
    EXPECT_GT(j["walshBackwardCosine"].get<double>(), 1 - 1e-9);
    EXPECT_EQ(j["fillingStatus"], "FillingCertified");
    EXPECT_NEAR(std::stod(j["area"].get<std::string>()), 2.2360679774997897, 1e-12);
    EXPECT_NEAR(j["fVert"]["B2"].get<double>(), 0.618033988749895, 1e-12);
}

TEST(Geodesic, ExitCodes) {
    std::ostringstream out, err;
    RunConfig cfg;
    EXPECT_EQ(cmd_geodesic(data("l22.json"), data("golden_xi.json"), data("same_side_eta.json"), cfg, out, err), 3);
    EXPECT_EQ(cmd_geodesic(data("l22.json"), data("partial_xi.json"), data("golden_eta.json"), cfg, out, err), 3);
    cfg.tol = 1e-30;
    EXPECT_EQ(cmd_geodesic(data("l22.json"), data("golden_xi.json"), data("golden_eta.json"), cfg, out, err), 4);
    cfg.tol = -1;
    EXPECT_EQ(cmd_geodesic(data("l22.json"), data("golden_xi.json"), data("golden_eta.json"), cfg, out, err), 2);
}

TEST(Flow, GoldenTable) {
    std::ostringstream out, err;
    RunConfig cfg;
    ASSERT_EQ(cmd_flow(golden_report_path(), cfg, out, err), 0) << err.str();
    const auto rows = parse_csv(out.str());
    ASSERT_EQ(rows.size(), 14u);
    const auto& head = rows[0];
    EXPECT_EQ(head.front(), "t");
    EXPECT_EQ(head.back(), "d_to_base");
    auto col = [&](const std::string& name) {
        return static_cast<std::size_t>(std::find(head.begin(), head.end(), name) - head.begin());
    };
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const double t = std::stod(rows[r][0]);
        EXPECT_DOUBLE_EQ(t, -3 + 0.5 * static_cast<double>(r - 1));
        EXPECT_NEAR(std::stod(rows[r][col("ext_fv")]), std::sqrt(5.0) * std::exp(-2 * t), 1e-12 * std::exp(-2 * t) * 10);
        EXPECT_NEAR(std::stod(rows[r][col("psi_fv")]), -t, 1e-12);
        EXPECT_NEAR(std::stod(rows[r][col("psi_fh")]), t, 1e-12);
        EXPECT_NEAR(std::stod(rows[r][col("busemann_lo")]), -t, 1e-9);
        EXPECT_NEAR(std::stod(rows[r][col("busemann_hi")]), -t, 1e-9);
        EXPECT_DOUBLE_EQ(std::stod(rows[r][col("d_to_base")]), std::abs(t));
    }
    EXPECT_EQ(rows[7][col("psi_fv")], "0");
}

TEST(Flow, Deterministic) {
    std::ostringstream a, b, err;
    RunConfig cfg;
    cmd_flow(golden_report_path(), cfg, a, err);
    cmd_flow(golden_report_path(), cfg, b, err);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Flow, RejectsEmptyGrid) {
    std::ostringstream out, err;
    RunConfig cfg;
    cfg.t_min = 1;
    cfg.t_max = 0;
    EXPECT_EQ(cmd_flow(golden_report_path(), cfg, out, err), 2);
    cfg.t_min = 0;
    cfg.step = 0;
    EXPECT_EQ(cmd_flow(golden_report_path(), cfg, out, err), 2);
}

TEST(Flow, TamperedReportRejected) {
    std::ifstream in(golden_report_path());
    auto j = json::parse(in);
    j["lambda"] = "2.7";
    auto p = std::filesystem::temp_directory_path() / "teich_tampered_report.json";
    std::ofstream(p) << j.dump();
    std::ostringstream out, err;
    EXPECT_EQ(cmd_flow(p.string(), RunConfig{}, out, err), 5);
}

TEST(Converge, GapsAndMiyachi) {
    std::ostringstream out, err;
    RunConfig cfg;
    ASSERT_EQ(cmd_converge(golden_report_path(), cfg, out, err), 0) << err.str();
    const auto j = json::parse(out.str());
    ASSERT_EQ(j["rows"].size(), 20u);
    for (std::size_t n = 1; n <= 20; ++n) {
        EXPECT_EQ(j["rows"][n - 1]["gap"].get<double>(), static_cast<double>(n));
        EXPECT_TRUE(j["rows"][n - 1]["miyachiContainsOne"].get<bool>());
    }
    EXPECT_EQ(j["jitter"]["label"], "demonstration, not certificate");
}

TEST(Converge, ZeroJitterIsBase) {
    std::ostringstream out, err;
    RunConfig cfg;
    cfg.eps = 0;
    cfg.n_max = 5;
    ASSERT_EQ(cmd_converge(golden_report_path(), cfg, out, err), 0) << err.str();
    const auto j = json::parse(out.str());
    for (const auto& row : j["jitter"]["rows"]) {
        EXPECT_EQ(row["proxyDistance"]["lo"].get<double>(), 0);
        EXPECT_EQ(row["proxyDistance"]["hi"].get<double>(), 0);
    }
}

TEST(Check, PerronOnlyAndBadTolerance) {
    std::ostringstream out, err;
    RunConfig cfg;
    cfg.suite = "perron";
    SuiteSizes small;
    small.eigen_instances = 20;
    ASSERT_EQ(cmd_check(cfg, out, err, small), 0) << err.str();
    const auto j = json::parse(out.str());
    ASSERT_EQ(j["suites"].size(), 1u);
    EXPECT_EQ(j["suites"][0]["name"], "perron");
    cfg.tol = -1;
    EXPECT_EQ(cmd_check(cfg, out, err), 2);
    cfg.tol = 1e-12;
    cfg.suite = "nonsense";
    EXPECT_EQ(cmd_check(cfg, out, err), 2);
}

TEST(Check, SameSeedSameBytes) {
    RunConfig cfg;
    cfg.suite = "minsky,intervals";
    SuiteSizes small;
    small.minsky_surfaces = 10;
    small.interval_pairs = 20;
    std::ostringstream a, b, err;
    ASSERT_EQ(cmd_check(cfg, a, err, small), 0) << err.str();
    ASSERT_EQ(cmd_check(cfg, b, err, small), 0);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Json, SpecParsing) {
    auto o = make_origami({2, 1, 3}, {3, 2, 1});
    EXPECT_THROW(spec_from_json(json::parse(R"({"side":"vertical","coeffs":[["B1","1.5"]]})"), o), InvalidInput);
    const auto approx =
        spec_from_json(json::parse(R"({"side":"vertical","coeffs":[["B1","1.5"]],"approx":true})"), o);
    EXPECT_DOUBLE_EQ(approx.components()[0].coeff, 1.5);
    const auto exact = spec_from_json(json::parse(R"({"side":"horizontal","coeffs":[["A2","3/4"]]})"), o);
    EXPECT_DOUBLE_EQ(exact.components()[0].coeff, 0.75);
    EXPECT_THROW(spec_from_json(json::parse(R"({"side":"vertical","coeffs":[["A1","1"]]})"), o), InvalidInput);
    EXPECT_THROW(spec_from_json(json::parse(R"({"side":"diagonal","coeffs":[["B1","1"]]})"), o), InvalidInput);
}

TEST(Json, Weights) {
    auto o = make_origami({2, 1, 3}, {3, 2, 1});
    const auto x = surface_from_json<Rational>(read_json_file(data("l22_unit_weights.json")), o);
    EXPECT_EQ(area(x), Rational(3));
    EXPECT_THROW(surface_from_json<Rational>(json::parse(R"({"heights":{"A1":"1"},"widths":{"B1":"1","B2":"1"}})"), o),
                 InvalidInput);
}

TEST(Json, OrigamiRoundTrip) {
    auto o = make_origami({2, 3, 4, 1, 6, 7, 8, 5}, {5, 8, 7, 6, 3, 2, 1, 4});
    EXPECT_EQ(*origami_from_json(origami_to_json(*o)), *o);
    EXPECT_THROW(origami_from_json(json::parse(R"({"squares":4,"h":[2,1,3],"v":[3,2,1]})")), InvalidInput);
}
