// teich: geodesics between Busemann points on origamis.

#include <teich/commands.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

void add_run_flags(CLI::App* app, teich::RunConfig& cfg) {
    app->add_option("--tol", cfg.tol, "convergence and certificate tolerance");
    app->add_option("--seed", cfg.seed, "seed for restarts and random suites");
    app->add_option("--t-min", cfg.t_min, "first time on the grid");
    app->add_option("--t-max", cfg.t_max, "last time on the grid");
    app->add_option("--step", cfg.step, "time grid step");
    app->add_option("--horizon", cfg.horizon, "Busemann sampling horizon (default t-max + 5)");
    app->add_option("--n-max", cfg.n_max, "largest n in the convergence experiment");
    app->add_option("--eps", cfg.eps, "jitter amplitude in the convergence experiment");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal Teichmueller geodesics on square-tiled surfaces"};
    app.require_subcommand(1);

    teich::RunConfig cfg;
    std::string out_path, origami_file, xi_file, eta_file, report_file;

    auto* validate = app.add_subcommand("validate", "check an origami and print its cylinders");
    validate->add_option("origami", origami_file, "origami JSON")->required();

    auto* geodesic = app.add_subcommand("geodesic", "build the optimal geodesic between two Busemann points");
    geodesic->add_option("origami", origami_file, "origami JSON")->required();
    geodesic->add_option("xi", xi_file, "forward Busemann point (vertical cores)")->required();
    geodesic->add_option("eta", eta_file, "backward Busemann point (horizontal cores)")->required();

    auto* flow = app.add_subcommand("flow", "tabulate the flow along a geodesic report");
    flow->add_option("report", report_file, "report written by geodesic")->required();

    auto* converge = app.add_subcommand("converge", "run the X_n, Y_n convergence experiment");
    converge->add_option("report", report_file, "report written by geodesic")->required();

    auto* check = app.add_subcommand("check", "run the invariant suites");
    check->add_option("--suite", cfg.suite, "comma-separated suite names, or all");

    for (auto* sub : {validate, geodesic, flow, converge, check}) {
        add_run_flags(sub, cfg);
        sub->add_option("--out", out_path, "write the report here instead of stdout");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : teich::exit_code(teich::ErrorKind::InvalidInput);
    }

    std::ostringstream out;
    int rc = 0;
    if (validate->parsed())
        rc = teich::cmd_validate(origami_file, out, std::cerr);
    else if (geodesic->parsed())
        rc = teich::cmd_geodesic(origami_file, xi_file, eta_file, cfg, out, std::cerr);
    else if (flow->parsed())
        rc = teich::cmd_flow(report_file, cfg, out, std::cerr);
    else if (converge->parsed())
        rc = teich::cmd_converge(report_file, cfg, out, std::cerr);
    else
        rc = teich::cmd_check(cfg, out, std::cerr);

    if (out_path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream file(out_path);
        if (!file) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return teich::exit_code(teich::ErrorKind::InvalidInput);
        }
        file << out.str();
    }
    return rc;
}
