#include "app.hpp"

#include "miura/cli.hpp"
#include "miura/error.hpp"
#include "miura/scenarios.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>

namespace miura::app {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App cli{"Homogenized Miura-ori surface solver"};
    cli.require_subcommand(1);

    CLI::App* run_cmd = cli.add_subcommand("run", "Solve a scenario or run a convergence study");

    std::string config_file;
    std::string scenario;
    std::string format;
    std::string out_dir;
    double theta = 0.0;
    double alpha_fold = 0.0;
    int nx = 0;
    int ny = 0;
    double epsilon = 0.0;
    double eta = 0.0;
    double k_sq = 0.0;
    int study = 0;
    int max_iters = 0;
    int samples = 0;

    std::ostringstream names;
    for (const std::string& n : scenario_names()) names << ' ' << n;

    auto* o_config = run_cmd->add_option("--config", config_file, "key=value file; flags override its entries");
    auto* o_scenario = run_cmd->add_option("--scenario", scenario, "One of:" + names.str());
    auto* o_theta = run_cmd->add_option("--theta", theta, "Miura fold angle for axisym scenarios (default pi/2)");
    auto* o_alpha = run_cmd->add_option("--alpha-fold", alpha_fold, "Saddle fold angle (default pi/6)");
    auto* o_nx = run_cmd->add_option("--nx", nx, "Cells along x");
    auto* o_ny = run_cmd->add_option("--ny", ny, "Cells along y");
    auto* o_eps = run_cmd->add_option("--epsilon", epsilon, "Fixed-point tolerance (default 1e-5)");
    auto* o_eta = run_cmd->add_option("--eta", eta, "Boundary penalty (default 10)");
    auto* o_ksq = run_cmd->add_option("--k-sq", k_sq, "Coefficient clamp K^2 (default 3.99)");
    auto* o_iters = run_cmd->add_option("--max-iters", max_iters, "Fixed-point iteration cap (default 200)");
    auto* o_study = run_cmd->add_option("--study", study, "Run an N-row convergence study (axisym only)");
    auto* o_out = run_cmd->add_option("--out", out_dir, "Output directory (default .)");
    auto* o_format = run_cmd->add_option("--format", format, "Surface format")->check(CLI::IsMember({"obj", "vtk"}));
    auto* o_samples = run_cmd->add_option("--samples", samples, "Sub-triangles per cell edge (default 4)");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = cli.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    RunConfig config;
    try {
        if (*o_config) apply_config_file(config, config_file);
        if (*o_scenario) config.scenario = scenario;
        if (*o_theta) config.theta = theta;
        if (*o_alpha) config.alpha_fold = alpha_fold;
        if (*o_nx) config.nx = nx;
        if (*o_ny) config.ny = ny;
        if (*o_eps) config.epsilon = epsilon;
        if (*o_eta) config.eta = eta;
        if (*o_ksq) config.k_sq = k_sq;
        if (*o_iters) config.max_iters = max_iters;
        if (*o_study) config.study_rows = study;
        if (*o_out) config.out_dir = out_dir;
        if (*o_format) config.format = parse_surface_format(format);
        if (*o_samples) config.samples = samples;
    } catch (const InvalidArgument& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }
    return run(config, out, err);
}

} // namespace miura::app
