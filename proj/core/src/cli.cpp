#include "miura/cli.hpp"

#include "miura/error.hpp"
#include "miura/scenarios.hpp"

#include <fstream>
#include <ostream>

namespace miura {

namespace {

double parse_double(const std::string& key, const std::string& value)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::logic_error&) {
        used = 0;
    }
    if (used == 0 || used != value.size()) throw InvalidArgument("setting '" + key + "': not a number: '" + value + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& value)
{
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(value, &used);
    } catch (const std::logic_error&) {
        used = 0;
    }
    if (used == 0 || used != value.size()) throw InvalidArgument("setting '" + key + "': not an integer: '" + value + "'");
    return v;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::ofstream open_artifact(const std::filesystem::path& path)
{
    std::ofstream os(path);
    if (!os) throw Error("cannot open '" + path.string() + "' for writing");
    return os;
}

std::vector<std::pair<int, int>> study_resolutions(const RunConfig& config)
{
    std::vector<std::pair<int, int>> out = default_resolutions(config.study_rows);
    if (config.nx || config.ny) {
        const int nx = config.nx.value_or(out.front().first);
        const int ny = config.ny.value_or(out.front().second);
        for (int k = 0; k < config.study_rows; ++k) out[static_cast<std::size_t>(k)] = {nx << k, ny << k};
    }
    return out;
}

int run_study(const RunConfig& config, std::ostream& log, std::ostream& err)
{
    if (config.scenario != "axisym") throw InvalidArgument("--study is only available for the axisym scenario");
    const SolverConfig cfg = config.solver_config(axisymmetric(config.theta));
    ConvergenceTable partial;
    try {
        const ConvergenceTable table = convergence_study(config.theta, study_resolutions(config), cfg, &partial);
        write_convergence_csv(config.out_dir / "convergence.csv", table);
        for (const ConvergenceRow& r : table) {
            log << "h=" << r.h << " dofs=" << r.n_dofs << " h2_error=" << r.h2_error
                << " rate=" << (r.rate ? std::to_string(*r.rate) : std::string("-")) << " iterations=" << r.iterations
                << '\n';
        }
        return kExitOk;
    } catch (const NonConvergence& e) {
        if (!partial.empty()) write_convergence_csv(config.out_dir / "convergence.csv", partial);
        std::ofstream os = open_artifact(config.out_dir / "failure.txt");
        os << e.what() << '\n';
        write_history(os, e.history());
        err << "error: " << e.what() << '\n';
        return kExitSolverFailure;
    }
}

int run_single(const RunConfig& config, std::ostream& log, std::ostream& err)
{
    const Scenario scenario = scenario_by_name(config.scenario, config.theta, config.alpha_fold);
    const SolverConfig cfg = config.solver_config(scenario);
    auto space = std::make_shared<const BellSpace>(scenario.build_mesh(config.nx, config.ny));
    const double h = mesh_metrics(space->mesh()).h;
    log << "scenario " << scenario.name << ": h=" << h << " dofs=" << space->n_dofs() << '\n';

    SolveReport report;
    try {
        report = fixed_point(space, scenario.boundary, cfg);
    } catch (const NonConvergence& e) {
        std::ofstream os = open_artifact(config.out_dir / "failure.txt");
        os << e.what() << '\n';
        write_history(os, e.history());
        err << "error: " << e.what() << '\n';
        write_history(err, e.history());
        return kExitSolverFailure;
    }

    const DiagnosticsReport diag = diagnostics(*report.solution, triangle_rule(cfg.volume_degree));
    {
        std::ofstream os = open_artifact(config.out_dir / "report.txt");
        write_text_report(os, scenario.name, cfg, report, diag, space->n_dofs(), h);
    }
    {
        std::ofstream os = open_artifact(config.out_dir / "report.kv");
        os << "scenario=" << scenario.name << '\n';
        write_key_values(os, report, space->n_dofs(), h);
    }
    {
        std::ofstream os = open_artifact(config.out_dir / "diagnostics.kv");
        write_key_values(os, diag);
    }
    const auto surface = config.out_dir / ("surface." + to_string(config.format));
    export_surface(surface, *report.solution, config.samples, config.format);
    log << "converged in " << report.iterations << " iterations; wrote " << surface.string() << '\n';
    return kExitOk;
}

} // namespace

SolverConfig RunConfig::solver_config(const Scenario& scenario) const
{
    SolverConfig cfg = scenario.configure({});
    if (epsilon) cfg.epsilon = *epsilon;
    if (eta) cfg.eta = *eta;
    if (k_sq) cfg.k_sq = *k_sq;
    cfg.max_iters = max_iters;
    cfg.validate();
    return cfg;
}

void RunConfig::validate() const
{
    if (scenario.empty()) throw InvalidArgument("no scenario given");
    if (nx && *nx < 1) throw InvalidArgument("nx must be >= 1");
    if (ny && *ny < 1) throw InvalidArgument("ny must be >= 1");
    if (study_rows < 0 || study_rows == 1) throw InvalidArgument("a study needs at least two rows");
    if (samples < 1) throw InvalidArgument("samples must be >= 1");
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value)
{
    if (key == "scenario") c.scenario = value;
    else if (key == "theta") c.theta = parse_double(key, value);
    else if (key == "alpha-fold") c.alpha_fold = parse_double(key, value);
    else if (key == "nx") c.nx = parse_int(key, value);
    else if (key == "ny") c.ny = parse_int(key, value);
    else if (key == "epsilon") c.epsilon = parse_double(key, value);
    else if (key == "eta") c.eta = parse_double(key, value);
    else if (key == "k-sq") c.k_sq = parse_double(key, value);
    else if (key == "max-iters") c.max_iters = parse_int(key, value);
    else if (key == "study") c.study_rows = parse_int(key, value);
    else if (key == "out") c.out_dir = value;
    else if (key == "format") c.format = parse_surface_format(value);
    else if (key == "samples") c.samples = parse_int(key, value);
    else throw InvalidArgument("unknown setting '" + key + "'");
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path)
{
    std::ifstream is(path);
    if (!is) throw InvalidArgument("cannot read config file '" + path.string() + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidArgument(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
        }
        apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

int run(const RunConfig& config, std::ostream& log, std::ostream& err)
{
    try {
        config.validate();
        std::filesystem::create_directories(config.out_dir);
        return config.study_rows > 0 ? run_study(config, log, err) : run_single(config, log, err);
    } catch (const InvalidArgument& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitSolverFailure;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitSolverFailure;
    }
}

} // namespace miura
