#pragma once

#include "miura/export.hpp"
#include "miura/scenarios.hpp"
#include "miura/solver.hpp"

#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>

namespace miura {

/// Everything a single invocation needs. Unset optionals fall back to the
/// scenario override, then to the SolverConfig default.
struct RunConfig {
    std::string scenario;
    double theta = std::numbers::pi / 2.0;
    double alpha_fold = std::numbers::pi / 6.0;
    std::optional<int> nx;
    std::optional<int> ny;
    std::optional<double> epsilon;
    std::optional<double> eta;
    std::optional<double> k_sq;
    int max_iters = 200;
    int study_rows = 0; ///< > 0 runs a convergence study instead of a single solve
    std::filesystem::path out_dir = ".";
    SurfaceFormat format = SurfaceFormat::obj;
    int samples = 4;

    /// Solver settings for `scenario`, validated.
    [[nodiscard]] SolverConfig solver_config(const Scenario& scenario) const;
    /// Throws InvalidArgument on any unusable setting.
    void validate() const;
};

/// Applies one `key=value` setting; keys match the long flag names without dashes
/// (scenario, theta, alpha-fold, nx, ny, epsilon, eta, k-sq, max-iters, study, out, format, samples).
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Reads a plain `key=value` file; blank lines and lines starting with '#' are skipped.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

inline constexpr int kExitOk = 0;
inline constexpr int kExitSolverFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs a scenario or study and writes its artifacts into `out_dir`:
/// report.txt, report.kv, diagnostics.kv and surface.{obj,vtk} for a single
/// solve; convergence.csv for a study; failure.txt with the gap history when
/// the fixed point does not converge.
[[nodiscard]] int run(const RunConfig& config, std::ostream& log, std::ostream& err);

} // namespace miura
