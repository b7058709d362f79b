#pragma once

#include "miura/analytic.hpp"
#include "miura/bell.hpp"
#include "miura/mesh.hpp"
#include "miura/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace miura {

/// A boundary value problem: domain, default resolution, Dirichlet data and
/// an optional closed-form solution.
struct Scenario {
    std::string name;
    Rect domain;
    int nx = 8;
    int ny = 8;
    AnalyticMap boundary;
    std::optional<AnalyticMap> reference;
    std::optional<Axis> periodic;
    std::optional<double> k_sq;
    std::optional<double> eta;
    std::optional<double> epsilon;
    CoefficientModel model = CoefficientModel::clamped;

    /// Structured mesh at the given (or default) resolution, with periodic identification applied.
    [[nodiscard]] TriMesh build_mesh(std::optional<int> nx_override = {}, std::optional<int> ny_override = {}) const;
    /// `base` with this scenario's overrides applied.
    [[nodiscard]] SolverConfig configure(SolverConfig base) const;
};

/// Constants of the axisymmetric family, theta in (0, 2 pi / 3).
struct AxisymmetricParams {
    double theta;
    double c0;       // cos(theta / 2)
    double s0;       // sin(theta / 2)
    double alpha;    // (1 - s0^2)^(-1/2)
    double s0_star;  // half-width of the parameter domain
};

[[nodiscard]] AxisymmetricParams axisymmetric_params(double theta);

/// (rho(x) cos(alpha y), rho(x) sin(alpha y), 2 s0 x) with rho = sqrt(4 c0^2 x^2 + 1).
[[nodiscard]] AnalyticMap axisymmetric_reference(double theta);

/// Full reference trace on [-s0*, s0*] x [0, 2 pi / alpha]. With `ring`, the
/// y-sides are identified and only the two boundary circles are imposed.
[[nodiscard]] Scenario axisymmetric(double theta, bool ring = false);

/// (x cos y, x sin y, x) on [0, pi] x [0, y_extent].
[[nodiscard]] Scenario cone(double y_extent = 1.0);

/// Rectangle [0, 2] x [0, 1] whose boundary is folded by alpha_fold along the diagonal AC.
[[nodiscard]] Scenario saddle(double alpha_fold);

/// The two fold pieces of the saddle boundary, exposed for corner checks.
struct SaddlePieces {
    AnalyticMap near; // x = 0 and y = 0
    AnalyticMap far;  // x = L and y = H
    Vec3 b_prime;     // folded image of B = (L, H, 0)
};
[[nodiscard]] SaddlePieces saddle_pieces(double alpha_fold);

/// Periodic-in-y hyperboloid with a tilted upper circle.
[[nodiscard]] Scenario deformed_hyperboloid();

/// Plane (x, y, 0) on the unit square; an exact solution.
[[nodiscard]] Scenario flat_plane();

/// Lookup by CLI name: axisym, axisym-ring, cone, cone-extended, saddle,
/// deformed-hyperboloid, flat. Throws InvalidArgument for unknown names.
[[nodiscard]] Scenario scenario_by_name(const std::string& name, double theta, double alpha_fold);
[[nodiscard]] std::vector<std::string> scenario_names();

/// Constraint residuals sampled at every volume quadrature point.
struct DiagnosticsReport {
    double max_pq_defect = 0.0;   ///< max |p q - 4| where p and q are defined
    double mean_pq_defect = 0.0;
    double max_orthogonality = 0.0; ///< max |phi_x . phi_y|
    double mean_orthogonality = 0.0;
    double min_phi_x_sq = 0.0;
    double max_phi_x_sq = 0.0;
    double min_phi_y_sq = 0.0;
    double max_phi_y_sq = 0.0;
    double violation_fraction = 0.0; ///< points outside 0 < |phi_x|^2 <= 3, 1 < |phi_y|^2 <= 4
    double undefined_fraction = 0.0; ///< points where p or q is undefined
    int samples = 0;
};

[[nodiscard]] DiagnosticsReport diagnostics(const Field& field, const TriangleRule& rule = triangle_rule(kDefaultVolumeDegree));

struct ConvergenceRow {
    double h = 0.0;
    int n_dofs = 0;
    double h2_error = 0.0;
    std::optional<double> rate; // empty on the first row
    int iterations = 0;
};

using ConvergenceTable = std::vector<ConvergenceRow>;

/// Default refinement ladder for the axisymmetric study: (6, 74) doubled each row.
[[nodiscard]] std::vector<std::pair<int, int>> default_resolutions(int rows);

/// Solves the full-trace axisymmetric problem on each (nx, ny) and measures the
/// H2 seminorm error against the reference. Rate = log(e1/e2) / log(h1/h2).
/// A failing row throws; rows already computed are returned through `partial`.
[[nodiscard]] ConvergenceTable convergence_study(double theta, const std::vector<std::pair<int, int>>& resolutions,
                                                 const SolverConfig& config = {},
                                                 ConvergenceTable* partial = nullptr);

} // namespace miura
