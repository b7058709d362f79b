#pragma once

#include "miura/bell.hpp"
#include "miura/scenarios.hpp"
#include "miura/solver.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace miura {

enum class SurfaceFormat { obj, vtk };

[[nodiscard]] SurfaceFormat parse_surface_format(const std::string& name);
[[nodiscard]] std::string to_string(SurfaceFormat format);

/// Triangulated image of a field. Every cell is split into samples^2
/// sub-triangles on its own (samples+1)(samples+2)/2 lattice points; points on
/// shared edges are repeated per cell.
struct SurfaceMesh {
    std::vector<Vec3> points;
    std::vector<Vec2> parameters; ///< parameter-domain preimage of each point
    std::vector<std::array<int, 3>> faces;
};

[[nodiscard]] SurfaceMesh sample_surface(const Field& field, int samples = 4);

/// OBJ: `v x y z` lines then 1-based `f i j k`. VTK: legacy ASCII unstructured grid.
void write_surface(std::ostream& os, const SurfaceMesh& surface, SurfaceFormat format);
void export_surface(const std::filesystem::path& path, const Field& field, int samples = 4,
                    SurfaceFormat format = SurfaceFormat::obj);

/// Header `h,n_dofs,h2_error,rate,iterations`, 6 significant digits, blank rate on the first row.
void write_convergence_csv(std::ostream& os, const ConvergenceTable& table);
void write_convergence_csv(const std::filesystem::path& path, const ConvergenceTable& table);
[[nodiscard]] ConvergenceTable read_convergence_csv(std::istream& is);
[[nodiscard]] ConvergenceTable read_convergence_csv(const std::filesystem::path& path);

/// Machine-readable `key=value` lines.
void write_key_values(std::ostream& os, const SolveReport& report, int n_dofs, double h);
void write_key_values(std::ostream& os, const DiagnosticsReport& diag);
/// One gap per line, for failed runs.
void write_history(std::ostream& os, const std::vector<double>& history);
/// Human-readable solve summary.
void write_text_report(std::ostream& os, const std::string& scenario, const SolverConfig& config,
                       const SolveReport& report, const DiagnosticsReport& diag, int n_dofs, double h);

} // namespace miura
