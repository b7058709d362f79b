#include "miura/export.hpp"

#include "miura/error.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace miura {

namespace {

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream os(path);
    if (!os) throw Error("cannot open '" + path.string() + "' for writing");
    return os;
}

std::string format_g6(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void check_stream(const std::ostream& os, const std::filesystem::path& path)
{
    if (!os) throw Error("write to '" + path.string() + "' failed");
}

} // namespace

SurfaceFormat parse_surface_format(const std::string& name)
{
    if (name == "obj") return SurfaceFormat::obj;
    if (name == "vtk") return SurfaceFormat::vtk;
    throw InvalidArgument("unknown surface format '" + name + "' (expected obj or vtk)");
}

std::string to_string(SurfaceFormat format) { return format == SurfaceFormat::obj ? "obj" : "vtk"; }

SurfaceMesh sample_surface(const Field& field, int samples)
{
    if (samples < 1) throw InvalidArgument("sample_surface: samples must be >= 1");
    const BellSpace& space = field.space();
    SurfaceMesh out;
    const int per_cell = (samples + 1) * (samples + 2) / 2;
    out.points.reserve(static_cast<std::size_t>(space.n_cells() * per_cell));
    out.parameters.reserve(out.points.capacity());
    out.faces.reserve(static_cast<std::size_t>(space.n_cells() * samples * samples));

    for (int c = 0; c < space.n_cells(); ++c) {
        const BellElement& el = space.element(c);
        const int base = static_cast<int>(out.points.size());
        // Lattice point (i, j) with i + j <= samples, row-major in j.
        const auto index = [&](int i, int j) { return base + j * (samples + 1) - j * (j - 1) / 2 + i; };
        for (int j = 0; j <= samples; ++j) {
            for (int i = 0; i + j <= samples; ++i) {
                const double l1 = static_cast<double>(i) / samples;
                const double l2 = static_cast<double>(j) / samples;
                const Vec2 p = el.to_physical({1.0 - l1 - l2, l1, l2});
                out.parameters.push_back(p);
                out.points.push_back(field.combine(c, el.evaluate(p)).value);
            }
        }
        for (int j = 0; j < samples; ++j) {
            for (int i = 0; i + j < samples; ++i) {
                out.faces.push_back({index(i, j), index(i + 1, j), index(i, j + 1)});
                if (i + j + 1 < samples) out.faces.push_back({index(i + 1, j), index(i + 1, j + 1), index(i, j + 1)});
            }
        }
    }
    return out;
}

void write_surface(std::ostream& os, const SurfaceMesh& surface, SurfaceFormat format)
{
    os << std::setprecision(12);
    if (format == SurfaceFormat::obj) {
        for (const Vec3& p : surface.points) os << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
        for (const auto& f : surface.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
        return;
    }
    os << "# vtk DataFile Version 3.0\nmiura surface\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    os << "POINTS " << surface.points.size() << " double\n";
    for (const Vec3& p : surface.points) os << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
    os << "CELLS " << surface.faces.size() << ' ' << 4 * surface.faces.size() << '\n';
    for (const auto& f : surface.faces) os << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
    os << "CELL_TYPES " << surface.faces.size() << '\n';
    for (std::size_t k = 0; k < surface.faces.size(); ++k) os << "5\n";
}

void export_surface(const std::filesystem::path& path, const Field& field, int samples, SurfaceFormat format)
{
    const SurfaceMesh surface = sample_surface(field, samples);
    std::ofstream os = open_output(path);
    write_surface(os, surface, format);
    check_stream(os, path);
}

void write_convergence_csv(std::ostream& os, const ConvergenceTable& table)
{
    if (table.empty()) throw InvalidArgument("write_convergence_csv: empty table");
    os << "h,n_dofs,h2_error,rate,iterations\n";
    for (const ConvergenceRow& r : table) {
        os << format_g6(r.h) << ',' << r.n_dofs << ',' << format_g6(r.h2_error) << ','
           << (r.rate ? format_g6(*r.rate) : std::string()) << ',' << r.iterations << '\n';
    }
}

void write_convergence_csv(const std::filesystem::path& path, const ConvergenceTable& table)
{
    std::ofstream os = open_output(path);
    write_convergence_csv(os, table);
    check_stream(os, path);
}

ConvergenceTable read_convergence_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != "h,n_dofs,h2_error,rate,iterations") {
        throw InvalidArgument("convergence CSV: missing or unexpected header");
    }
    ConvergenceTable table;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (cells.size() != 5) throw InvalidArgument("convergence CSV: expected 5 columns in '" + line + "'");
        ConvergenceRow r;
        try {
            r.h = std::stod(cells[0]);
            r.n_dofs = std::stoi(cells[1]);
            r.h2_error = std::stod(cells[2]);
            if (!cells[3].empty()) r.rate = std::stod(cells[3]);
            r.iterations = std::stoi(cells[4]);
        } catch (const std::logic_error&) {
            throw InvalidArgument("convergence CSV: malformed row '" + line + "'");
        }
        table.push_back(r);
    }
    return table;
}

ConvergenceTable read_convergence_csv(const std::filesystem::path& path)
{
    std::ifstream is(path);
    if (!is) throw Error("cannot open '" + path.string() + "'");
    return read_convergence_csv(is);
}

void write_key_values(std::ostream& os, const SolveReport& report, int n_dofs, double h)
{
    os << std::setprecision(10);
    os << "h=" << h << '\n';
    os << "n_dofs=" << n_dofs << '\n';
    os << "iterations=" << report.iterations << '\n';
    os << "final_gap=" << (report.residual_history.empty() ? 0.0 : report.residual_history.back()) << '\n';
    os << "linear_solves=" << report.linear.solves << '\n';
    os << "linear_max_relative_residual=" << report.linear.max_relative_residual << '\n';
}

void write_key_values(std::ostream& os, const DiagnosticsReport& d)
{
    os << std::setprecision(10);
    os << "max_pq_defect=" << d.max_pq_defect << '\n';
    os << "mean_pq_defect=" << d.mean_pq_defect << '\n';
    os << "max_orthogonality=" << d.max_orthogonality << '\n';
    os << "mean_orthogonality=" << d.mean_orthogonality << '\n';
    os << "min_phi_x_sq=" << d.min_phi_x_sq << '\n';
    os << "max_phi_x_sq=" << d.max_phi_x_sq << '\n';
    os << "min_phi_y_sq=" << d.min_phi_y_sq << '\n';
    os << "max_phi_y_sq=" << d.max_phi_y_sq << '\n';
    os << "violation_fraction=" << d.violation_fraction << '\n';
    os << "undefined_fraction=" << d.undefined_fraction << '\n';
    os << "samples=" << d.samples << '\n';
}

void write_history(std::ostream& os, const std::vector<double>& history)
{
    os << std::setprecision(10);
    for (std::size_t k = 0; k < history.size(); ++k) os << k + 1 << ' ' << history[k] << '\n';
}

void write_text_report(std::ostream& os, const std::string& scenario, const SolverConfig& config,
                       const SolveReport& report, const DiagnosticsReport& d, int n_dofs, double h)
{
    os << std::setprecision(8);
    os << "scenario        " << scenario << '\n';
    os << "mesh size h     " << h << '\n';
    os << "dofs            " << n_dofs << '\n';
    os << "epsilon         " << config.epsilon << '\n';
    os << "eta             " << config.eta << '\n';
    os << "K^2             " << config.k_sq << '\n';
    os << "iterations      " << report.iterations << '\n';
    os << "gap history\n";
    for (std::size_t k = 0; k < report.residual_history.size(); ++k) {
        os << "  " << std::setw(4) << k + 1 << "  " << std::scientific << report.residual_history[k]
           << std::defaultfloat << '\n';
    }
    os << "constraints\n";
    os << "  |pq - 4|       max " << d.max_pq_defect << "  mean " << d.mean_pq_defect << '\n';
    os << "  |phi_x.phi_y|  max " << d.max_orthogonality << "  mean " << d.mean_orthogonality << '\n';
    os << "  |phi_x|^2      [" << d.min_phi_x_sq << ", " << d.max_phi_x_sq << "]\n";
    os << "  |phi_y|^2      [" << d.min_phi_y_sq << ", " << d.max_phi_y_sq << "]\n";
    os << "  out of bounds  fraction " << d.violation_fraction << " of " << d.samples << " samples\n";
}

} // namespace miura
