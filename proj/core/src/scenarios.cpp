#include "miura/scenarios.hpp"

#include "miura/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace miura {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Switch between two boundary pieces on a predicate of the parameter point.
template <class Pred>
AnalyticMap piecewise(Pred use_second, AnalyticMap first, AnalyticMap second)
{
    return AnalyticMap([use_second, first = std::move(first), second = std::move(second)](double x, double y) {
        return use_second(x, y) ? second(x, y) : first(x, y);
    });
}

} // namespace

TriMesh Scenario::build_mesh(std::optional<int> nx_override, std::optional<int> ny_override) const
{
    TriMesh mesh = build_structured_rect(domain.x0, domain.x1, domain.y0, domain.y1, nx_override.value_or(nx),
                                         ny_override.value_or(ny));
    if (periodic) mesh = identify_periodic(mesh, *periodic);
    return mesh;
}

SolverConfig Scenario::configure(SolverConfig base) const
{
    if (k_sq) base.k_sq = *k_sq;
    if (eta) base.eta = *eta;
    if (epsilon) base.epsilon = *epsilon;
    base.model = model;
    return base;
}

AxisymmetricParams axisymmetric_params(double theta)
{
    if (!(theta > 0.0 && theta < 2.0 * kPi / 3.0)) {
        throw InvalidArgument("axisymmetric: theta must lie in (0, 2 pi / 3)");
    }
    AxisymmetricParams a{};
    a.theta = theta;
    a.c0 = std::cos(theta / 2.0);
    a.s0 = std::sin(theta / 2.0);
    a.alpha = 1.0 / std::sqrt(1.0 - a.s0 * a.s0);
    a.s0_star = std::sin(0.5 * std::acos(1.0 / (2.0 * a.c0)));
    return a;
}

AnalyticMap axisymmetric_reference(double theta)
{
    const AxisymmetricParams a = axisymmetric_params(theta);
    return AnalyticMap([a](double x, double y) {
        const double k = 4.0 * a.c0 * a.c0;
        const double rho = std::sqrt(k * x * x + 1.0);
        const double drho = k * x / rho;
        const double ddrho = k / (rho * rho * rho);
        const double c = std::cos(a.alpha * y);
        const double s = std::sin(a.alpha * y);
        const double al = a.alpha;
        Jet j;
        j.value = Vec3(rho * c, rho * s, 2.0 * a.s0 * x);
        j.dx = Vec3(drho * c, drho * s, 2.0 * a.s0);
        j.dy = Vec3(-al * rho * s, al * rho * c, 0.0);
        j.dxx = Vec3(ddrho * c, ddrho * s, 0.0);
        j.dxy = Vec3(-al * drho * s, al * drho * c, 0.0);
        j.dyy = Vec3(-al * al * rho * c, -al * al * rho * s, 0.0);
        return j;
    });
}

Scenario axisymmetric(double theta, bool ring)
{
    const AxisymmetricParams a = axisymmetric_params(theta);
    Scenario s;
    s.name = ring ? "axisym-ring" : "axisym";
    s.domain = Rect{-a.s0_star, a.s0_star, 0.0, 2.0 * kPi / a.alpha};
    s.nx = 6;
    s.ny = 74;
    s.reference = axisymmetric_reference(theta);
    s.boundary = *s.reference;
    if (ring) s.periodic = Axis::y;
    return s;
}

Scenario cone(double y_extent)
{
    if (!(y_extent > 0.0)) throw InvalidArgument("cone: y extent must be positive");
    Scenario s;
    s.name = y_extent == 1.0 ? "cone" : "cone-extended";
    s.domain = Rect{0.0, kPi, 0.0, y_extent};
    s.nx = 56;
    s.ny = static_cast<int>(std::lround(18 * y_extent));
    s.boundary = AnalyticMap([](double x, double y) {
        const double c = std::cos(y);
        const double sn = std::sin(y);
        Jet j;
        j.value = Vec3(x * c, x * sn, x);
        j.dx = Vec3(c, sn, 1.0);
        j.dy = Vec3(-x * sn, x * c, 0.0);
        j.dxy = Vec3(-sn, c, 0.0);
        j.dyy = Vec3(-x * c, -x * sn, 0.0);
        return j;
    });
    return s;
}

SaddlePieces saddle_pieces(double alpha_fold)
{
    if (!(alpha_fold >= 0.0 && alpha_fold < kPi / 2.0)) {
        throw InvalidArgument("saddle: fold angle must lie in [0, pi / 2)");
    }
    constexpr double L = 2.0;
    constexpr double H = 1.0;
    const Vec3 a(L, 0.0, 0.0);
    const Vec3 b(L, H, 0.0);
    const Vec3 c(0.0, H, 0.0);
    // D is the foot of the perpendicular from B to the fold line AC.
    const Vec3 ac = c - a;
    const Vec3 d = a + ((b - a).dot(ac) / ac.squaredNorm()) * ac;
    const Vec3 db = b - d;
    const Vec3 b_prime = d + db.norm() * std::sin(alpha_fold) * Vec3::UnitZ() + std::cos(alpha_fold) * db;

    SaddlePieces p;
    p.b_prime = b_prime;
    p.near = AnalyticMap::affine(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY());
    // (1 - y/H) B'A + (1 - x/L) B'C + OB': sends A, B, C to A, B', C.
    const Vec3 ex = -(c - b_prime) / L;
    const Vec3 ey = -(a - b_prime) / H;
    const Vec3 offset = (a - b_prime) + (c - b_prime) + b_prime;
    p.far = AnalyticMap::affine(offset, ex, ey);
    return p;
}

Scenario saddle(double alpha_fold)
{
    constexpr double L = 2.0;
    constexpr double H = 1.0;
    SaddlePieces pieces = saddle_pieces(alpha_fold);
    Scenario s;
    s.name = "saddle";
    s.domain = Rect{0.0, L, 0.0, H};
    s.nx = 56;
    s.ny = 28;
    constexpr double tol = 1e-12;
    s.boundary = piecewise([](double x, double y) { return x >= L - tol || y >= H - tol; }, std::move(pieces.near),
                           std::move(pieces.far));
    s.k_sq = 4.0 - 1e-6;
    s.model = CoefficientModel::isotropic;
    return s;
}

Scenario deformed_hyperboloid()
{
    constexpr double L = 0.765;
    constexpr double alpha = 1.41;
    constexpr double l = 1.08;
    constexpr double R = 1.14;
    constexpr double beta = kPi / 4.0;
    Scenario s;
    s.name = "deformed-hyperboloid";
    s.domain = Rect{0.0, L, 0.0, 2.0 * kPi / alpha};
    s.nx = 5;
    s.ny = 28;
    s.periodic = Axis::y;
    const AnalyticMap lower([](double, double y) {
        const double c = std::cos(alpha * y);
        const double sn = std::sin(alpha * y);
        Jet j;
        j.value = Vec3(R * c, R * sn, -l);
        j.dy = Vec3(-alpha * R * sn, alpha * R * c, 0.0);
        j.dyy = Vec3(-alpha * alpha * R * c, -alpha * alpha * R * sn, 0.0);
        return j;
    });
    const AnalyticMap upper([](double, double y) {
        const double c = std::cos(alpha * y);
        const double sn = std::sin(alpha * y);
        const double tilt = R * std::sin(beta);
        Jet j;
        j.value = Vec3(R * c, R * sn, tilt * c);
        j.dy = Vec3(-alpha * R * sn, alpha * R * c, -alpha * tilt * sn);
        j.dyy = Vec3(-alpha * alpha * R * c, -alpha * alpha * R * sn, -alpha * alpha * tilt * c);
        return j;
    });
    s.boundary = piecewise([](double x, double) { return x > 0.5 * L; }, lower, upper);
    return s;
}

Scenario flat_plane()
{
    Scenario s;
    s.name = "flat";
    s.domain = Rect{0.0, 1.0, 0.0, 1.0};
    s.nx = 4;
    s.ny = 4;
    s.boundary = AnalyticMap::affine(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY());
    s.reference = s.boundary;
    return s;
}

std::vector<std::string> scenario_names()
{
    return {"axisym", "axisym-ring", "cone", "cone-extended", "saddle", "deformed-hyperboloid", "flat"};
}

Scenario scenario_by_name(const std::string& name, double theta, double alpha_fold)
{
    if (name == "axisym") return axisymmetric(theta);
    if (name == "axisym-ring") return axisymmetric(theta, true);
    if (name == "cone") return cone();
    if (name == "cone-extended") return cone(2.0);
    if (name == "saddle") return saddle(alpha_fold);
    if (name == "deformed-hyperboloid") return deformed_hyperboloid();
    if (name == "flat") return flat_plane();
    throw InvalidArgument("unknown scenario '" + name + "'");
}

DiagnosticsReport diagnostics(const Field& field, const TriangleRule& rule)
{
    DiagnosticsReport r;
    r.min_phi_x_sq = r.min_phi_y_sq = kInf;
    r.max_phi_x_sq = r.max_phi_y_sq = 0.0;
    int defined = 0;
    int violations = 0;
    for_each_quadrature_point(field, rule, [&](int, const Vec2&, double, const Jet& j) {
        const double gx = j.dx.squaredNorm();
        const double gy = j.dy.squaredNorm();
        ++r.samples;
        r.min_phi_x_sq = std::min(r.min_phi_x_sq, gx);
        r.max_phi_x_sq = std::max(r.max_phi_x_sq, gx);
        r.min_phi_y_sq = std::min(r.min_phi_y_sq, gy);
        r.max_phi_y_sq = std::max(r.max_phi_y_sq, gy);
        const double ortho = std::abs(j.dx.dot(j.dy));
        r.max_orthogonality = std::max(r.max_orthogonality, ortho);
        r.mean_orthogonality += ortho;
        if (gx < 4.0 && gy > 0.0) {
            const double defect = std::abs((1.0 / (1.0 - 0.25 * gx)) * (4.0 / gy) - 4.0);
            r.max_pq_defect = std::max(r.max_pq_defect, defect);
            r.mean_pq_defect += defect;
            ++defined;
        }
        if (!(gx > 0.0 && gx <= 3.0 && gy > 1.0 && gy <= 4.0)) ++violations;
    });
    if (r.samples > 0) {
        r.mean_orthogonality /= r.samples;
        r.violation_fraction = static_cast<double>(violations) / r.samples;
        r.undefined_fraction = static_cast<double>(r.samples - defined) / r.samples;
    }
    if (defined > 0) r.mean_pq_defect /= defined;
    return r;
}

std::vector<std::pair<int, int>> default_resolutions(int rows)
{
    std::vector<std::pair<int, int>> out;
    for (int k = 0; k < rows; ++k) out.emplace_back(6 << k, 74 << k);
    return out;
}

ConvergenceTable convergence_study(double theta, const std::vector<std::pair<int, int>>& resolutions,
                                   const SolverConfig& config, ConvergenceTable* partial)
{
    if (resolutions.size() < 2) throw InvalidArgument("convergence_study: need at least two resolutions");
    const Scenario scenario = axisymmetric(theta);
    const SolverConfig cfg = scenario.configure(config);
    const TriangleRule rule = triangle_rule(cfg.volume_degree);

    ConvergenceTable table;
    for (const auto& [nx, ny] : resolutions) {
        auto space = std::make_shared<const BellSpace>(scenario.build_mesh(nx, ny));
        SolveReport report;
        try {
            report = fixed_point(space, scenario.boundary, cfg);
        } catch (...) {
            if (partial) *partial = table;
            throw;
        }
        ConvergenceRow row;
        row.h = mesh_metrics(space->mesh()).h;
        row.n_dofs = space->n_dofs();
        row.h2_error = error_norms(*report.solution, *scenario.reference, rule).h2_semi;
        row.iterations = report.iterations;
        if (!table.empty()) {
            const ConvergenceRow& prev = table.back();
            row.rate = std::log(prev.h2_error / row.h2_error) / std::log(prev.h / row.h);
        }
        table.push_back(row);
    }
    if (partial) *partial = table;
    return table;
}

} // namespace miura
