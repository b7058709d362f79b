#include "miura/forms.hpp"

#include "miura/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace miura {

namespace {

using LocalMatrix = Eigen::Matrix<double, kLocalDofs, kLocalDofs>;

// Zero-filled CSR matrix holding every (i, j) pair of scalar dofs that share a cell.
SparseMatrix make_pattern(const BellSpace& space)
{
    const int n = space.n_scalar_dofs();
    std::vector<std::vector<int>> cols(static_cast<std::size_t>(n));
    for (int c = 0; c < space.n_cells(); ++c) {
        const auto dofs = space.cell_dofs(c);
        for (int r : dofs) {
            auto& row = cols[static_cast<std::size_t>(r)];
            row.insert(row.end(), dofs.begin(), dofs.end());
        }
    }
    Eigen::VectorXi nnz(n);
    for (int r = 0; r < n; ++r) {
        auto& row = cols[static_cast<std::size_t>(r)];
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        nnz[r] = static_cast<int>(row.size());
    }
    SparseMatrix m(n, n);
    m.reserve(nnz);
    for (int r = 0; r < n; ++r) {
        for (int col : cols[static_cast<std::size_t>(r)]) m.insert(r, col) = 0.0;
    }
    m.makeCompressed();
    return m;
}

void scatter(SparseMatrix& m, const std::array<int, kLocalDofs>& dofs, const LocalMatrix& local)
{
    const int* outer = m.outerIndexPtr();
    const int* inner = m.innerIndexPtr();
    double* values = m.valuePtr();
    for (int i = 0; i < kLocalDofs; ++i) {
        const int r = dofs[static_cast<std::size_t>(i)];
        const int* begin = inner + outer[r];
        const int* end = inner + outer[r + 1];
        for (int j = 0; j < kLocalDofs; ++j) {
            const int* it = std::lower_bound(begin, end, dofs[static_cast<std::size_t>(j)]);
            values[it - inner] += local(i, j);
        }
    }
}

struct EdgeGeometry {
    Vec2 a;
    Vec2 tangent; // b - a
    Vec2 outward; // unit normal pointing out of the owning cell
    double length;
};

EdgeGeometry edge_geometry(const BellSpace& space, const BoundaryEdge& e)
{
    const auto& verts = space.mesh().vertices();
    const auto& tri = space.mesh().triangles()[static_cast<std::size_t>(e.cell)];
    int opposite = tri[0];
    for (int v : tri) {
        if (v != e.v[0] && v != e.v[1]) opposite = v;
    }
    EdgeGeometry g;
    g.a = verts[static_cast<std::size_t>(e.v[0])];
    g.tangent = verts[static_cast<std::size_t>(e.v[1])] - g.a;
    g.length = g.tangent.norm();
    g.outward = Vec2(g.tangent.y(), -g.tangent.x()) / g.length;
    if (g.outward.dot(verts[static_cast<std::size_t>(opposite)] - g.a) > 0.0) g.outward = -g.outward;
    return g;
}

} // namespace

CoefficientBounds::CoefficientBounds(double k_sq)
    : k_sq_(k_sq)
{
    if (!(k_sq > 1.0 && k_sq < 4.0)) {
        throw InvalidArgument("CoefficientBounds: |K|^2 must lie in (1, 4), got " + std::to_string(k_sq));
    }
}

double coeff_p(const Vec3& grad_x)
{
    const double s = grad_x.squaredNorm();
    if (!(s < 4.0)) throw EllipticityViolation("coeff_p: |phi_x|^2 = " + std::to_string(s) + " >= 4");
    return 1.0 / (1.0 - 0.25 * s);
}

double coeff_q(const Vec3& grad_y)
{
    const double s = grad_y.squaredNorm();
    if (!(s > 0.0)) throw EllipticityViolation("coeff_q: |phi_y| = 0");
    return 4.0 / s;
}

double coeff_p_bar(const Vec3& grad_x, const CoefficientBounds& bounds)
{
    const double s = grad_x.squaredNorm();
    if (s > bounds.k_sq()) return bounds.p_max();
    return 1.0 / (1.0 - 0.25 * s);
}

double coeff_q_bar(const Vec3& grad_y, const CoefficientBounds& bounds)
{
    const double s = grad_y.squaredNorm();
    if (s > bounds.k_sq()) return bounds.q_min();
    if (s < 1.0) return 4.0;
    return 4.0 / s;
}

CordesReport cordes_report(double p, double q)
{
    const double sum = p + q;
    const double squares = p * p + q * q;
    return CordesReport{sum / squares, 2.0 - sum * sum / squares};
}

SparseMatrix AssembledSystem::full_matrix() const
{
    const int n = n_scalar_dofs();
    SparseMatrix full(kComponents * n, kComponents * n);
    Eigen::VectorXi nnz(kComponents * n);
    for (int c = 0; c < kComponents; ++c) {
        for (int r = 0; r < n; ++r) nnz[c * n + r] = block.outerIndexPtr()[r + 1] - block.outerIndexPtr()[r];
    }
    full.reserve(nnz);
    for (int c = 0; c < kComponents; ++c) {
        for (int r = 0; r < n; ++r) {
            for (SparseMatrix::InnerIterator it(block, r); it; ++it) full.insert(c * n + r, c * n + it.col()) = it.value();
        }
    }
    full.makeCompressed();
    return full;
}

Eigen::VectorXd AssembledSystem::full_rhs() const
{
    return Eigen::Map<const Eigen::VectorXd>(rhs.data(), rhs.size());
}

SparseMatrix assemble_volume(const Field& frozen, const CoefficientBounds& bounds, CoefficientModel model,
                             const TriangleRule& rule)
{
    const BellSpace& space = frozen.space();
    SparseMatrix m = make_pattern(space);
    for (int c = 0; c < space.n_cells(); ++c) {
        const BellElement& el = space.element(c);
        const double jac = 2.0 * el.area();
        LocalMatrix local = LocalMatrix::Zero();
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const BasisValues b = el.evaluate(el.to_physical(rule.points[q]));
            double pbar = 1.0;
            double qbar = 1.0;
            if (model == CoefficientModel::clamped) {
                const Jet j = frozen.combine(c, b);
                pbar = coeff_p_bar(j.dx, bounds);
                qbar = coeff_q_bar(j.dy, bounds);
            }
            if (!std::isfinite(pbar) || !std::isfinite(qbar)) {
                throw AssemblyError(c, "non-finite coefficient in cell " + std::to_string(c));
            }
            const double w = rule.weights[q] * jac;
            local.noalias() += w * (b.dxx + b.dyy) * (pbar * b.dxx + qbar * b.dyy).transpose();
        }
        scatter(m, space.cell_dofs(c), local);
    }
    return m;
}

AssembledSystem assemble_penalty(const BellSpace& space, const AnalyticMap& bc, double eta, const EdgeRule& rule)
{
    if (!(eta > 0.0)) throw InvalidArgument("penalty parameter eta must be positive");
    AssembledSystem sys;
    sys.block = make_pattern(space);
    sys.rhs = Eigen::MatrixX3d::Zero(space.n_scalar_dofs(), 3);
    for (const BoundaryEdge& e : space.mesh().dirichlet_edges()) {
        const BellElement& el = space.element(e.cell);
        const EdgeGeometry g = edge_geometry(space, e);
        const double weight = eta * std::pow(g.length, -4.0) * g.length;
        const auto dofs = space.cell_dofs(e.cell);
        LocalMatrix local = LocalMatrix::Zero();
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Vec2 p = g.a + rule.points[q] * g.tangent;
            const BasisValues b = el.evaluate(p);
            const double w = weight * rule.weights[q];
            local.noalias() += w * b.v * b.v.transpose();
            const Vec3 data = bc.value(p.x(), p.y());
            for (int i = 0; i < kLocalDofs; ++i) {
                sys.rhs.row(dofs[static_cast<std::size_t>(i)]) += (w * b.v[i]) * data.transpose();
            }
        }
        scatter(sys.block, dofs, local);
    }
    return sys;
}

AssembledSystem assemble_linearized(const Field& frozen, const AnalyticMap& bc, double eta,
                                    const CoefficientBounds& bounds, CoefficientModel model,
                                    const QuadratureRules& rules)
{
    if (!frozen.coefficients().allFinite()) throw AssemblyError(-1, "frozen field has non-finite coefficients");
    AssembledSystem sys = assemble_penalty(frozen.space(), bc, eta, rules.edge);
    sys.block += assemble_volume(frozen, bounds, model, rules.volume);
    return sys;
}

SparseMatrix assemble_stiffness(const BellSpace& space, const TriangleRule& rule)
{
    SparseMatrix m = make_pattern(space);
    for (int c = 0; c < space.n_cells(); ++c) {
        const BellElement& el = space.element(c);
        const double jac = 2.0 * el.area();
        LocalMatrix local = LocalMatrix::Zero();
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const BasisValues b = el.evaluate(el.to_physical(rule.points[q]));
            const double w = rule.weights[q] * jac;
            local.noalias() += w * (b.dx * b.dx.transpose() + b.dy * b.dy.transpose());
        }
        scatter(m, space.cell_dofs(c), local);
    }
    return m;
}

AssembledSystem assemble_laplace(const BellSpace& space, const AnalyticMap& bc, double eta,
                                 const QuadratureRules& rules)
{
    AssembledSystem sys = assemble_penalty(space, bc, eta, rules.edge);
    sys.block += assemble_stiffness(space, rules.volume);

    SparseMatrix flux = make_pattern(space);
    for (const BoundaryEdge& e : space.mesh().dirichlet_edges()) {
        const BellElement& el = space.element(e.cell);
        const EdgeGeometry g = edge_geometry(space, e);
        const auto dofs = space.cell_dofs(e.cell);
        LocalMatrix local = LocalMatrix::Zero();
        for (std::size_t q = 0; q < rules.edge.size(); ++q) {
            const Vec2 p = g.a + rules.edge.points[q] * g.tangent;
            const BasisValues b = el.evaluate(p);
            const BasisValues::Row dn = g.outward.x() * b.dx + g.outward.y() * b.dy;
            const double w = g.length * rules.edge.weights[q];
            local.noalias() -= w * (b.v * dn.transpose() + dn * b.v.transpose());
            const Vec3 data = bc.value(p.x(), p.y());
            for (int i = 0; i < kLocalDofs; ++i) {
                sys.rhs.row(dofs[static_cast<std::size_t>(i)]) -= (w * dn[i]) * data.transpose();
            }
        }
        scatter(flux, dofs, local);
    }
    sys.block += flux;
    return sys;
}

} // namespace miura
