#pragma once

#include "miura/analytic.hpp"
#include "miura/mesh.hpp"
#include "miura/quadrature.hpp"

#include <Eigen/Core>

#include <array>
#include <memory>
#include <vector>

namespace miura {

/// Nodal functionals carried by every vertex, in storage order.
enum class DofKind : int { value = 0, dx, dy, dxx, dxy, dyy };

inline constexpr int kDofsPerVertex = 6;
inline constexpr int kLocalDofs = 18;
inline constexpr int kQuinticModes = 21;
inline constexpr int kComponents = 3;

[[nodiscard]] constexpr int derivative_order(DofKind k)
{
    return k == DofKind::value ? 0 : (k == DofKind::dx || k == DofKind::dy) ? 1 : 2;
}

/// All 18 local basis functions and their physical derivatives at one point.
struct BasisValues {
    using Row = Eigen::Matrix<double, kLocalDofs, 1>;
    Row v, dx, dy, dxx, dxy, dyy;
};

/// Bell (reduced quintic) triangle.
///
/// Local basis functions are quintics expressed in monomials of the centered,
/// diameter-scaled coordinates (xi, eta) = (p - centroid) / h_c. They are dual
/// to the 18 vertex functionals (value, d/dx, d/dy, d2/dx2, d2/dxdy, d2/dy2 at
/// each vertex, in global Cartesian directions) and their normal derivative
/// along every edge is cubic: the degree-4 Legendre moment of d/dn vanishes.
class BellElement {
public:
    /// Throws DegenerateCell when area < 1e-14 * h_c^2.
    explicit BellElement(const std::array<Vec2, 3>& vertices, int cell_id = -1);

    [[nodiscard]] const Vec2& vertex(int k) const { return vertices_[static_cast<std::size_t>(k)]; }
    [[nodiscard]] double diameter() const { return scale_; }
    [[nodiscard]] double area() const { return area_; }

    /// Column j holds the monomial coefficients of basis function j (physical dof scaling).
    [[nodiscard]] const Eigen::Matrix<double, kQuinticModes, kLocalDofs>& coefficients() const { return coeffs_; }

    [[nodiscard]] Vec2 to_physical(const std::array<double, 3>& barycentric) const;
    [[nodiscard]] bool contains(const Vec2& p, double rel_tol = 1e-10) const;

    [[nodiscard]] BasisValues evaluate(const Vec2& p) const;

    /// Local dof index for vertex k and kind.
    [[nodiscard]] static constexpr int local_index(int vertex, DofKind kind)
    {
        return vertex * kDofsPerVertex + static_cast<int>(kind);
    }

private:
    std::array<Vec2, 3> vertices_;
    Vec2 center_;
    double scale_ = 1.0;
    double area_ = 0.0;
    Eigen::Matrix<double, kQuinticModes, kLocalDofs> coeffs_;
};

/// Global numbering of the scalar and vector-valued dofs.
///
/// Scalar index of (vertex, kind) = 6 * group(vertex) + kind, so periodic
/// partners share all six. The vector-valued index of component c is
/// c * n_scalar_dofs() + scalar index, i.e. three stacked scalar blocks.
class DofMap {
public:
    explicit DofMap(const TriMesh& mesh);

    [[nodiscard]] int n_groups() const { return n_groups_; }
    [[nodiscard]] int n_scalar_dofs() const { return kDofsPerVertex * n_groups_; }
    [[nodiscard]] int n_dofs() const { return kComponents * n_scalar_dofs(); }

    [[nodiscard]] int scalar_index(int vertex, DofKind kind) const
    {
        return kDofsPerVertex * groups_[static_cast<std::size_t>(vertex)] + static_cast<int>(kind);
    }
    [[nodiscard]] int global_index(int vertex, int component, DofKind kind) const
    {
        return component * n_scalar_dofs() + scalar_index(vertex, kind);
    }

private:
    std::vector<int> groups_;
    int n_groups_ = 0;
};

/// Mesh + dof map + one BellElement per cell.
class BellSpace {
public:
    explicit BellSpace(TriMesh mesh);

    [[nodiscard]] const TriMesh& mesh() const { return mesh_; }
    [[nodiscard]] const DofMap& dofmap() const { return dofmap_; }
    [[nodiscard]] const BellElement& element(int cell) const { return elements_[static_cast<std::size_t>(cell)]; }
    [[nodiscard]] int n_cells() const { return mesh_.n_cells(); }
    [[nodiscard]] int n_scalar_dofs() const { return dofmap_.n_scalar_dofs(); }
    [[nodiscard]] int n_dofs() const { return dofmap_.n_dofs(); }

    /// Scalar dof indices of a cell in local order.
    [[nodiscard]] std::array<int, kLocalDofs> cell_dofs(int cell) const;

private:
    TriMesh mesh_;
    DofMap dofmap_;
    std::vector<BellElement> elements_;
};

/// Discrete map Omega -> R^3 in a BellSpace.
///
/// Coefficients are stored as an n_scalar x 3 column-major matrix, which is
/// exactly the stacked global vector of length n_dofs.
class Field {
public:
    Field(std::shared_ptr<const BellSpace> space, Eigen::MatrixX3d coefficients);

    static Field zero(std::shared_ptr<const BellSpace> space);

    [[nodiscard]] const BellSpace& space() const { return *space_; }
    [[nodiscard]] const std::shared_ptr<const BellSpace>& space_ptr() const { return space_; }
    [[nodiscard]] const Eigen::MatrixX3d& coefficients() const { return coeffs_; }
    [[nodiscard]] Eigen::MatrixX3d& coefficients() { return coeffs_; }
    [[nodiscard]] Eigen::Map<const Eigen::VectorXd> flat() const
    {
        return {coeffs_.data(), coeffs_.size()};
    }

    /// Jet from precomputed basis values on `cell`.
    [[nodiscard]] Jet combine(int cell, const BasisValues& basis) const;

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double s);

private:
    std::shared_ptr<const BellSpace> space_;
    Eigen::MatrixX3d coeffs_;
};

[[nodiscard]] Field operator+(Field a, const Field& b);
[[nodiscard]] Field operator-(Field a, const Field& b);
[[nodiscard]] Field operator*(double s, Field a);

/// Bell interpolant: vertex dofs copied from g's point values and derivatives.
/// For periodic groups the master vertex supplies the data.
[[nodiscard]] Field interpolate(std::shared_ptr<const BellSpace> space, const AnalyticMap& g);

/// Throws InvalidArgument if `point` lies outside `cell`.
[[nodiscard]] Jet eval_field(const Field& field, int cell, const Vec2& point);

/// Volume quadrature sweep; `visit(cell, point, weight_times_jacobian, jet)`.
template <class Visitor>
void for_each_quadrature_point(const Field& field, const TriangleRule& rule, Visitor&& visit)
{
    const BellSpace& space = field.space();
    for (int c = 0; c < space.n_cells(); ++c) {
        const BellElement& el = space.element(c);
        const double jac = 2.0 * el.area();
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Vec2 p = el.to_physical(rule.points[q]);
            visit(c, p, rule.weights[q] * jac, field.combine(c, el.evaluate(p)));
        }
    }
}

[[nodiscard]] double l2_norm(const Field& field, const TriangleRule& rule = triangle_rule(kDefaultVolumeDegree));
[[nodiscard]] double h1_seminorm(const Field& field, const TriangleRule& rule = triangle_rule(kDefaultVolumeDegree));
/// (sum over components of int |D^2 u|^2)^(1/2), Frobenius norm of the Hessian.
[[nodiscard]] double h2_seminorm(const Field& field, const TriangleRule& rule = triangle_rule(kDefaultVolumeDegree));
[[nodiscard]] double h2_norm(const Field& field, const TriangleRule& rule = triangle_rule(kDefaultVolumeDegree));

struct ErrorNorms {
    double l2 = 0.0;
    double h1_semi = 0.0;
    double h2_semi = 0.0;
    [[nodiscard]] double h2() const;
};

/// Norms of (field - g) by quadrature against the analytic derivatives of g.
[[nodiscard]] ErrorNorms error_norms(const Field& field, const AnalyticMap& g,
                                     const TriangleRule& rule = triangle_rule(kDefaultVolumeDegree));

} // namespace miura
