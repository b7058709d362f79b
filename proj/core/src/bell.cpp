#include "miura/bell.hpp"

#include "miura/error.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <string>

namespace miura {

namespace {

// Exponents (a, b) of xi^a eta^b, ordered by total degree.
constexpr std::array<std::array<int, 2>, kQuinticModes> kModes = [] {
    std::array<std::array<int, 2>, kQuinticModes> m{};
    int k = 0;
    for (int d = 0; d <= 5; ++d) {
        for (int b = 0; b <= d; ++b) m[static_cast<std::size_t>(k++)] = {d - b, b};
    }
    return m;
}();

struct MonomialJet {
    using Row = Eigen::Matrix<double, kQuinticModes, 1>;
    Row v, dx, dy, dxx, dxy, dyy; // derivatives in local coordinates
};

MonomialJet monomials(double xi, double eta)
{
    std::array<double, 6> px{};
    std::array<double, 6> py{};
    px[0] = py[0] = 1.0;
    for (int i = 1; i < 6; ++i) {
        px[static_cast<std::size_t>(i)] = px[static_cast<std::size_t>(i - 1)] * xi;
        py[static_cast<std::size_t>(i)] = py[static_cast<std::size_t>(i - 1)] * eta;
    }
    const auto pw = [](const std::array<double, 6>& p, int e) { return e < 0 ? 0.0 : p[static_cast<std::size_t>(e)]; };

    MonomialJet m;
    for (int k = 0; k < kQuinticModes; ++k) {
        const int a = kModes[static_cast<std::size_t>(k)][0];
        const int b = kModes[static_cast<std::size_t>(k)][1];
        m.v[k] = pw(px, a) * pw(py, b);
        m.dx[k] = a * pw(px, a - 1) * pw(py, b);
        m.dy[k] = b * pw(px, a) * pw(py, b - 1);
        m.dxx[k] = a * (a - 1) * pw(px, a - 2) * pw(py, b);
        m.dxy[k] = a * b * pw(px, a - 1) * pw(py, b - 1);
        m.dyy[k] = b * (b - 1) * pw(px, a) * pw(py, b - 2);
    }
    return m;
}

// Legendre polynomial of degree 4 shifted to [0, 1].
double legendre4(double t)
{
    const double s = 2.0 * t - 1.0;
    const double s2 = s * s;
    return (35.0 * s2 * s2 - 30.0 * s2 + 3.0) / 8.0;
}

} // namespace

BellElement::BellElement(const std::array<Vec2, 3>& vertices, int cell_id)
    : vertices_(vertices)
{
    center_ = (vertices_[0] + vertices_[1] + vertices_[2]) / 3.0;
    scale_ = std::max({(vertices_[0] - vertices_[1]).norm(), (vertices_[1] - vertices_[2]).norm(),
                       (vertices_[2] - vertices_[0]).norm()});
    const Vec2 e1 = vertices_[1] - vertices_[0];
    const Vec2 e2 = vertices_[2] - vertices_[0];
    area_ = 0.5 * (e1.x() * e2.y() - e1.y() * e2.x());
    if (!(std::abs(area_) >= 1e-14 * scale_ * scale_) || scale_ == 0.0) {
        throw DegenerateCell(cell_id, "degenerate triangle (cell " + std::to_string(cell_id) + ")");
    }
    area_ = std::abs(area_);

    // Rows: 18 scaled vertex functionals, then 3 edge cubicity constraints.
    Eigen::Matrix<double, kQuinticModes, kQuinticModes> functionals;
    for (int k = 0; k < 3; ++k) {
        const Vec2 local = (vertices_[static_cast<std::size_t>(k)] - center_) / scale_;
        const MonomialJet m = monomials(local.x(), local.y());
        functionals.row(local_index(k, DofKind::value)) = m.v.transpose();
        functionals.row(local_index(k, DofKind::dx)) = m.dx.transpose();
        functionals.row(local_index(k, DofKind::dy)) = m.dy.transpose();
        functionals.row(local_index(k, DofKind::dxx)) = m.dxx.transpose();
        functionals.row(local_index(k, DofKind::dxy)) = m.dxy.transpose();
        functionals.row(local_index(k, DofKind::dyy)) = m.dyy.transpose();
    }
    const EdgeRule gauss = edge_rule(9);
    for (int e = 0; e < 3; ++e) {
        const Vec2 a = (vertices_[static_cast<std::size_t>((e + 1) % 3)] - center_) / scale_;
        const Vec2 b = (vertices_[static_cast<std::size_t>((e + 2) % 3)] - center_) / scale_;
        const Vec2 tangent = b - a;
        const Vec2 normal = Vec2(tangent.y(), -tangent.x()).normalized();
        MonomialJet::Row row = MonomialJet::Row::Zero();
        for (std::size_t q = 0; q < gauss.size(); ++q) {
            const double t = gauss.points[q];
            const Vec2 p = a + t * tangent;
            const MonomialJet m = monomials(p.x(), p.y());
            row += gauss.weights[q] * legendre4(t) * (normal.x() * m.dx + normal.y() * m.dy);
        }
        functionals.row(kLocalDofs + e) = row.transpose();
    }

    const Eigen::FullPivLU<Eigen::Matrix<double, kQuinticModes, kQuinticModes>> lu(functionals);
    if (!lu.isInvertible()) {
        throw DegenerateCell(cell_id, "Bell functionals are not unisolvent on cell " + std::to_string(cell_id));
    }
    const Eigen::Matrix<double, kQuinticModes, kQuinticModes> inverse = lu.inverse();
    for (int j = 0; j < kLocalDofs; ++j) {
        const int order = derivative_order(static_cast<DofKind>(j % kDofsPerVertex));
        coeffs_.col(j) = inverse.col(j) * std::pow(scale_, order);
    }
}

Vec2 BellElement::to_physical(const std::array<double, 3>& l) const
{
    return l[0] * vertices_[0] + l[1] * vertices_[1] + l[2] * vertices_[2];
}

bool BellElement::contains(const Vec2& p, double rel_tol) const
{
    const double tol = rel_tol * scale_ * scale_;
    for (int e = 0; e < 3; ++e) {
        const Vec2& a = vertices_[static_cast<std::size_t>((e + 1) % 3)];
        const Vec2& b = vertices_[static_cast<std::size_t>((e + 2) % 3)];
        const Vec2 ab = b - a;
        const Vec2 ap = p - a;
        if (ab.x() * ap.y() - ab.y() * ap.x() < -tol) return false;
    }
    return true;
}

BasisValues BellElement::evaluate(const Vec2& p) const
{
    const Vec2 local = (p - center_) / scale_;
    const MonomialJet m = monomials(local.x(), local.y());
    const double inv = 1.0 / scale_;
    const double inv2 = inv * inv;
    BasisValues b;
    b.v.noalias() = coeffs_.transpose() * m.v;
    b.dx.noalias() = inv * (coeffs_.transpose() * m.dx);
    b.dy.noalias() = inv * (coeffs_.transpose() * m.dy);
    b.dxx.noalias() = inv2 * (coeffs_.transpose() * m.dxx);
    b.dxy.noalias() = inv2 * (coeffs_.transpose() * m.dxy);
    b.dyy.noalias() = inv2 * (coeffs_.transpose() * m.dyy);
    return b;
}

DofMap::DofMap(const TriMesh& mesh)
    : groups_(mesh.vertex_groups()), n_groups_(mesh.n_groups())
{
}

BellSpace::BellSpace(TriMesh mesh)
    : mesh_(std::move(mesh)), dofmap_(mesh_)
{
    elements_.reserve(static_cast<std::size_t>(mesh_.n_cells()));
    for (int c = 0; c < mesh_.n_cells(); ++c) {
        const auto& t = mesh_.triangles()[static_cast<std::size_t>(c)];
        elements_.emplace_back(std::array<Vec2, 3>{mesh_.vertices()[t[0]], mesh_.vertices()[t[1]], mesh_.vertices()[t[2]]}, c);
    }
}

std::array<int, kLocalDofs> BellSpace::cell_dofs(int cell) const
{
    const auto& t = mesh_.triangles()[static_cast<std::size_t>(cell)];
    std::array<int, kLocalDofs> dofs{};
    for (int k = 0; k < 3; ++k) {
        for (int d = 0; d < kDofsPerVertex; ++d) {
            dofs[static_cast<std::size_t>(k * kDofsPerVertex + d)] = dofmap_.scalar_index(t[static_cast<std::size_t>(k)], static_cast<DofKind>(d));
        }
    }
    return dofs;
}

Field::Field(std::shared_ptr<const BellSpace> space, Eigen::MatrixX3d coefficients)
    : space_(std::move(space)), coeffs_(std::move(coefficients))
{
    if (!space_) throw InvalidArgument("Field: null space");
    if (coeffs_.rows() != space_->n_scalar_dofs()) {
        throw InvalidArgument("Field: coefficient count does not match the dof map");
    }
}

Field Field::zero(std::shared_ptr<const BellSpace> space)
{
    const int n = space->n_scalar_dofs();
    return Field(std::move(space), Eigen::MatrixX3d::Zero(n, 3));
}

Jet Field::combine(int cell, const BasisValues& basis) const
{
    const auto dofs = space_->cell_dofs(cell);
    Eigen::Matrix<double, kLocalDofs, 3> local;
    for (int i = 0; i < kLocalDofs; ++i) local.row(i) = coeffs_.row(dofs[static_cast<std::size_t>(i)]);
    Jet j;
    j.value = local.transpose() * basis.v;
    j.dx = local.transpose() * basis.dx;
    j.dy = local.transpose() * basis.dy;
    j.dxx = local.transpose() * basis.dxx;
    j.dxy = local.transpose() * basis.dxy;
    j.dyy = local.transpose() * basis.dyy;
    return j;
}

Field& Field::operator+=(const Field& other)
{
    coeffs_ += other.coeffs_;
    return *this;
}

Field& Field::operator-=(const Field& other)
{
    coeffs_ -= other.coeffs_;
    return *this;
}

Field& Field::operator*=(double s)
{
    coeffs_ *= s;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

Field interpolate(std::shared_ptr<const BellSpace> space, const AnalyticMap& g)
{
    const TriMesh& mesh = space->mesh();
    const DofMap& dm = space->dofmap();
    Eigen::MatrixX3d coeffs = Eigen::MatrixX3d::Zero(dm.n_scalar_dofs(), 3);
    std::vector<char> done(static_cast<std::size_t>(dm.n_groups()), 0);
    for (int v = 0; v < mesh.n_vertices(); ++v) {
        const int group = mesh.vertex_groups()[static_cast<std::size_t>(v)];
        if (done[static_cast<std::size_t>(group)]) continue;
        done[static_cast<std::size_t>(group)] = 1;
        const Vec2& p = mesh.vertices()[static_cast<std::size_t>(v)];
        const Jet j = g(p.x(), p.y());
        coeffs.row(dm.scalar_index(v, DofKind::value)) = j.value.transpose();
        coeffs.row(dm.scalar_index(v, DofKind::dx)) = j.dx.transpose();
        coeffs.row(dm.scalar_index(v, DofKind::dy)) = j.dy.transpose();
        coeffs.row(dm.scalar_index(v, DofKind::dxx)) = j.dxx.transpose();
        coeffs.row(dm.scalar_index(v, DofKind::dxy)) = j.dxy.transpose();
        coeffs.row(dm.scalar_index(v, DofKind::dyy)) = j.dyy.transpose();
    }
    return Field(std::move(space), std::move(coeffs));
}

Jet eval_field(const Field& field, int cell, const Vec2& point)
{
    if (cell < 0 || cell >= field.space().n_cells()) throw InvalidArgument("eval_field: cell index out of range");
    const BellElement& el = field.space().element(cell);
    if (!el.contains(point)) throw InvalidArgument("eval_field: point outside cell " + std::to_string(cell));
    return field.combine(cell, el.evaluate(point));
}

double l2_norm(const Field& field, const TriangleRule& rule)
{
    double s = 0.0;
    for_each_quadrature_point(field, rule, [&](int, const Vec2&, double w, const Jet& j) { s += w * j.value.squaredNorm(); });
    return std::sqrt(s);
}

double h1_seminorm(const Field& field, const TriangleRule& rule)
{
    double s = 0.0;
    for_each_quadrature_point(field, rule, [&](int, const Vec2&, double w, const Jet& j) {
        s += w * (j.dx.squaredNorm() + j.dy.squaredNorm());
    });
    return std::sqrt(s);
}

double h2_seminorm(const Field& field, const TriangleRule& rule)
{
    double s = 0.0;
    for_each_quadrature_point(field, rule, [&](int, const Vec2&, double w, const Jet& j) {
        s += w * (j.dxx.squaredNorm() + 2.0 * j.dxy.squaredNorm() + j.dyy.squaredNorm());
    });
    return std::sqrt(s);
}

double h2_norm(const Field& field, const TriangleRule& rule)
{
    const double a = l2_norm(field, rule);
    const double b = h1_seminorm(field, rule);
    const double c = h2_seminorm(field, rule);
    return std::sqrt(a * a + b * b + c * c);
}

double ErrorNorms::h2() const { return std::sqrt(l2 * l2 + h1_semi * h1_semi + h2_semi * h2_semi); }

ErrorNorms error_norms(const Field& field, const AnalyticMap& g, const TriangleRule& rule)
{
    double l2 = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
    for_each_quadrature_point(field, rule, [&](int, const Vec2& p, double w, const Jet& j) {
        const Jet e = g(p.x(), p.y());
        l2 += w * (j.value - e.value).squaredNorm();
        h1 += w * ((j.dx - e.dx).squaredNorm() + (j.dy - e.dy).squaredNorm());
        h2 += w * ((j.dxx - e.dxx).squaredNorm() + 2.0 * (j.dxy - e.dxy).squaredNorm() + (j.dyy - e.dyy).squaredNorm());
    });
    return ErrorNorms{std::sqrt(l2), std::sqrt(h1), std::sqrt(h2)};
}

} // namespace miura
