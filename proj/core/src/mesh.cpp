#include "miura/mesh.hpp"

#include "miura/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace miura {

namespace {

double side_tolerance(const Rect& r) { return 1e-12 * std::max({1.0, r.width(), r.height()}); }

BoundaryTag tag_for(const Rect& r, const Vec2& a, const Vec2& b)
{
    const double tol = side_tolerance(r);
    if (std::abs(a.x() - r.x0) <= tol && std::abs(b.x() - r.x0) <= tol) return BoundaryTag::left;
    if (std::abs(a.x() - r.x1) <= tol && std::abs(b.x() - r.x1) <= tol) return BoundaryTag::right;
    if (std::abs(a.y() - r.y0) <= tol && std::abs(b.y() - r.y0) <= tol) return BoundaryTag::bottom;
    if (std::abs(a.y() - r.y1) <= tol && std::abs(b.y() - r.y1) <= tol) return BoundaryTag::top;
    throw TopologyError("boundary edge does not lie on a side of the domain rectangle");
}

} // namespace

const char* to_string(BoundaryTag tag)
{
    switch (tag) {
    case BoundaryTag::left: return "left";
    case BoundaryTag::right: return "right";
    case BoundaryTag::bottom: return "bottom";
    case BoundaryTag::top: return "top";
    }
    return "?";
}

double TriMesh::signed_area(int cell) const
{
    const auto& t = triangles_.at(static_cast<std::size_t>(cell));
    const Vec2 e1 = vertices_[t[1]] - vertices_[t[0]];
    const Vec2 e2 = vertices_[t[2]] - vertices_[t[0]];
    return 0.5 * (e1.x() * e2.y() - e1.y() * e2.x());
}

double TriMesh::diameter(int cell) const
{
    const auto& t = triangles_.at(static_cast<std::size_t>(cell));
    const double a = (vertices_[t[0]] - vertices_[t[1]]).norm();
    const double b = (vertices_[t[1]] - vertices_[t[2]]).norm();
    const double c = (vertices_[t[2]] - vertices_[t[0]]).norm();
    return std::max({a, b, c});
}

bool TriMesh::is_periodic_side(BoundaryTag tag) const
{
    if (!periodic_axis_) return false;
    if (*periodic_axis_ == Axis::x) return tag == BoundaryTag::left || tag == BoundaryTag::right;
    return tag == BoundaryTag::bottom || tag == BoundaryTag::top;
}

std::vector<BoundaryEdge> TriMesh::dirichlet_edges() const
{
    std::vector<BoundaryEdge> out;
    out.reserve(boundary_edges_.size());
    for (const auto& e : boundary_edges_) {
        if (!is_periodic_side(e.tag)) out.push_back(e);
    }
    return out;
}

void TriMesh::classify_edges()
{
    // sorted vertex pair -> (count, first cell)
    std::map<std::pair<int, int>, std::pair<int, int>> census;
    for (int c = 0; c < n_cells(); ++c) {
        const auto& t = triangles_[static_cast<std::size_t>(c)];
        for (int k = 0; k < 3; ++k) {
            int a = t[k];
            int b = t[(k + 1) % 3];
            if (a > b) std::swap(a, b);
            auto [it, inserted] = census.try_emplace({a, b}, 0, c);
            ++it->second.first;
        }
    }
    boundary_edges_.clear();
    interior_edges_.clear();
    for (const auto& [edge, info] : census) {
        const auto [count, cell] = info;
        if (count == 1) {
            boundary_edges_.push_back(BoundaryEdge{{edge.first, edge.second},
                                                   tag_for(domain_, vertices_[edge.first], vertices_[edge.second]),
                                                   cell});
        } else if (count == 2) {
            interior_edges_.push_back({edge.first, edge.second});
        } else {
            throw TopologyError("edge shared by more than two triangles");
        }
    }
}

void TriMesh::rebuild_groups()
{
    const int nv = n_vertices();
    std::vector<int> master(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) master[static_cast<std::size_t>(v)] = v;
    for (const auto& [m, s] : periodic_pairs_) master[static_cast<std::size_t>(s)] = m;

    vertex_group_.assign(static_cast<std::size_t>(nv), -1);
    n_groups_ = 0;
    for (int v = 0; v < nv; ++v) {
        if (master[static_cast<std::size_t>(v)] == v) vertex_group_[static_cast<std::size_t>(v)] = n_groups_++;
    }
    for (int v = 0; v < nv; ++v) {
        const int m = master[static_cast<std::size_t>(v)];
        if (m != v) vertex_group_[static_cast<std::size_t>(v)] = vertex_group_[static_cast<std::size_t>(m)];
    }
}

TriMesh build_structured_rect(double x0, double x1, double y0, double y1, int nx, int ny)
{
    if (!(x1 > x0) || !(y1 > y0)) throw InvalidArgument("build_structured_rect: degenerate interval");
    if (nx < 1 || ny < 1) throw InvalidArgument("build_structured_rect: nx and ny must be >= 1");

    TriMesh mesh;
    mesh.domain_ = Rect{x0, x1, y0, y1};
    mesh.nx_ = nx;
    mesh.ny_ = ny;

    const auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
    mesh.vertices_.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
    for (int j = 0; j <= ny; ++j) {
        // pin the last row/column to the exact interval end so periodic traces match bitwise
        const double y = (j == ny) ? y1 : y0 + (y1 - y0) * j / ny;
        for (int i = 0; i <= nx; ++i) {
            const double x = (i == nx) ? x1 : x0 + (x1 - x0) * i / nx;
            mesh.vertices_.emplace_back(x, y);
        }
    }
    mesh.triangles_.reserve(static_cast<std::size_t>(2 * nx * ny));
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int v00 = id(i, j);
            const int v10 = id(i + 1, j);
            const int v11 = id(i + 1, j + 1);
            const int v01 = id(i, j + 1);
            mesh.triangles_.push_back({v00, v10, v11});
            mesh.triangles_.push_back({v00, v11, v01});
        }
    }
    mesh.classify_edges();
    mesh.rebuild_groups();
    return mesh;
}

TriMesh identify_periodic(const TriMesh& mesh, Axis axis)
{
    if (mesh.periodic_axis_) throw InvalidArgument("identify_periodic: mesh is already periodic");

    const Rect& r = mesh.domain_;
    const double tol = side_tolerance(r);
    const bool along_y = axis == Axis::y;
    const Vec2 shift = along_y ? Vec2(0.0, r.height()) : Vec2(r.width(), 0.0);

    std::vector<int> near_side;
    std::vector<int> far_side;
    for (int v = 0; v < mesh.n_vertices(); ++v) {
        const Vec2& p = mesh.vertices_[static_cast<std::size_t>(v)];
        const double s = along_y ? p.y() : p.x();
        const double lo = along_y ? r.y0 : r.x0;
        const double hi = along_y ? r.y1 : r.x1;
        if (std::abs(s - lo) <= tol) near_side.push_back(v);
        if (std::abs(s - hi) <= tol) far_side.push_back(v);
    }
    if (near_side.size() != far_side.size()) {
        throw TopologyError("identify_periodic: opposite sides carry different vertex counts");
    }

    TriMesh out = mesh;
    out.periodic_axis_ = axis;
    out.periodic_pairs_.clear();
    std::vector<char> used(mesh.vertices_.size(), 0);
    for (int s : far_side) {
        const Vec2 target = mesh.vertices_[static_cast<std::size_t>(s)] - shift;
        int match = -1;
        for (int m : near_side) {
            if (!used[static_cast<std::size_t>(m)] && (mesh.vertices_[static_cast<std::size_t>(m)] - target).norm() <= tol) {
                match = m;
                break;
            }
        }
        if (match < 0) {
            throw TopologyError("identify_periodic: no translate found for vertex " + std::to_string(s));
        }
        used[static_cast<std::size_t>(match)] = 1;
        out.periodic_pairs_.emplace_back(match, s);
    }
    out.rebuild_groups();
    return out;
}

MeshMetrics mesh_metrics(const TriMesh& mesh)
{
    MeshMetrics m;
    m.n_cells = mesh.n_cells();
    m.n_vertices = mesh.n_vertices();
    for (int c = 0; c < mesh.n_cells(); ++c) m.h = std::max(m.h, mesh.diameter(c));
    m.h_boundary.reserve(mesh.boundary_edges().size());
    for (const auto& e : mesh.boundary_edges()) {
        m.h_boundary.push_back((mesh.vertices()[e.v[1]] - mesh.vertices()[e.v[0]]).norm());
    }
    return m;
}

} // namespace miura
