#pragma once

#include <Eigen/Core>

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace miura {

using Vec2 = Eigen::Vector2d;

enum class Axis { x, y };

enum class BoundaryTag { left, right, bottom, top };

struct Rect {
    double x0 = 0.0;
    double x1 = 1.0;
    double y0 = 0.0;
    double y1 = 1.0;

    [[nodiscard]] double width() const { return x1 - x0; }
    [[nodiscard]] double height() const { return y1 - y0; }
};

struct BoundaryEdge {
    std::array<int, 2> v;
    BoundaryTag tag;
    int cell; // the unique triangle bordering this edge
};

/// Conforming triangulation of a rectangle. Immutable once built.
///
/// Triangles are counterclockwise. Boundary edges carry the side of the
/// rectangle they lie on. When a periodic axis is set, each vertex on the far
/// side (right for x, top for y) is paired with its translate on the near side
/// and the edges on both of those sides stop being Dirichlet edges.
class TriMesh {
public:
    [[nodiscard]] const std::vector<Vec2>& vertices() const { return vertices_; }
    [[nodiscard]] const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
    [[nodiscard]] const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_edges_; }
    [[nodiscard]] const std::vector<std::array<int, 2>>& interior_edges() const { return interior_edges_; }
    /// (master, slave) pairs.
    [[nodiscard]] const std::vector<std::pair<int, int>>& periodic_pairs() const { return periodic_pairs_; }
    [[nodiscard]] std::optional<Axis> periodic_axis() const { return periodic_axis_; }
    [[nodiscard]] const Rect& domain() const { return domain_; }
    [[nodiscard]] int nx() const { return nx_; }
    [[nodiscard]] int ny() const { return ny_; }

    [[nodiscard]] int n_vertices() const { return static_cast<int>(vertices_.size()); }
    [[nodiscard]] int n_cells() const { return static_cast<int>(triangles_.size()); }

    /// Vertex -> group id in [0, n_groups); paired vertices share a group.
    [[nodiscard]] const std::vector<int>& vertex_groups() const { return vertex_group_; }
    [[nodiscard]] int n_groups() const { return n_groups_; }

    /// Boundary edges on which Dirichlet data is imposed (all sides not made periodic).
    [[nodiscard]] std::vector<BoundaryEdge> dirichlet_edges() const;
    [[nodiscard]] bool is_periodic_side(BoundaryTag tag) const;

    [[nodiscard]] double signed_area(int cell) const;
    [[nodiscard]] double diameter(int cell) const;

private:
    friend TriMesh build_structured_rect(double, double, double, double, int, int);
    friend TriMesh identify_periodic(const TriMesh&, Axis);

    void classify_edges();
    void rebuild_groups();

    std::vector<Vec2> vertices_;
    std::vector<std::array<int, 3>> triangles_;
    std::vector<BoundaryEdge> boundary_edges_;
    std::vector<std::array<int, 2>> interior_edges_;
    std::vector<std::pair<int, int>> periodic_pairs_;
    std::optional<Axis> periodic_axis_;
    std::vector<int> vertex_group_;
    int n_groups_ = 0;
    Rect domain_;
    int nx_ = 0;
    int ny_ = 0;
};

struct MeshMetrics {
    double h = 0.0;                  // max cell diameter
    std::vector<double> h_boundary;  // length of each boundary edge, same order as boundary_edges()
    int n_cells = 0;
    int n_vertices = 0;
};

/// Uniform nx-by-ny grid, each quad split along its lower-left to upper-right diagonal.
[[nodiscard]] TriMesh build_structured_rect(double x0, double x1, double y0, double y1, int nx, int ny);

[[nodiscard]] TriMesh identify_periodic(const TriMesh& mesh, Axis axis);

[[nodiscard]] MeshMetrics mesh_metrics(const TriMesh& mesh);

[[nodiscard]] const char* to_string(BoundaryTag tag);

} // namespace miura
