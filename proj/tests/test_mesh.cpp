#include "miura/error.hpp"
#include "miura/mesh.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

using namespace miura;

namespace {

// Edge -> number of incident triangles, counted from the triangle list alone.
std::map<std::pair<int, int>, int> edge_census(const TriMesh& m)
{
    std::map<std::pair<int, int>, int> census;
    for (const auto& t : m.triangles()) {
        for (int k = 0; k < 3; ++k) {
            int a = t[static_cast<std::size_t>(k)];
            int b = t[static_cast<std::size_t>((k + 1) % 3)];
            if (a > b) std::swap(a, b);
            ++census[{a, b}];
        }
    }
    return census;
}

double brute_force_h(const TriMesh& m)
{
    double h = 0.0;
    for (const auto& t : m.triangles()) {
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                h = std::max(h, (m.vertices()[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])] -
                                 m.vertices()[static_cast<std::size_t>(t[static_cast<std::size_t>(j)])])
                                    .norm());
            }
        }
    }
    return h;
}

} // namespace

TEST(Mesh, SmallestGrid)
{
    const TriMesh m = build_structured_rect(0, 1, 0, 1, 1, 1);
    EXPECT_EQ(m.n_vertices(), 4);
    EXPECT_EQ(m.n_cells(), 2);
    EXPECT_EQ(m.boundary_edges().size(), 4u);
    EXPECT_EQ(m.interior_edges().size(), 1u);
}

TEST(Mesh, AreaAdditivity)
{
    const TriMesh m = build_structured_rect(0, 2, 0, 1, 2, 1);
    EXPECT_EQ(m.n_vertices(), 6);
    EXPECT_EQ(m.n_cells(), 4);
    double area = 0.0;
    for (int c = 0; c < m.n_cells(); ++c) area += m.signed_area(c);
    EXPECT_NEAR(area, 2.0, 1e-14);
}

TEST(Mesh, PositiveOrientationAndTotalArea)
{
    const TriMesh m = build_structured_rect(-0.3, 1.7, 0.5, 2.0, 7, 5);
    double area = 0.0;
    for (int c = 0; c < m.n_cells(); ++c) {
        EXPECT_GT(m.signed_area(c), 0.0);
        area += m.signed_area(c);
    }
    EXPECT_NEAR(area / (2.0 * 1.5), 1.0, 1e-12);
}

TEST(Mesh, DiagonalRunsLowerLeftToUpperRight)
{
    const TriMesh m = build_structured_rect(0, 1, 0, 1, 1, 1);
    const auto& e = m.interior_edges().front();
    const Vec2 a = m.vertices()[static_cast<std::size_t>(e[0])];
    const Vec2 b = m.vertices()[static_cast<std::size_t>(e[1])];
    EXPECT_NEAR(std::abs((b - a).x()), 1.0, 0.0);
    EXPECT_GT((b - a).x() * (b - a).y(), 0.0);
}

TEST(Mesh, EdgeCensusMatchesClassification)
{
    const TriMesh m = build_structured_rect(0, 3, 0, 2, 6, 4);
    const auto census = edge_census(m);
    std::set<std::pair<int, int>> boundary;
    for (const auto& be : m.boundary_edges()) {
        const auto key = std::minmax(be.v[0], be.v[1]);
        boundary.insert(key);
        ASSERT_EQ(census.at(key), 1);
    }
    for (const auto& ie : m.interior_edges()) ASSERT_EQ(census.at(std::minmax(ie[0], ie[1])), 2);
    EXPECT_EQ(boundary.size() + m.interior_edges().size(), census.size());
    EXPECT_EQ(static_cast<int>(boundary.size()), 2 * (6 + 4));
}

TEST(Mesh, BoundaryTagsLieOnTheirSides)
{
    const TriMesh m = build_structured_rect(0, 3, 1, 2, 3, 2);
    std::map<BoundaryTag, int> count;
    for (const auto& be : m.boundary_edges()) {
        ++count[be.tag];
        for (int v : be.v) {
            const Vec2 p = m.vertices()[static_cast<std::size_t>(v)];
            switch (be.tag) {
            case BoundaryTag::left: EXPECT_EQ(p.x(), 0.0); break;
            case BoundaryTag::right: EXPECT_EQ(p.x(), 3.0); break;
            case BoundaryTag::bottom: EXPECT_EQ(p.y(), 1.0); break;
            case BoundaryTag::top: EXPECT_EQ(p.y(), 2.0); break;
            }
        }
    }
    EXPECT_EQ(count[BoundaryTag::left], 2);
    EXPECT_EQ(count[BoundaryTag::right], 2);
    EXPECT_EQ(count[BoundaryTag::bottom], 3);
    EXPECT_EQ(count[BoundaryTag::top], 3);
}

TEST(Mesh, InvalidInputs)
{
    EXPECT_THROW((void)build_structured_rect(1, 1, 0, 1, 2, 2), InvalidArgument);
    EXPECT_THROW((void)build_structured_rect(0, 1, 2, 1, 2, 2), InvalidArgument);
    EXPECT_THROW((void)build_structured_rect(0, 1, 0, 1, 0, 2), InvalidArgument);
    EXPECT_THROW((void)build_structured_rect(0, 1, 0, 1, 2, 0), InvalidArgument);
}

TEST(Mesh, MetricsAgainstBruteForce)
{
    const TriMesh m = build_structured_rect(0, std::numbers::pi, 0, 1, 40, 13);
    const MeshMetrics mm = mesh_metrics(m);
    EXPECT_DOUBLE_EQ(mm.h, brute_force_h(m));
    EXPECT_EQ(mm.n_cells, 2 * 40 * 13);
    EXPECT_EQ(mm.n_vertices, 41 * 14);
    ASSERT_EQ(mm.h_boundary.size(), m.boundary_edges().size());
    for (double hf : mm.h_boundary) EXPECT_GT(hf, 0.0);
}

TEST(Mesh, MetricsClosedForm)
{
    EXPECT_NEAR(mesh_metrics(build_structured_rect(0, 1, 0, 1, 1, 1)).h, std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(mesh_metrics(build_structured_rect(0, 1, 0, 1, 2, 2)).h, std::sqrt(2.0) / 2.0, 1e-15);
}

TEST(Mesh, SaddleResolutionMatchesDeclaredSize)
{
    const double h = mesh_metrics(build_structured_rect(0, 2, 0, 1, 56, 28)).h;
    EXPECT_NEAR(h, 5.0e-2, 0.1 * 5.0e-2);
}

TEST(Periodic, OneByOneGrid)
{
    const TriMesh m = identify_periodic(build_structured_rect(0, 1, 0, 1, 1, 1), Axis::y);
    ASSERT_EQ(m.periodic_pairs().size(), 2u);
    for (const auto& [master, slave] : m.periodic_pairs()) {
        EXPECT_EQ(m.vertices()[static_cast<std::size_t>(master)].y(), 0.0);
        EXPECT_EQ(m.vertices()[static_cast<std::size_t>(slave)].y(), 1.0);
        EXPECT_EQ(m.vertices()[static_cast<std::size_t>(master)].x(), m.vertices()[static_cast<std::size_t>(slave)].x());
    }
}

TEST(Periodic, PairCountAndGroups)
{
    for (auto axis : {Axis::x, Axis::y}) {
        const TriMesh base = build_structured_rect(0, 2, 0, 1, 2, 2);
        const TriMesh m = identify_periodic(base, axis);
        EXPECT_EQ(m.periodic_pairs().size(), 3u);
        EXPECT_EQ(m.n_groups(), m.n_vertices() - 3);
        std::set<int> seen;
        for (const auto& [a, b] : m.periodic_pairs()) {
            EXPECT_TRUE(seen.insert(a).second);
            EXPECT_TRUE(seen.insert(b).second);
            EXPECT_EQ(m.vertex_groups()[static_cast<std::size_t>(a)], m.vertex_groups()[static_cast<std::size_t>(b)]);
        }
    }
}

TEST(Periodic, DirichletEdgesExcludePeriodicSides)
{
    const TriMesh m = identify_periodic(build_structured_rect(0, 1, 0, 3, 2, 5), Axis::y);
    EXPECT_TRUE(m.is_periodic_side(BoundaryTag::top));
    EXPECT_TRUE(m.is_periodic_side(BoundaryTag::bottom));
    EXPECT_FALSE(m.is_periodic_side(BoundaryTag::left));
    for (const auto& e : m.dirichlet_edges()) {
        EXPECT_TRUE(e.tag == BoundaryTag::left || e.tag == BoundaryTag::right);
    }
    EXPECT_EQ(m.dirichlet_edges().size(), 10u);
}

TEST(Periodic, RejectsDoubleIdentification)
{
    const TriMesh m = identify_periodic(build_structured_rect(0, 1, 0, 1, 2, 2), Axis::y);
    EXPECT_THROW((void)identify_periodic(m, Axis::x), InvalidArgument);
}
