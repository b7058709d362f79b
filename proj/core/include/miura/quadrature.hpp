#pragma once

#include <array>
#include <vector>

namespace miura {

/// Symmetric rule on the reference triangle (0,0), (1,0), (0,1).
/// Points are barycentric (l0, l1, l2); reference coordinates are (l1, l2).
/// Weights sum to the reference area 1/2.
struct TriangleRule {
    std::vector<std::array<double, 3>> points;
    std::vector<double> weights;
    int exactness_degree = 0;

    [[nodiscard]] std::size_t size() const { return weights.size(); }
};

/// Gauss-Legendre rule on [0, 1]; weights sum to 1.
struct EdgeRule {
    std::vector<double> points;
    std::vector<double> weights;
    int exactness_degree = 0;

    [[nodiscard]] std::size_t size() const { return weights.size(); }
};

/// Cheapest tabulated rule with positive weights and interior points that is
/// exact to at least `degree`. Supports 1 <= degree <= 12.
///
/// Degrees 3, 7 and 11 are served by the 4, 8 and 12 rules since the classic
/// symmetric tables for those degrees have a negative weight or points outside
/// the triangle. `exactness_degree` reports the degree actually delivered.
[[nodiscard]] TriangleRule triangle_rule(int degree);

/// ceil((degree + 1) / 2)-point Gauss rule, 1 <= degree <= 12.
[[nodiscard]] EdgeRule edge_rule(int degree);

/// Default orders used for the volume and boundary integrals.
inline constexpr int kDefaultVolumeDegree = 10;
inline constexpr int kDefaultEdgeDegree = 10;

} // namespace miura
