#pragma once

#include <Eigen/Core>

#include <functional>
#include <utility>

namespace miura {

using Vec3 = Eigen::Vector3d;

/// Value and partial derivatives up to second order of a map R^2 -> R^3.
struct Jet {
    Vec3 value = Vec3::Zero();
    Vec3 dx = Vec3::Zero();
    Vec3 dy = Vec3::Zero();
    Vec3 dxx = Vec3::Zero();
    Vec3 dxy = Vec3::Zero();
    Vec3 dyy = Vec3::Zero();
};

/// A smooth map Omega -> R^3 given in closed form (boundary data, reference solutions).
class AnalyticMap {
public:
    using Fn = std::function<Jet(double, double)>;

    AnalyticMap() = default;
    explicit AnalyticMap(Fn fn) : fn_(std::move(fn)) {}

    [[nodiscard]] Jet operator()(double x, double y) const { return fn_(x, y); }
    [[nodiscard]] Vec3 value(double x, double y) const { return fn_(x, y).value; }
    [[nodiscard]] explicit operator bool() const { return static_cast<bool>(fn_); }

    /// Affine map (x, y) -> offset + x * ex + y * ey.
    static AnalyticMap affine(const Vec3& offset, const Vec3& ex, const Vec3& ey);

private:
    Fn fn_;
};

/// Largest deviation between the analytic first/second derivatives at (x, y)
/// and central differences of the value (first) and of the gradient (second).
[[nodiscard]] double derivative_consistency_error(const AnalyticMap& g, double x, double y, double step = 1e-6);

} // namespace miura
