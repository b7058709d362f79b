#include "miura/analytic.hpp"

#include <algorithm>

namespace miura {

AnalyticMap AnalyticMap::affine(const Vec3& offset, const Vec3& ex, const Vec3& ey)
{
    return AnalyticMap([offset, ex, ey](double x, double y) {
        Jet j;
        j.value = offset + x * ex + y * ey;
        j.dx = ex;
        j.dy = ey;
        return j;
    });
}

double derivative_consistency_error(const AnalyticMap& g, double x, double y, double step)
{
    const Jet c = g(x, y);
    const Jet xp = g(x + step, y);
    const Jet xm = g(x - step, y);
    const Jet yp = g(x, y + step);
    const Jet ym = g(x, y - step);
    const double inv = 0.5 / step;
    double err = 0.0;
    err = std::max(err, (inv * (xp.value - xm.value) - c.dx).cwiseAbs().maxCoeff());
    err = std::max(err, (inv * (yp.value - ym.value) - c.dy).cwiseAbs().maxCoeff());
    err = std::max(err, (inv * (xp.dx - xm.dx) - c.dxx).cwiseAbs().maxCoeff());
    err = std::max(err, (inv * (yp.dy - ym.dy) - c.dyy).cwiseAbs().maxCoeff());
    err = std::max(err, (inv * (yp.dx - ym.dx) - c.dxy).cwiseAbs().maxCoeff());
    err = std::max(err, (inv * (xp.dy - xm.dy) - c.dxy).cwiseAbs().maxCoeff());
    return err;
}

} // namespace miura
