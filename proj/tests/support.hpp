#pragma once

#include "miura/analytic.hpp"

#include <array>
#include <cmath>
#include <random>
#include <vector>

namespace miura::test {

/// Scalar bivariate polynomial sum c_k x^a_k y^b_k with exact derivatives.
struct Poly {
    struct Term {
        double c;
        int a;
        int b;
    };
    std::vector<Term> terms;

    [[nodiscard]] double eval(double x, double y, int dx = 0, int dy = 0) const
    {
        double s = 0.0;
        for (const Term& t : terms) {
            if (t.a < dx || t.b < dy) continue;
            double f = t.c;
            for (int k = 0; k < dx; ++k) f *= t.a - k;
            for (int k = 0; k < dy; ++k) f *= t.b - k;
            s += f * std::pow(x, t.a - dx) * std::pow(y, t.b - dy);
        }
        return s;
    }
};

/// Vector map whose three components are independent polynomials.
inline AnalyticMap poly_map(const std::array<Poly, 3>& comps)
{
    return AnalyticMap([comps](double x, double y) {
        Jet j;
        for (int c = 0; c < 3; ++c) {
            const Poly& p = comps[static_cast<std::size_t>(c)];
            j.value[c] = p.eval(x, y);
            j.dx[c] = p.eval(x, y, 1, 0);
            j.dy[c] = p.eval(x, y, 0, 1);
            j.dxx[c] = p.eval(x, y, 2, 0);
            j.dxy[c] = p.eval(x, y, 1, 1);
            j.dyy[c] = p.eval(x, y, 0, 2);
        }
        return j;
    });
}

inline AnalyticMap scalar_poly(const Poly& p) { return poly_map({p, Poly{}, Poly{}}); }

/// A random polynomial of total degree exactly <= deg.
inline Poly random_poly(int deg, std::mt19937& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Poly p;
    for (int d = 0; d <= deg; ++d) {
        for (int b = 0; b <= d; ++b) p.terms.push_back({u(rng), d - b, b});
    }
    return p;
}

/// Exact integral of x^a y^b over the reference triangle (0,0),(1,0),(0,1).
inline double reference_monomial_integral(int a, int b)
{
    return std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(a + b + 3.0);
}

/// Uniform random barycentric coordinates strictly inside a triangle.
inline std::array<double, 3> random_barycentric(std::mt19937& rng)
{
    std::uniform_real_distribution<double> u(0.02, 0.98);
    double s = u(rng);
    double t = u(rng);
    if (s + t > 0.98) {
        s = 0.98 - s;
        t = 0.98 - t;
        if (s < 0.01) s = 0.01;
        if (t < 0.01) t = 0.01;
    }
    return {1.0 - s - t, s, t};
}

} // namespace miura::test
