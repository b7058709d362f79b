#include "miura/error.hpp"
#include "miura/forms.hpp"
#include "miura/solver.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace miura;

namespace {

Vec3 with_norm_sq(double s) { return Vec3(std::sqrt(s), 0.0, 0.0); }

Vec3 random_direction(std::mt19937& rng)
{
    std::normal_distribution<double> n;
    return Vec3(n(rng), n(rng), n(rng)).normalized();
}

std::shared_ptr<const BellSpace> unit_square(int n)
{
    return std::make_shared<const BellSpace>(build_structured_rect(0, 1, 0, 1, n, n));
}

} // namespace

TEST(Coefficients, P)
{
    EXPECT_EQ(coeff_p(Vec3::Zero()), 1.0);
    EXPECT_NEAR(coeff_p(with_norm_sq(2.0)), 2.0, 1e-14);
    EXPECT_NEAR(coeff_p(with_norm_sq(3.0)), 4.0, 1e-13);
    EXPECT_THROW((void)coeff_p(with_norm_sq(4.0)), EllipticityViolation);
    EXPECT_THROW((void)coeff_p(with_norm_sq(5.0)), EllipticityViolation);
}

TEST(Coefficients, Q)
{
    EXPECT_NEAR(coeff_q(with_norm_sq(4.0)), 1.0, 1e-15);
    EXPECT_NEAR(coeff_q(with_norm_sq(1.0)), 4.0, 1e-15);
    EXPECT_NEAR(coeff_q(with_norm_sq(2.0)), 2.0, 1e-14);
    EXPECT_THROW((void)coeff_q(Vec3::Zero()), EllipticityViolation);
}

TEST(Coefficients, ClampedP)
{
    const CoefficientBounds b(3.0);
    EXPECT_NEAR(coeff_p_bar(with_norm_sq(5.0), b), 4.0, 1e-14);
    EXPECT_EQ(coeff_p_bar(Vec3::Zero(), b), 1.0);
    EXPECT_NEAR(coeff_p_bar(with_norm_sq(2.0), b), 2.0, 1e-14);
}

TEST(Coefficients, ClampedQ)
{
    const CoefficientBounds b(3.0);
    EXPECT_EQ(coeff_q_bar(with_norm_sq(0.25), b), 4.0);
    EXPECT_EQ(coeff_q_bar(Vec3::Zero(), b), 4.0);
    EXPECT_NEAR(coeff_q_bar(with_norm_sq(9.0), b), 4.0 / 3.0, 1e-15);
    EXPECT_NEAR(coeff_q_bar(with_norm_sq(2.0), b), 2.0, 1e-14);
}

TEST(Coefficients, BoundsValidation)
{
    EXPECT_THROW(CoefficientBounds(1.0), InvalidArgument);
    EXPECT_THROW(CoefficientBounds(4.0), InvalidArgument);
    const CoefficientBounds b(3.5);
    EXPECT_NEAR(b.p_max(), 8.0, 1e-12);
    EXPECT_NEAR(b.q_min(), 4.0 / 3.5, 1e-15);
    EXPECT_EQ(b.q_max(), 4.0);
    EXPECT_NEAR(b.gamma_ratio(), 8.0, 1e-12);
    EXPECT_EQ(CoefficientBounds(2.0).gamma_ratio(), 4.0);
}

TEST(Coefficients, RangeSweepAndPassThrough)
{
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> mag(0.0, 12.0);
    std::uniform_real_distribution<double> ksq(1.01, 3.999);
    for (int s = 0; s < 100000; ++s) {
        const CoefficientBounds b(ksq(rng));
        const Vec3 gx = std::sqrt(mag(rng)) * random_direction(rng);
        const Vec3 gy = std::sqrt(mag(rng)) * random_direction(rng);
        const double pb = coeff_p_bar(gx, b);
        const double qb = coeff_q_bar(gy, b);
        ASSERT_GE(pb, 1.0);
        ASSERT_LE(pb, b.p_max() * (1 + 1e-15));
        ASSERT_GE(qb, std::min(b.q_min(), 4.0) * (1 - 1e-15));
        ASSERT_LE(qb, 4.0);
        if (gx.squaredNorm() <= b.k_sq()) {
            ASSERT_EQ(pb, coeff_p(gx));
        }
        if (gy.squaredNorm() >= 1.0 && gy.squaredNorm() <= b.k_sq()) {
            ASSERT_EQ(qb, coeff_q(gy));
        }
    }
}

TEST(Coefficients, LipschitzSmoke)
{
    const CoefficientBounds b(3.0);
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> mag(0.0, 3.0);
    std::normal_distribution<double> n(0.0, 1e-3);
    double worst = 0.0;
    for (int s = 0; s < 20000; ++s) {
        const Vec3 g1 = mag(rng) * random_direction(rng);
        const Vec3 g2 = g1 + Vec3(n(rng), n(rng), n(rng));
        const double d = (g1 - g2).norm();
        if (d == 0.0) continue;
        // Stay on one side of the clamp thresholds.
        if ((g1.squaredNorm() > 3.0) != (g2.squaredNorm() > 3.0)) continue;
        if ((g1.squaredNorm() < 1.0) != (g2.squaredNorm() < 1.0)) continue;
        worst = std::max(worst, std::abs(coeff_p_bar(g1, b) - coeff_p_bar(g2, b)) / d);
        worst = std::max(worst, std::abs(coeff_q_bar(g1, b) - coeff_q_bar(g2, b)) / d);
    }
    // d pbar / d|g| <= |g| p_max^2 / 2 and d qbar / d|g| <= 8 on the pass-through ranges.
    EXPECT_LT(worst, std::sqrt(3.0) * 16.0 / 2.0 + 1.0);
}

TEST(Cordes, ClosedForms)
{
    const CordesReport iso = cordes_report(1.0, 1.0);
    EXPECT_NEAR(iso.gamma, 1.0, 1e-15);
    EXPECT_NEAR(iso.deviation, 0.0, 1e-15);
    const CordesReport r = cordes_report(4.0, 1.0);
    EXPECT_NEAR(r.gamma, 5.0 / 17.0, 1e-15);
    EXPECT_NEAR(r.deviation, 9.0 / 17.0, 1e-15);
}

TEST(Cordes, DeviationBelowOneOnClampedRanges)
{
    std::mt19937 rng(5);
    for (double k : {1.5, 3.0, 3.99, 4.0 - 1e-6}) {
        const CoefficientBounds b(k);
        std::uniform_real_distribution<double> p(1.0, b.p_max());
        std::uniform_real_distribution<double> q(b.q_min(), 4.0);
        for (int s = 0; s < 10000; ++s) {
            const CordesReport c = cordes_report(p(rng), q(rng));
            ASSERT_GE(c.deviation, -1e-15);
            ASSERT_LT(c.deviation, 1.0);
        }
    }
}

TEST(Assembly, PenaltyRequiresPositiveEta)
{
    auto space = unit_square(1);
    const AnalyticMap bc = AnalyticMap::affine(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY());
    EXPECT_THROW((void)assemble_penalty(*space, bc, 0.0, edge_rule(10)), InvalidArgument);
}

TEST(Assembly, FlatMapIsReproduced)
{
    auto space = unit_square(3);
    const AnalyticMap plane = AnalyticMap::affine(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY());
    const Field frozen = interpolate(space, plane);
    const AssembledSystem sys = assemble_linearized(frozen, plane, 10.0, CoefficientBounds(3.99), CoefficientModel::clamped);
    const Field sol(space, solve_linear(sys, 1e-10));
    EXPECT_LT(error_norms(sol, plane).h2(), 1e-8);
}

TEST(Assembly, NoEmptyRowsAfterPenalty)
{
    auto space = unit_square(2);
    const AnalyticMap plane = AnalyticMap::affine(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY());
    const AssembledSystem sys =
        assemble_linearized(interpolate(space, plane), plane, 10.0, CoefficientBounds(3.99), CoefficientModel::clamped);
    for (int r = 0; r < sys.block.rows(); ++r) {
        double s = 0.0;
        for (SparseMatrix::InnerIterator it(sys.block, r); it; ++it) s += std::abs(it.value());
        EXPECT_GT(s, 0.0) << "row " << r;
    }
}

TEST(Assembly, IsotropicVolumeEqualsLaplacianTestedForm)
{
    auto space = unit_square(2);
    const Field frozen = interpolate(space, AnalyticMap::affine(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY()));
    const TriangleRule rule = triangle_rule(10);
    const SparseMatrix a = assemble_volume(frozen, CoefficientBounds(4.0 - 1e-6), CoefficientModel::isotropic, rule);

    // Independent dense assembly of int Lap(trial) Lap(test).
    Eigen::MatrixXd oracle = Eigen::MatrixXd::Zero(space->n_scalar_dofs(), space->n_scalar_dofs());
    for (int c = 0; c < space->n_cells(); ++c) {
        const BellElement& el = space->element(c);
        const auto dofs = space->cell_dofs(c);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const BasisValues b = el.evaluate(el.to_physical(rule.points[q]));
            const BasisValues::Row lap = b.dxx + b.dyy;
            const double w = rule.weights[q] * 2.0 * el.area();
            for (int i = 0; i < kLocalDofs; ++i) {
                for (int j = 0; j < kLocalDofs; ++j) oracle(dofs[static_cast<std::size_t>(i)], dofs[static_cast<std::size_t>(j)]) += w * lap[i] * lap[j];
            }
        }
    }
    const Eigen::MatrixXd dense(a);
    EXPECT_LT((dense - oracle).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, oracle.cwiseAbs().maxCoeff()));
}

TEST(Assembly, NonFiniteCoefficientNamesCell)
{
    auto space = unit_square(2);
    Field frozen = interpolate(space, AnalyticMap::affine(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY()));
    frozen.coefficients()(1, 0) = std::numeric_limits<double>::quiet_NaN();
    try {
        (void)assemble_volume(frozen, CoefficientBounds(3.99), CoefficientModel::clamped, triangle_rule(10));
        FAIL() << "expected AssemblyError";
    } catch (const AssemblyError& e) {
        EXPECT_GE(e.cell(), 0);
    }
}

TEST(Assembly, ComponentBlocksAreIdentical)
{
    auto space = unit_square(2);
    const AnalyticMap plane = AnalyticMap::affine(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY());
    const AssembledSystem sys =
        assemble_linearized(interpolate(space, plane), plane, 10.0, CoefficientBounds(3.99), CoefficientModel::clamped);
    const Eigen::MatrixXd full(sys.full_matrix());
    const int n = sys.n_scalar_dofs();
    ASSERT_EQ(full.rows(), 3 * n);
    // Cyclic permutation of the component blocks leaves the matrix invariant.
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(3 * n);
    for (int i = 0; i < 3 * n; ++i) perm.indices()[i] = (i + n) % (3 * n);
    EXPECT_EQ((perm * full * perm.transpose() - full).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(full.block(0, n, n, n).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(sys.full_rhs().size(), 3 * n);
}

TEST(Laplace, StiffnessAndSystemSymmetric)
{
    auto space = unit_square(3);
    const Eigen::MatrixXd k(assemble_stiffness(*space, triangle_rule(10)));
    EXPECT_LT((k - k.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    const AnalyticMap plane = AnalyticMap::affine(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY());
    const Eigen::MatrixXd l(assemble_laplace(*space, plane, 10.0).block);
    EXPECT_LT((l - l.transpose()).cwiseAbs().maxCoeff(), 1e-12 * l.cwiseAbs().maxCoeff());
}

TEST(Laplace, LinearDataReproduced)
{
    auto space = unit_square(3);
    const AnalyticMap g = AnalyticMap::affine(Vec3(0.5, -1, 2), Vec3(1, 0.3, -2), Vec3(0.2, 1, 1));
    const Field sol(space, solve_linear(assemble_laplace(*space, g, 10.0), 1e-12));
    EXPECT_LT(error_norms(sol, g).h2(), 1e-8);
}

TEST(Laplace, HarmonicQuadraticReproduced)
{
    auto space = unit_square(4);
    const AnalyticMap g = test::scalar_poly({{{1.0, 2, 0}, {-1.0, 0, 2}}});
    const Field sol(space, solve_linear(assemble_laplace(*space, g, 10.0), 1e-12));
    const ErrorNorms e = error_norms(sol, g);
    EXPECT_LT(e.l2, 1e-8);
    EXPECT_LT(e.h2_semi, 1e-6);
}
