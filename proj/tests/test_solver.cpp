#include "miura/error.hpp"
#include "miura/scenarios.hpp"
#include "miura/solver.hpp"

#include <gtest/gtest.h>

#include <Eigen/LU>

#include <cmath>
#include <numbers>

using namespace miura;

namespace {

SparseMatrix dense_to_sparse(const Eigen::MatrixXd& d)
{
    SparseMatrix s = d.sparseView();
    s.makeCompressed();
    return s;
}

} // namespace

TEST(SolveLinear, Identity)
{
    const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(5, -1.0, 3.0);
    for (auto method : {LinearMethod::direct, LinearMethod::iterative}) {
        const Eigen::VectorXd x = solve_linear(dense_to_sparse(Eigen::MatrixXd::Identity(5, 5)), b, 1e-12, method);
        EXPECT_LT((x - b).norm(), 1e-14);
    }
}

TEST(SolveLinear, Diagonal2x2)
{
    Eigen::MatrixXd a(2, 2);
    a << 2, 0, 0, 4;
    const Eigen::VectorXd x = solve_linear(dense_to_sparse(a), Eigen::Vector2d(2, 8), 1e-12);
    EXPECT_NEAR(x[0], 1.0, 1e-15);
    EXPECT_NEAR(x[1], 2.0, 1e-15);
}

TEST(SolveLinear, RejectsNonSquare)
{
    const SparseMatrix a(3, 2);
    EXPECT_THROW((void)solve_linear(a, Eigen::VectorXd::Ones(3), 1e-8), InvalidArgument);
}

TEST(SolveLinear, SingularMatrixReportsResidual)
{
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
    a(0, 0) = 1.0;
    try {
        (void)solve_linear(dense_to_sparse(a), Eigen::Vector2d(1, 1), 1e-8);
        FAIL() << "expected LinearSolverError";
    } catch (const LinearSolverError& e) {
        EXPECT_FALSE(e.residual() <= 1e-8);
    }
}

TEST(SolveLinear, LaplaceSystemAgainstDenseLU)
{
    auto space = std::make_shared<const BellSpace>(build_structured_rect(0, 1, 0, 1, 2, 2));
    const AnalyticMap bc([](double x, double y) {
        Jet j;
        j.value = Vec3(x * x - y * y, std::sin(x) * y, 1.0 + x * y);
        return j;
    });
    const AssembledSystem sys = assemble_laplace(*space, bc, 10.0);
    const Eigen::MatrixXd dense(sys.block);
    const Eigen::MatrixXd oracle = dense.fullPivLu().solve(Eigen::MatrixXd(sys.rhs));
    for (auto method : {LinearMethod::direct, LinearMethod::iterative}) {
        const Eigen::MatrixX3d x = solve_linear(sys, 1e-12, method);
        EXPECT_LT((x - oracle).cwiseAbs().maxCoeff(), 1e-9 * std::max(1.0, oracle.cwiseAbs().maxCoeff()));
    }
}

TEST(SolverConfig, Validation)
{
    SolverConfig c;
    EXPECT_NO_THROW(c.validate());
    for (auto mutate : std::initializer_list<void (*)(SolverConfig&)>{
             [](SolverConfig& s) { s.epsilon = 0.0; }, [](SolverConfig& s) { s.eta = -1.0; },
             [](SolverConfig& s) { s.max_iters = 0; }, [](SolverConfig& s) { s.linear_tol = 0.0; },
             [](SolverConfig& s) { s.k_sq = 1.0; }, [](SolverConfig& s) { s.k_sq = 4.0; },
             [](SolverConfig& s) { s.volume_degree = 13; }}) {
        SolverConfig bad;
        mutate(bad);
        EXPECT_THROW(bad.validate(), InvalidArgument);
    }
    c.k_sq = 4.0 - 1e-9;
    EXPECT_NO_THROW(c.validate());
}

TEST(FixedPoint, FlatPlaneInOneIteration)
{
    const Scenario s = flat_plane();
    auto space = std::make_shared<const BellSpace>(s.build_mesh());
    const SolveReport r = fixed_point(space, s.boundary, s.configure({}));
    EXPECT_EQ(r.iterations, 1);
    ASSERT_EQ(r.residual_history.size(), 1u);
    EXPECT_LE(r.residual_history.back(), 1e-5);
    EXPECT_LT(error_norms(*r.solution, *s.reference).h2(), 1e-8);
    ASSERT_TRUE(r.initial);
    EXPECT_EQ(r.linear.solves, 2);
}

TEST(FixedPoint, DeterministicReports)
{
    const Scenario s = axisymmetric(std::numbers::pi / 2.0);
    auto space = std::make_shared<const BellSpace>(s.build_mesh(3, 20));
    const SolverConfig cfg = s.configure({});
    const SolveReport a = fixed_point(space, s.boundary, cfg);
    const SolveReport b = fixed_point(space, s.boundary, cfg);
    EXPECT_EQ(a.iterations, b.iterations);
    EXPECT_EQ(a.residual_history, b.residual_history);
    EXPECT_TRUE((a.solution->coefficients().array() == b.solution->coefficients().array()).all());
}

TEST(FixedPoint, HistoryShapeAndFinalResidual)
{
    const Scenario s = axisymmetric(std::numbers::pi / 2.0);
    auto space = std::make_shared<const BellSpace>(s.build_mesh(3, 20));
    SolverConfig cfg = s.configure({});
    const SolveReport r = fixed_point(space, s.boundary, cfg);
    ASSERT_EQ(static_cast<int>(r.residual_history.size()), r.iterations);
    for (std::size_t k = 0; k + 1 < r.residual_history.size(); ++k) {
        EXPECT_TRUE(std::isfinite(r.residual_history[k]));
        EXPECT_GT(r.residual_history[k], cfg.epsilon);
    }
    EXPECT_LE(r.residual_history.back(), cfg.epsilon);

    // Re-freezing at the final field leaves a residual of the order of the last gap.
    const AssembledSystem sys =
        assemble_linearized(*r.solution, s.boundary, cfg.eta, CoefficientBounds(cfg.k_sq), cfg.model);
    const Eigen::VectorXd x = r.solution->flat();
    const Eigen::VectorXd res = sys.full_matrix() * x - sys.full_rhs();
    EXPECT_LT(res.norm() / sys.full_rhs().norm(), 1e-5);
}

TEST(FixedPoint, NonConvergenceCarriesHistory)
{
    const Scenario s = axisymmetric(std::numbers::pi / 2.0);
    auto space = std::make_shared<const BellSpace>(s.build_mesh(3, 20));
    SolverConfig cfg = s.configure({});
    cfg.max_iters = 2;
    try {
        (void)fixed_point(space, s.boundary, cfg);
        FAIL() << "expected NonConvergence";
    } catch (const NonConvergence& e) {
        ASSERT_EQ(e.history().size(), 2u);
        EXPECT_GT(e.history().back(), cfg.epsilon);
    }
}

TEST(FixedPoint, IterativeLinearSolvesAgree)
{
    const Scenario s = axisymmetric(std::numbers::pi / 2.0);
    auto space = std::make_shared<const BellSpace>(s.build_mesh(3, 20));
    SolverConfig cfg = s.configure({});
    const SolveReport direct = fixed_point(space, s.boundary, cfg);
    cfg.linear_method = LinearMethod::iterative;
    cfg.linear_tol = 1e-12;
    const SolveReport iterative = fixed_point(space, s.boundary, cfg);
    EXPECT_EQ(direct.iterations, iterative.iterations);
    EXPECT_LT(h2_seminorm(*direct.solution - *iterative.solution), 1e-6);
}
