#include "miura/solver.hpp"

#include "miura/error.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace miura {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using ColMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

double relative_residual(const ColMatrix& a, const Eigen::VectorXd& x, const Eigen::VectorXd& b)
{
    const double bn = b.norm();
    const double rn = (a * x - b).norm();
    return bn > 0.0 ? rn / bn : rn;
}

// Direct solve followed by up to two steps of iterative refinement.
template <class Factorization>
Eigen::MatrixXd direct_solve(const ColMatrix& a, const Eigen::MatrixXd& b, double tol, double& worst)
{
    Factorization lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) throw LinearSolverError(kInf, "sparse LU factorization failed");
    Eigen::MatrixXd x(a.cols(), b.cols());
    worst = 0.0;
    for (Eigen::Index k = 0; k < b.cols(); ++k) {
        const Eigen::VectorXd rhs = b.col(k);
        Eigen::VectorXd xk = lu.solve(rhs);
        double res = relative_residual(a, xk, rhs);
        for (int step = 0; step < 2 && res > 0.01 * tol && std::isfinite(res); ++step) {
            const Eigen::VectorXd r = rhs - a * xk;
            xk += lu.solve(r);
            res = relative_residual(a, xk, rhs);
        }
        worst = std::max(worst, std::isfinite(res) ? res : kInf);
        x.col(k) = xk;
    }
    return x;
}

Eigen::MatrixXd iterative_solve(const ColMatrix& a, const Eigen::MatrixXd& b, double tol, double& worst)
{
    Eigen::BiCGSTAB<ColMatrix, Eigen::IncompleteLUT<double>> solver;
    solver.preconditioner().setDroptol(1e-6);
    solver.preconditioner().setFillfactor(20);
    solver.setTolerance(tol);
    solver.setMaxIterations(std::max<Eigen::Index>(1000, 4 * a.rows()));
    solver.compute(a);
    if (solver.info() != Eigen::Success) throw LinearSolverError(kInf, "incomplete LU preconditioner failed");
    Eigen::MatrixXd x(a.cols(), b.cols());
    worst = 0.0;
    for (Eigen::Index k = 0; k < b.cols(); ++k) {
        const Eigen::VectorXd rhs = b.col(k);
        x.col(k) = solver.solve(rhs);
        const double res = relative_residual(a, x.col(k), rhs);
        worst = std::max(worst, std::isfinite(res) ? res : kInf);
    }
    return x;
}

Eigen::MatrixXd solve_columns(const SparseMatrix& matrix, const Eigen::MatrixXd& rhs, double tol, LinearMethod method,
                              double& worst)
{
    if (matrix.rows() != matrix.cols()) throw InvalidArgument("solve_linear: matrix is not square");
    if (matrix.rows() != rhs.rows()) throw InvalidArgument("solve_linear: right-hand side has wrong length");
    ColMatrix a = matrix;
    a.makeCompressed();
    Eigen::MatrixXd x;
    if (method == LinearMethod::iterative) {
        x = iterative_solve(a, rhs, tol, worst);
    } else {
        x = direct_solve<Eigen::SparseLU<ColMatrix, Eigen::COLAMDOrdering<int>>>(a, rhs, tol, worst);
    }
    if (!(worst <= tol)) {
        std::ostringstream os;
        os << "linear solve did not reach relative residual " << tol << " (attained " << worst << ")";
        throw LinearSolverError(worst, os.str());
    }
    return x;
}

double h2_gap(const Field& a, const Field& b, const TriangleRule& rule) { return h2_seminorm(a - b, rule); }

} // namespace

void SolverConfig::validate() const
{
    if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
    if (!(eta > 0.0)) throw InvalidArgument("eta must be positive");
    if (max_iters < 1) throw InvalidArgument("max_iters must be >= 1");
    if (!(linear_tol > 0.0)) throw InvalidArgument("linear_tol must be positive");
    if (!(k_sq > 1.0 && k_sq <= 4.0 - 1e-9)) throw InvalidArgument("k_sq must lie in (1, 4 - 1e-9]");
    if (volume_degree < 1 || volume_degree > 12) throw InvalidArgument("volume quadrature degree must be in [1, 12]");
    if (edge_degree < 1 || edge_degree > 12) throw InvalidArgument("edge quadrature degree must be in [1, 12]");
}

Eigen::MatrixX3d solve_linear(const AssembledSystem& system, double tol, LinearMethod method, LinearStats* stats)
{
    double worst = 0.0;
    Eigen::MatrixX3d x = solve_columns(system.block, system.rhs, tol, method, worst);
    if (stats) {
        stats->solves += 1;
        stats->max_relative_residual = std::max(stats->max_relative_residual, worst);
    }
    return x;
}

Eigen::VectorXd solve_linear(const SparseMatrix& matrix, const Eigen::VectorXd& rhs, double tol, LinearMethod method)
{
    double worst = 0.0;
    return solve_columns(matrix, rhs, tol, method, worst);
}

SolveReport fixed_point(std::shared_ptr<const BellSpace> space, const AnalyticMap& bc, const SolverConfig& config)
{
    config.validate();
    const CoefficientBounds bounds(config.k_sq);
    QuadratureRules rules{triangle_rule(config.volume_degree), edge_rule(config.edge_degree)};

    SolveReport report;
    const AssembledSystem laplace = assemble_laplace(*space, bc, config.eta, rules);
    Field previous(space, solve_linear(laplace, config.linear_tol, config.linear_method, &report.linear));
    report.initial = std::make_shared<const Field>(previous);

    for (int n = 1; n <= config.max_iters; ++n) {
        const AssembledSystem sys = assemble_linearized(previous, bc, config.eta, bounds, config.model, rules);
        Field next(space, solve_linear(sys, config.linear_tol, config.linear_method, &report.linear));
        const double gap = h2_gap(previous, next, rules.volume);
        report.residual_history.push_back(gap);
        if (!std::isfinite(gap)) {
            throw NonConvergence(report.residual_history,
                                 "fixed-point iterate became non-finite at iteration " + std::to_string(n));
        }
        previous = std::move(next);
        if (gap <= config.epsilon) {
            report.iterations = n;
            report.solution = std::make_shared<const Field>(std::move(previous));
            return report;
        }
    }
    std::ostringstream os;
    os << "fixed point did not reach epsilon = " << config.epsilon << " within " << config.max_iters
       << " iterations (last gap " << report.residual_history.back() << ")";
    throw NonConvergence(report.residual_history, os.str());
}

} // namespace miura
