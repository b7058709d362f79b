#pragma once

#include "miura/bell.hpp"
#include "miura/forms.hpp"

#include <memory>
#include <vector>

namespace miura {

enum class LinearMethod {
    direct,    ///< sparse LU with COLAMD ordering
    iterative, ///< BiCGSTAB preconditioned by incomplete LU
};

struct SolverConfig {
    double epsilon = 1e-5;   ///< fixed-point tolerance on the H2 seminorm gap
    double eta = 10.0;       ///< boundary penalty
    int max_iters = 200;
    double linear_tol = 1e-8; ///< relative residual ||Ax - b|| / ||b||
    double k_sq = 3.99;
    CoefficientModel model = CoefficientModel::clamped;
    LinearMethod linear_method = LinearMethod::direct;
    int volume_degree = kDefaultVolumeDegree;
    int edge_degree = kDefaultEdgeDegree;

    /// Throws InvalidArgument on any violated invariant.
    void validate() const;
};

struct LinearStats {
    int solves = 0;
    double max_relative_residual = 0.0;
};

struct SolveReport {
    int iterations = 0;
    std::vector<double> residual_history; ///< |phi_{n+1} - psi_{n+1}|_{H2} per iteration
    std::shared_ptr<const Field> initial; ///< Laplace initial guess
    std::shared_ptr<const Field> solution;
    LinearStats linear;
};

/// Factorizes `system.block` once and solves all three right-hand sides.
/// Throws LinearSolverError if the factorization breaks down or the relative
/// residual of any column exceeds `tol`.
[[nodiscard]] Eigen::MatrixX3d solve_linear(const AssembledSystem& system, double tol,
                                            LinearMethod method = LinearMethod::direct,
                                            LinearStats* stats = nullptr);

/// General square sparse solve.
[[nodiscard]] Eigen::VectorXd solve_linear(const SparseMatrix& matrix, const Eigen::VectorXd& rhs, double tol,
                                           LinearMethod method = LinearMethod::direct);

/// Picard iteration: Laplace initial guess, then freeze coefficients at the
/// previous iterate and solve until the consecutive H2 seminorm gap is <= epsilon.
/// Throws NonConvergence (carrying the gap history) after max_iters, or as soon
/// as an iterate becomes non-finite.
[[nodiscard]] SolveReport fixed_point(std::shared_ptr<const BellSpace> space, const AnalyticMap& bc,
                                      const SolverConfig& config);

} // namespace miura
