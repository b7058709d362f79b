#pragma once

#include "miura/analytic.hpp"
#include "miura/bell.hpp"
#include "miura/quadrature.hpp"

#include <Eigen/SparseCore>

#include <algorithm>

namespace miura {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Bounds implied by the bounded-slope constant K through |K|^2.
class CoefficientBounds {
public:
    /// Requires 1 < k_sq < 4.
    explicit CoefficientBounds(double k_sq);

    [[nodiscard]] double k_sq() const { return k_sq_; }
    [[nodiscard]] double p_max() const { return 4.0 / (4.0 - k_sq_); }
    [[nodiscard]] double q_min() const { return 4.0 / k_sq_; }
    [[nodiscard]] double q_max() const { return 4.0; }
    /// Upper bound on the eigenvalue ratio of the frozen operator.
    [[nodiscard]] double gamma_ratio() const { return std::max(4.0, p_max()); }

private:
    double k_sq_;
};

/// p = 1 / (1 - |grad_x|^2 / 4). Throws EllipticityViolation if |grad_x|^2 >= 4.
[[nodiscard]] double coeff_p(const Vec3& grad_x);
/// q = 4 / |grad_y|^2. Throws EllipticityViolation on a zero gradient.
[[nodiscard]] double coeff_q(const Vec3& grad_y);
/// Clamped p: 4 / (4 - |K|^2) when |grad_x| > |K|, p otherwise. Range [1, p_max].
[[nodiscard]] double coeff_p_bar(const Vec3& grad_x, const CoefficientBounds& bounds);
/// Clamped q: 4 / |K|^2 when |grad_y| > |K|, 4 when |grad_y| < 1, q otherwise.
[[nodiscard]] double coeff_q_bar(const Vec3& grad_y, const CoefficientBounds& bounds);

/// How the frozen coefficients of the linearized operator are obtained.
enum class CoefficientModel {
    clamped,   ///< p_bar, q_bar of the frozen field
    isotropic, ///< p_bar = q_bar = 1, the |K|^2 -> 4 limit used by the saddle surface
};

struct CordesReport {
    double gamma = 0.0;     ///< (p + q) / (p^2 + q^2)
    double deviation = 0.0; ///< |gamma A - I|^2 = 2 - (p + q)^2 / (p^2 + q^2)
};

[[nodiscard]] CordesReport cordes_report(double p, double q);

struct QuadratureRules {
    TriangleRule volume = triangle_rule(kDefaultVolumeDegree);
    EdgeRule edge = edge_rule(kDefaultEdgeDegree);
};

/// One linear system for the three decoupled components.
///
/// All three components share the scalar operator, so only the scalar block is
/// stored; `rhs` carries one column per component. `full_matrix()` expands to
/// the n_dofs x n_dofs block-diagonal form.
struct AssembledSystem {
    SparseMatrix block;
    Eigen::MatrixX3d rhs;

    [[nodiscard]] int n_scalar_dofs() const { return static_cast<int>(block.rows()); }
    [[nodiscard]] int n_dofs() const { return kComponents * n_scalar_dofs(); }
    [[nodiscard]] SparseMatrix full_matrix() const;
    [[nodiscard]] Eigen::VectorXd full_rhs() const;
};

/// int (pbar psi_xx + qbar psi_yy) . Laplace(test), with pbar/qbar from `frozen`
/// at each quadrature point. Row = test function, column = trial function.
[[nodiscard]] SparseMatrix assemble_volume(const Field& frozen, const CoefficientBounds& bounds,
                                           CoefficientModel model, const TriangleRule& rule);

/// eta * sum_F h_F^-4 int_F psi . test over Dirichlet edges, and the matching
/// right-hand side built from the trace of `bc`.
[[nodiscard]] AssembledSystem assemble_penalty(const BellSpace& space, const AnalyticMap& bc, double eta,
                                               const EdgeRule& rule);

/// Nonvariational form + boundary penalty for one fixed-point step.
[[nodiscard]] AssembledSystem assemble_linearized(const Field& frozen, const AnalyticMap& bc, double eta,
                                                  const CoefficientBounds& bounds, CoefficientModel model,
                                                  const QuadratureRules& rules = {});

/// int grad psi . grad test, symmetric.
[[nodiscard]] SparseMatrix assemble_stiffness(const BellSpace& space, const TriangleRule& rule);

/// Laplace problem for the initial guess: stiffness, symmetric boundary
/// consistency terms -int_F (d_n psi test + d_n test psi) and the penalty.
/// The consistency terms make the discrete problem exact on harmonic
/// polynomials in the space.
[[nodiscard]] AssembledSystem assemble_laplace(const BellSpace& space, const AnalyticMap& bc, double eta,
                                               const QuadratureRules& rules = {});

} // namespace miura
