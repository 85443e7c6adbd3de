#pragma once

// 1D stiffness/mass assembly for the Laplace eigenproblem on [0, 1], with and
// without boundary penalization of higher-order derivatives.
//
// Dirichlet (p >= 3): penalize even derivatives 2l, l = 1..alpha,
//   K~ = K + sum_l eta_a[l] pi^2 h^(6l-3) S_l,  M~ = M + sum_l eta_b[l] h^(6l-1) S_l.
// Neumann (p >= 2): penalize odd derivatives 2l-1, l = 1..beta,
//   K~ = K + sum_l eta_a[l] pi^2 h^(6l-5) S_l,  M~ = M + sum_l eta_b[l] h^(6l-3) S_l.
// S_l = g0 g0^T + g1 g1^T with g0, g1 the derivative values at x = 0 and x = 1.

#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dciga/quadrature.hpp"
#include "dciga/splines.hpp"

namespace dciga {

enum class ProblemKind { Dirichlet, Neumann };

std::string_view to_string(ProblemKind kind) noexcept;
ProblemKind parse_problem_kind(std::string_view text);

/// floor((p-1)/2): number of Dirichlet penalty terms.
int alpha_order(int degree);
/// floor(p/2): number of Neumann penalty terms.
int beta_order(int degree);
/// alpha_order or beta_order according to `kind`.
int penalty_terms(ProblemKind kind, int degree);
/// Derivative order penalized by term `ell` (1-based).
int penalty_derivative_order(ProblemKind kind, int ell);

struct PenaltyConfig {
  ProblemKind kind = ProblemKind::Dirichlet;
  std::vector<double> eta_a;  ///< stiffness coefficients, one per term
  std::vector<double> eta_b;  ///< mass coefficients, one per term
  bool infinite = false;      ///< use constraint reduction instead of weak penalties

  /// All coefficients set to 1.
  static PenaltyConfig defaults(ProblemKind kind, int degree);
};

struct MatrixPair {
  Eigen::MatrixXd K;
  Eigen::MatrixXd M;
  bool corrected = false;
  int degree = 0;
  std::size_t elements = 0;
  ProblemKind kind = ProblemKind::Dirichlet;

  [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(K.rows()); }
};

/// Galerkin pair on the full space (all n basis functions), no boundary
/// conditions applied. Integrated element by element in index order.
MatrixPair assemble_full(const SplineSpace& space, const QuadratureRule& rule);

/// Dirichlet drops the first and last basis function (dimension n - 2);
/// Neumann keeps all n.
MatrixPair assemble_standard(const SplineSpace& space, ProblemKind kind, const QuadratureRule& rule);
MatrixPair assemble_standard(const SplineSpace& space, ProblemKind kind);

/// Unscaled penalty matrix S_ell on the retained basis functions.
Eigen::MatrixXd assemble_penalty(const SplineSpace& space, ProblemKind kind, int ell);

/// Penalized pair. Requires cfg.infinite == false and coefficient lists of
/// length penalty_terms(cfg.kind, p). h is the grid's h_max.
MatrixPair assemble_dc(const SplineSpace& space, const PenaltyConfig& cfg, const QuadratureRule& rule);
MatrixPair assemble_dc(const SplineSpace& space, const PenaltyConfig& cfg);

/// Default rule: p + 1 Gauss points per element.
QuadratureRule default_rule(const SplineSpace& space);

}  // namespace dciga
