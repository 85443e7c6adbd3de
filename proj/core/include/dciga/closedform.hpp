#pragma once

// Closed-form results for two uniform-mesh cases: C2 cubic elements with
// Dirichlet conditions and C1 quadratic elements with Neumann conditions.
//
// Toeplitz-plus-boundary matrices (1-based indices, half-bandwidth m):
//   G_{j,j+k} = xi_|k|,  |k| <= m
//   case 1: H_{j,k} = H_{n-j+1,n-k+1} = xi_{j+k},   k = 1..m-j, j = 1..m-1;  A = G(mu) - H(mu)
//   case 2: H_{j,k} = H_{n-j+1,n-k+1} = xi_{j+k-1}, k = 1..m-j+1, j = 1..m;  A = G(mu) + H(mu)
// with B built the same way from nu. A X = lambda B X then has eigenpairs
//   lambda = (mu_0 + 2 sum mu_l cos(l t)) / (nu_0 + 2 sum nu_l cos(l t))
//   case 1: t = j pi / (n+1), X_k = sin(j pi k / (n+1)),       j = 1..n
//   case 2: t = j pi / n,     X_k = cos(j pi (k - 1/2) / n),   j = 0..n-1

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dciga/assembly.hpp"
#include "dciga/eigensolve.hpp"

namespace dciga {

enum class BoundaryCase { Subtract, Add };  // case 1 (Dirichlet-like), case 2 (Neumann-like)

struct ToeplitzBoundarySpec {
  std::vector<double> mu;  ///< mu_0..mu_m
  std::vector<double> nu;  ///< nu_0..nu_m
  std::size_t n = 0;
  BoundaryCase boundary = BoundaryCase::Subtract;

  [[nodiscard]] std::size_t half_bandwidth() const noexcept { return mu.empty() ? 0 : mu.size() - 1; }
};

struct ToeplitzPair {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
};

ToeplitzPair build_toeplitz_boundary(const ToeplitzBoundarySpec& spec);

/// Eigenpairs from the closed form, sorted ascending. modes[k][0] holds the
/// theorem's index j; eigenvectors have unit Euclidean norm.
Spectrum analytical_eigenpairs(const ToeplitzBoundarySpec& spec, bool want_vectors = true);

// Printed Galerkin matrices on a uniform mesh with N elements, built from
// their rational entries (not by quadrature).

/// Cubic, Dirichlet rows/columns removed: (N+1) x (N+1). Requires N >= 7.
MatrixPair printed_cubic_dirichlet(std::size_t N);
/// Quadratic, Neumann: (N+2) x (N+2). Requires N >= 4.
MatrixPair printed_quadratic_neumann(std::size_t N);
/// Infinite-penalty reduction of the cubic Dirichlet pair: (N-1) x (N-1). Requires N >= 6.
MatrixPair reduced_cubic_dirichlet(std::size_t N);
/// Infinite-penalty reduction of the quadratic Neumann pair: N x N. Requires N >= 5.
MatrixPair reduced_quadratic_neumann(std::size_t N);

/// c * U[eliminated] - U[target] = 0 (0-based indices).
struct Constraint {
  std::size_t eliminated;
  std::size_t target;
  double coefficient;
};

/// For each constraint, column `eliminated` scaled by 1/c is added to column
/// `target`, then the same for rows; finally all eliminated rows/columns are
/// removed.
MatrixPair constraint_reduce(const MatrixPair& pair, std::span<const Constraint> constraints);

/// Inverse map for eigenvectors: rows of `reduced` are the kept unknowns in
/// order; eliminated unknowns are recovered as U[target] / c.
Eigen::MatrixXd constraint_expand(const Eigen::MatrixXd& reduced, std::span<const Constraint> constraints,
                                  std::size_t full_dim);

/// Constraints equivalent to an infinite boundary penalty: {3U_1 - U_2, 3U_n - U_{n-1}}
/// for cubic Dirichlet, {U_1 - U_2, U_n - U_{n-1}} for quadratic Neumann.
/// Throws ConfigError for other degree/kind combinations.
std::vector<Constraint> infinite_penalty_constraints(ProblemKind kind, int degree, std::size_t dim);

Spectrum analytical_spectrum_cubic_dirichlet(std::size_t N, bool want_vectors = false);
Spectrum analytical_spectrum_quadratic_neumann(std::size_t N, bool want_vectors = false);

enum class DispersionCase { CubicDirichlet, QuadraticNeumann };

std::string_view to_string(DispersionCase c) noexcept;
DispersionCase parse_dispersion_case(std::string_view text);

/// Interior-row dispersion relation: lambda^h h^2 as a function of omega h in (0, pi].
double dispersion_interior(DispersionCase c, double omega_h);

/// Number of boundary rows with their own relation (4 cubic, 2 quadratic).
std::size_t boundary_row_count(DispersionCase c);

/// lambda^h h^2 seen by each boundary row (first row first), evaluated from
/// the printed matrices with the Bloch ansatz sin(omega k h) (cubic) or
/// cos(omega (k - 3/2) h) (quadratic).
std::vector<double> dispersion_boundary_rows(DispersionCase c, double omega_h);

/// Boundary relations available in closed trigonometric form: rows 1-2 of
/// both cases. Other rows throw ConfigError.
double dispersion_boundary_closed_form(DispersionCase c, std::size_t row, double omega_h);

/// Limit as Lambda = (omega h)^2 -> 0 of (Lambda^h - Lambda) / Lambda^power,
/// or of Lambda^h itself when power == 0, by Richardson extrapolation.
/// row 0 is the interior relation, row k >= 1 the k-th boundary row.
double dispersion_coefficient(DispersionCase c, std::size_t row, int power);

struct DispersionSample {
  double Lambda;      ///< (omega h)^2
  double LambdaH;     ///< h^2 lambda^h
  std::string row_class;  ///< "interior" or "boundary-k"
};

std::vector<DispersionSample> dispersion_samples(DispersionCase c, double omega_h);

}  // namespace dciga
