#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dciga/assembly.hpp"
#include "dciga/eigensolve.hpp"
#include "dciga/quadrature.hpp"
#include "dciga/splines.hpp"

namespace dciga {

/// Eigenpairs of -Laplace on [0,1]^d. Per-axis mode numbers start at 1
/// (Dirichlet, sin(j pi x)) or 0 (Neumann, cos(j pi x)).
struct ExactSpectrum {
  ProblemKind kind = ProblemKind::Dirichlet;
  int dim = 1;
  std::vector<double> values;      ///< ascending, ties in lexicographic mode order
  std::vector<MultiIndex> modes;   ///< per-axis mode numbers

  /// L2-normalized 1D eigenfunction with mode number j, and its derivative.
  [[nodiscard]] double eigenfunction(std::size_t j, double x) const;
  [[nodiscard]] double eigenfunction_derivative(std::size_t j, double x) const;
};

ExactSpectrum exact_spectrum(ProblemKind kind, int dim, std::size_t count);

struct ErrorReport {
  std::vector<double> lambda_exact;
  std::vector<double> lambda_h;
  /// (lambda_h - lambda) / lambda, signed. For a zero exact eigenvalue this
  /// holds the absolute value lambda_h and absolute_mode is set.
  std::vector<double> rel_err;
  std::vector<bool> absolute_mode;

  // Filled by eigenfunction_errors only.
  std::vector<double> h1_err;         ///< |u - u_h|_1
  std::vector<double> l2_err;         ///< ||u - u_h||_0
  std::vector<double> scaled_h1_err;  ///< |u - u_h|_1 / lambda (NaN for zero lambda)
  std::vector<bool> sign_ambiguous;   ///< |(u, u_h)| too small to fix the sign reliably

  [[nodiscard]] std::size_t size() const noexcept { return lambda_h.size(); }
};

/// Pairs discrete and exact eigenvalues by ascending order.
ErrorReport eigenvalue_errors(const Spectrum& spec, const ExactSpectrum& exact);

/// 1D only. u_h = sum U_k theta_k over the retained basis, normalized to
/// unit L2 norm and sign-aligned with the exact eigenfunction; errors are
/// integrated with `rule` on every element. `max_modes` limits the work
/// (0 = all modes).
ErrorReport eigenfunction_errors(const SplineSpace& space, const Spectrum& spec, const ExactSpectrum& exact,
                                 const QuadratureRule& rule, std::size_t max_modes = 0);

struct RateResult {
  double rate = 0.0;
  std::size_t used_levels = 0;
  bool excluded_nonpositive = false;
};

/// Least-squares slope of log(error) against log(1/N).
RateResult convergence_rate(std::span<const std::size_t> elements, std::span<const double> errors);

struct ConditionReport {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double lambda_min_dc = 0.0;
  double lambda_max_dc = 0.0;
  double gamma = 0.0;        ///< lambda_max / lambda_min, standard
  double gamma_tilde = 0.0;  ///< same, corrected
  double rho = 0.0;          ///< gamma / gamma_tilde
  double varrho = 0.0;       ///< 100 (1 - 1/rho), percent
};

ConditionReport condition_report(const Spectrum& standard, const Spectrum& corrected);

/// max |rel_err| over the highest `fraction` of modes (at least one mode),
/// skipping absolute-error modes.
double max_abs_error_in_top_fraction(const ErrorReport& report, double fraction);

}  // namespace dciga
