#pragma once

// Open-knot B-spline spaces of maximal smoothness on [0, 1].
//
// Basis functions are indexed 0..n-1 with n = N + p. Matrices printed in
// the literature are 1-based; index k here corresponds to row/column k+1
// there. All other modules follow the same mapping.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace dciga {

/// Strictly ascending breakpoints 0 = x_0 < x_1 < ... < x_N = 1.
class BreakpointGrid {
 public:
  explicit BreakpointGrid(std::vector<double> nodes);

  static BreakpointGrid uniform(std::size_t elements);

  [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }
  [[nodiscard]] std::size_t elements() const noexcept { return nodes_.size() - 1; }
  [[nodiscard]] double h_max() const noexcept { return h_max_; }
  [[nodiscard]] bool is_uniform(double tol = 1e-12) const noexcept;

  /// Element e with nodes[e] <= x < nodes[e+1]; x == 1 maps to the last element.
  [[nodiscard]] std::size_t find_element(double x) const;

 private:
  std::vector<double> nodes_;
  double h_max_ = 0.0;
};

/// 0 and 1 repeated p+1 times, interior breakpoints once. Length N + 2p + 1.
std::vector<double> open_knot_vector(int degree, const BreakpointGrid& grid);

class SplineSpace {
 public:
  SplineSpace(int degree, BreakpointGrid grid);

  [[nodiscard]] int degree() const noexcept { return degree_; }
  [[nodiscard]] const BreakpointGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::span<const double> knots() const noexcept { return knots_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return grid_.elements() + degree_; }
  [[nodiscard]] std::size_t elements() const noexcept { return grid_.elements(); }

 private:
  int degree_;
  BreakpointGrid grid_;
  std::vector<double> knots_;
};

/// The p+1 basis functions (or a derivative of them) active at a point.
struct BasisValues {
  std::size_t first = 0;       ///< global index of values[0]
  std::vector<double> values;  ///< length p+1
};

/// r-th derivative of the active basis functions at x in [0, 1].
/// Derivatives of order r > p are identically zero.
BasisValues eval_basis(const SplineSpace& space, double x, int r);

/// All derivatives 0..max_order of the p+1 functions active on `element`,
/// evaluated at x (which may sit on the element's closure). Row d holds the
/// d-th derivative. The first active global index is `element`.
Eigen::MatrixXd eval_basis_derivatives(const SplineSpace& space, std::size_t element,
                                       double x, int max_order);

struct BoundaryRows {
  Eigen::VectorXd left;   ///< theta_j^{(r)}(0), j = 0..n-1
  Eigen::VectorXd right;  ///< theta_j^{(r)}(1), j = 0..n-1
};

/// Requires 1 <= r <= p.
BoundaryRows boundary_derivative_row(const SplineSpace& space, int r);

}  // namespace dciga
