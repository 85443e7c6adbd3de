#include "dciga/splines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "dciga/errors.hpp"

namespace dciga {

BreakpointGrid::BreakpointGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) {
    throw ConfigError("breakpoint grid needs at least 2 nodes");
  }
  if (nodes_.front() != 0.0 || nodes_.back() != 1.0) {
    throw ConfigError(fmt::format("breakpoint grid must start at 0 and end at 1 (got {} .. {})",
                                  nodes_.front(), nodes_.back()));
  }
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    const double gap = nodes_[i] - nodes_[i - 1];
    if (!(gap > 0.0)) {
      throw ConfigError(fmt::format("breakpoints not strictly ascending at index {} ({} after {})",
                                    i, nodes_[i], nodes_[i - 1]));
    }
    h_max_ = std::max(h_max_, gap);
  }
}

BreakpointGrid BreakpointGrid::uniform(std::size_t elements) {
  if (elements == 0) {
    throw ConfigError("uniform grid needs at least one element");
  }
  std::vector<double> nodes(elements + 1);
  for (std::size_t i = 0; i <= elements; ++i) {
    nodes[i] = static_cast<double>(i) / static_cast<double>(elements);
  }
  nodes.back() = 1.0;
  return BreakpointGrid(std::move(nodes));
}

bool BreakpointGrid::is_uniform(double tol) const noexcept {
  const double h = 1.0 / static_cast<double>(elements());
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (std::abs(nodes_[i] - nodes_[i - 1] - h) > tol) return false;
  }
  return true;
}

std::size_t BreakpointGrid::find_element(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw ConfigError(fmt::format("evaluation point {} outside [0, 1]", x));
  }
  if (x == 1.0) return elements() - 1;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  return static_cast<std::size_t>(it - nodes_.begin()) - 1;
}

std::vector<double> open_knot_vector(int degree, const BreakpointGrid& grid) {
  if (degree < 0) {
    throw ConfigError(fmt::format("spline degree must be non-negative (got {})", degree));
  }
  const auto nodes = grid.nodes();
  std::vector<double> knots;
  knots.reserve(nodes.size() + 2 * static_cast<std::size_t>(degree));
  knots.insert(knots.end(), static_cast<std::size_t>(degree), 0.0);
  knots.insert(knots.end(), nodes.begin(), nodes.end());
  knots.insert(knots.end(), static_cast<std::size_t>(degree), 1.0);
  return knots;
}

SplineSpace::SplineSpace(int degree, BreakpointGrid grid)
    : degree_(degree), grid_(std::move(grid)), knots_(open_knot_vector(degree, grid_)) {}

// Derivatives by differentiating the Cox-de Boor triangle (The NURBS Book,
// A2.3). The knot span of element e is e + p in the open knot vector.
Eigen::MatrixXd eval_basis_derivatives(const SplineSpace& space, std::size_t element, double x,
                                       int max_order) {
  const int p = space.degree();
  const auto U = space.knots();
  const std::size_t span = element + static_cast<std::size_t>(p);
  const int nd = std::min(max_order, p);

  Eigen::MatrixXd ndu(p + 1, p + 1);
  std::vector<double> left(p + 1), right(p + 1);
  ndu(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = x - U[span + 1 - j];
    right[j] = U[span + j] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu(j, r) = right[r + 1] + left[j - r];  // knot differences
      const double temp = ndu(r, j - 1) / ndu(j, r);
      ndu(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu(j, j) = saved;
  }

  Eigen::MatrixXd ders = Eigen::MatrixXd::Zero(std::max(max_order, 0) + 1, p + 1);
  for (int j = 0; j <= p; ++j) ders(0, j) = ndu(j, p);

  Eigen::MatrixXd a(2, p + 1);
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a(0, 0) = 1.0;
    for (int k = 1; k <= nd; ++k) {
      double d = 0.0;
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
        d = a(s2, 0) * ndu(rk, pk);
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
        d += a(s2, j) * ndu(rk + j, pk);
      }
      if (r <= pk) {
        a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
        d += a(s2, k) * ndu(r, pk);
      }
      ders(k, r) = d;
      std::swap(s1, s2);
    }
  }

  double factor = p;
  for (int k = 1; k <= nd; ++k) {
    ders.row(k) *= factor;
    factor *= (p - k);
  }
  return ders;
}

BasisValues eval_basis(const SplineSpace& space, double x, int r) {
  if (r < 0) {
    throw ConfigError(fmt::format("derivative order must be non-negative (got {})", r));
  }
  const std::size_t e = space.grid().find_element(x);
  const Eigen::MatrixXd ders = eval_basis_derivatives(space, e, x, r);
  BasisValues out;
  out.first = e;
  out.values.resize(static_cast<std::size_t>(space.degree()) + 1);
  for (int j = 0; j <= space.degree(); ++j) out.values[j] = ders(r, j);
  return out;
}

BoundaryRows boundary_derivative_row(const SplineSpace& space, int r) {
  const int p = space.degree();
  if (r < 1 || r > p) {
    throw ConfigError(fmt::format("boundary derivative order {} outside [1, {}]", r, p));
  }
  const std::size_t n = space.dimension();
  BoundaryRows rows{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};

  const BasisValues at0 = eval_basis(space, 0.0, r);
  const BasisValues at1 = eval_basis(space, 1.0, r);
  for (int j = 0; j <= p; ++j) {
    rows.left[at0.first + j] = at0.values[j];
    rows.right[at1.first + j] = at1.values[j];
  }
  return rows;
}

}  // namespace dciga
