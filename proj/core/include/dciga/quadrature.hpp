#pragma once

#include <vector>

namespace dciga {

/// Points on the reference interval [-1, 1] with positive weights.
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
};

inline constexpr int kMaxGaussPoints = 16;

/// q-point Gauss-Legendre rule, exact for polynomials of degree 2q-1.
/// Nodes come from Newton iteration on P_q; 1 <= q <= 16.
QuadratureRule gauss_legendre(int q);

/// Affine image of `rule` on [a, b]; weights scale by (b - a) / 2.
QuadratureRule map_to_element(const QuadratureRule& rule, double a, double b);

}  // namespace dciga
