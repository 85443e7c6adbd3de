#include "dciga/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "dciga/errors.hpp"

namespace dciga {

QuadratureRule gauss_legendre(int q) {
  if (q < 1 || q > kMaxGaussPoints) {
    throw ConfigError(fmt::format("Gauss-Legendre point count {} outside [1, {}]", q, kMaxGaussPoints));
  }
  QuadratureRule rule;
  rule.points.resize(q);
  rule.weights.resize(q);

  // Roots are symmetric; solve for the non-negative half.
  const int half = (q + 1) / 2;
  for (int i = 0; i < half; ++i) {
    long double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      // Three-term recurrence for P_q(x) and its derivative.
      long double p0 = 1.0L, p1 = x;
      for (int k = 2; k <= q; ++k) {
        const long double pk = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-18L) break;
    }
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    rule.points[i] = -static_cast<double>(x);
    rule.points[q - 1 - i] = static_cast<double>(x);
    rule.weights[i] = rule.weights[q - 1 - i] = static_cast<double>(w);
  }
  if (q % 2 == 1) rule.points[q / 2] = 0.0;
  return rule;
}

QuadratureRule map_to_element(const QuadratureRule& rule, double a, double b) {
  if (!(b > a)) {
    throw ConfigError(fmt::format("empty integration interval [{}, {}]", a, b));
  }
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  QuadratureRule mapped;
  mapped.points.reserve(rule.size());
  mapped.weights.reserve(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    mapped.points.push_back(mid + half * rule.points[i]);
    mapped.weights.push_back(half * rule.weights[i]);
  }
  return mapped;
}

}  // namespace dciga
