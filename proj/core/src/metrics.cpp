#include "dciga/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "dciga/errors.hpp"

namespace dciga {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSignAmbiguity = 1e-3;

std::size_t first_mode(ProblemKind kind) { return kind == ProblemKind::Dirichlet ? 1 : 0; }

}  // namespace

double ExactSpectrum::eigenfunction(std::size_t j, double x) const {
  const double jd = static_cast<double>(j);
  if (kind == ProblemKind::Dirichlet) return std::numbers::sqrt2 * std::sin(jd * kPi * x);
  if (j == 0) return 1.0;
  return std::numbers::sqrt2 * std::cos(jd * kPi * x);
}

double ExactSpectrum::eigenfunction_derivative(std::size_t j, double x) const {
  const double jd = static_cast<double>(j);
  if (kind == ProblemKind::Dirichlet) return std::numbers::sqrt2 * jd * kPi * std::cos(jd * kPi * x);
  return -std::numbers::sqrt2 * jd * kPi * std::sin(jd * kPi * x);
}

ExactSpectrum exact_spectrum(ProblemKind kind, int dim, std::size_t count) {
  if (dim < 1 || dim > 3) throw ConfigError(fmt::format("dimension must be 1, 2 or 3 (got {})", dim));
  if (count < 1) throw ConfigError("exact spectrum needs count >= 1");

  const std::size_t start = first_mode(kind);
  const auto d = static_cast<std::size_t>(dim);
  std::size_t span = count;
  if (d > 1) span = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(count), 1.0 / dim))) + 2;

  for (;;) {
    // All multi-indices with each axis in [start, start + span).
    std::vector<MultiIndex> modes;
    std::vector<double> sums;
    MultiIndex idx{start, d > 1 ? start : 0, d > 2 ? start : 0};
    bool done = false;
    while (!done) {
      double s = 0.0;
      for (std::size_t a = 0; a < d; ++a) s += static_cast<double>(idx[a] * idx[a]);
      modes.push_back(idx);
      sums.push_back(s);
      std::size_t a = d;
      for (;;) {
        if (a == 0) {
          done = true;
          break;
        }
        --a;
        if (++idx[a] < start + span) break;
        idx[a] = start;
      }
    }
    std::vector<std::size_t> order(modes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sums[a] < sums[b]; });

    // Smallest sum not enumerated: one axis at start + span, the rest at start.
    const double outside = static_cast<double>((start + span) * (start + span) + (d - 1) * start * start);
    if (order.size() >= count && sums[order[count - 1]] < outside) {
      ExactSpectrum out;
      out.kind = kind;
      out.dim = dim;
      out.values.reserve(count);
      out.modes.reserve(count);
      for (std::size_t k = 0; k < count; ++k) {
        out.values.push_back(kPi * kPi * sums[order[k]]);
        out.modes.push_back(modes[order[k]]);
      }
      return out;
    }
    span *= 2;
  }
}

ErrorReport eigenvalue_errors(const Spectrum& spec, const ExactSpectrum& exact) {
  if (spec.size() > exact.values.size()) {
    throw ConfigError(fmt::format("discrete spectrum has {} modes but only {} exact eigenvalues were supplied",
                                  spec.size(), exact.values.size()));
  }
  ErrorReport r;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double le = exact.values[j];
    const double lh = spec.values[j];
    r.lambda_exact.push_back(le);
    r.lambda_h.push_back(lh);
    if (le == 0.0) {
      r.rel_err.push_back(lh);
      r.absolute_mode.push_back(true);
    } else {
      r.rel_err.push_back((lh - le) / le);
      r.absolute_mode.push_back(false);
    }
  }
  return r;
}

ErrorReport eigenfunction_errors(const SplineSpace& space, const Spectrum& spec, const ExactSpectrum& exact,
                                 const QuadratureRule& rule, std::size_t max_modes) {
  if (exact.dim != 1) throw ConfigError("eigenfunction errors are available in 1D only");
  if (!spec.vectors) throw ConfigError("eigenfunction errors need eigenvectors");
  const Eigen::MatrixXd& U = *spec.vectors;
  const std::size_t offset = exact.kind == ProblemKind::Dirichlet ? 1 : 0;
  const std::size_t expected = space.dimension() - 2 * offset;
  if (static_cast<std::size_t>(U.rows()) != expected) {
    throw ConfigError(fmt::format("eigenvectors have {} rows, space has {} retained functions", U.rows(), expected));
  }

  ErrorReport r = eigenvalue_errors(spec, exact);
  std::size_t modes = spec.size();
  if (max_modes != 0) modes = std::min(modes, max_modes);

  // Tabulate basis values and first derivatives at every quadrature point.
  const int p = space.degree();
  const auto nodes = space.grid().nodes();
  struct Point {
    double x, w;
    std::size_t first;
    Eigen::VectorXd val, der;
  };
  std::vector<Point> pts;
  pts.reserve(space.elements() * rule.size());
  for (std::size_t e = 0; e < space.elements(); ++e) {
    const QuadratureRule local = map_to_element(rule, nodes[e], nodes[e + 1]);
    for (std::size_t g = 0; g < local.size(); ++g) {
      const Eigen::MatrixXd d = eval_basis_derivatives(space, e, local.points[g], 1);
      pts.push_back({local.points[g], local.weights[g], e, d.row(0).transpose(), d.row(1).transpose()});
    }
  }

  auto coefficient = [&](const Eigen::VectorXd& u, std::size_t global) -> double {
    if (global < offset || global >= offset + expected) return 0.0;
    return u[static_cast<Eigen::Index>(global - offset)];
  };

  r.h1_err.assign(modes, 0.0);
  r.l2_err.assign(modes, 0.0);
  r.scaled_h1_err.assign(modes, 0.0);
  r.sign_ambiguous.assign(modes, false);
  std::vector<double> uh(pts.size()), duh(pts.size());
  for (std::size_t m = 0; m < modes; ++m) {
    const Eigen::VectorXd u = U.col(static_cast<Eigen::Index>(m));
    const std::size_t j = exact.modes[m][0];
    double norm2 = 0.0, inner = 0.0;
    for (std::size_t q = 0; q < pts.size(); ++q) {
      double v = 0.0, dv = 0.0;
      for (int a = 0; a <= p; ++a) {
        const double c = coefficient(u, pts[q].first + static_cast<std::size_t>(a));
        v += c * pts[q].val[a];
        dv += c * pts[q].der[a];
      }
      uh[q] = v;
      duh[q] = dv;
      norm2 += pts[q].w * v * v;
      inner += pts[q].w * v * exact.eigenfunction(j, pts[q].x);
    }
    const double norm = std::sqrt(norm2);
    const double cosine = inner / norm;
    r.sign_ambiguous[m] = std::abs(cosine) < kSignAmbiguity;
    const double scale = (inner < 0.0 ? -1.0 : 1.0) / norm;

    double e0 = 0.0, e1 = 0.0;
    for (std::size_t q = 0; q < pts.size(); ++q) {
      const double d0 = exact.eigenfunction(j, pts[q].x) - scale * uh[q];
      const double d1 = exact.eigenfunction_derivative(j, pts[q].x) - scale * duh[q];
      e0 += pts[q].w * d0 * d0;
      e1 += pts[q].w * d1 * d1;
    }
    r.l2_err[m] = std::sqrt(e0);
    r.h1_err[m] = std::sqrt(e1);
    const double lambda = r.lambda_exact[m];
    r.scaled_h1_err[m] = lambda == 0.0 ? std::numeric_limits<double>::quiet_NaN() : r.h1_err[m] / lambda;
  }
  return r;
}

RateResult convergence_rate(std::span<const std::size_t> elements, std::span<const double> errors) {
  if (elements.size() != errors.size()) {
    throw ConfigError(fmt::format("{} mesh levels but {} errors", elements.size(), errors.size()));
  }
  RateResult out;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!(errors[i] > 0.0) || elements[i] == 0) {
      out.excluded_nonpositive = true;
      continue;
    }
    xs.push_back(-std::log(static_cast<double>(elements[i])));
    ys.push_back(std::log(errors[i]));
  }
  if (xs.size() < 2) throw ConfigError("convergence rate needs at least 2 levels with positive errors");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw ConfigError("convergence rate needs at least 2 distinct mesh sizes");
  out.rate = sxy / sxx;
  out.used_levels = xs.size();
  return out;
}

ConditionReport condition_report(const Spectrum& standard, const Spectrum& corrected) {
  if (standard.values.empty() || corrected.values.empty()) throw ConfigError("condition report needs non-empty spectra");
  ConditionReport c;
  c.lambda_min = standard.values.front();
  c.lambda_max = standard.values.back();
  c.lambda_min_dc = corrected.values.front();
  c.lambda_max_dc = corrected.values.back();
  if (!(c.lambda_min > 0.0) || !(c.lambda_min_dc > 0.0)) {
    throw ConfigError("condition numbers need strictly positive smallest eigenvalues (Neumann spectra have a zero mode)");
  }
  c.gamma = c.lambda_max / c.lambda_min;
  c.gamma_tilde = c.lambda_max_dc / c.lambda_min_dc;
  c.rho = c.gamma / c.gamma_tilde;
  c.varrho = 100.0 * (1.0 - 1.0 / c.rho);
  return c;
}

double max_abs_error_in_top_fraction(const ErrorReport& report, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigError("fraction must lie in (0, 1]");
  const std::size_t n = report.size();
  if (n == 0) return 0.0;
  const std::size_t count = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(fraction * n)));
  double worst = 0.0;
  for (std::size_t j = n - count; j < n; ++j) {
    if (report.absolute_mode[j]) continue;
    worst = std::max(worst, std::abs(report.rel_err[j]));
  }
  return worst;
}

}  // namespace dciga
