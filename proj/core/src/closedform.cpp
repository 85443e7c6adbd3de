#include "dciga/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "dciga/errors.hpp"

namespace dciga {

namespace {

using Stencil = std::vector<long double>;  // center, then distance 1, 2, ...
using LdMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

// Symmetric banded Toeplitz matrix whose leading c x c block is replaced by
// `corner` and whose trailing block is its persymmetric mirror.
Eigen::MatrixXd banded_with_corners(std::size_t n, const Stencil& stencil, const LdMatrix& corner,
                                    double scale) {
  const auto N = static_cast<Eigen::Index>(n);
  const auto m = static_cast<Eigen::Index>(stencil.size()) - 1;
  LdMatrix A = LdMatrix::Zero(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index k = -m; k <= m; ++k) {
      const Eigen::Index j = i + k;
      if (j >= 0 && j < N) A(i, j) = stencil[static_cast<std::size_t>(std::abs(k))];
    }
  }
  const Eigen::Index c = corner.rows();
  for (Eigen::Index i = 0; i < c; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) {
      A(i, j) = corner(i, j);
      A(N - 1 - i, N - 1 - j) = corner(i, j);
    }
  }
  return scale * A.cast<double>();
}

LdMatrix sym(std::initializer_list<std::initializer_list<long double>> upper) {
  const auto n = static_cast<Eigen::Index>(upper.size());
  LdMatrix A = LdMatrix::Zero(n, n);
  Eigen::Index i = 0;
  for (const auto& row : upper) {
    Eigen::Index j = i;
    for (long double v : row) {
      A(i, j) = v;
      A(j, i) = v;
      ++j;
    }
    ++i;
  }
  return A;
}

// Printed stencils and boundary blocks (unscaled; K carries 1/h, M carries h).
const Stencil kCubicK{2.0L / 3, -1.0L / 8, -1.0L / 5, -1.0L / 120};
const Stencil kCubicM{151.0L / 315, 397.0L / 1680, 1.0L / 42, 1.0L / 5040};
const Stencil kQuadK{1.0L, -1.0L / 3, -1.0L / 6};
const Stencil kQuadM{11.0L / 20, 13.0L / 60, 1.0L / 120};

LdMatrix cubic_k_corner() {
  return sym({{3.0L / 2, 3.0L / 80, -1.0L / 4, -1.0L / 80},
              {27.0L / 40, -1.0L / 30, -47.0L / 240},
              {2.0L / 3, -1.0L / 8},
              {2.0L / 3}});
}
LdMatrix cubic_m_corner() {
  return sym({{31.0L / 140, 5.0L / 32, 29.0L / 840, 1.0L / 3360},
              {183.0L / 560, 283.0L / 1260, 239.0L / 10080},
              {151.0L / 315, 397.0L / 1680},
              {151.0L / 315}});
}
LdMatrix quad_k_corner() { return sym({{4.0L / 3, -1.0L, -1.0L / 3}, {4.0L / 3, -1.0L / 6}, {1.0L}}); }
LdMatrix quad_m_corner() {
  return sym({{1.0L / 5, 7.0L / 60, 1.0L / 60}, {1.0L / 3, 5.0L / 24}, {11.0L / 20}});
}

MatrixPair make_pair(Eigen::MatrixXd K, Eigen::MatrixXd M, int degree, std::size_t N, ProblemKind kind,
                     bool corrected) {
  MatrixPair p;
  p.K = std::move(K);
  p.M = std::move(M);
  p.degree = degree;
  p.elements = N;
  p.kind = kind;
  p.corrected = corrected;
  return p;
}

void require_elements(std::size_t N, std::size_t min, const char* what) {
  if (N < min) throw ConfigError(fmt::format("{} needs N >= {} elements (got {})", what, min, N));
}

void check_omega(double omega_h) {
  if (!(omega_h > 0.0 && omega_h <= std::numbers::pi)) {
    throw ConfigError(fmt::format("omega*h = {} outside (0, pi]", omega_h));
  }
}

// Dispersion relations in extended precision; the coefficient fits cancel
// the leading Lambda term and need the extra digits.
long double interior_ld(DispersionCase c, long double w) {
  using std::cos;
  if (c == DispersionCase::CubicDirichlet) {
    return -42.0L + 1008.0L * (52.0L + 49.0L * cos(w) + 4.0L * cos(2 * w)) /
                        (1208.0L + 1191.0L * cos(w) + 120.0L * cos(2 * w) + cos(3 * w));
  }
  return -20.0L + 240.0L * (3.0L + 2.0L * cos(w)) / (33.0L + 26.0L * cos(w) + cos(2 * w));
}

// Row r (0-based) of the printed pair applied to the Bloch ansatz.
long double row_ratio_ld(DispersionCase c, std::size_t r, long double w) {
  const bool cubic = c == DispersionCase::CubicDirichlet;
  const LdMatrix Kc = cubic ? cubic_k_corner() : quad_k_corner();
  const LdMatrix Mc = cubic ? cubic_m_corner() : quad_m_corner();
  const Stencil& ks = cubic ? kCubicK : kQuadK;
  const Stencil& ms = cubic ? kCubicM : kQuadM;
  const auto corner = static_cast<std::size_t>(Kc.rows());
  const std::size_t m = ks.size() - 1;

  auto ansatz = [&](std::size_t col) -> long double {  // col is 0-based
    const long double k = static_cast<long double>(col) + 1.0L;
    return cubic ? std::sin(w * k) : std::cos(w * (k - 1.5L));
  };
  auto entry = [&](const LdMatrix& cornerBlock, const Stencil& s, std::size_t i, std::size_t j) {
    if (i < corner && j < corner) return cornerBlock(i, j);
    const std::size_t d = i > j ? i - j : j - i;
    return d <= m ? s[d] : 0.0L;
  };
  long double num = 0.0L, den = 0.0L;
  for (std::size_t j = 0; j <= r + m; ++j) {
    num += entry(Kc, ks, r, j) * ansatz(j);
    den += entry(Mc, ms, r, j) * ansatz(j);
  }
  return num / den;
}

long double closed_boundary_ld(DispersionCase c, std::size_t row, long double w) {
  using std::cos;
  if (c == DispersionCase::CubicDirichlet) {
    if (row == 1) {
      return -42.0L + 2016.0L * (10.0L + 11.0L * cos(w) + 2.0L * cos(2 * w)) /
                          (430.0L + 526.0L * cos(w) + 116.0L * cos(2 * w) + cos(3 * w));
    }
    if (row == 2) {
      return -42.0L + 4032.0L * (40.0L + 76.0L * cos(w) + 47.0L * cos(2 * w) + 4.0L * cos(3 * w)) /
                          (3841.0L + 7066.0L * cos(w) + 4532.0L * cos(2 * w) + 478.0L * cos(3 * w) +
                           4.0L * cos(4 * w));
    }
  } else {
    // Row 1 is the (1/h)(4/3, -1, -1/3) row; its relation carries the -1/30 term.
    if (row == 1) return -20.0L + 200.0L / (9.0L + cos(w));
    if (row == 2) {
      const long double s = std::sin(w);
      return 40.0L * s * s / (15.0L + 24.0L * cos(w) + cos(2 * w));
    }
  }
  throw ConfigError(fmt::format("no closed-form boundary relation for row {} of {}", row, to_string(c)));
}

std::vector<bool> validate_constraints(std::size_t n, std::span<const Constraint> constraints) {
  std::vector<bool> eliminated(n, false);
  for (const Constraint& c : constraints) {
    if (c.eliminated >= n || c.target >= n) {
      throw ConfigError(fmt::format("constraint index out of range (eliminated {}, target {}, dim {})", c.eliminated,
                                    c.target, n));
    }
    if (c.eliminated == c.target) throw ConfigError("constraint relates an unknown to itself");
    if (c.coefficient == 0.0) throw ConfigError("constraint coefficient must be nonzero");
    if (eliminated[c.eliminated]) {
      throw ConfigError(fmt::format("unknown {} is eliminated by more than one constraint", c.eliminated));
    }
    eliminated[c.eliminated] = true;
  }
  for (const Constraint& c : constraints) {
    if (eliminated[c.target]) {
      throw ConfigError(fmt::format("constraint target {} is itself eliminated", c.target));
    }
  }
  return eliminated;
}

long double relation_ld(DispersionCase c, std::size_t row, long double w) {
  return row == 0 ? interior_ld(c, w) : row_ratio_ld(c, row - 1, w);
}

}  // namespace

ToeplitzPair build_toeplitz_boundary(const ToeplitzBoundarySpec& spec) {
  const std::size_t m = spec.half_bandwidth();
  if (spec.mu.size() != spec.nu.size()) {
    throw ConfigError(fmt::format("mu and nu lengths differ ({} vs {})", spec.mu.size(), spec.nu.size()));
  }
  if (m < 1) throw ConfigError("Toeplitz-plus-boundary spec needs half-bandwidth m >= 1");
  if (spec.n <= 2 * m) {
    throw ConfigError(fmt::format("Toeplitz-plus-boundary spec needs n > 2m (n = {}, m = {})", spec.n, m));
  }
  const auto n = static_cast<Eigen::Index>(spec.n);
  const double sign = spec.boundary == BoundaryCase::Subtract ? -1.0 : 1.0;

  auto build = [&](const std::vector<double>& xi) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = std::max<Eigen::Index>(0, j - static_cast<Eigen::Index>(m));
           k <= std::min<Eigen::Index>(n - 1, j + static_cast<Eigen::Index>(m)); ++k) {
        A(j, k) = xi[static_cast<std::size_t>(std::abs(j - k))];
      }
    }
    // 1-based (j, k): case 1 uses xi_{j+k} for j <= m-1, k <= m-j;
    // case 2 uses xi_{j+k-1} for j <= m, k <= m-j+1.
    const std::size_t rows = spec.boundary == BoundaryCase::Subtract ? m - 1 : m;
    for (std::size_t j = 1; j <= rows; ++j) {
      const std::size_t kmax = spec.boundary == BoundaryCase::Subtract ? m - j : m - j + 1;
      for (std::size_t k = 1; k <= kmax; ++k) {
        const double h = spec.boundary == BoundaryCase::Subtract ? xi[j + k] : xi[j + k - 1];
        const auto r = static_cast<Eigen::Index>(j - 1), c = static_cast<Eigen::Index>(k - 1);
        A(r, c) += sign * h;
        A(n - 1 - r, n - 1 - c) += sign * h;
      }
    }
    return A;
  };
  return ToeplitzPair{build(spec.mu), build(spec.nu)};
}

Spectrum analytical_eigenpairs(const ToeplitzBoundarySpec& spec, bool want_vectors) {
  // Validates the spec as a side effect.
  (void)build_toeplitz_boundary(spec);
  const std::size_t n = spec.n;
  const std::size_t m = spec.half_bandwidth();
  const bool case1 = spec.boundary == BoundaryCase::Subtract;
  const double h = case1 ? 1.0 / static_cast<double>(n + 1) : 1.0 / static_cast<double>(n);
  const double pi = std::numbers::pi;

  std::vector<double> values(n);
  std::vector<std::size_t> js(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = case1 ? i + 1 : i;
    const double t = static_cast<double>(j) * pi * h;
    double num = spec.mu[0], den = spec.nu[0];
    for (std::size_t l = 1; l <= m; ++l) {
      num += 2.0 * spec.mu[l] * std::cos(static_cast<double>(l) * t);
      den += 2.0 * spec.nu[l] * std::cos(static_cast<double>(l) * t);
    }
    const double scale = std::max({std::abs(spec.nu[0]), 1e-300});
    if (std::abs(den) <= 1e-14 * scale) {
      throw NumericalError(fmt::format("closed-form denominator vanishes at j = {}; B violates the hypothesis", j));
    }
    values[i] = num / den;
    js[i] = j;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  Spectrum out;
  out.source = fmt::format("closed form case {} n={} m={}", case1 ? 1 : 2, n, m);
  Eigen::MatrixXd V;
  if (want_vectors) V.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t i = order[col];
    out.values.push_back(values[i]);
    out.modes.push_back({js[i], 0, 0});
    if (want_vectors) {
      Eigen::VectorXd x(static_cast<Eigen::Index>(n));
      for (std::size_t k = 1; k <= n; ++k) {
        const double jd = static_cast<double>(js[i]), kd = static_cast<double>(k);
        x[static_cast<Eigen::Index>(k - 1)] = case1 ? std::sin(jd * pi * kd * h) : std::cos(jd * pi * (kd - 0.5) * h);
      }
      V.col(static_cast<Eigen::Index>(col)) = x.normalized();
    }
  }
  if (want_vectors) out.vectors = std::move(V);
  return out;
}

MatrixPair printed_cubic_dirichlet(std::size_t N) {
  require_elements(N, 7, "printed cubic Dirichlet pair");
  const double h = 1.0 / static_cast<double>(N);
  return make_pair(banded_with_corners(N + 1, kCubicK, cubic_k_corner(), 1.0 / h),
                   banded_with_corners(N + 1, kCubicM, cubic_m_corner(), h), 3, N, ProblemKind::Dirichlet, false);
}

MatrixPair printed_quadratic_neumann(std::size_t N) {
  require_elements(N, 4, "printed quadratic Neumann pair");
  const double h = 1.0 / static_cast<double>(N);
  return make_pair(banded_with_corners(N + 2, kQuadK, quad_k_corner(), 1.0 / h),
                   banded_with_corners(N + 2, kQuadM, quad_m_corner(), h), 2, N, ProblemKind::Neumann, false);
}

MatrixPair reduced_cubic_dirichlet(std::size_t N) {
  require_elements(N, 6, "reduced cubic Dirichlet pair");
  const double h = 1.0 / static_cast<double>(N);
  const LdMatrix kc = sym({{13.0L / 15, -7.0L / 60}, {2.0L / 3}});
  const LdMatrix mc = sym({{41.0L / 90, 17.0L / 72}, {151.0L / 315}});
  return make_pair(banded_with_corners(N - 1, kCubicK, kc, 1.0 / h), banded_with_corners(N - 1, kCubicM, mc, h), 3,
                   N, ProblemKind::Dirichlet, true);
}

MatrixPair reduced_quadratic_neumann(std::size_t N) {
  require_elements(N, 5, "reduced quadratic Neumann pair");
  const double h = 1.0 / static_cast<double>(N);
  const LdMatrix kc = sym({{2.0L / 3, -1.0L / 2}, {1.0L}});
  const LdMatrix mc = sym({{23.0L / 30, 9.0L / 40}, {11.0L / 20}});
  return make_pair(banded_with_corners(N, kQuadK, kc, 1.0 / h), banded_with_corners(N, kQuadM, mc, h), 2, N,
                   ProblemKind::Neumann, true);
}

MatrixPair constraint_reduce(const MatrixPair& pair, std::span<const Constraint> constraints) {
  const std::size_t n = pair.dim();
  const std::vector<bool> eliminated = validate_constraints(n, constraints);

  Eigen::MatrixXd K = pair.K, M = pair.M;
  for (const Constraint& c : constraints) {
    const auto i = static_cast<Eigen::Index>(c.eliminated), j = static_cast<Eigen::Index>(c.target);
    const double s = 1.0 / c.coefficient;
    for (Eigen::MatrixXd* A : {&K, &M}) {
      A->col(j) += s * A->col(i);
      A->row(j) += s * A->row(i);
    }
  }

  std::vector<Eigen::Index> keep;
  for (std::size_t i = 0; i < n; ++i) {
    if (!eliminated[i]) keep.push_back(static_cast<Eigen::Index>(i));
  }
  MatrixPair out = pair;
  out.K = K(keep, keep);
  out.M = M(keep, keep);
  out.corrected = true;
  return out;
}

Eigen::MatrixXd constraint_expand(const Eigen::MatrixXd& reduced, std::span<const Constraint> constraints,
                                  std::size_t full_dim) {
  const std::vector<bool> eliminated = validate_constraints(full_dim, constraints);
  const auto kept = static_cast<Eigen::Index>(std::count(eliminated.begin(), eliminated.end(), false));
  if (reduced.rows() != kept) {
    throw ConfigError(fmt::format("reduced vectors have {} rows, expected {}", reduced.rows(), kept));
  }
  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(full_dim), reduced.cols());
  Eigen::Index r = 0;
  for (std::size_t i = 0; i < full_dim; ++i) {
    if (!eliminated[i]) full.row(static_cast<Eigen::Index>(i)) = reduced.row(r++);
  }
  for (const Constraint& c : constraints) {
    full.row(static_cast<Eigen::Index>(c.eliminated)) = full.row(static_cast<Eigen::Index>(c.target)) / c.coefficient;
  }
  return full;
}

std::vector<Constraint> infinite_penalty_constraints(ProblemKind kind, int degree, std::size_t dim) {
  if (kind == ProblemKind::Dirichlet && degree == 3) {
    if (dim < 4) throw ConfigError("cubic Dirichlet constraint reduction needs at least 4 unknowns");
    return {{0, 1, 3.0}, {dim - 1, dim - 2, 3.0}};
  }
  if (kind == ProblemKind::Neumann && degree == 2) {
    if (dim < 4) throw ConfigError("quadratic Neumann constraint reduction needs at least 4 unknowns");
    return {{0, 1, 1.0}, {dim - 1, dim - 2, 1.0}};
  }
  throw ConfigError(fmt::format(
      "infinite penalty is available only for cubic Dirichlet and quadratic Neumann (got {} with degree {}); "
      "higher degrees need boundary basis reconstruction, which is not implemented",
      to_string(kind), degree));
}

Spectrum analytical_spectrum_cubic_dirichlet(std::size_t N, bool want_vectors) {
  if (N < 2) throw ConfigError("closed-form cubic spectrum needs N >= 2");
  const double Nd = static_cast<double>(N);
  const double N2 = Nd * Nd;
  const double pi = std::numbers::pi;
  Spectrum out;
  out.source = fmt::format("closed form cubic dirichlet N={}", N);
  const std::size_t n = N - 1;
  Eigen::MatrixXd V;
  if (want_vectors) V.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 1; j <= n; ++j) {
    const double t = static_cast<double>(j) * pi / Nd;
    const double lambda = -42.0 * N2 + 1008.0 * N2 * (52.0 + 49.0 * std::cos(t) + 4.0 * std::cos(2 * t)) /
                                           (1208.0 + 1191.0 * std::cos(t) + 120.0 * std::cos(2 * t) + std::cos(3 * t));
    out.values.push_back(lambda);
    out.modes.push_back({j, 0, 0});
    if (want_vectors) {
      Eigen::VectorXd u(static_cast<Eigen::Index>(n));
      for (std::size_t k = 1; k <= n; ++k) u[static_cast<Eigen::Index>(k - 1)] = std::sin(t * static_cast<double>(k));
      V.col(static_cast<Eigen::Index>(j - 1)) = u.normalized();
    }
  }
  if (!std::is_sorted(out.values.begin(), out.values.end())) {
    throw NumericalError("closed-form cubic spectrum is not monotone in j");
  }
  if (want_vectors) out.vectors = std::move(V);
  return out;
}

Spectrum analytical_spectrum_quadratic_neumann(std::size_t N, bool want_vectors) {
  if (N < 2) throw ConfigError("closed-form quadratic spectrum needs N >= 2");
  const double Nd = static_cast<double>(N);
  const double N2 = Nd * Nd;
  const double pi = std::numbers::pi;
  Spectrum out;
  out.source = fmt::format("closed form quadratic neumann N={}", N);
  Eigen::MatrixXd V;
  if (want_vectors) V.resize(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  for (std::size_t j = 0; j < N; ++j) {
    const double t = static_cast<double>(j) * pi / Nd;
    const double lambda =
        -20.0 * N2 + 240.0 * N2 * (3.0 + 2.0 * std::cos(t)) / (33.0 + 26.0 * std::cos(t) + std::cos(2 * t));
    out.values.push_back(lambda);
    out.modes.push_back({j, 0, 0});
    if (want_vectors) {
      Eigen::VectorXd u(static_cast<Eigen::Index>(N));
      for (std::size_t k = 1; k <= N; ++k) {
        u[static_cast<Eigen::Index>(k - 1)] = std::cos(t * (static_cast<double>(k) - 0.5));
      }
      V.col(static_cast<Eigen::Index>(j)) = u.normalized();
    }
  }
  if (!std::is_sorted(out.values.begin(), out.values.end())) {
    throw NumericalError("closed-form quadratic spectrum is not monotone in j");
  }
  if (want_vectors) out.vectors = std::move(V);
  return out;
}

std::string_view to_string(DispersionCase c) noexcept {
  return c == DispersionCase::CubicDirichlet ? "cubic-dirichlet" : "quadratic-neumann";
}

DispersionCase parse_dispersion_case(std::string_view text) {
  if (text == "cubic-dirichlet") return DispersionCase::CubicDirichlet;
  if (text == "quadratic-neumann") return DispersionCase::QuadraticNeumann;
  throw ConfigError(fmt::format("unknown dispersion case '{}' (expected cubic-dirichlet or quadratic-neumann)", text));
}

double dispersion_interior(DispersionCase c, double omega_h) {
  check_omega(omega_h);
  return static_cast<double>(interior_ld(c, omega_h));
}

std::size_t boundary_row_count(DispersionCase c) { return c == DispersionCase::CubicDirichlet ? 4 : 2; }

std::vector<double> dispersion_boundary_rows(DispersionCase c, double omega_h) {
  check_omega(omega_h);
  std::vector<double> rows;
  for (std::size_t r = 0; r < boundary_row_count(c); ++r) {
    rows.push_back(static_cast<double>(row_ratio_ld(c, r, omega_h)));
  }
  return rows;
}

double dispersion_boundary_closed_form(DispersionCase c, std::size_t row, double omega_h) {
  check_omega(omega_h);
  return static_cast<double>(closed_boundary_ld(c, row, omega_h));
}

double dispersion_coefficient(DispersionCase c, std::size_t row, int power) {
  if (row > boundary_row_count(c)) {
    throw ConfigError(fmt::format("{} has {} boundary rows (asked for row {})", to_string(c), boundary_row_count(c), row));
  }
  if (power < 0) throw ConfigError("dispersion coefficient power must be >= 0");
  // g(Lambda) = c0 + c1 Lambda + ...; Richardson on Lambda_k = Lambda_0 / 2^k.
  constexpr int levels = 6;
  constexpr long double lambda0 = 0.125L;
  long double table[levels][levels];
  for (int k = 0; k < levels; ++k) {
    const long double L = lambda0 / static_cast<long double>(1 << k);
    const long double value = relation_ld(c, row, std::sqrt(L));
    table[k][0] = power == 0 ? value : (value - L) / std::pow(L, static_cast<long double>(power));
    for (int m = 1; m <= k; ++m) {
      const long double f = static_cast<long double>(1 << m);
      table[k][m] = (f * table[k][m - 1] - table[k - 1][m - 1]) / (f - 1.0L);
    }
  }
  return static_cast<double>(table[levels - 1][levels - 1]);
}

std::vector<DispersionSample> dispersion_samples(DispersionCase c, double omega_h) {
  check_omega(omega_h);
  const double Lambda = omega_h * omega_h;
  std::vector<DispersionSample> out;
  out.push_back({Lambda, dispersion_interior(c, omega_h), "interior"});
  const std::vector<double> rows = dispersion_boundary_rows(c, omega_h);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.push_back({Lambda, rows[r], fmt::format("boundary-{}", r + 1)});
  }
  return out;
}

}  // namespace dciga
