#pragma once

// Reference implementations used only by tests. None of them call into the
// library's evaluation code, so agreement is a genuine cross-check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>
#include <Eigen/QR>

namespace dciga::testing {

// ------------------------------------------------------------------ splines

/// Cox-de Boor recursion with the 0/0 = 0 convention. The last nonempty
/// knot span is closed on the right so the basis is complete at x = 1.
inline double cox_de_boor(const std::vector<double>& t, std::size_t i, int p, double x) {
  if (p == 0) {
    const double a = t[i], b = t[i + 1];
    if (a == b) return 0.0;
    if (x >= a && x < b) return 1.0;
    // right-closed last span
    if (x == b && b == t.back()) {
      return 1.0;
    }
    return 0.0;
  }
  double v = 0.0;
  const double d1 = t[i + static_cast<std::size_t>(p)] - t[i];
  const double d2 = t[i + static_cast<std::size_t>(p) + 1] - t[i + 1];
  if (d1 > 0.0) v += (x - t[i]) / d1 * cox_de_boor(t, i, p - 1, x);
  if (d2 > 0.0) v += (t[i + static_cast<std::size_t>(p) + 1] - x) / d2 * cox_de_boor(t, i + 1, p - 1, x);
  return v;
}

/// r-th derivative through the textbook recursion
/// N'_{i,p} = p/(t_{i+p}-t_i) N_{i,p-1} - p/(t_{i+p+1}-t_{i+1}) N_{i+1,p-1}.
inline double cox_de_boor_derivative(const std::vector<double>& t, std::size_t i, int p, int r, double x) {
  if (r == 0) return cox_de_boor(t, i, p, x);
  if (p == 0) return 0.0;
  double v = 0.0;
  const double d1 = t[i + static_cast<std::size_t>(p)] - t[i];
  const double d2 = t[i + static_cast<std::size_t>(p) + 1] - t[i + 1];
  if (d1 > 0.0) v += p / d1 * cox_de_boor_derivative(t, i, p - 1, r - 1, x);
  if (d2 > 0.0) v -= p / d2 * cox_de_boor_derivative(t, i + 1, p - 1, r - 1, x);
  return v;
}

/// Open knot vector built directly from its definition.
inline std::vector<double> reference_knots(int p, const std::vector<double>& nodes) {
  std::vector<double> t(static_cast<std::size_t>(p), nodes.front());
  t.insert(t.end(), nodes.begin(), nodes.end());
  t.insert(t.end(), static_cast<std::size_t>(p), nodes.back());
  return t;
}

// -------------------------------------------------------------- integration

/// Composite Simpson rule on each knot span, `panels` panels per span.
/// Spline products are polynomials per span, so Simpson converges as h^4;
/// with enough panels the result is accurate to ~1e-14 for our sizes.
inline double simpson(const std::function<double(double)>& f, const std::vector<double>& breaks, int panels) {
  double total = 0.0;
  for (std::size_t e = 0; e + 1 < breaks.size(); ++e) {
    const double a = breaks[e], b = breaks[e + 1];
    if (b <= a) continue;
    const double h = (b - a) / (2.0 * panels);
    // Evaluate just inside the span so right-open evaluation picks this span.
    auto g = [&](double x) { return f(std::clamp(x, a, b - (b - a) * 1e-15)); };
    double s = g(a) + g(b);
    for (int k = 1; k < 2 * panels; ++k) s += (k % 2 == 1 ? 4.0 : 2.0) * g(a + k * h);
    total += s * h / 3.0;
  }
  return total;
}

// ----------------------------------------------------------------- matrices

using MatrixLd = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

/// det(K - lambda M) by partial-pivot LU in long double.
inline long double char_poly(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M, long double lambda) {
  const MatrixLd A = K.cast<long double>() - lambda * M.cast<long double>();
  return A.partialPivLu().determinant();
}

/// Roots of det(K - lambda M) in [lo, hi] by sign-change scanning and
/// bisection. Adequate for well separated generalized eigenvalues.
inline std::vector<double> char_poly_roots(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M, double lo, double hi,
                                           int scan = 200000) {
  std::vector<double> roots;
  long double prev_x = lo;
  long double prev = char_poly(K, M, prev_x);
  for (int s = 1; s <= scan; ++s) {
    const long double x = lo + (hi - lo) * static_cast<long double>(s) / scan;
    const long double v = char_poly(K, M, x);
    if ((prev < 0) != (v < 0)) {
      long double a = prev_x, b = x, fa = prev;
      for (int it = 0; it < 200; ++it) {
        const long double m = 0.5L * (a + b);
        const long double fm = char_poly(K, M, m);
        if ((fa < 0) == (fm < 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(static_cast<double>(0.5L * (a + b)));
    }
    prev_x = x;
    prev = v;
  }
  return roots;
}

/// K_glob[(i,j),(k,l)] = Kx[i,k] My[j,l] + Mx[i,k] Ky[j,l], x index outermost.
inline void naive_kron_sum_2d(const Eigen::MatrixXd& Kx, const Eigen::MatrixXd& Mx, const Eigen::MatrixXd& Ky,
                              const Eigen::MatrixXd& My, Eigen::MatrixXd& K, Eigen::MatrixXd& M) {
  const Eigen::Index nx = Kx.rows(), ny = Ky.rows();
  K.setZero(nx * ny, nx * ny);
  M.setZero(nx * ny, nx * ny);
  for (Eigen::Index i = 0; i < nx; ++i)
    for (Eigen::Index j = 0; j < ny; ++j)
      for (Eigen::Index k = 0; k < nx; ++k)
        for (Eigen::Index l = 0; l < ny; ++l) {
          K(i * ny + j, k * ny + l) = Kx(i, k) * My(j, l) + Mx(i, k) * Ky(j, l);
          M(i * ny + j, k * ny + l) = Mx(i, k) * My(j, l);
        }
}

/// Toeplitz-plus-boundary matrix from the index rules, 1-based as written:
///   G_{j,k} = xi_|j-k| for |j-k| <= m,
///   case 1: A = G - H with H_{j,k} = xi_{j+k} for j <= m-1, k <= m-j,
///   case 2: A = G + H with H_{j,k} = xi_{j+k-1} for j <= m, k <= m-j+1,
/// and H mirrored to the bottom-right corner.
inline Eigen::MatrixXd naive_toeplitz_boundary(const std::vector<double>& xi, std::size_t n, bool case2) {
  const int m = static_cast<int>(xi.size()) - 1;
  const int N = static_cast<int>(n);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
  for (int j = 1; j <= N; ++j)
    for (int k = 1; k <= N; ++k)
      if (std::abs(j - k) <= m) A(j - 1, k - 1) = xi[static_cast<std::size_t>(std::abs(j - k))];
  for (int j = 1; j <= N; ++j) {
    for (int k = 1; k <= N; ++k) {
      double h = 0.0;
      if (!case2 && j <= m - 1 && k <= m - j) h = xi[static_cast<std::size_t>(j + k)];
      if (case2 && j <= m && k <= m - j + 1) h = xi[static_cast<std::size_t>(j + k - 1)];
      if (h == 0.0) continue;
      const double sign = case2 ? 1.0 : -1.0;
      A(j - 1, k - 1) += sign * h;
      A(N - j, N - k) += sign * h;
    }
  }
  return A;
}

// --------------------------------------------------------------- generators

/// Deterministic source of random test inputs.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  /// Strictly ascending breakpoints 0 = x_0 < ... < x_N = 1 with element
  /// sizes bounded away from zero (ratio <= 10).
  std::vector<double> grid(std::size_t elements) {
    std::vector<double> w(elements);
    for (double& v : w) v = uniform(0.1, 1.0);
    double total = 0.0;
    for (double v : w) total += v;
    std::vector<double> nodes{0.0};
    double acc = 0.0;
    for (std::size_t e = 0; e + 1 < elements; ++e) {
      acc += w[e] / total;
      nodes.push_back(acc);
    }
    nodes.push_back(1.0);
    return nodes;
  }

  /// Symmetric positive definite matrix with eigenvalues in [lo, hi].
  Eigen::MatrixXd spd(Eigen::Index n, double lo = 0.5, double hi = 3.0) {
    Eigen::MatrixXd Q = random_matrix(n, n);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Q);
    const Eigen::MatrixXd O = qr.householderQ();
    Eigen::VectorXd d(n);
    for (Eigen::Index i = 0; i < n; ++i) d[i] = uniform(lo, hi);
    Eigen::MatrixXd A = O * d.asDiagonal() * O.transpose();
    return 0.5 * (A + A.transpose());
  }

  Eigen::MatrixXd symmetric(Eigen::Index n) {
    Eigen::MatrixXd A = random_matrix(n, n);
    return 0.5 * (A + A.transpose());
  }

  Eigen::MatrixXd random_matrix(Eigen::Index r, Eigen::Index c) {
    Eigen::MatrixXd A(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) A(i, j) = uniform(-1.0, 1.0);
    return A;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace dciga::testing
