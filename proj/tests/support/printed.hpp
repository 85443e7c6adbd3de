#pragma once

// Printed rational matrices for uniform meshes, transcribed independently of
// the library. K entries are multiplied by 1/h and M entries by h.

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace dciga::testing {

struct PrintedPair {
  Eigen::MatrixXd K;
  Eigen::MatrixXd M;
};

/// Banded symmetric matrix with stencil s[0..m] and an explicit upper-left
/// corner block given row by row (full rows, not just the upper part). The
/// bottom-right corner is the 180-degree rotation of the top-left one.
inline Eigen::MatrixXd printed_banded(std::size_t n, const std::vector<double>& s,
                                      const std::vector<std::vector<double>>& corner, double scale) {
  const auto N = static_cast<Eigen::Index>(n);
  const auto m = static_cast<Eigen::Index>(s.size()) - 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j < N; ++j)
      if (std::abs(i - j) <= m) A(i, j) = s[static_cast<std::size_t>(std::abs(i - j))];
  for (std::size_t i = 0; i < corner.size(); ++i)
    for (std::size_t j = 0; j < corner[i].size(); ++j) {
      const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
      A(a, b) = corner[i][j];
      A(N - 1 - a, N - 1 - b) = corner[i][j];
    }
  return scale * A;
}

/// Cubic, Dirichlet, (N+1) x (N+1).
inline PrintedPair printed_cubic(std::size_t N) {
  const double h = 1.0 / static_cast<double>(N);
  const std::vector<double> ks{2.0 / 3, -1.0 / 8, -1.0 / 5, -1.0 / 120};
  const std::vector<double> ms{151.0 / 315, 397.0 / 1680, 1.0 / 42, 1.0 / 5040};
  const std::vector<std::vector<double>> kc{{3.0 / 2, 3.0 / 80, -1.0 / 4, -1.0 / 80},
                                            {3.0 / 80, 27.0 / 40, -1.0 / 30, -47.0 / 240},
                                            {-1.0 / 4, -1.0 / 30, 2.0 / 3, -1.0 / 8},
                                            {-1.0 / 80, -47.0 / 240, -1.0 / 8, 2.0 / 3}};
  const std::vector<std::vector<double>> mc{{31.0 / 140, 5.0 / 32, 29.0 / 840, 1.0 / 3360},
                                            {5.0 / 32, 183.0 / 560, 283.0 / 1260, 239.0 / 10080},
                                            {29.0 / 840, 283.0 / 1260, 151.0 / 315, 397.0 / 1680},
                                            {1.0 / 3360, 239.0 / 10080, 397.0 / 1680, 151.0 / 315}};
  return {printed_banded(N + 1, ks, kc, 1.0 / h), printed_banded(N + 1, ms, mc, h)};
}

/// Cubic after the infinite-penalty reduction, (N-1) x (N-1).
inline PrintedPair printed_cubic_reduced(std::size_t N) {
  const double h = 1.0 / static_cast<double>(N);
  const std::vector<double> ks{2.0 / 3, -1.0 / 8, -1.0 / 5, -1.0 / 120};
  const std::vector<double> ms{151.0 / 315, 397.0 / 1680, 1.0 / 42, 1.0 / 5040};
  return {printed_banded(N - 1, ks, {{13.0 / 15, -7.0 / 60}, {-7.0 / 60, 2.0 / 3}}, 1.0 / h),
          printed_banded(N - 1, ms, {{41.0 / 90, 17.0 / 72}, {17.0 / 72, 151.0 / 315}}, h)};
}

/// Quadratic, Neumann, (N+2) x (N+2).
inline PrintedPair printed_quadratic(std::size_t N) {
  const double h = 1.0 / static_cast<double>(N);
  const std::vector<double> ks{1.0, -1.0 / 3, -1.0 / 6};
  const std::vector<double> ms{11.0 / 20, 13.0 / 60, 1.0 / 120};
  const std::vector<std::vector<double>> kc{{4.0 / 3, -1.0, -1.0 / 3}, {-1.0, 4.0 / 3, -1.0 / 6}, {-1.0 / 3, -1.0 / 6, 1.0}};
  const std::vector<std::vector<double>> mc{
      {1.0 / 5, 7.0 / 60, 1.0 / 60}, {7.0 / 60, 1.0 / 3, 5.0 / 24}, {1.0 / 60, 5.0 / 24, 11.0 / 20}};
  return {printed_banded(N + 2, ks, kc, 1.0 / h), printed_banded(N + 2, ms, mc, h)};
}

/// Quadratic after the infinite-penalty reduction, N x N.
inline PrintedPair printed_quadratic_reduced(std::size_t N) {
  const double h = 1.0 / static_cast<double>(N);
  const std::vector<double> ks{1.0, -1.0 / 3, -1.0 / 6};
  const std::vector<double> ms{11.0 / 20, 13.0 / 60, 1.0 / 120};
  return {printed_banded(N, ks, {{2.0 / 3, -1.0 / 2}, {-1.0 / 2, 1.0}}, 1.0 / h),
          printed_banded(N, ms, {{23.0 / 30, 9.0 / 40}, {9.0 / 40, 11.0 / 20}}, h)};
}

/// max |A - B| / max |B|.
inline double relative_entry_error(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) return 1e300;
  return (A - B).cwiseAbs().maxCoeff() / B.cwiseAbs().maxCoeff();
}

/// max over nonzero entries of |A_ij - B_ij| / |B_ij|; zero entries of B
/// must be matched to `zero_tol` absolute (relative to max |B|).
inline double entrywise_relative_error(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double zero_tol = 1e-14) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) return 1e300;
  const double scale = B.cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (B(i, j) == 0.0) {
        if (std::abs(A(i, j)) > zero_tol * scale) worst = std::max(worst, std::abs(A(i, j)) / scale);
      } else {
        worst = std::max(worst, std::abs(A(i, j) - B(i, j)) / std::abs(B(i, j)));
      }
    }
  return worst;
}

}  // namespace dciga::testing
