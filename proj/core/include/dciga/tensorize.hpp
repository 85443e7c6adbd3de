#pragma once

// Kronecker-sum eigenproblems on [0,1]^d from 1D pairs (x outermost):
//   2D: K = Kx (x) My + Mx (x) Ky,                  M = Mx (x) My
//   3D: K = Kx (x) My (x) Mz + Mx (x) Ky (x) Mz + Mx (x) My (x) Kz,  M = Mx (x) My (x) Mz
// The generalized spectrum is the set of sums of per-axis 1D eigenvalues,
// which is how production spectra are computed. Explicit global matrices are
// for verification at small sizes.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "dciga/assembly.hpp"
#include "dciga/eigensolve.hpp"

namespace dciga {

inline constexpr std::size_t kDefaultKroneckerCap = 4096;

class TensorSystem {
 public:
  /// One pair per axis, 1 <= d <= 3, all of the same problem kind.
  explicit TensorSystem(std::vector<MatrixPair> pairs);

  [[nodiscard]] std::size_t dimension_count() const noexcept { return pairs_.size(); }
  [[nodiscard]] const std::vector<MatrixPair>& pairs() const noexcept { return pairs_; }
  [[nodiscard]] std::vector<std::size_t> dims() const;
  [[nodiscard]] std::size_t total_dim() const;

 private:
  std::vector<MatrixPair> pairs_;
};

/// Explicit global pair. Throws ConfigError above `cap` total unknowns.
MatrixPair kron_sum_matrices(const TensorSystem& sys, std::size_t cap = kDefaultKroneckerCap);

/// Combined spectrum from complete per-axis spectra. Values ascending, exact
/// ties ordered by multi-index; `modes` records the per-axis indices.
/// Eigenvectors are not materialized (see separable_eigenvector).
Spectrum separable_spectrum(const TensorSystem& sys, std::span<const Spectrum> spectra);

/// Kronecker product of the per-axis eigenvectors selected by `mode`.
Eigen::VectorXd separable_eigenvector(std::span<const Spectrum> spectra, const MultiIndex& mode);

/// Dense Kronecker product A (x) B.
Eigen::MatrixXd kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

}  // namespace dciga
