#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dciga/assembly.hpp"

namespace dciga {

/// Per-axis mode indices (0-based) of a tensor-product eigenpair. Unused
/// trailing axes are zero.
using MultiIndex = std::array<std::size_t, 3>;

/// Ascending eigenvalues, optionally with M-orthonormal column eigenvectors.
struct Spectrum {
  std::vector<double> values;
  std::optional<Eigen::MatrixXd> vectors;
  std::vector<MultiIndex> modes;  ///< filled by separable_spectrum, empty otherwise
  std::string source;             ///< free-form descriptor of the originating pair

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

/// Full spectrum of K u = lambda M u for symmetric K and SPD M.
///
/// M = L L^T (Cholesky), C = L^-1 K L^-T is tridiagonalized by Householder
/// similarity and diagonalized by implicit-shift QR; eigenvectors are
/// L^-T times those of C. Arithmetic runs in extended precision
/// (long double) and is rounded to double on output.
///
/// Eigenvector signs are fixed so the component of largest magnitude is
/// positive (first such component on ties).
Spectrum gevp(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M, bool want_vectors);
Spectrum gevp(const MatrixPair& pair, bool want_vectors);

/// ||K u - lambda M u|| / ((||K||_F + |lambda| ||M||_F) ||u||)
double rayleigh_residual(const MatrixPair& pair, double lambda, const Eigen::VectorXd& u);
double rayleigh_residual(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M, double lambda,
                         const Eigen::VectorXd& u);

}  // namespace dciga
