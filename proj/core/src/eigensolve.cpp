#include "dciga/eigensolve.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "dciga/errors.hpp"

namespace dciga {

namespace {

using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

void require_symmetric(const Eigen::MatrixXd& A, const char* name) {
  if (A.rows() != A.cols()) {
    throw ConfigError(fmt::format("{} is not square ({}x{})", name, A.rows(), A.cols()));
  }
  const double scale = std::max(A.cwiseAbs().maxCoeff(), 1e-300);
  const double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    throw ConfigError(fmt::format("{} is not symmetric (max |A - A^T| = {:.3e})", name, asym));
  }
}

}  // namespace

Spectrum gevp(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M, bool want_vectors) {
  require_symmetric(K, "stiffness matrix");
  require_symmetric(M, "mass matrix");
  if (K.rows() != M.rows()) {
    throw ConfigError(fmt::format("dimension mismatch: K is {}, M is {}", K.rows(), M.rows()));
  }
  const Eigen::Index n = K.rows();
  Spectrum out;
  if (n == 0) return out;

  const MatrixXld Kl = K.cast<long double>();
  const MatrixXld Ml = M.cast<long double>();
  Eigen::LLT<MatrixXld> llt(Ml);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("ill-posed mass matrix: Cholesky factorization failed");
  }
  // C = L^-1 K L^-T
  MatrixXld C = llt.matrixL().solve(Kl);
  C = llt.matrixL().solve(C.transpose().eval());
  C = (0.5L * (C + C.transpose())).eval();

  Eigen::SelfAdjointEigenSolver<MatrixXld> eig(
      C, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("symmetric eigenvalue iteration did not converge");
  }

  out.values.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out.values[i] = static_cast<double>(eig.eigenvalues()[i]);

  if (want_vectors) {
    MatrixXld V = llt.matrixU().solve(eig.eigenvectors());
    for (Eigen::Index j = 0; j < n; ++j) {
      Eigen::Index imax = 0;
      long double best = -1.0L;
      for (Eigen::Index i = 0; i < n; ++i) {
        const long double a = std::abs(V(i, j));
        if (a > best * (1.0L + 1e-12L)) {
          best = a;
          imax = i;
        }
      }
      if (V(imax, j) < 0.0L) V.col(j) = -V.col(j);
    }
    out.vectors = V.cast<double>();
  }
  return out;
}

Spectrum gevp(const MatrixPair& pair, bool want_vectors) {
  Spectrum s = gevp(pair.K, pair.M, want_vectors);
  s.source = fmt::format("{} p={} N={} {}", to_string(pair.kind), pair.degree, pair.elements,
                         pair.corrected ? "corrected" : "standard");
  return s;
}

double rayleigh_residual(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M, double lambda,
                         const Eigen::VectorXd& u) {
  if (K.rows() != u.size() || M.rows() != u.size()) {
    throw ConfigError(fmt::format("vector length {} does not match matrix dimension {}", u.size(), K.rows()));
  }
  const double unorm = u.norm();
  if (unorm == 0.0) throw ConfigError("rayleigh_residual needs a nonzero vector");
  const double denom = (K.norm() + std::abs(lambda) * M.norm()) * unorm;
  return (K * u - lambda * (M * u)).norm() / denom;
}

double rayleigh_residual(const MatrixPair& pair, double lambda, const Eigen::VectorXd& u) {
  return rayleigh_residual(pair.K, pair.M, lambda, u);
}

}  // namespace dciga
