#include "dciga/tensorize.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "dciga/errors.hpp"

namespace dciga {

TensorSystem::TensorSystem(std::vector<MatrixPair> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.empty() || pairs_.size() > 3) {
    throw ConfigError(fmt::format("tensor system needs 1 to 3 axes (got {})", pairs_.size()));
  }
  for (const MatrixPair& p : pairs_) {
    if (p.kind != pairs_.front().kind) {
      throw ConfigError("all axes of a tensor system must share the problem kind");
    }
    if (p.K.rows() != p.M.rows() || p.K.rows() != p.K.cols() || p.M.rows() != p.M.cols()) {
      throw ConfigError("tensor system axis pair has inconsistent matrix shapes");
    }
  }
}

std::vector<std::size_t> TensorSystem::dims() const {
  std::vector<std::size_t> d;
  for (const MatrixPair& p : pairs_) d.push_back(p.dim());
  return d;
}

std::size_t TensorSystem::total_dim() const {
  std::size_t total = 1;
  for (const MatrixPair& p : pairs_) total *= p.dim();
  return total;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  Eigen::MatrixXd out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return out;
}

MatrixPair kron_sum_matrices(const TensorSystem& sys, std::size_t cap) {
  const std::size_t total = sys.total_dim();
  if (total > cap) {
    throw ConfigError(fmt::format(
        "explicit Kronecker assembly of {} unknowns exceeds the cap of {}; use separable_spectrum", total, cap));
  }
  const auto& axes = sys.pairs();
  MatrixPair out;
  out.kind = axes.front().kind;
  out.degree = axes.front().degree;
  out.elements = axes.front().elements;
  out.corrected = std::all_of(axes.begin(), axes.end(), [](const MatrixPair& p) { return p.corrected; });

  // Term a uses K on axis a and M elsewhere.
  out.M = axes.front().M;
  for (std::size_t a = 1; a < axes.size(); ++a) out.M = kron(out.M, axes[a].M);
  out.K = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  for (std::size_t term = 0; term < axes.size(); ++term) {
    Eigen::MatrixXd t = term == 0 ? axes[0].K : axes[0].M;
    for (std::size_t a = 1; a < axes.size(); ++a) t = kron(t, term == a ? axes[a].K : axes[a].M);
    out.K += t;
  }
  return out;
}

Spectrum separable_spectrum(const TensorSystem& sys, std::span<const Spectrum> spectra) {
  const auto& axes = sys.pairs();
  if (spectra.size() != axes.size()) {
    throw ConfigError(fmt::format("need one 1D spectrum per axis ({} axes, {} spectra)", axes.size(), spectra.size()));
  }
  for (std::size_t a = 0; a < axes.size(); ++a) {
    if (spectra[a].size() != axes[a].dim()) {
      throw ConfigError(fmt::format("axis {} spectrum is incomplete ({} of {} eigenvalues)", a,
                                    spectra[a].size(), axes[a].dim()));
    }
  }

  const std::size_t d = axes.size();
  const std::size_t total = sys.total_dim();
  std::vector<MultiIndex> modes;
  std::vector<double> values;
  modes.reserve(total);
  values.reserve(total);

  MultiIndex idx{0, 0, 0};
  for (std::size_t k = 0; k < total; ++k) {
    double sum = 0.0;
    for (std::size_t a = 0; a < d; ++a) sum += spectra[a].values[idx[a]];
    values.push_back(sum);
    modes.push_back(idx);
    // Lexicographic increment, last axis fastest.
    for (std::size_t a = d; a-- > 0;) {
      if (++idx[a] < spectra[a].size()) break;
      idx[a] = 0;
    }
  }

  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Generation order is lexicographic, so a stable sort keeps ties in
  // multi-index order.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  Spectrum out;
  out.values.reserve(total);
  out.modes.reserve(total);
  for (std::size_t k : order) {
    out.values.push_back(values[k]);
    out.modes.push_back(modes[k]);
  }
  out.source = fmt::format("separable {}D", d);
  return out;
}

Eigen::VectorXd separable_eigenvector(std::span<const Spectrum> spectra, const MultiIndex& mode) {
  if (spectra.empty() || spectra.size() > 3) {
    throw ConfigError("separable_eigenvector needs 1 to 3 axis spectra");
  }
  Eigen::VectorXd v;
  for (std::size_t a = 0; a < spectra.size(); ++a) {
    if (!spectra[a].vectors) throw ConfigError(fmt::format("axis {} spectrum carries no eigenvectors", a));
    const Eigen::MatrixXd& V = *spectra[a].vectors;
    if (mode[a] >= static_cast<std::size_t>(V.cols())) {
      throw ConfigError(fmt::format("mode index {} out of range on axis {}", mode[a], a));
    }
    const Eigen::VectorXd col = V.col(static_cast<Eigen::Index>(mode[a]));
    if (a == 0) {
      v = col;
    } else {
      Eigen::VectorXd next(v.size() * col.size());
      for (Eigen::Index i = 0; i < v.size(); ++i) next.segment(i * col.size(), col.size()) = v[i] * col;
      v = std::move(next);
    }
  }
  return v;
}

}  // namespace dciga
