#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dciga/assembly.hpp"
#include "dciga/eigensolve.hpp"
#include "dciga/errors.hpp"
#include "dciga/tensorize.hpp"
#include "support/oracles.hpp"

using namespace dciga;
using dciga::testing::Generator;

namespace {

MatrixPair pair_of(Eigen::MatrixXd K, Eigen::MatrixXd M, ProblemKind kind = ProblemKind::Dirichlet) {
  MatrixPair p;
  p.K = std::move(K);
  p.M = std::move(M);
  p.kind = kind;
  return p;
}

Spectrum values_only(std::vector<double> v) {
  Spectrum s;
  s.values = std::move(v);
  return s;
}

}  // namespace

TEST(TensorSystem, Validation) {
  EXPECT_THROW(TensorSystem({}), ConfigError);
  const MatrixPair a = pair_of(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2));
  EXPECT_THROW(TensorSystem({a, a, a, a}), ConfigError);
  const MatrixPair n = pair_of(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2), ProblemKind::Neumann);
  EXPECT_THROW(TensorSystem({a, n}), ConfigError);
  const TensorSystem t({a, pair_of(Eigen::MatrixXd::Identity(3, 3), Eigen::MatrixXd::Identity(3, 3))});
  EXPECT_EQ(t.total_dim(), 6u);
  EXPECT_EQ(t.dims(), (std::vector<std::size_t>{2, 3}));
}

TEST(KronSum, IdentityPairs) {
  const MatrixPair a = pair_of(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2));
  const MatrixPair g = kron_sum_matrices(TensorSystem({a, a}));
  EXPECT_EQ((g.K - 2.0 * Eigen::MatrixXd::Identity(4, 4)).norm(), 0.0);
  EXPECT_EQ((g.M - Eigen::MatrixXd::Identity(4, 4)).norm(), 0.0);
}

TEST(KronSum, MatchesNaiveQuadrupleLoop) {
  Generator gen(5);
  const MatrixPair x = pair_of(gen.symmetric(2), gen.spd(2));
  const MatrixPair y = pair_of(gen.symmetric(3), gen.spd(3));
  const MatrixPair g = kron_sum_matrices(TensorSystem({x, y}));
  Eigen::MatrixXd K, M;
  dciga::testing::naive_kron_sum_2d(x.K, x.M, y.K, y.M, K, M);
  EXPECT_LE((g.K - K).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((g.M - M).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(KronSum, ThreeAxesAndCap) {
  Generator gen(6);
  const MatrixPair x = pair_of(gen.symmetric(2), gen.spd(2));
  const MatrixPair y = pair_of(gen.symmetric(2), gen.spd(2));
  const MatrixPair z = pair_of(gen.symmetric(3), gen.spd(3));
  const MatrixPair g = kron_sum_matrices(TensorSystem({x, y, z}));
  const Eigen::MatrixXd K = kron(kron(x.K, y.M), z.M) + kron(kron(x.M, y.K), z.M) + kron(kron(x.M, y.M), z.K);
  EXPECT_LE((g.K - K).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(kron_sum_matrices(TensorSystem({x, y, z}), 8), ConfigError);
}

TEST(SeparableSpectrum, PairwiseSums) {
  const MatrixPair a = pair_of(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2));
  const std::vector<Spectrum> s{values_only({1.0, 4.0}), values_only({1.0, 4.0})};
  const Spectrum c = separable_spectrum(TensorSystem({a, a}), s);
  EXPECT_EQ(c.values, (std::vector<double>{2.0, 5.0, 5.0, 8.0}));
  // Degenerate pair keeps both orderings, lexicographic tie-break.
  EXPECT_EQ(c.modes[1], (MultiIndex{0, 1, 0}));
  EXPECT_EQ(c.modes[2], (MultiIndex{1, 0, 0}));
}

TEST(SeparableSpectrum, RejectsIncompleteSpectra) {
  const MatrixPair a = pair_of(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2));
  const std::vector<Spectrum> s{values_only({1.0, 4.0}), values_only({1.0})};
  EXPECT_THROW(separable_spectrum(TensorSystem({a, a}), s), ConfigError);
}

TEST(SeparableSpectrum, DenseOracleCubicN4) {
  const SplineSpace sp(3, BreakpointGrid::uniform(4));
  const MatrixPair p = assemble_standard(sp, ProblemKind::Dirichlet);
  const TensorSystem t({p, p});
  const Spectrum s1 = gevp(p, false);
  const std::vector<Spectrum> per{s1, s1};
  const Spectrum sep = separable_spectrum(t, per);
  const Spectrum dense = gevp(kron_sum_matrices(t), false);
  ASSERT_EQ(sep.size(), dense.size());
  for (std::size_t i = 0; i < sep.size(); ++i) EXPECT_NEAR(sep.values[i], dense.values[i], 1e-9 * dense.values[i]);
}

TEST(SeparableEigenvector, IsEigenvectorOfGlobalPair) {
  const SplineSpace sp(3, BreakpointGrid::uniform(5));
  const MatrixPair p = assemble_dc(sp, PenaltyConfig::defaults(ProblemKind::Dirichlet, 3));
  const TensorSystem t({p, p});
  const std::vector<Spectrum> per{gevp(p, true), gevp(p, true)};
  const Spectrum sep = separable_spectrum(t, per);
  const MatrixPair g = kron_sum_matrices(t);
  for (std::size_t k : {0u, 3u, 10u}) {
    const Eigen::VectorXd u = separable_eigenvector(per, sep.modes[k]);
    EXPECT_LE(rayleigh_residual(g, sep.values[k], u), 1e-12);
  }
}

// ------------------------------------------------------------- properties

TEST(TensorProperties, SeparabilityOnRandomPairs) {
  Generator gen(202);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = gen.integer(2, 3);
    std::vector<MatrixPair> pairs;
    std::vector<Spectrum> spectra;
    for (int a = 0; a < d; ++a) {
      const Eigen::Index n = gen.integer(1, 4);
      pairs.push_back(pair_of(gen.spd(n, 0.3, 4.0), gen.spd(n, 0.5, 2.0)));
      spectra.push_back(gevp(pairs.back(), false));
    }
    const TensorSystem t(pairs);
    const Spectrum sep = separable_spectrum(t, spectra);
    const Spectrum dense = gevp(kron_sum_matrices(t), false);
    ASSERT_EQ(sep.size(), dense.size());
    for (std::size_t i = 0; i < sep.size(); ++i) {
      EXPECT_NEAR(sep.values[i], dense.values[i], 1e-9 * std::max(1.0, std::abs(dense.values[i])));
    }
  }
}

TEST(TensorProperties, MultiplicityIsPreserved) {
  const SplineSpace sp(3, BreakpointGrid::uniform(6));
  const MatrixPair p = assemble_standard(sp, ProblemKind::Dirichlet);
  const Spectrum s1 = gevp(p, false);
  const std::vector<Spectrum> per{s1, s1};
  const Spectrum sep = separable_spectrum(TensorSystem({p, p}), per);
  std::vector<MultiIndex> modes = sep.modes;
  for (const MultiIndex& m : sep.modes) {
    if (m[0] == m[1]) continue;
    const MultiIndex swapped{m[1], m[0], 0};
    EXPECT_NE(std::find(modes.begin(), modes.end(), swapped), modes.end());
  }
  EXPECT_TRUE(std::is_sorted(sep.values.begin(), sep.values.end()));
}
