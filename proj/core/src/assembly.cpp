#include "dciga/assembly.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>
#include <fmt/format.h>

#include "dciga/errors.hpp"

namespace dciga {

std::string_view to_string(ProblemKind kind) noexcept {
  return kind == ProblemKind::Dirichlet ? "dirichlet" : "neumann";
}

ProblemKind parse_problem_kind(std::string_view text) {
  if (text == "dirichlet" || text == "Dirichlet") return ProblemKind::Dirichlet;
  if (text == "neumann" || text == "Neumann") return ProblemKind::Neumann;
  throw ConfigError(fmt::format("unknown problem kind '{}' (expected dirichlet or neumann)", text));
}

int alpha_order(int degree) {
  if (degree < 1) throw ConfigError(fmt::format("degree must be >= 1 (got {})", degree));
  return (degree - 1) / 2;
}

int beta_order(int degree) {
  if (degree < 1) throw ConfigError(fmt::format("degree must be >= 1 (got {})", degree));
  return degree / 2;
}

int penalty_terms(ProblemKind kind, int degree) {
  return kind == ProblemKind::Dirichlet ? alpha_order(degree) : beta_order(degree);
}

int penalty_derivative_order(ProblemKind kind, int ell) {
  return kind == ProblemKind::Dirichlet ? 2 * ell : 2 * ell - 1;
}

PenaltyConfig PenaltyConfig::defaults(ProblemKind kind, int degree) {
  const auto terms = static_cast<std::size_t>(penalty_terms(kind, degree));
  return PenaltyConfig{kind, std::vector<double>(terms, 1.0), std::vector<double>(terms, 1.0), false};
}

QuadratureRule default_rule(const SplineSpace& space) {
  return gauss_legendre(space.degree() + 1);
}

namespace {

void require_assemblable(const SplineSpace& space) {
  if (space.degree() < 1) {
    throw ConfigError(fmt::format("assembly needs degree >= 1 (got {})", space.degree()));
  }
}

// Index range [offset, offset + dim) of retained basis functions.
struct Retained {
  std::size_t offset;
  std::size_t dim;
};

Retained retained_range(const SplineSpace& space, ProblemKind kind) {
  const std::size_t n = space.dimension();
  if (kind == ProblemKind::Neumann) return {0, n};
  if (n < 3) {
    throw ConfigError(fmt::format("Dirichlet problem needs at least 3 basis functions (have {})", n));
  }
  return {1, n - 2};
}

void check_mass(const Eigen::MatrixXd& M) {
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("assembled mass matrix is not positive definite");
  }
}

}  // namespace

MatrixPair assemble_full(const SplineSpace& space, const QuadratureRule& rule) {
  require_assemblable(space);
  const int p = space.degree();
  const std::size_t n = space.dimension();
  const auto nodes = space.grid().nodes();

  MatrixPair pair;
  pair.K = Eigen::MatrixXd::Zero(n, n);
  pair.M = Eigen::MatrixXd::Zero(n, n);
  pair.degree = p;
  pair.elements = space.elements();
  pair.kind = ProblemKind::Neumann;

  Eigen::MatrixXd Ke(p + 1, p + 1), Me(p + 1, p + 1);
  for (std::size_t e = 0; e < space.elements(); ++e) {
    const QuadratureRule local = map_to_element(rule, nodes[e], nodes[e + 1]);
    Ke.setZero();
    Me.setZero();
    for (std::size_t g = 0; g < local.size(); ++g) {
      const Eigen::MatrixXd ders = eval_basis_derivatives(space, e, local.points[g], 1);
      const double w = local.weights[g];
      Ke.noalias() += w * ders.row(1).transpose() * ders.row(1);
      Me.noalias() += w * ders.row(0).transpose() * ders.row(0);
    }
    pair.K.block(e, e, p + 1, p + 1) += Ke;
    pair.M.block(e, e, p + 1, p + 1) += Me;
  }
  // Exact symmetry regardless of rounding in the element products.
  pair.K = 0.5 * (pair.K + pair.K.transpose()).eval();
  pair.M = 0.5 * (pair.M + pair.M.transpose()).eval();
  return pair;
}

namespace {

MatrixPair restrict_to_retained(const SplineSpace& space, ProblemKind kind, const QuadratureRule& rule) {
  MatrixPair full = assemble_full(space, rule);
  const Retained r = retained_range(space, kind);
  MatrixPair pair;
  pair.K = full.K.block(r.offset, r.offset, r.dim, r.dim);
  pair.M = full.M.block(r.offset, r.offset, r.dim, r.dim);
  pair.degree = full.degree;
  pair.elements = full.elements;
  pair.kind = kind;
  return pair;
}

}  // namespace

MatrixPair assemble_standard(const SplineSpace& space, ProblemKind kind, const QuadratureRule& rule) {
  MatrixPair pair = restrict_to_retained(space, kind, rule);
  check_mass(pair.M);
  return pair;
}

MatrixPair assemble_standard(const SplineSpace& space, ProblemKind kind) {
  return assemble_standard(space, kind, default_rule(space));
}

Eigen::MatrixXd assemble_penalty(const SplineSpace& space, ProblemKind kind, int ell) {
  require_assemblable(space);
  if (ell < 1) throw ConfigError(fmt::format("penalty index must be >= 1 (got {})", ell));
  const int order = penalty_derivative_order(kind, ell);
  if (order > space.degree()) {
    throw ConfigError(fmt::format("penalty derivative order {} exceeds degree {}", order, space.degree()));
  }
  const BoundaryRows rows = boundary_derivative_row(space, order);
  const Retained r = retained_range(space, kind);
  const Eigen::VectorXd g0 = rows.left.segment(r.offset, r.dim);
  const Eigen::VectorXd g1 = rows.right.segment(r.offset, r.dim);
  return g0 * g0.transpose() + g1 * g1.transpose();
}

MatrixPair assemble_dc(const SplineSpace& space, const PenaltyConfig& cfg, const QuadratureRule& rule) {
  if (cfg.infinite) {
    throw ConfigError("infinite penalty is handled by constraint reduction, not weak assembly");
  }
  const int terms = penalty_terms(cfg.kind, space.degree());
  if (cfg.eta_a.size() != static_cast<std::size_t>(terms) ||
      cfg.eta_b.size() != static_cast<std::size_t>(terms)) {
    throw ConfigError(fmt::format(
        "{} problem with degree {} takes {} penalty coefficients per list (got eta_a: {}, eta_b: {})",
        to_string(cfg.kind), space.degree(), terms, cfg.eta_a.size(), cfg.eta_b.size()));
  }

  MatrixPair pair = restrict_to_retained(space, cfg.kind, rule);
  const double h = space.grid().h_max();
  const double pi2 = std::numbers::pi * std::numbers::pi;
  // (stiffness, mass) exponents: Dirichlet (6l-3, 6l-1), Neumann (6l-5, 6l-3).
  const int shift = cfg.kind == ProblemKind::Dirichlet ? 0 : -2;
  for (int ell = 1; ell <= terms; ++ell) {
    const Eigen::MatrixXd S = assemble_penalty(space, cfg.kind, ell);
    const double scale_a = std::pow(h, 6 * ell - 3 + shift);
    const double scale_b = std::pow(h, 6 * ell - 1 + shift);
    pair.K += (cfg.eta_a[ell - 1] * pi2 * scale_a) * S;
    pair.M += (cfg.eta_b[ell - 1] * scale_b) * S;
  }
  pair.corrected = true;
  check_mass(pair.M);
  return pair;
}

MatrixPair assemble_dc(const SplineSpace& space, const PenaltyConfig& cfg) {
  return assemble_dc(space, cfg, default_rule(space));
}

}  // namespace dciga
