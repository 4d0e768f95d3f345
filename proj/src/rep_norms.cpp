#include "workbench/rep_norms.hpp"

#include "workbench/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace workbench {

namespace {

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Index position_of(const std::vector<Index>& list, Index x) {
  return static_cast<Index>(std::find(list.begin(), list.end(), x) - list.begin());
}

}  // namespace

WeightedL2Basis weighted_l2_basis(const HaarSystem& haar, Index u) {
  const FiniteGroupoid& g = haar.groupoid();
  if (u >= g.unit_count()) throw DomainError("unknown unit index " + std::to_string(u));
  WeightedL2Basis basis;
  basis.unit = u;
  for (Index x : g.arrows_with_source(u)) {
    const double lambda = haar.weight(g.inverse(x));
    basis.arrows.push_back(x);
    basis.weights.push_back(lambda);
    basis.scale.push_back(1.0 / std::sqrt(lambda));
  }
  return basis;
}

RepMatrix regular_rep_matrix(const GroupoidFunction& a, const HaarSystem& haar, Index u) {
  if (a.groupoid_ptr() != haar.groupoid_ptr()) {
    throw DomainError("regular_rep_matrix: function and Haar system live on different groupoids");
  }
  const FiniteGroupoid& g = haar.groupoid();
  WeightedL2Basis basis = weighted_l2_basis(haar, u);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const Index x = basis.arrows[col];
    const Index x_inv = g.inverse(x);
    for (Eigen::Index row = 0; row < dim; ++row) {
      const Index xp = basis.arrows[row];
      const Complex coeff = a[g.compose(xp, x_inv)];
      if (coeff == 0.0) continue;
      m(row, col) = coeff * std::sqrt(haar.rho(g.range(x)) * haar.rho(g.range(xp)));
    }
  }
  return RepMatrix{std::move(m), std::move(basis)};
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const Matrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double cstar_norm(const GroupoidFunction& a, const HaarSystem& haar) {
  double best = 0.0;
  for (Index u = 0; u < haar.groupoid().unit_count(); ++u) {
    best = std::max(best, operator_norm(regular_rep_matrix(a, haar, u).matrix));
  }
  return best;
}

bool is_self_adjoint(const GroupoidFunction& a, const HaarSystem& haar) {
  const double defect = cstar_norm(a - involute(a), haar);
  return defect <= kSpectralTol * (1.0 + cstar_norm(a, haar));
}

double min_eigenvalue(const GroupoidFunction& a, const HaarSystem& haar) {
  double lowest = std::numeric_limits<double>::infinity();
  for (Index u = 0; u < haar.groupoid().unit_count(); ++u) {
    lowest = std::min(lowest, hermitian_eigenvalues(regular_rep_matrix(a, haar, u).matrix).minCoeff());
  }
  return lowest;
}

bool positivity_check(const GroupoidFunction& a, const HaarSystem& haar) {
  if (!is_self_adjoint(a, haar)) return false;
  return min_eigenvalue(a, haar) >= -kSpectralTol * (1.0 + cstar_norm(a, haar));
}

std::vector<double> spectrum(const GroupoidFunction& a, const HaarSystem& haar) {
  if (!is_self_adjoint(a, haar)) throw DomainError("spectrum: element is not self-adjoint");
  std::vector<double> out;
  for (Index u = 0; u < haar.groupoid().unit_count(); ++u) {
    const Eigen::VectorXd ev = hermitian_eigenvalues(regular_rep_matrix(a, haar, u).matrix);
    out.insert(out.end(), ev.data(), ev.data() + ev.size());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

Matrix fiber_rep_matrix(const GradedGroupoid& graded, const GroupoidFunction& a_e, Index u,
                        const GroupElement& gamma) {
  const IdentityFiber& fiber = graded.identity_fiber();
  if (a_e.groupoid_ptr() != fiber.groupoid) {
    throw DomainError("fiber_rep_matrix: function is not on the identity fiber");
  }
  const FiniteGroupoid& g = graded.groupoid();
  const HaarSystem& haar = graded.haar();
  const GroupoidFunction a = include_i(fiber, a_e);
  const std::vector<Index> arrows = graded.fiber_at_source(gamma, u);
  const auto dim = static_cast<Eigen::Index>(arrows.size());

  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const Index x = arrows[col];
    const double lambda_x = haar.weight(g.inverse(x));
    for (Eigen::Index row = 0; row < dim; ++row) {
      const Index xp = arrows[row];
      Complex sum = 0.0;
      for (Index y : g.arrows_with_range(g.range(xp))) {
        if (g.compose(g.inverse(y), xp) == x) sum += a[y] * haar.weight(y);
      }
      const double lambda_xp = haar.weight(g.inverse(xp));
      m(row, col) = sum * std::sqrt(lambda_xp / lambda_x);
    }
  }
  return m;
}

UDecomposition decompose_rep_U(const GradedGroupoid& graded, const GroupoidFunction& a_e, Index u) {
  const IdentityFiber& fiber = graded.identity_fiber();
  const RepMatrix full = regular_rep_matrix(include_i(fiber, a_e), graded.haar(), u);

  UDecomposition out;
  out.unit = u;
  std::vector<Index> order;  // positions in the Gu basis, regrouped by degree
  for (const GroupElement& gamma : graded.image()) {
    std::vector<Index> arrows = graded.fiber_at_source(gamma, u);
    if (arrows.empty()) continue;
    for (Index x : arrows) order.push_back(position_of(full.basis.arrows, x));
    out.blocks.push_back(FiberBlock{gamma, arrows, fiber_rep_matrix(graded, a_e, u, gamma)});
  }

  const auto dim = static_cast<Eigen::Index>(order.size());
  Matrix permutation = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) permutation(i, static_cast<Eigen::Index>(order[i])) = 1.0;
  out.conjugated = permutation * full.matrix * permutation.adjoint();

  Matrix block_diagonal = Matrix::Zero(dim, dim);
  Eigen::Index offset = 0;
  for (const FiberBlock& b : out.blocks) {
    block_diagonal.block(offset, offset, b.block.rows(), b.block.cols()) = b.block;
    offset += b.block.rows();
  }
  out.deviation = relative_deviation(out.conjugated, block_diagonal);
  out.holds = out.deviation <= kAlgebraicTol;
  return out;
}

Index canonical_translator(const GradedGroupoid& graded, Index u, const GroupElement& gamma) {
  if (gamma == graded.group().identity()) return graded.groupoid().unit_arrow(u);
  const std::vector<Index> arrows = graded.fiber_at_source(gamma, u);
  if (arrows.empty()) {
    throw DomainError("empty fiber at (u = " + graded.groupoid().unit_id(u) +
                      ", gamma = " + to_string(gamma) + ")");
  }
  return arrows.front();
}

VTranslation translate_rep_V(const GradedGroupoid& graded, const GroupoidFunction& a_e, Index u,
                             const GroupElement& gamma) {
  return translate_rep_V(graded, a_e, u, gamma, canonical_translator(graded, u, gamma));
}

VTranslation translate_rep_V(const GradedGroupoid& graded, const GroupoidFunction& a_e, Index u,
                             const GroupElement& gamma, Index z) {
  const FiniteGroupoid& g = graded.groupoid();
  const HaarSystem& haar = graded.haar();
  const IdentityFiber& fiber = graded.identity_fiber();
  const std::vector<Index> source_arrows = graded.fiber_at_source(gamma, u);
  if (source_arrows.empty()) {
    throw DomainError("empty fiber at (u = " + g.unit_id(u) + ", gamma = " + to_string(gamma) + ")");
  }
  if (g.source(z) != u || graded.degree(z) != gamma) {
    throw DomainError("translator " + g.arrow_id(z) + " is not in (G_gamma)u");
  }

  VTranslation out;
  out.unit = u;
  out.degree = gamma;
  out.translator = z;
  out.target_unit = g.range(z);

  const RepMatrix target = regular_rep_matrix(a_e, fiber.haar, out.target_unit);
  const auto rows = static_cast<Eigen::Index>(target.basis.size());
  const auto cols = static_cast<Eigen::Index>(source_arrows.size());

  // (V h)(n) = h(n z) sqrt(lambda_u(nz) / lambda_v(n)); in the orthonormal
  // bases the entry for (n, x = nz) is that factor times
  // sqrt(lambda_v(n) / lambda_u(x)).
  out.unitary = Matrix::Zero(rows, cols);
  for (Eigen::Index row = 0; row < rows; ++row) {
    const Index n = fiber.to_ambient[target.basis.arrows[row]];
    const Index x = g.compose(n, z);
    const Eigen::Index col = static_cast<Eigen::Index>(position_of(source_arrows, x));
    if (col == cols) throw DomainError("translation by z does not land in (G_gamma)u");
    const double lambda_x = haar.weight(g.inverse(x));
    const double lambda_n = target.basis.weights[row];
    out.unitary(row, col) = std::sqrt(lambda_x / lambda_n) * std::sqrt(lambda_n / lambda_x);
  }

  const Matrix block = fiber_rep_matrix(graded, a_e, u, gamma);
  out.conjugated = out.unitary * block * out.unitary.adjoint();
  out.target = target.matrix;
  if (rows == cols) {
    out.unitarity_defect = std::max(
        max_abs(Matrix(out.unitary * out.unitary.adjoint() - Matrix::Identity(rows, rows))),
        max_abs(Matrix(out.unitary.adjoint() * out.unitary - Matrix::Identity(cols, cols))));
  } else {
    out.unitarity_defect = 1.0;
  }
  out.deviation = relative_deviation(out.conjugated, out.target);
  out.holds = out.deviation <= kAlgebraicTol && out.unitarity_defect <= kAlgebraicTol;
  return out;
}

NormChain norm_chain(const GradedGroupoid& graded, const GroupoidFunction& f) {
  const IdentityFiber& fiber = graded.identity_fiber();
  NormChain chain;
  chain.ambient = cstar_norm(include_i(fiber, f), graded.haar());
  for (Index u = 0; u < graded.groupoid().unit_count(); ++u) {
    for (const GroupElement& gamma : graded.image()) {
      if (graded.fiber_at_source(gamma, u).empty()) continue;
      chain.blocks = std::max(chain.blocks, operator_norm(fiber_rep_matrix(graded, f, u, gamma)));
    }
  }
  chain.identity_fiber = cstar_norm(f, fiber.haar);
  return chain;
}

}  // namespace workbench
