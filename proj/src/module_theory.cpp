#include "workbench/module_theory.hpp"

#include "workbench/error.hpp"
#include "workbench/rep_norms.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace workbench {

ModuleElement module_action(const GradedGroupoid& graded, const ModuleElement& a,
                            const GroupoidFunction& g) {
  const IdentityFiber& fiber = graded.identity_fiber();
  if (a.groupoid_ptr() != graded.groupoid_ptr()) throw DomainError("module_action: a is not on G");
  if (g.groupoid_ptr() != fiber.groupoid) throw DomainError("module_action: g is not on G_e");
  const FiniteGroupoid& G = graded.groupoid();
  const FiniteGroupoid& Ge = *fiber.groupoid;

  ModuleElement out = ModuleElement::zero(graded.groupoid_ptr());
  for (Index x = 0; x < G.arrow_count(); ++x) {
    Complex sum = 0.0;
    for (Index n : Ge.arrows_with_range(G.source(x))) {
      sum += a[G.compose(x, fiber.to_ambient[n])] * g[Ge.inverse(n)] * fiber.haar.weight(n);
    }
    out[x] = sum;
  }
  return out;
}

GroupoidFunction module_inner_product(const GradedGroupoid& graded, const ModuleElement& a,
                                      const ModuleElement& b) {
  const HaarSystem& haar = graded.haar();
  GroupoidFunction total = GroupoidFunction::zero(graded.groupoid_ptr());
  for (const GroupElement& gamma : graded.image()) {
    total += convolve(involute(graded_component(graded, a, gamma)),
                      graded_component(graded, b, gamma), haar);
  }
  return restrict_q(graded.identity_fiber(), total);
}

double module_norm(const GradedGroupoid& graded, const ModuleElement& a) {
  const double n = cstar_norm(module_inner_product(graded, a, a), graded.identity_fiber().haar);
  return std::sqrt(n);
}

// ---------------------------------------------------------------------------

InducedSpace::InducedSpace(const GradedGroupoid& graded) : graded_(graded) {
  const FiniteGroupoid& g = graded_.groupoid();
  const IdentityFiber& fiber = graded_.identity_fiber();
  const Index n = g.arrow_count();

  std::vector<GroupoidFunction> inner;
  inner.reserve(n * n);
  std::vector<bool> nonzero(n * n, false);
  for (Index x = 0; x < n; ++x) {
    const auto dx = GroupoidFunction::delta(graded_.groupoid_ptr(), x);
    for (Index y = 0; y < n; ++y) {
      inner.push_back(module_inner_product(graded_, dx, GroupoidFunction::delta(graded_.groupoid_ptr(), y)));
      nonzero[x * n + y] = max_abs(inner.back().coefficients()) > 0.0;
    }
  }

  min_relative_eigenvalue_ = std::numeric_limits<double>::infinity();
  for (Index v = 0; v < g.unit_count(); ++v) {
    const Index m = weighted_l2_basis(fiber.haar, v).size();
    const auto dim = static_cast<Eigen::Index>(n * m);
    Matrix gram = Matrix::Zero(dim, dim);
    for (Index x = 0; x < n; ++x) {
      for (Index y = 0; y < n; ++y) {
        if (!nonzero[x * n + y]) continue;
        const Matrix rep = regular_rep_matrix(inner[x * n + y], fiber.haar, v).matrix;
        gram.block(static_cast<Eigen::Index>(x * m), static_cast<Eigen::Index>(y * m),
                   static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)) = rep;
      }
    }
    gram = 0.5 * (gram + gram.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gram);
    const Eigen::VectorXd& values = solver.eigenvalues();
    const double top = values.maxCoeff();
    min_relative_eigenvalue_ = std::min(min_relative_eigenvalue_, top > 0.0 ? values.minCoeff() / top : 0.0);

    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < values.size(); ++i)
      if (values[i] > kNullThreshold * top) keep.push_back(i);
    Component c;
    c.unit = v;
    c.fiber_dim = m;
    c.frame = Matrix(dim, static_cast<Eigen::Index>(keep.size()));
    c.sqrt_values = Eigen::VectorXd(static_cast<Eigen::Index>(keep.size()));
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(keep.size()); ++k) {
      c.frame.col(k) = solver.eigenvectors().col(keep[k]);
      c.sqrt_values[k] = std::sqrt(values[keep[k]]);
    }
    components_.push_back(std::move(c));
  }
}

Index InducedSpace::frame_dimension() const noexcept {
  Index total = 0;
  for (const auto& c : components_) total += static_cast<Index>(c.frame.cols());
  return total;
}

double InducedSpace::operator_norm(const GroupoidFunction& a) const {
  if (a.groupoid_ptr() != graded_.groupoid_ptr()) {
    throw DomainError("InducedSpace::operator_norm: function is not on G");
  }
  const Index n = graded_.groupoid().arrow_count();
  // left[x, y] = (a * delta_y)(x)
  Matrix left(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Index y = 0; y < n; ++y) {
    left.col(static_cast<Eigen::Index>(y)) =
        convolve(a, GroupoidFunction::delta(graded_.groupoid_ptr(), y), graded_.haar()).coefficients();
  }

  double best = 0.0;
  for (const Component& c : components_) {
    if (c.frame.cols() == 0) continue;
    const auto m = static_cast<Eigen::Index>(c.fiber_dim);
    // (left (x) I_m) applied to the frame, without forming the Kronecker product.
    Matrix moved = Matrix::Zero(c.frame.rows(), c.frame.cols());
    for (Eigen::Index x = 0; x < static_cast<Eigen::Index>(n); ++x) {
      for (Eigen::Index y = 0; y < static_cast<Eigen::Index>(n); ++y) {
        const Complex coeff = left(x, y);
        if (coeff == 0.0) continue;
        moved.middleRows(x * m, m) += coeff * c.frame.middleRows(y * m, m);
      }
    }
    // Matrix of L in the orthonormal frame f_k = frame_k / sqrt(value_k):
    // diag(sqrt) W* L W diag(1/sqrt).
    Matrix local = c.frame.adjoint() * moved;
    for (Eigen::Index i = 0; i < local.rows(); ++i) local.row(i) *= c.sqrt_values[i];
    for (Eigen::Index j = 0; j < local.cols(); ++j) local.col(j) /= c.sqrt_values[j];
    best = std::max(best, workbench::operator_norm(local));
  }
  return best;
}

double L_operator_norm(const GradedGroupoid& graded, const GroupoidFunction& a) {
  return InducedSpace(graded).operator_norm(a);
}

GroupoidFunction expectation_P(const GradedGroupoid& graded, const GroupoidFunction& a) {
  const IdentityFiber& fiber = graded.identity_fiber();
  return include_i(fiber, restrict_q(fiber, a));
}

RuyCheck check_eq_ruy(const GradedGroupoid& graded, const GroupoidFunction& a,
                      const GroupoidFunction& b) {
  const FiniteGroupoid& g = graded.groupoid();
  const std::vector<Index> supp = support(b);
  if (!supp.empty()) {
    const GroupElement& alpha = graded.degree(supp.front());
    std::string offending;
    for (Index x : supp) {
      if (graded.degree(x) != alpha) offending += (offending.empty() ? "" : ", ") + g.arrow_id(x);
    }
    if (!offending.empty()) {
      throw DomainError("check_eq_ruy: b is not supported in the fiber of degree " + to_string(alpha) +
                        "; offending arrows: " + offending);
    }
  }
  const HaarSystem& haar = graded.haar();
  GroupoidFunction lhs =
      include_i(graded.identity_fiber(), module_inner_product(graded, b, convolve(a, b, haar)));
  GroupoidFunction rhs = convolve(convolve(involute(b), expectation_P(graded, a), haar), b, haar);
  const double deviation = relative_deviation(lhs.coefficients(), rhs.coefficients());
  return RuyCheck{std::move(lhs), std::move(rhs), deviation, deviation <= kAlgebraicTol};
}

KernelReport kernel_check(const GradedGroupoid& graded, const InducedSpace& space,
                          std::span<const GroupoidFunction> corpus, double tol) {
  KernelReport report;
  report.tolerance = tol;
  const HaarSystem& haar = graded.haar();
  for (const GroupoidFunction& a : corpus) {
    KernelEntry e;
    e.l_norm = space.operator_norm(a);
    e.p_norm = cstar_norm(expectation_P(graded, convolve(involute(a), a, haar)), haar);
    e.a_norm = cstar_norm(a, haar);
    const bool l_zero = e.l_norm <= tol, p_zero = e.p_norm <= tol, a_zero = e.a_norm <= tol;
    e.consistent = l_zero == p_zero && p_zero == a_zero;
    report.all_consistent = report.all_consistent && e.consistent;
    report.entries.push_back(e);
  }
  return report;
}

}  // namespace workbench
