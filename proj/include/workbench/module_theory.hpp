#pragma once

#include "workbench/conv_algebra.hpp"
#include "workbench/grading.hpp"
#include "workbench/numeric.hpp"

#include <span>
#include <vector>

namespace workbench {

// C_c(G) viewed as a right C_c(G_e)-module. Finite scale: the completion is
// the coefficient space itself.
using ModuleElement = GroupoidFunction;

// (a.g)(x) = sum over n in G_e with r(n) = s(x) of a(xn) g(n^-1) w(n).
// `g` lives on the identity fiber.
ModuleElement module_action(const GradedGroupoid& graded, const ModuleElement& a,
                            const GroupoidFunction& g);

// <a, b> = sum over gamma of (a_gamma)* (b_gamma), a function on G_e.
GroupoidFunction module_inner_product(const GradedGroupoid& graded, const ModuleElement& a,
                                      const ModuleElement& b);

// ||<a, a>||^(1/2), norm taken in C*(G_e).
double module_norm(const GradedGroupoid& graded, const ModuleElement& a);

// The interior tensor product of the module with the faithful
// representation (direct sum over v of pi_v^e) of C_c(G_e), one component
// per unit v. For each v the spanning vectors are delta_x (x) e_i with x an
// arrow of G and e_i a basis vector of L^2((G_e)v); the Gram matrix
// entry is pi_v^e(<delta_x, delta_y>)(i, j). The null space (eigenvalues
// below 1e-10 of the largest) is quotiented out and left convolution is
// expressed on the surviving orthonormal frame.
class InducedSpace {
 public:
  explicit InducedSpace(const GradedGroupoid& graded);

  // ||L_a|| on the Hilbert module.
  double operator_norm(const GroupoidFunction& a) const;

  // Smallest Gram eigenvalue over all components, relative to the largest.
  double min_relative_gram_eigenvalue() const noexcept { return min_relative_eigenvalue_; }
  Index frame_dimension() const noexcept;

  static constexpr double kNullThreshold = 1e-10;

 private:
  struct Component {
    Index unit = 0;
    Index fiber_dim = 0;
    Matrix frame;               // surviving eigenvectors of the Gram matrix
    Eigen::VectorXd sqrt_values;
  };

  GradedGroupoid graded_;
  std::vector<Component> components_;
  double min_relative_eigenvalue_ = 0.0;
};

double L_operator_norm(const GradedGroupoid& graded, const GroupoidFunction& a);

// P = i o Q: keep the coefficients on G_e, zero elsewhere.
GroupoidFunction expectation_P(const GradedGroupoid& graded, const GroupoidFunction& a);

struct RuyCheck {
  GroupoidFunction lhs;  // i(<b, a b>)
  GroupoidFunction rhs;  // b* P(a) b
  double deviation = 0.0;
  bool holds = false;
};

// Compares i(<b, a*b>) with b* P(a) b. `b` must be supported in a single
// fiber; otherwise throws DomainError naming the arrows outside the fiber
// of b's first support arrow.
RuyCheck check_eq_ruy(const GradedGroupoid& graded, const GroupoidFunction& a,
                      const GroupoidFunction& b);

struct KernelEntry {
  double l_norm = 0.0;  // ||L_a||
  double p_norm = 0.0;  // ||P(a* a)||
  double a_norm = 0.0;  // ||a||
  bool consistent = false;
};

struct KernelReport {
  std::vector<KernelEntry> entries;
  double tolerance = kSpectralTol;
  bool all_consistent = true;
};

// For each a: (||L_a|| <= tol) iff (||P(a* a)|| <= tol), and both iff
// ||a|| <= tol (P is faithful at finite scale).
KernelReport kernel_check(const GradedGroupoid& graded, const InducedSpace& space,
                          std::span<const GroupoidFunction> corpus, double tol = kSpectralTol);

}  // namespace workbench
