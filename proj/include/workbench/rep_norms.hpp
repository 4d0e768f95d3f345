#pragma once

#include "workbench/conv_algebra.hpp"
#include "workbench/grading.hpp"
#include "workbench/numeric.hpp"

#include <vector>

namespace workbench {

// Orthonormalized basis of L^2(Gu, lambda_u), where lambda_u is lambda^u
// pushed forward by inversion: lambda_u({x}) = rho(r(x)). Basis vector for
// arrow x is delta_x / sqrt(lambda_u(x)).
struct WeightedL2Basis {
  Index unit = 0;
  std::vector<Index> arrows;    // Gu in declared order
  std::vector<double> weights;  // lambda_u(x)
  std::vector<double> scale;    // 1 / sqrt(lambda_u(x))

  Index size() const noexcept { return arrows.size(); }
};

WeightedL2Basis weighted_l2_basis(const HaarSystem& haar, Index u);

struct RepMatrix {
  Matrix matrix;
  WeightedL2Basis basis;
};

// Matrix of h -> a*h on L^2(Gu, lambda_u) in the orthonormalized basis.
// Entry (x', x) is a(x' x^-1) sqrt(rho(r(x)) rho(r(x'))).
// Throws DomainError for an unknown unit.
RepMatrix regular_rep_matrix(const GroupoidFunction& a, const HaarSystem& haar, Index u);

// Largest singular value, as the square root of the top eigenvalue of M*M
// from a full Hermitian eigendecomposition.
double operator_norm(const Matrix& m);

// max over units u of ||pi_u(a)||. For a finite groupoid the direct sum of
// the regular representations is faithful, so this is the C*-norm (full
// and reduced agree).
double cstar_norm(const GroupoidFunction& a, const HaarSystem& haar);

// ||a - a*|| <= kSpectralTol (1 + ||a||) in the C*-norm.
bool is_self_adjoint(const GroupoidFunction& a, const HaarSystem& haar);

// True iff every pi_u(a) block has minimum eigenvalue >= -1e-9 (1 + ||a||).
// Non-self-adjoint input is never positive.
bool positivity_check(const GroupoidFunction& a, const HaarSystem& haar);
double min_eigenvalue(const GroupoidFunction& a, const HaarSystem& haar);

// Eigenvalues of the direct sum of pi_u(a), ascending. Throws DomainError
// unless a is self-adjoint.
std::vector<double> spectrum(const GroupoidFunction& a, const HaarSystem& haar);

// ---------------------------------------------------------------------------
// Fiber decomposition of the regular representation restricted to G_e.

// pi_u^gamma(a_e) on L^2((G_gamma)u, lambda_u), assembled from the defining
// integral sum over y of i(a)(y) h(y^-1 x) w(y).
Matrix fiber_rep_matrix(const GradedGroupoid& graded, const GroupoidFunction& a_e, Index u,
                        const GroupElement& gamma);

struct FiberBlock {
  GroupElement degree;
  std::vector<Index> arrows;  // (G_gamma)u, ambient indices
  Matrix block;               // pi_u^gamma(a_e)
};

struct UDecomposition {
  Index unit = 0;
  std::vector<FiberBlock> blocks;  // nonempty fibers only, ascending degree
  Matrix conjugated;               // U pi_u(i(a_e)) U*
  double deviation = 0.0;          // relative distance to the block diagonal
  bool holds = false;
};

// Regroups the basis of L^2(Gu) by degree and compares U pi_u(i(a_e)) U*
// with the direct sum of the fiber blocks at kAlgebraicTol.
UDecomposition decompose_rep_U(const GradedGroupoid& graded, const GroupoidFunction& a_e, Index u);

struct VTranslation {
  Index unit = 0;
  GroupElement degree;
  Index translator = 0;   // z_{u,gamma}, ambient index
  Index target_unit = 0;  // r(z)
  Matrix unitary;         // V_gamma
  Matrix conjugated;      // V pi_u^gamma(a) V*
  Matrix target;          // pi^e_{r(z)}(a)
  double deviation = 0.0;
  double unitarity_defect = 0.0;
  bool holds = false;
};

// First arrow of (G_gamma)u in declared order; the unit arrow at u when
// gamma = e. Throws DomainError naming (u, gamma) for an empty fiber.
Index canonical_translator(const GradedGroupoid& graded, Index u, const GroupElement& gamma);

// Builds V_gamma from x -> x z on (G_e) r(z) and checks
// V pi_u^gamma(a) V* = pi^e_{r(z)}(a) at kAlgebraicTol.
VTranslation translate_rep_V(const GradedGroupoid& graded, const GroupoidFunction& a_e, Index u,
                             const GroupElement& gamma);
// Same with an explicit z in (G_gamma)u.
VTranslation translate_rep_V(const GradedGroupoid& graded, const GroupoidFunction& a_e, Index u,
                             const GroupElement& gamma, Index z);

// The three expressions in the norm chain for i(f): the C*-norm in G,
// the largest fiber block norm over (u, gamma), and max_v ||pi_v^e(f)||.
struct NormChain {
  double ambient = 0.0;
  double blocks = 0.0;
  double identity_fiber = 0.0;
};
NormChain norm_chain(const GradedGroupoid& graded, const GroupoidFunction& f);

}  // namespace workbench
