#pragma once

#include "workbench/conv_algebra.hpp"
#include "workbench/grading.hpp"
#include "workbench/numeric.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace workbench {

// The grading subspaces A_gamma = span{delta_x : x in G_gamma}. At finite
// scale the full and reduced completions coincide, so one family stands
// for both A_gamma and B_gamma.
class GradedSubspaceFamily {
 public:
  explicit GradedSubspaceFamily(const GradedGroupoid& graded);

  const GradedGroupoid& graded() const noexcept { return graded_; }
  // Basis arrows per degree, over the image of the cocycle.
  const std::map<GroupElement, std::vector<Index>>& basis() const noexcept { return graded_.fibers(); }
  Index dimension(const GroupElement& gamma) const;
  // True iff a is supported in G_gamma.
  bool contains(const GroupElement& gamma, const GroupoidFunction& a, double tol = 0.0) const;

 private:
  GradedGroupoid graded_;
};

struct AxiomReport {
  bool passed = true;
  std::string witness;  // first failure, empty when passed
  Index checks = 0;
  double max_deviation = 0.0;
};

struct GradingAxiomReport {
  AxiomReport products;      // A_beta A_gamma in A_{beta gamma}
  AxiomReport adjoints;      // A_gamma* = A_{gamma^-1}
  AxiomReport spanning;      // sum of dimensions = #arrows
  AxiomReport independence;  // pairwise disjoint supports
  bool passed() const noexcept {
    return products.passed && adjoints.passed && spanning.passed && independence.passed;
  }
};

// Checks the product and adjoint containments on every pair of basis
// elements and on the graded components of the random samples, then the
// dimension count and disjointness of supports.
GradingAxiomReport check_grading_axioms(const GradedSubspaceFamily& family,
                                        std::span<const GroupoidFunction> samples);

struct TopologicalGradingReport {
  AxiomReport unit_fixed;        // P(e) = e
  AxiomReport identity_on_Ae;    // P = id on the A_e basis
  AxiomReport zero_off_Ae;       // P = 0 on A_gamma, gamma != e
  AxiomReport bounded;           // sup ||P(a)|| / ||a|| <= 1 + 1e-9
  double sup_ratio = 0.0;
  bool passed() const noexcept {
    return unit_fixed.passed && identity_on_Ae.passed && zero_off_Ae.passed && bounded.passed;
  }
};

TopologicalGradingReport check_topological_grading(const GradedSubspaceFamily& family,
                                                   std::span<const GroupoidFunction> samples);

// A candidate representation of the bundle in M_d(C): the image of each
// basis element delta_x (x in G_{c(x)}). pi_gamma extends linearly on A_gamma.
struct BundleRepresentation {
  Index dimension = 0;
  std::vector<Matrix> images;  // indexed by arrow
};

// delta_x -> direct sum over u of pi_u(delta_x).
BundleRepresentation tautological_representation(const GradedGroupoid& graded);
// One-dimensional: delta_x -> rho * chi(x) for a character chi of a
// one-unit groupoid (a group). Character values are given per arrow.
BundleRepresentation character_representation(const GradedGroupoid& graded,
                                               const std::vector<Complex>& chi);
// Real (+-1-valued) characters of a one-unit groupoid, found by exhaustive
// search; empty if the groupoid has more than one unit or more than 16 arrows.
std::vector<std::vector<Complex>> real_characters(const FiniteGroupoid& g);

struct BundleRepReport {
  AxiomReport multiplicative;  // pi_beta(a) pi_gamma(b) = pi_{beta gamma}(ab) on basis
  AxiomReport adjoint;         // pi_gamma(a)* = pi_{gamma^-1}(a*) on basis
  AxiomReport homomorphism;    // summed pi is a *-homomorphism on random pairs
  AxiomReport i_norm_bound;    // ||pi_gamma(a)|| <= ||a||_I on fiber-supported samples
  bool passed() const noexcept {
    return multiplicative.passed && adjoint.passed && homomorphism.passed && i_norm_bound.passed;
  }
};

// pi(a) = sum over gamma of pi_gamma(a_gamma).
Matrix apply_representation(const BundleRepresentation& rep, const GroupoidFunction& a);

BundleRepReport bundle_rep_check(const GradedSubspaceFamily& family, const BundleRepresentation& rep,
                                 std::span<const GroupoidFunction> samples);

}  // namespace workbench
