#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "workbench/fell_bundle.hpp"
#include "workbench/rep_norms.hpp"

using namespace workbench;

namespace {

GroupElement z(std::int64_t v) { return GroupElement{{v}}; }

std::vector<GroupoidFunction> samples(oracle::Rng& rng, const GroupoidPtr& g, int n) {
  std::vector<GroupoidFunction> out;
  for (int i = 0; i < n; ++i) out.push_back(rng.function(g));
  return out;
}

// Block-diagonal oracle: stack the oracle's regular representations.
Matrix oracle_taut(const GradedGroupoid& graded, const Vector& a) {
  const FiniteGroupoid& g = graded.groupoid();
  const auto w = oracle::weights(graded.haar());
  Eigen::Index total = 0;
  std::vector<Matrix> blocks;
  for (Index u = 0; u < g.unit_count(); ++u) {
    blocks.push_back(oracle::rep_matrix(g, w, a, u));
    total += blocks.back().rows();
  }
  Matrix out = Matrix::Zero(total, total);
  Eigen::Index at = 0;
  for (const Matrix& b : blocks) {
    out.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return out;
}

}  // namespace

TEST_CASE("grading axioms on P2") {
  const GradedGroupoid graded = oracle::graded_pair2(1.0, 4.0);
  const GradedSubspaceFamily family(graded);
  CHECK(family.dimension(z(0)) == 2);
  CHECK(family.dimension(z(1)) == 1);
  CHECK(family.dimension(z(-1)) == 1);
  CHECK(family.dimension(z(3)) == 0);
  Index sum = 0;
  for (const auto& [gamma, arrows] : family.basis()) sum += arrows.size();
  CHECK(sum == 4);

  const GroupoidPtr& g = graded.groupoid_ptr();
  CHECK(family.contains(z(-1), GroupoidFunction::delta(g, oracle::arrow(*g, "(1,2)"))));
  CHECK_FALSE(family.contains(z(1), GroupoidFunction::delta(g, oracle::arrow(*g, "(1,2)"))));

  oracle::Rng rng(6001);
  const auto s = samples(rng, g, 10);
  const GradingAxiomReport r = check_grading_axioms(family, s);
  CHECK(r.passed());
  CHECK(r.products.checks > 0);
  CHECK(r.products.max_deviation == 0.0);
}

TEST_CASE("conditional expectation on P2") {
  const GradedGroupoid graded = oracle::graded_pair2(1.0, 4.0);
  const GroupoidPtr& g = graded.groupoid_ptr();
  const GradedSubspaceFamily family(graded);
  oracle::Rng rng(6002);
  const auto s = samples(rng, g, 200);
  const TopologicalGradingReport r = check_topological_grading(family, s);
  CHECK(r.passed());
  CHECK(r.sup_ratio <= 1.0 + 1e-9);
  CHECK(r.sup_ratio > 0.0);
}

TEST_CASE("tautological representation and the sign-flip control") {
  const GradedGroupoid graded = oracle::graded_pair2(1.0, 4.0);
  const GroupoidPtr& g = graded.groupoid_ptr();
  const GradedSubspaceFamily family(graded);
  oracle::Rng rng(6003);
  const auto s = samples(rng, g, 10);

  const BundleRepresentation taut = tautological_representation(graded);
  CHECK(taut.dimension == 4);
  const BundleRepReport ok = bundle_rep_check(family, taut, s);
  CHECK(ok.passed());

  BundleRepresentation flipped = taut;
  const Index x11 = oracle::arrow(*g, "(1,1)");
  flipped.images[x11] *= -1.0;
  const BundleRepReport bad = bundle_rep_check(family, flipped, s);
  CHECK_FALSE(bad.passed());
  CHECK_FALSE(bad.multiplicative.passed);
  CHECK(bad.multiplicative.witness.find("(1,1)") != std::string::npos);
}

TEST_CASE("characters of Z/2 and S3") {
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  const GroupoidPtr g = group_groupoid(z2);
  const GradedGroupoid graded(counting_haar(g), Cocycle{DiscreteGroup(z2), {z(0), z(1)}});
  const GradedSubspaceFamily family(graded);
  const auto chars = real_characters(*g);
  REQUIRE(chars.size() == 2);
  oracle::Rng rng(6004);
  const auto s = samples(rng, g, 10);
  for (const auto& chi : chars) {
    CHECK(chi[0] == Complex(1.0));
    CHECK(bundle_rep_check(family, character_representation(graded, chi), s).passed());
  }
  // A non-character fails.
  CHECK_FALSE(bundle_rep_check(family, character_representation(graded, {Complex(-1.0), Complex(1.0)}), s).passed());

  CHECK(real_characters(*group_groupoid(FiniteGroup::symmetric(3))).size() == 2);
  CHECK(real_characters(*group_groupoid(FiniteGroup::cyclic(4))).size() == 2);
  CHECK(real_characters(*pair_groupoid(2)).empty());
}

TEST_CASE("property: bundle structure on random instances") {
  oracle::Rng rng(6005);
  for (int trial = 0; trial < 40; ++trial) {
    const GradedGroupoid graded = oracle::random_graded(rng);
    const GroupoidPtr& g = graded.groupoid_ptr();
    const GradedSubspaceFamily family(graded);
    const auto s = samples(rng, g, 8);

    CHECK(check_grading_axioms(family, s).passed());
    const TopologicalGradingReport t = check_topological_grading(family, s);
    CHECK(t.passed());

    const BundleRepresentation taut = tautological_representation(graded);
    CHECK(bundle_rep_check(family, taut, s).passed());
    for (const auto& a : s)
      CHECK(relative_deviation(apply_representation(taut, a), oracle_taut(graded, a.coefficients())) <= 1e-12);
    // pi(a) has the C*-norm of a.
    CHECK(oracle::spectral_norm(apply_representation(taut, s[0])) ==
          doctest::Approx(cstar_norm(s[0], graded.haar())).epsilon(1e-9));

    if (g->unit_count() == 1) {
      for (const auto& chi : real_characters(*g)) {
        // chi is a homomorphism of the group.
        for (Index x = 0; x < g->arrow_count(); ++x)
          for (Index y = 0; y < g->arrow_count(); ++y) CHECK(chi[g->compose(x, y)] == chi[x] * chi[y]);
        CHECK(bundle_rep_check(family, character_representation(graded, chi), s).passed());
      }
    }
  }
}
