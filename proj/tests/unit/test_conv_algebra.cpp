#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "workbench/conv_algebra.hpp"
#include "workbench/error.hpp"

using namespace workbench;
using doctest::Approx;

namespace {

constexpr double kTol = 1e-12;

double dev(const GroupoidFunction& a, const GroupoidFunction& b) {
  return relative_deviation(a.coefficients(), b.coefficients());
}

}  // namespace

TEST_CASE("delta calculus on P2 with rho = (1, 4)") {
  const GradedGroupoid graded = oracle::graded_pair2(1.0, 4.0);
  const GroupoidPtr& g = graded.groupoid_ptr();
  const HaarSystem& haar = graded.haar();
  const Index x11 = oracle::arrow(*g, "(1,1)"), x12 = oracle::arrow(*g, "(1,2)"), x21 = oracle::arrow(*g, "(2,1)");

  const auto p = convolve(GroupoidFunction::delta(g, x12), GroupoidFunction::delta(g, x21), haar);
  CHECK(dev(p, GroupoidFunction::delta(g, x11, 4.0)) == 0.0);
  const auto q = convolve(GroupoidFunction::delta(g, x21), GroupoidFunction::delta(g, x12), haar);
  CHECK(dev(q, GroupoidFunction::delta(g, oracle::arrow(*g, "(2,2)"), 1.0)) == 0.0);
  const auto zero = convolve(GroupoidFunction::delta(g, x12), GroupoidFunction::delta(g, x12), haar);
  CHECK(max_abs(zero.coefficients()) == 0.0);

  // delta_x * delta_y = rho(s(x)) delta_xy on every pair.
  for (Index x = 0; x < 4; ++x)
    for (Index y = 0; y < 4; ++y) {
      GroupoidFunction expected = GroupoidFunction::zero(g);
      if (g->composable(x, y)) expected[g->compose(x, y)] = haar.rho(g->source(x));
      CHECK(dev(convolve(GroupoidFunction::delta(g, x), GroupoidFunction::delta(g, y), haar), expected) == 0.0);
    }
}

TEST_CASE("involution examples") {
  const GroupoidPtr g = pair_groupoid(2);
  CHECK(dev(involute(GroupoidFunction::delta(g, oracle::arrow(*g, "(1,2)"))),
            GroupoidFunction::delta(g, oracle::arrow(*g, "(2,1)"))) == 0.0);

  const GroupoidPtr z3 = group_groupoid(FiniteGroup::cyclic(3));
  const Complex i{0.0, 1.0};
  CHECK(dev(involute(GroupoidFunction::delta(z3, 1, i)), GroupoidFunction::delta(z3, 2, -i)) == 0.0);
}

TEST_CASE("I-norm examples") {
  const GroupoidPtr g = pair_groupoid(2);
  const Index x12 = oracle::arrow(*g, "(1,2)");
  CHECK(i_norm(GroupoidFunction::delta(g, x12), counting_haar(g)) == 1.0);
  CHECK(i_norm(GroupoidFunction::delta(g, x12), haar_from_weights(g, {1.0, 4.0})) == 4.0);
  CHECK(i_norm(GroupoidFunction::zero(g), counting_haar(g)) == 0.0);
}

TEST_CASE("unit element") {
  const GroupoidPtr g = pair_groupoid(3);
  const HaarSystem haar = haar_from_weights(g, {0.5, 2.0, 3.0});
  const auto e = unit_element(haar);
  CHECK(e[oracle::arrow(*g, "(2,2)")] == Complex(0.5));
  CHECK(e[oracle::arrow(*g, "(1,2)")] == Complex(0.0));
}

TEST_CASE("inclusion, restriction and graded components on P2") {
  const GradedGroupoid graded = oracle::graded_pair2();
  const GroupoidPtr& g = graded.groupoid_ptr();
  const IdentityFiber& fiber = graded.identity_fiber();
  const Index x11 = oracle::arrow(*g, "(1,1)"), x12 = oracle::arrow(*g, "(1,2)");

  const auto f = GroupoidFunction::delta(fiber.groupoid, 0);
  CHECK(dev(include_i(fiber, f), GroupoidFunction::delta(g, x11)) == 0.0);

  const auto a = GroupoidFunction::delta(g, x11) + GroupoidFunction::delta(g, x12, 2.0);
  CHECK(dev(restrict_q(fiber, a), f) == 0.0);
  CHECK(dev(graded_component(graded, a, GroupElement{{0}}), GroupoidFunction::delta(g, x11)) == 0.0);
  CHECK(dev(graded_component(graded, a, GroupElement{{-1}}), GroupoidFunction::delta(g, x12, 2.0)) == 0.0);
  CHECK(max_abs(restrict_q(fiber, GroupoidFunction::delta(g, x12)).coefficients()) == 0.0);
  CHECK(support(a) == std::vector<Index>{x11, x12});

  const GroupoidPtr other = pair_groupoid(2);
  CHECK_THROWS_AS(convolve(GroupoidFunction::delta(other, 0), a, graded.haar()), DomainError);
  CHECK_THROWS_AS(include_i(fiber, a), DomainError);
}

TEST_CASE("property: convolution and involution match the brute-force oracle") {
  oracle::Rng rng(3003);
  for (int trial = 0; trial < 60; ++trial) {
    const GradedGroupoid graded = oracle::random_graded(rng);
    const GroupoidPtr& g = graded.groupoid_ptr();
    const HaarSystem& haar = graded.haar();
    const std::vector<double> w = oracle::weights(haar);
    const auto a = rng.function(g), b = rng.function(g), c = rng.function(g);

    const Vector expected = oracle::convolve(*g, w, a.coefficients(), b.coefficients());
    CHECK(relative_deviation(convolve(a, b, haar).coefficients(), expected) <= kTol);
    CHECK(dev(involute(a), GroupoidFunction(g, oracle::involute(*g, a.coefficients()))) == 0.0);
    CHECK(i_norm(a, haar) == Approx(oracle::i_norm(*g, w, a.coefficients())).epsilon(kTol));

    // Algebra laws.
    CHECK(dev(convolve(convolve(a, b, haar), c, haar), convolve(a, convolve(b, c, haar), haar)) <= kTol);
    CHECK(dev(involute(convolve(a, b, haar)), convolve(involute(b), involute(a), haar)) <= kTol);
    CHECK(dev(involute(involute(a)), a) == 0.0);
    const Complex s = rng.complex();
    CHECK(dev(convolve(s * a + b, c, haar), s * convolve(a, c, haar) + convolve(b, c, haar)) <= kTol);
    CHECK(dev(involute(s * a), std::conj(s) * involute(a)) <= kTol);

    const auto e = unit_element(haar);
    CHECK(dev(convolve(e, a, haar), a) <= kTol);
    CHECK(dev(convolve(a, e, haar), a) <= kTol);

    CHECK(i_norm(convolve(a, b, haar), haar) <= i_norm(a, haar) * i_norm(b, haar) * (1 + 1e-9));
    CHECK(i_norm(involute(a), haar) == Approx(i_norm(a, haar)).epsilon(kTol));

    // Graded components.
    GroupoidFunction sum = GroupoidFunction::zero(g);
    for (const auto& gamma : graded.image()) sum += graded_component(graded, a, gamma);
    CHECK(dev(sum, a) == 0.0);
    for (const auto& beta : graded.image())
      for (const auto& gamma : graded.image()) {
        const auto p = convolve(involute(graded_component(graded, a, beta)), graded_component(graded, b, gamma), haar);
        const GroupElement target = graded.group().multiply(graded.group().inverse(beta), gamma);
        for (Index x : support(p)) CHECK(graded.degree(x) == target);
      }

    // Inclusion of the identity fiber.
    const IdentityFiber& fiber = graded.identity_fiber();
    const auto f = rng.function(fiber.groupoid), h = rng.function(fiber.groupoid);
    CHECK(dev(include_i(fiber, convolve(f, h, fiber.haar)), convolve(include_i(fiber, f), include_i(fiber, h), haar)) <= kTol);
    CHECK(dev(involute(include_i(fiber, f)), include_i(fiber, involute(f))) == 0.0);
    CHECK(dev(restrict_q(fiber, include_i(fiber, f)), f) == 0.0);
  }
}
