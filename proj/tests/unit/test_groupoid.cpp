#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "workbench/error.hpp"
#include "workbench/groupoid.hpp"

using namespace workbench;

namespace {

FiniteGroupoid copy_with(const FiniteGroupoid& g, std::vector<Index> compose, std::vector<Index> inverse) {
  return FiniteGroupoid(g.units(), g.arrows(), std::move(compose), std::move(inverse), g.unit_arrows());
}

}  // namespace

TEST_CASE("finite groups from Cayley tables") {
  const FiniteGroup z3 = FiniteGroup::cyclic(3);
  CHECK(z3.order() == 3);
  CHECK(z3.multiply(2, 2) == 1);
  CHECK(z3.inverse(1) == 2);

  CHECK_THROWS_AS(FiniteGroup::from_cayley({{0, 1}, {1, 1}}), InputError);  // 1 has no inverse
  CHECK_THROWS_AS(FiniteGroup::from_cayley({{0, 1}, {1}}), InputError);     // not square
  CHECK_THROWS_AS(FiniteGroup::from_cayley({{0, 2}, {1, 0}}), InputError);  // out of range
  CHECK(FiniteGroup::from_cayley(z3.rows()) == z3);

  const FiniteGroup s3 = FiniteGroup::symmetric(3);
  CHECK(s3.order() == 6);
  CHECK(s3.identity() == 0);
  // Non-abelian: some pair fails to commute.
  bool commutes = true;
  for (Index a = 0; a < 6; ++a)
    for (Index b = 0; b < 6; ++b) commutes = commutes && s3.multiply(a, b) == s3.multiply(b, a);
  CHECK_FALSE(commutes);

  const auto signs = symmetric_group_signs(3);
  CHECK(std::count(signs.begin(), signs.end(), 1) == 3);
  // The sign is a homomorphism.
  for (Index a = 0; a < 6; ++a)
    for (Index b = 0; b < 6; ++b) CHECK(signs[s3.multiply(a, b)] == signs[a] * signs[b]);
}

TEST_CASE("pair groupoid P2") {
  const GroupoidPtr g = pair_groupoid(2);
  CHECK(g->unit_count() == 2);
  REQUIRE(g->arrow_count() == 4);
  const Index x12 = oracle::arrow(*g, "(1,2)"), x21 = oracle::arrow(*g, "(2,1)"), x11 = oracle::arrow(*g, "(1,1)");
  CHECK(g->range(x12) == *g->find_unit("1"));
  CHECK(g->source(x12) == *g->find_unit("2"));
  CHECK(g->compose(x12, x21) == x11);
  CHECK(g->compose(x12, x12) == kNoIndex);
  CHECK(g->inverse(x12) == x21);
  CHECK(g->is_unit_arrow(x11));
  CHECK(validate_groupoid(*g).passed);
}

TEST_CASE("every constructor yields a valid groupoid of the expected size") {
  const FiniteGroup s3 = FiniteGroup::symmetric(3);
  struct Case {
    GroupoidPtr g;
    Index units;
    Index arrows;
  };
  const std::vector<Case> cases{
      {pair_groupoid(1), 1, 1},
      {pair_groupoid(4), 4, 16},
      {group_groupoid(FiniteGroup::cyclic(5)), 1, 5},
      {group_groupoid(s3), 1, 6},
      {cyclic_shift_groupoid(3), 3, 9},
      {group_bundle({FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)}), 2, 5},
      {disjoint_union(*pair_groupoid(2), *group_groupoid(FiniteGroup::cyclic(2))), 3, 6},
      {product(*pair_groupoid(2), *group_groupoid(FiniteGroup::cyclic(3))), 2, 12},
  };
  for (const Case& c : cases) {
    CHECK(c.g->unit_count() == c.units);
    CHECK(c.g->arrow_count() == c.arrows);
    const ValidationReport r = validate_groupoid(*c.g);
    INFO(r.violation, ": ", r.detail);
    CHECK(r.passed);
  }
}

TEST_CASE("action groupoid of S3 on three points") {
  const FiniteGroup s3 = FiniteGroup::symmetric(3);
  // The right action x.h = h^-1(x) built from the one-line notation.
  std::vector<std::vector<Index>> perm(6);
  {
    std::vector<Index> p{0, 1, 2};
    Index k = 0;
    do perm[k++] = p;
    while (std::next_permutation(p.begin(), p.end()));
  }
  std::vector<std::vector<Index>> act(3, std::vector<Index>(6));
  for (Index x = 0; x < 3; ++x)
    for (Index h = 0; h < 6; ++h)
      act[x][h] = static_cast<Index>(std::find(perm[h].begin(), perm[h].end(), x) - perm[h].begin());
  const GroupoidPtr g = action_groupoid(3, s3, act);
  CHECK(g->arrow_count() == 18);
  CHECK(validate_groupoid(*g).passed);

  // A left action in right-action clothing is rejected with a witness.
  std::vector<std::vector<Index>> left(3, std::vector<Index>(6));
  for (Index x = 0; x < 3; ++x)
    for (Index h = 0; h < 6; ++h) left[x][h] = perm[h][x];
  CHECK_THROWS_AS(action_groupoid(3, s3, left), InputError);
}

TEST_CASE("validate_groupoid reports the first broken axiom") {
  const GroupoidPtr g = pair_groupoid(2);
  const Index n = g->arrow_count();
  const Index x11 = oracle::arrow(*g, "(1,1)"), x12 = oracle::arrow(*g, "(1,2)"), x21 = oracle::arrow(*g, "(2,1)"),
              x22 = oracle::arrow(*g, "(2,2)");

  SUBCASE("product defined on a non-composable pair") {
    auto c = g->compose_table();
    c[x12 * n + x12] = x11;
    const ValidationReport r = validate_groupoid(copy_with(*g, c, g->inverse_table()));
    CHECK_FALSE(r.passed);
    CHECK(r.witness == std::vector<std::string>{"(1,2)", "(1,2)"});
  }
  SUBCASE("product with the wrong range") {
    auto c = g->compose_table();
    c[x12 * n + x21] = x22;
    const ValidationReport r = validate_groupoid(copy_with(*g, c, g->inverse_table()));
    CHECK_FALSE(r.passed);
    CHECK(r.violation == "range mismatch");
  }
  SUBCASE("wrong inverse") {
    auto inv = g->inverse_table();
    inv[x12] = x12;
    const ValidationReport r = validate_groupoid(copy_with(*g, g->compose_table(), inv));
    CHECK_FALSE(r.passed);
  }
  SUBCASE("scrambled group table") {
    const GroupoidPtr z = group_groupoid(FiniteGroup::cyclic(3));
    auto c = z->compose_table();
    std::swap(c[1 * 3 + 1], c[1 * 3 + 2]);
    std::swap(c[2 * 3 + 1], c[2 * 3 + 2]);
    const ValidationReport r = validate_groupoid(copy_with(*z, c, z->inverse_table()));
    CHECK_FALSE(r.passed);
  }
}

TEST_CASE("structural errors are rejected at construction") {
  CHECK_THROWS_AS(FiniteGroupoid({}, {}, {}, {}, {}), InputError);
  CHECK_THROWS_AS(FiniteGroupoid({"a"}, {{"x", 0, 1}}, {0}, {0}, {0}), InputError);
  CHECK_THROWS_AS(FiniteGroupoid({"a", "a"}, {{"x", 0, 0}}, {0}, {0}, {0, 0}), InputError);
}

TEST_CASE("Haar systems") {
  const GroupoidPtr g = pair_groupoid(2);
  const HaarSystem counting = counting_haar(g);
  CHECK(counting.is_counting());
  CHECK(validate_left_invariance(*g, counting.arrow_weights()));

  const HaarSystem weighted = haar_from_weights(g, {1.0, 4.0});
  CHECK_FALSE(weighted.is_counting());
  CHECK(weighted.weight(oracle::arrow(*g, "(1,2)")) == 4.0);
  CHECK(weighted.weight(oracle::arrow(*g, "(2,1)")) == 1.0);
  CHECK(validate_left_invariance(*g, weighted.arrow_weights()));

  try {
    haar_from_weights(g, {1.0, -1.0});
    FAIL("expected an InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("nonpositive Haar weight at unit 2") != std::string::npos);
    CHECK(e.path() == "2");
  }

  // Weights that depend on the range instead of the source are not invariant.
  std::vector<double> w(4);
  for (Index x = 0; x < 4; ++x) w[x] = g->range(x) == 0 ? 1.0 : 4.0;
  const auto v = find_invariance_violation(*g, w);
  REQUIRE(v.has_value());
  CHECK(v->lhs != v->rhs);
}

TEST_CASE("property: random graded instances satisfy the groupoid axioms literally") {
  oracle::Rng rng(1001);
  for (int trial = 0; trial < 60; ++trial) {
    const GradedGroupoid graded = oracle::random_graded(rng);
    const FiniteGroupoid& g = graded.groupoid();
    CHECK(validate_groupoid(g).passed);
    CHECK(validate_left_invariance(g, graded.haar().arrow_weights()));
    for (Index x = 0; x < g.arrow_count(); ++x) {
      CHECK(g.compose(g.inverse(x), x) == g.unit_arrow(g.source(x)));
      for (Index y : g.arrows_with_range(g.source(x))) {
        const Index xy = g.compose(x, y);
        REQUIRE(xy != kNoIndex);
        CHECK(g.range(xy) == g.range(x));
        CHECK(g.source(xy) == g.source(y));
        for (Index z : g.arrows_with_range(g.source(y))) CHECK(g.compose(xy, z) == g.compose(x, g.compose(y, z)));
      }
    }
  }
}
