#include "workbench/groupoid.hpp"

#include "workbench/error.hpp"

#include <cmath>
#include <functional>

namespace workbench {

FiniteGroupoid::FiniteGroupoid(std::vector<std::string> units, std::vector<Arrow> arrows,
                               std::vector<Index> compose, std::vector<Index> inverse,
                               std::vector<Index> unit_arrow)
    : units_(std::move(units)),
      arrows_(std::move(arrows)),
      compose_(std::move(compose)),
      inverse_(std::move(inverse)),
      unit_arrow_(std::move(unit_arrow)) {
  const Index n = arrows_.size();
  const Index m = units_.size();
  if (m == 0 || n == 0) throw InputError("", "empty groupoid");
  if (compose_.size() != n * n) throw InputError("compose", "table size must be arrows^2");
  if (inverse_.size() != n) throw InputError("inverses", "one inverse per arrow required");
  if (unit_arrow_.size() != m) throw InputError("units", "one unit arrow per unit required");

  for (Index u = 0; u < m; ++u) {
    if (!unit_lookup_.emplace(units_[u], u).second) {
      throw InputError(units_[u], "duplicate unit id");
    }
  }
  by_range_.resize(m);
  by_source_.resize(m);
  for (Index x = 0; x < n; ++x) {
    const Arrow& a = arrows_[x];
    if (!arrow_lookup_.emplace(a.id, x).second) throw InputError(a.id, "duplicate arrow id");
    if (a.src >= m || a.dst >= m) throw InputError(a.id, "arrow endpoint is not a unit");
    if (inverse_[x] >= n) throw InputError(a.id, "inverse is not an arrow");
    by_range_[a.dst].push_back(x);
    by_source_[a.src].push_back(x);
  }
  for (Index entry : compose_) {
    if (entry != kNoIndex && entry >= n) throw InputError("compose", "product is not an arrow");
  }
  for (Index u = 0; u < m; ++u) {
    if (unit_arrow_[u] >= n) throw InputError(units_[u], "unit arrow is not an arrow");
  }
}

std::optional<Index> FiniteGroupoid::find_unit(std::string_view id) const {
  auto it = unit_lookup_.find(std::string(id));
  if (it == unit_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<Index> FiniteGroupoid::find_arrow(std::string_view id) const {
  auto it = arrow_lookup_.find(std::string(id));
  if (it == arrow_lookup_.end()) return std::nullopt;
  return it->second;
}

ValidationReport ValidationReport::fail(std::string violation, std::vector<std::string> witness,
                                        std::string detail) {
  ValidationReport r;
  r.passed = false;
  r.violation = std::move(violation);
  r.witness = std::move(witness);
  r.detail = std::move(detail);
  return r;
}

ValidationReport validate_groupoid(const FiniteGroupoid& g) {
  const Index n = g.arrow_count();
  auto id = [&](Index x) { return g.arrow_id(x); };

  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      const Index xy = g.compose(x, y);
      if (g.composable(x, y) != (xy != kNoIndex)) {
        return ValidationReport::fail(
            "composition domain", {id(x), id(y)},
            g.composable(x, y) ? "s(x) = r(y) but xy is undefined" : "xy defined but s(x) != r(y)");
      }
      if (xy == kNoIndex) continue;
      if (g.range(xy) != g.range(x)) {
        return ValidationReport::fail("range mismatch", {id(x), id(y), id(xy)}, "r(xy) != r(x)");
      }
      if (g.source(xy) != g.source(y)) {
        return ValidationReport::fail("source mismatch", {id(x), id(y), id(xy)}, "s(xy) != s(y)");
      }
    }
  }

  for (Index u = 0; u < g.unit_count(); ++u) {
    const Index e = g.unit_arrow(u);
    if (g.range(e) != u || g.source(e) != u) {
      return ValidationReport::fail("unit arrow", {id(e)}, "unit arrow of " + g.unit_id(u) +
                                                               " is not a loop at it");
    }
  }
  for (Index x = 0; x < n; ++x) {
    if (g.compose(g.unit_arrow(g.range(x)), x) != x) {
      return ValidationReport::fail("left identity", {id(g.unit_arrow(g.range(x))), id(x)},
                                    "r(x) x != x");
    }
    if (g.compose(x, g.unit_arrow(g.source(x))) != x) {
      return ValidationReport::fail("right identity", {id(x), id(g.unit_arrow(g.source(x)))},
                                    "x s(x) != x");
    }
  }

  for (Index x = 0; x < n; ++x) {
    const Index xi = g.inverse(x);
    if (g.source(xi) != g.range(x) || g.range(xi) != g.source(x)) {
      return ValidationReport::fail("inverse endpoints", {id(x), id(xi)},
                                    "inverse does not swap range and source");
    }
    if (g.compose(xi, x) != g.unit_arrow(g.source(x))) {
      return ValidationReport::fail("left inverse", {id(xi), id(x)}, "x^-1 x != s(x)");
    }
    if (g.compose(x, xi) != g.unit_arrow(g.range(x))) {
      return ValidationReport::fail("right inverse", {id(x), id(xi)}, "x x^-1 != r(x)");
    }
    if (g.inverse(xi) != x) {
      return ValidationReport::fail("involution", {id(x), id(xi)}, "(x^-1)^-1 != x");
    }
  }

  for (Index x = 0; x < n; ++x) {
    for (Index y : g.arrows_with_range(g.source(x))) {
      const Index xy = g.compose(x, y);
      for (Index z : g.arrows_with_range(g.source(y))) {
        if (g.compose(xy, z) != g.compose(x, g.compose(y, z))) {
          return ValidationReport::fail("associativity", {id(x), id(y), id(z)},
                                        "(xy)z != x(yz)");
        }
      }
    }
  }
  return ValidationReport::pass();
}

// ---------------------------------------------------------------------------

std::vector<double> HaarSystem::arrow_weights() const {
  std::vector<double> w(groupoid_->arrow_count());
  for (Index x = 0; x < w.size(); ++x) w[x] = weight(x);
  return w;
}

bool HaarSystem::is_counting() const {
  for (double r : rho_)
    if (r != 1.0) return false;
  return true;
}

HaarSystem haar_from_weights(GroupoidPtr g, std::vector<double> rho) {
  if (!g) throw DomainError("haar_from_weights: null groupoid");
  if (rho.size() != g->unit_count()) {
    throw InputError("rho", "expected one weight per unit");
  }
  for (Index u = 0; u < rho.size(); ++u) {
    if (!(rho[u] > 0.0) || !std::isfinite(rho[u])) {
      throw InputError(g->unit_id(u), "nonpositive Haar weight at unit " + g->unit_id(u));
    }
  }
  return HaarSystem(std::move(g), std::move(rho));
}

HaarSystem counting_haar(GroupoidPtr g) {
  const Index m = g->unit_count();
  return haar_from_weights(std::move(g), std::vector<double>(m, 1.0));
}

std::optional<InvarianceViolation> find_invariance_violation(const FiniteGroupoid& g,
                                                            std::span<const double> w) {
  const Index n = g.arrow_count();
  if (w.size() != n) throw DomainError("find_invariance_violation: one weight per arrow required");
  for (Index x = 0; x < n; ++x) {
    for (Index t = 0; t < n; ++t) {
      double lhs = 0.0;
      for (Index y : g.arrows_with_range(g.source(x))) {
        if (g.compose(x, y) == t) lhs += w[y];
      }
      double rhs = 0.0;
      for (Index y : g.arrows_with_range(g.range(x))) {
        if (y == t) rhs += w[y];
      }
      if (std::abs(lhs - rhs) > kAlgebraicTol * std::max({1.0, std::abs(lhs), std::abs(rhs)})) {
        return InvarianceViolation{x, t, lhs, rhs};
      }
    }
  }
  return std::nullopt;
}

bool validate_left_invariance(const FiniteGroupoid& g, std::span<const double> w) {
  return !find_invariance_violation(g, w).has_value();
}

// ---------------------------------------------------------------------------

namespace {

// Fills the composition table from a product rule that is only consulted
// on composable pairs.
GroupoidPtr assemble(std::vector<std::string> units, std::vector<Arrow> arrows,
                     const std::function<Index(Index, Index)>& multiply,
                     const std::function<Index(Index)>& invert,
                     const std::function<Index(Index)>& unit_arrow) {
  const Index n = arrows.size();
  std::vector<Index> compose(n * n, kNoIndex);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      if (arrows[x].src == arrows[y].dst) compose[x * n + y] = multiply(x, y);
  std::vector<Index> inverse(n);
  for (Index x = 0; x < n; ++x) inverse[x] = invert(x);
  std::vector<Index> unit_arrows(units.size());
  for (Index u = 0; u < units.size(); ++u) unit_arrows[u] = unit_arrow(u);
  return std::make_shared<const FiniteGroupoid>(std::move(units), std::move(arrows),
                                                std::move(compose), std::move(inverse),
                                                std::move(unit_arrows));
}

std::string element_name(Index g) { return "g" + std::to_string(g); }

}  // namespace

GroupoidPtr pair_groupoid(Index n) {
  if (n == 0) throw InputError("n", "pair groupoid needs at least one point");
  std::vector<std::string> units;
  for (Index i = 0; i < n; ++i) units.push_back(std::to_string(i + 1));
  std::vector<Arrow> arrows;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      arrows.push_back({"(" + units[i] + "," + units[j] + ")", j, i});
  return assemble(
      std::move(units), std::move(arrows),
      [n](Index x, Index y) { return (x / n) * n + (y % n); },
      [n](Index x) { return (x % n) * n + x / n; }, [n](Index u) { return u * n + u; });
}

GroupoidPtr group_groupoid(const FiniteGroup& group) {
  std::vector<Arrow> arrows;
  for (Index g = 0; g < group.order(); ++g) arrows.push_back({element_name(g), 0, 0});
  return assemble(
      {"*"}, std::move(arrows), [&](Index x, Index y) { return group.multiply(x, y); },
      [&](Index x) { return group.inverse(x); }, [&](Index) { return group.identity(); });
}

GroupoidPtr action_groupoid(Index points, const FiniteGroup& group,
                            const std::vector<std::vector<Index>>& act) {
  const Index order = group.order();
  if (points == 0) throw InputError("points", "action needs at least one point");
  if (act.size() != points) throw InputError("action", "one row per point required");
  for (Index x = 0; x < points; ++x) {
    if (act[x].size() != order) throw InputError("action", "one column per group element required");
    for (Index h = 0; h < order; ++h)
      if (act[x][h] >= points) throw InputError("action", "image is not a point");
  }
  for (Index x = 0; x < points; ++x) {
    if (act[x][group.identity()] != x) {
      throw InputError("action", "x.e != x at x = p" + std::to_string(x));
    }
    for (Index h = 0; h < order; ++h)
      for (Index k = 0; k < order; ++k)
        if (act[act[x][h]][k] != act[x][group.multiply(h, k)]) {
          throw InputError("action", "(x.h).k != x.(hk) at (p" + std::to_string(x) + "," +
                                         element_name(h) + "," + element_name(k) + ")");
        }
  }

  std::vector<std::string> units;
  for (Index x = 0; x < points; ++x) units.push_back("p" + std::to_string(x));
  std::vector<Arrow> arrows;
  for (Index x = 0; x < points; ++x)
    for (Index h = 0; h < order; ++h)
      arrows.push_back({"(" + units[x] + "," + element_name(h) + ")", act[x][h], x});
  return assemble(
      std::move(units), std::move(arrows),
      [&](Index a, Index b) { return (a / order) * order + group.multiply(a % order, b % order); },
      [&](Index a) {
        const Index x = a / order, h = a % order;
        return act[x][h] * order + group.inverse(h);
      },
      [&](Index u) { return u * order + group.identity(); });
}

GroupoidPtr cyclic_shift_groupoid(Index points) {
  std::vector<std::vector<Index>> act(points, std::vector<Index>(points));
  for (Index x = 0; x < points; ++x)
    for (Index h = 0; h < points; ++h) act[x][h] = (x + h) % points;
  return action_groupoid(points, FiniteGroup::cyclic(points), act);
}

GroupoidPtr group_bundle(const std::vector<FiniteGroup>& groups) {
  if (groups.empty()) throw InputError("groups", "group bundle needs at least one group");
  std::vector<std::string> units;
  std::vector<Arrow> arrows;
  std::vector<Index> offset, owner;
  for (Index u = 0; u < groups.size(); ++u) {
    units.push_back("u" + std::to_string(u));
    offset.push_back(arrows.size());
    for (Index g = 0; g < groups[u].order(); ++g) {
      arrows.push_back({"(" + units[u] + "," + element_name(g) + ")", u, u});
      owner.push_back(u);
    }
  }
  return assemble(
      std::move(units), std::move(arrows),
      [&](Index x, Index y) {
        const Index u = owner[x];
        return offset[u] + groups[u].multiply(x - offset[u], y - offset[u]);
      },
      [&](Index x) {
        const Index u = owner[x];
        return offset[u] + groups[u].inverse(x - offset[u]);
      },
      [&](Index u) { return offset[u] + groups[u].identity(); });
}

GroupoidPtr disjoint_union(const FiniteGroupoid& left, const FiniteGroupoid& right) {
  const Index lu = left.unit_count(), la = left.arrow_count();
  std::vector<std::string> units;
  for (const auto& u : left.units()) units.push_back("0:" + u);
  for (const auto& u : right.units()) units.push_back("1:" + u);
  std::vector<Arrow> arrows;
  for (const auto& a : left.arrows()) arrows.push_back({"0:" + a.id, a.src, a.dst});
  for (const auto& a : right.arrows()) arrows.push_back({"1:" + a.id, a.src + lu, a.dst + lu});
  return assemble(
      std::move(units), std::move(arrows),
      [&](Index x, Index y) {
        return x < la ? left.compose(x, y) : right.compose(x - la, y - la) + la;
      },
      [&](Index x) { return x < la ? left.inverse(x) : right.inverse(x - la) + la; },
      [&](Index u) { return u < lu ? left.unit_arrow(u) : right.unit_arrow(u - lu) + la; });
}

GroupoidPtr product(const FiniteGroupoid& left, const FiniteGroupoid& right) {
  const Index ru = right.unit_count(), ra = right.arrow_count();
  std::vector<std::string> units;
  for (const auto& u : left.units())
    for (const auto& v : right.units()) units.push_back("(" + u + "|" + v + ")");
  std::vector<Arrow> arrows;
  for (const auto& a : left.arrows())
    for (const auto& b : right.arrows())
      arrows.push_back({"(" + a.id + "|" + b.id + ")", a.src * ru + b.src, a.dst * ru + b.dst});
  return assemble(
      std::move(units), std::move(arrows),
      [&](Index x, Index y) {
        return left.compose(x / ra, y / ra) * ra + right.compose(x % ra, y % ra);
      },
      [&](Index x) { return left.inverse(x / ra) * ra + right.inverse(x % ra); },
      [&](Index u) { return left.unit_arrow(u / ru) * ra + right.unit_arrow(u % ru); });
}

}  // namespace workbench
