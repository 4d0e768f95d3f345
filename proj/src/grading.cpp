#include "workbench/grading.hpp"

#include "workbench/error.hpp"

namespace workbench {

std::string to_string(const GroupElement& g) {
  if (g.coords.size() == 1) return std::to_string(g.coords[0]);
  std::string out = "(";
  for (Index i = 0; i < g.coords.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(g.coords[i]);
  }
  return out + ")";
}

GroupElement DiscreteGroup::identity() const {
  if (is_finite()) return element(finite().identity());
  return GroupElement{std::vector<std::int64_t>(rank(), 0)};
}

GroupElement DiscreteGroup::multiply(const GroupElement& a, const GroupElement& b) const {
  if (is_finite()) {
    return element(finite().multiply(static_cast<Index>(a.coords[0]), static_cast<Index>(b.coords[0])));
  }
  GroupElement out = a;
  for (Index i = 0; i < out.coords.size(); ++i) out.coords[i] += b.coords[i];
  return out;
}

GroupElement DiscreteGroup::inverse(const GroupElement& a) const {
  if (is_finite()) return element(finite().inverse(static_cast<Index>(a.coords[0])));
  GroupElement out = a;
  for (auto& v : out.coords) v = -v;
  return out;
}

bool DiscreteGroup::contains(const GroupElement& a) const {
  if (is_finite()) {
    return a.coords.size() == 1 && a.coords[0] >= 0 &&
           static_cast<Index>(a.coords[0]) < finite().order();
  }
  return a.coords.size() == rank();
}

Cocycle trivial_cocycle(const FiniteGroupoid& g) {
  auto group = DiscreteGroup::trivial();
  std::vector<GroupElement> labels(g.arrow_count(), group.identity());
  return Cocycle{std::move(group), std::move(labels)};
}

ValidationReport validate_cocycle(const FiniteGroupoid& g, const Cocycle& c) {
  if (c.labels.size() != g.arrow_count()) {
    return ValidationReport::fail("label count", {}, "cocycle must label every arrow");
  }
  const DiscreteGroup& group = c.group;
  for (Index x = 0; x < g.arrow_count(); ++x) {
    if (!group.contains(c(x))) {
      return ValidationReport::fail("label shape", {g.arrow_id(x)},
                                    "label " + to_string(c(x)) + " is not a group element");
    }
  }
  for (Index x = 0; x < g.arrow_count(); ++x) {
    for (Index y : g.arrows_with_range(g.source(x))) {
      const Index xy = g.compose(x, y);
      const GroupElement expected = group.multiply(c(x), c(y));
      if (c(xy) != expected) {
        return ValidationReport::fail(
            "homomorphism", {g.arrow_id(x), g.arrow_id(y)},
            "c(xy) = " + to_string(c(xy)) + " != c(x)c(y) = " + to_string(expected));
      }
    }
  }
  for (Index u = 0; u < g.unit_count(); ++u) {
    const Index e = g.unit_arrow(u);
    if (c(e) != group.identity()) {
      return ValidationReport::fail("unit", {g.arrow_id(e)}, "c(unit) = " + to_string(c(e)) + " != e");
    }
  }
  for (Index x = 0; x < g.arrow_count(); ++x) {
    const Index xi = g.inverse(x);
    if (c(xi) != group.inverse(c(x))) {
      return ValidationReport::fail("inverse", {g.arrow_id(x), g.arrow_id(xi)}, "c(x^-1) != c(x)^-1");
    }
  }
  return ValidationReport::pass();
}

std::vector<Index> fiber_of(const FiniteGroupoid& g, const Cocycle& c, const GroupElement& gamma) {
  std::vector<Index> out;
  for (Index x = 0; x < g.arrow_count(); ++x)
    if (c(x) == gamma) out.push_back(x);
  return out;
}

IdentityFiber identity_fiber_subgroupoid(const HaarSystem& haar, const Cocycle& c) {
  const FiniteGroupoid& g = haar.groupoid();
  std::vector<Index> to_ambient = fiber_of(g, c, c.group.identity());
  std::vector<Index> from_ambient(g.arrow_count(), kNoIndex);
  for (Index i = 0; i < to_ambient.size(); ++i) from_ambient[to_ambient[i]] = i;

  const Index n = to_ambient.size();
  std::vector<Arrow> arrows;
  for (Index x : to_ambient) arrows.push_back(g.arrow(x));
  std::vector<Index> compose(n * n, kNoIndex);
  std::vector<Index> inverse(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Index xy = g.compose(to_ambient[i], to_ambient[j]);
      if (xy != kNoIndex) compose[i * n + j] = from_ambient[xy];
    }
    inverse[i] = from_ambient[g.inverse(to_ambient[i])];
  }
  std::vector<Index> unit_arrows(g.unit_count());
  for (Index u = 0; u < g.unit_count(); ++u) unit_arrows[u] = from_ambient[g.unit_arrow(u)];

  auto sub = std::make_shared<const FiniteGroupoid>(g.units(), std::move(arrows), std::move(compose),
                                                    std::move(inverse), std::move(unit_arrows));
  HaarSystem restricted = haar_from_weights(sub, haar.rho());
  return IdentityFiber{haar.groupoid_ptr(), std::move(sub), std::move(restricted), std::move(to_ambient),
                       std::move(from_ambient)};
}

namespace {

Cocycle checked(const HaarSystem& haar, Cocycle c) {
  const auto report = validate_cocycle(haar.groupoid(), c);
  if (!report) {
    std::string where = report.witness.empty() ? std::string("cocycle") : report.witness.front();
    throw InputError(where, "cocycle " + report.violation + ": " + report.detail);
  }
  return c;
}

}  // namespace

GradedGroupoid::GradedGroupoid(HaarSystem haar, Cocycle cocycle)
    : haar_(std::move(haar)),
      cocycle_(checked(haar_, std::move(cocycle))),
      fiber_(identity_fiber_subgroupoid(haar_, cocycle_)) {
  for (Index x = 0; x < groupoid().arrow_count(); ++x) fibers_[cocycle_(x)].push_back(x);
}

std::vector<GroupElement> GradedGroupoid::image() const {
  std::vector<GroupElement> out;
  for (const auto& [gamma, arrows] : fibers_) out.push_back(gamma);
  return out;
}

std::vector<Index> GradedGroupoid::fiber_at_source(const GroupElement& gamma, Index u) const {
  std::vector<Index> out;
  auto it = fibers_.find(gamma);
  if (it == fibers_.end()) return out;
  for (Index x : it->second)
    if (groupoid().source(x) == u) out.push_back(x);
  return out;
}

}  // namespace workbench
