#include "workbench/conv_algebra.hpp"

#include "workbench/error.hpp"

#include <cmath>

namespace workbench {

namespace {

void require_same(const GroupoidFunction& a, const GroupoidFunction& b, const char* op) {
  if (!a.same_groupoid(b)) throw DomainError(std::string(op) + ": functions live on different groupoids");
}

void require_on(const GroupoidFunction& a, const GroupoidPtr& g, const char* op) {
  if (a.groupoid_ptr() != g) throw DomainError(std::string(op) + ": function is not on the expected groupoid");
}

}  // namespace

GroupoidFunction::GroupoidFunction(GroupoidPtr g, Vector coefficients)
    : groupoid_(std::move(g)), coefficients_(std::move(coefficients)) {
  if (!groupoid_) throw DomainError("GroupoidFunction: null groupoid");
  if (static_cast<Index>(coefficients_.size()) != groupoid_->arrow_count()) {
    throw DomainError("GroupoidFunction: coefficient count does not match arrow count");
  }
}

GroupoidFunction GroupoidFunction::zero(GroupoidPtr g) {
  const auto n = static_cast<Eigen::Index>(g->arrow_count());
  return GroupoidFunction(std::move(g), Vector::Zero(n));
}

GroupoidFunction GroupoidFunction::delta(GroupoidPtr g, Index x, Complex value) {
  if (x >= g->arrow_count()) throw DomainError("delta: arrow index out of range");
  GroupoidFunction f = zero(std::move(g));
  f[x] = value;
  return f;
}

GroupoidFunction& GroupoidFunction::operator+=(const GroupoidFunction& other) {
  require_same(*this, other, "operator+");
  coefficients_ += other.coefficients_;
  return *this;
}

GroupoidFunction& GroupoidFunction::operator-=(const GroupoidFunction& other) {
  require_same(*this, other, "operator-");
  coefficients_ -= other.coefficients_;
  return *this;
}

GroupoidFunction& GroupoidFunction::operator*=(Complex scalar) {
  coefficients_ *= scalar;
  return *this;
}

GroupoidFunction convolve(const GroupoidFunction& a, const GroupoidFunction& b,
                          const HaarSystem& haar) {
  require_same(a, b, "convolve");
  require_on(a, haar.groupoid_ptr(), "convolve");
  const FiniteGroupoid& g = a.groupoid();
  GroupoidFunction out = GroupoidFunction::zero(a.groupoid_ptr());
  for (Index x = 0; x < g.arrow_count(); ++x) {
    Complex sum = 0.0;
    for (Index y : g.arrows_with_range(g.range(x))) {
      const Complex ay = a[y];
      if (ay == 0.0) continue;
      sum += ay * b[g.compose(g.inverse(y), x)] * haar.weight(y);
    }
    out[x] = sum;
  }
  return out;
}

GroupoidFunction involute(const GroupoidFunction& a) {
  const FiniteGroupoid& g = a.groupoid();
  GroupoidFunction out = GroupoidFunction::zero(a.groupoid_ptr());
  for (Index x = 0; x < g.arrow_count(); ++x) out[x] = std::conj(a[g.inverse(x)]);
  return out;
}

double i_norm(const GroupoidFunction& a, const HaarSystem& haar) {
  require_on(a, haar.groupoid_ptr(), "i_norm");
  const FiniteGroupoid& g = a.groupoid();
  double best = 0.0;
  for (Index u = 0; u < g.unit_count(); ++u) {
    double range_side = 0.0, source_side = 0.0;
    for (Index x : g.arrows_with_range(u)) {
      range_side += std::abs(a[x]) * haar.weight(x);
      source_side += std::abs(a[g.inverse(x)]) * haar.weight(x);
    }
    best = std::max({best, range_side, source_side});
  }
  return best;
}

GroupoidFunction unit_element(const HaarSystem& haar) {
  const FiniteGroupoid& g = haar.groupoid();
  GroupoidFunction e = GroupoidFunction::zero(haar.groupoid_ptr());
  for (Index u = 0; u < g.unit_count(); ++u) e[g.unit_arrow(u)] = 1.0 / haar.rho(u);
  return e;
}

GroupoidFunction include_i(const IdentityFiber& fiber, const GroupoidFunction& f) {
  require_on(f, fiber.groupoid, "include_i");
  GroupoidFunction out = GroupoidFunction::zero(fiber.ambient);
  for (Index i = 0; i < fiber.to_ambient.size(); ++i) out[fiber.to_ambient[i]] = f[i];
  return out;
}

GroupoidFunction restrict_q(const IdentityFiber& fiber, const GroupoidFunction& a) {
  require_on(a, fiber.ambient, "restrict_q");
  GroupoidFunction out = GroupoidFunction::zero(fiber.groupoid);
  for (Index i = 0; i < fiber.to_ambient.size(); ++i) out[i] = a[fiber.to_ambient[i]];
  return out;
}

GroupoidFunction graded_component(const GradedGroupoid& graded, const GroupoidFunction& a,
                                  const GroupElement& gamma) {
  require_on(a, graded.groupoid_ptr(), "graded_component");
  GroupoidFunction out = GroupoidFunction::zero(a.groupoid_ptr());
  auto it = graded.fibers().find(gamma);
  if (it == graded.fibers().end()) return out;
  for (Index x : it->second) out[x] = a[x];
  return out;
}

std::vector<Index> support(const GroupoidFunction& a, double threshold) {
  std::vector<Index> out;
  for (Index x = 0; x < a.size(); ++x)
    if (std::abs(a[x]) > threshold) out.push_back(x);
  return out;
}

}  // namespace workbench
