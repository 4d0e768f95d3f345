#pragma once

#include "workbench/group.hpp"
#include "workbench/groupoid.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace workbench {

// An element of a DiscreteGroup. Finite backend: a single coordinate, the
// element index. Free abelian backend: the integer vector.
struct GroupElement {
  std::vector<std::int64_t> coords;

  auto operator<=>(const GroupElement&) const = default;
  bool operator==(const GroupElement&) const = default;
};

std::string to_string(const GroupElement& g);

struct FreeAbelianGroup {
  Index rank = 1;
  bool operator==(const FreeAbelianGroup&) const = default;
};

// The grading group. Either a finite group (Cayley table) or Z^k.
class DiscreteGroup {
 public:
  DiscreteGroup(FiniteGroup finite) : backend_(std::move(finite)) {}
  DiscreteGroup(FreeAbelianGroup free) : backend_(free) {}

  static DiscreteGroup trivial() { return DiscreteGroup(FiniteGroup::cyclic(1)); }
  static DiscreteGroup integers(Index rank = 1) { return DiscreteGroup(FreeAbelianGroup{rank}); }

  bool is_finite() const noexcept { return std::holds_alternative<FiniteGroup>(backend_); }
  const FiniteGroup& finite() const { return std::get<FiniteGroup>(backend_); }
  Index rank() const { return std::get<FreeAbelianGroup>(backend_).rank; }

  GroupElement identity() const;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  // Shape check: right number of coordinates, index in range.
  bool contains(const GroupElement& a) const;

  // Convenience for the finite backend.
  GroupElement element(Index i) const { return GroupElement{{static_cast<std::int64_t>(i)}}; }

 private:
  std::variant<FiniteGroup, FreeAbelianGroup> backend_;
};

// A homomorphism c : G -> Gamma, stored as one label per arrow.
struct Cocycle {
  DiscreteGroup group;
  std::vector<GroupElement> labels;

  const GroupElement& operator()(Index x) const { return labels[x]; }
};

Cocycle trivial_cocycle(const FiniteGroupoid& g);

// Checks labels are group elements, then c(xy) = c(x)c(y) on every
// composable pair, c(unit) = e and c(x^-1) = c(x)^-1.
ValidationReport validate_cocycle(const FiniteGroupoid& g, const Cocycle& c);

// G_gamma = c^-1({gamma}) in declared arrow order; empty outside the image.
std::vector<Index> fiber_of(const FiniteGroupoid& g, const Cocycle& c, const GroupElement& gamma);

// The subgroupoid G_e with the restricted Haar system. Unit space and unit
// order are those of G; arrows keep their ids and relative order.
struct IdentityFiber {
  GroupoidPtr ambient;
  GroupoidPtr groupoid;
  HaarSystem haar;
  std::vector<Index> to_ambient;    // G_e arrow -> G arrow
  std::vector<Index> from_ambient;  // G arrow -> G_e arrow, kNoIndex off G_e
};

IdentityFiber identity_fiber_subgroupoid(const HaarSystem& haar, const Cocycle& c);

// A groupoid with Haar system and a validated cocycle, plus the derived
// fiber decomposition and identity fiber. This is the context every
// graded construction works in.
class GradedGroupoid {
 public:
  // Throws InputError if the cocycle fails validation or has the wrong size.
  GradedGroupoid(HaarSystem haar, Cocycle cocycle);

  const FiniteGroupoid& groupoid() const noexcept { return haar_.groupoid(); }
  const GroupoidPtr& groupoid_ptr() const noexcept { return haar_.groupoid_ptr(); }
  const HaarSystem& haar() const noexcept { return haar_; }
  const Cocycle& cocycle() const noexcept { return cocycle_; }
  const DiscreteGroup& group() const noexcept { return cocycle_.group; }
  const IdentityFiber& identity_fiber() const noexcept { return fiber_; }
  const GroupElement& degree(Index x) const { return cocycle_.labels[x]; }

  // Nonempty fibers keyed by degree, i.e. the image of c.
  const std::map<GroupElement, std::vector<Index>>& fibers() const noexcept { return fibers_; }
  std::vector<GroupElement> image() const;
  // (G_gamma)u = {x in G_gamma : s(x) = u}.
  std::vector<Index> fiber_at_source(const GroupElement& gamma, Index u) const;

 private:
  HaarSystem haar_;
  Cocycle cocycle_;
  IdentityFiber fiber_;
  std::map<GroupElement, std::vector<Index>> fibers_;
};

}  // namespace workbench
