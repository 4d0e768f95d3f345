#pragma once

#include "workbench/group.hpp"
#include "workbench/numeric.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace workbench {

struct Arrow {
  std::string id;
  Index src = 0;  // unit index
  Index dst = 0;  // unit index (the range r(x))
};

// A finite groupoid with an explicit composition table.
//
// The constructor only checks structural well-formedness (sizes, index
// ranges, unique ids). Whether the tables satisfy the groupoid axioms is
// the job of validate_groupoid(), so that broken input can be reported
// with a witness instead of rejected blindly.
//
// Units and arrows are ordered as declared; that order is the basis order
// for every matrix built from the groupoid.
class FiniteGroupoid {
 public:
  // `compose` is row-major arrow_count x arrow_count; entry (x, y) is the
  // product xy or kNoIndex where undefined.
  FiniteGroupoid(std::vector<std::string> units, std::vector<Arrow> arrows,
                 std::vector<Index> compose, std::vector<Index> inverse,
                 std::vector<Index> unit_arrow);

  Index unit_count() const noexcept { return units_.size(); }
  Index arrow_count() const noexcept { return arrows_.size(); }

  const std::string& unit_id(Index u) const { return units_[u]; }
  const Arrow& arrow(Index x) const { return arrows_[x]; }
  const std::string& arrow_id(Index x) const { return arrows_[x].id; }
  const std::vector<std::string>& units() const noexcept { return units_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  const std::vector<Index>& compose_table() const noexcept { return compose_; }
  const std::vector<Index>& inverse_table() const noexcept { return inverse_; }
  const std::vector<Index>& unit_arrows() const noexcept { return unit_arrow_; }

  Index source(Index x) const { return arrows_[x].src; }
  Index range(Index x) const { return arrows_[x].dst; }
  bool composable(Index x, Index y) const { return source(x) == range(y); }
  // The table entry for (x, y); kNoIndex when the table leaves it undefined.
  Index compose(Index x, Index y) const { return compose_[x * arrows_.size() + y]; }
  Index inverse(Index x) const { return inverse_[x]; }
  Index unit_arrow(Index u) const { return unit_arrow_[u]; }
  bool is_unit_arrow(Index x) const { return unit_arrow_[range(x)] == x; }

  // G^u = {x : r(x) = u} and G_u = {x : s(x) = u}, in declared order.
  std::span<const Index> arrows_with_range(Index u) const { return by_range_[u]; }
  std::span<const Index> arrows_with_source(Index u) const { return by_source_[u]; }

  std::optional<Index> find_unit(std::string_view id) const;
  std::optional<Index> find_arrow(std::string_view id) const;

 private:
  std::vector<std::string> units_;
  std::vector<Arrow> arrows_;
  std::vector<Index> compose_;
  std::vector<Index> inverse_;
  std::vector<Index> unit_arrow_;
  std::vector<std::vector<Index>> by_range_;
  std::vector<std::vector<Index>> by_source_;
  std::unordered_map<std::string, Index> unit_lookup_;
  std::unordered_map<std::string, Index> arrow_lookup_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

struct ValidationReport {
  bool passed = true;
  std::string violation;             // short name of the failed axiom
  std::vector<std::string> witness;  // arrow ids exhibiting the failure
  std::string detail;

  explicit operator bool() const noexcept { return passed; }
  static ValidationReport pass() { return {}; }
  static ValidationReport fail(std::string violation, std::vector<std::string> witness,
                               std::string detail);
};

// Checks, in order: composition defined exactly on composable pairs, range
// and source of products, unit arrows are units, inverses, involutivity
// of inversion, associativity. Stops at the first violation.
ValidationReport validate_groupoid(const FiniteGroupoid& g);

// ---------------------------------------------------------------------------
// Haar systems

// Left Haar system on a finite groupoid. Left invariance forces the weight
// of an arrow to depend only on its source, so the system is stored as one
// positive weight rho(u) per unit and w(y) = rho(s(y)).
class HaarSystem {
 public:
  const FiniteGroupoid& groupoid() const noexcept { return *groupoid_; }
  const GroupoidPtr& groupoid_ptr() const noexcept { return groupoid_; }
  const std::vector<double>& rho() const noexcept { return rho_; }
  double rho(Index u) const { return rho_[u]; }
  double weight(Index x) const { return rho_[groupoid_->source(x)]; }
  std::vector<double> arrow_weights() const;
  bool is_counting() const;

 private:
  friend HaarSystem haar_from_weights(GroupoidPtr, std::vector<double>);
  HaarSystem(GroupoidPtr g, std::vector<double> rho) : groupoid_(std::move(g)), rho_(std::move(rho)) {}

  GroupoidPtr groupoid_;
  std::vector<double> rho_;
};

// Throws InputError (path = unit id) on a nonpositive or non-finite weight.
HaarSystem haar_from_weights(GroupoidPtr g, std::vector<double> rho);
HaarSystem counting_haar(GroupoidPtr g);

struct InvarianceViolation {
  Index translate = 0;  // the arrow x translating by
  Index indicator = 0;  // f is the indicator of this arrow
  double lhs = 0.0;     // sum over r(y) = s(x) of f(xy) w(y)
  double rhs = 0.0;     // sum over r(y) = r(x) of f(y) w(y)
};

// Evaluates the left-invariance identity for every arrow x and every
// indicator function f; returns the first pair where the two sides differ.
std::optional<InvarianceViolation> find_invariance_violation(const FiniteGroupoid& g,
                                                            std::span<const double> w);
bool validate_left_invariance(const FiniteGroupoid& g, std::span<const double> w);

// ---------------------------------------------------------------------------
// Constructors. Each result passes validate_groupoid.

// Units "1".."n", arrows "(i,j)" with r = i, s = j and (i,j)(j,k) = (i,k).
GroupoidPtr pair_groupoid(Index n);
// One unit "*", arrows "g0".."g{n-1}" following the group's element order.
GroupoidPtr group_groupoid(const FiniteGroup& group);
// Transformation groupoid of a right action: `act[x][h]` = x.h. Arrows
// "(x,h)" with r = x, s = x.h, (x,h)(x.h,k) = (x,hk). Throws InputError with
// a witness if `act` is not a right action.
GroupoidPtr action_groupoid(Index points, const FiniteGroup& group,
                            const std::vector<std::vector<Index>>& act);
// Z/n acting on n points by x.h = x + h mod n.
GroupoidPtr cyclic_shift_groupoid(Index points);
// Disjoint union of groups, one per unit "u0", "u1", ...
GroupoidPtr group_bundle(const std::vector<FiniteGroup>& groups);
// Ids are prefixed "0:" and "1:" to keep them distinct.
GroupoidPtr disjoint_union(const FiniteGroupoid& left, const FiniteGroupoid& right);
// Units and arrows are pairs, ids "(a|b)".
GroupoidPtr product(const FiniteGroupoid& left, const FiniteGroupoid& right);

}  // namespace workbench
