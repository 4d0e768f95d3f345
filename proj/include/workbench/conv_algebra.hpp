#pragma once

#include "workbench/grading.hpp"
#include "workbench/groupoid.hpp"
#include "workbench/numeric.hpp"

namespace workbench {

// An element of C_c(G): one complex coefficient per arrow, in declared
// arrow order. Functions remember their groupoid; operations mixing
// functions on different groupoids throw DomainError.
class GroupoidFunction {
 public:
  GroupoidFunction(GroupoidPtr g, Vector coefficients);

  static GroupoidFunction zero(GroupoidPtr g);
  static GroupoidFunction delta(GroupoidPtr g, Index x, Complex value = 1.0);

  const FiniteGroupoid& groupoid() const noexcept { return *groupoid_; }
  const GroupoidPtr& groupoid_ptr() const noexcept { return groupoid_; }
  const Vector& coefficients() const noexcept { return coefficients_; }
  Index size() const noexcept { return static_cast<Index>(coefficients_.size()); }

  Complex operator[](Index x) const { return coefficients_[static_cast<Eigen::Index>(x)]; }
  Complex& operator[](Index x) { return coefficients_[static_cast<Eigen::Index>(x)]; }

  bool same_groupoid(const GroupoidFunction& other) const noexcept {
    return groupoid_ == other.groupoid_;
  }

  GroupoidFunction& operator+=(const GroupoidFunction& other);
  GroupoidFunction& operator-=(const GroupoidFunction& other);
  GroupoidFunction& operator*=(Complex scalar);

  friend GroupoidFunction operator+(GroupoidFunction a, const GroupoidFunction& b) { return a += b; }
  friend GroupoidFunction operator-(GroupoidFunction a, const GroupoidFunction& b) { return a -= b; }
  friend GroupoidFunction operator*(Complex s, GroupoidFunction a) { return a *= s; }

 private:
  GroupoidPtr groupoid_;
  Vector coefficients_;
};

// (a*b)(x) = sum over r(y) = r(x) of a(y) b(y^-1 x) w(y).
GroupoidFunction convolve(const GroupoidFunction& a, const GroupoidFunction& b,
                          const HaarSystem& haar);

// a*(x) = conj(a(x^-1)).
GroupoidFunction involute(const GroupoidFunction& a);

// max over units of the range-side and source-side weighted l1 sums.
double i_norm(const GroupoidFunction& a, const HaarSystem& haar);

// The unit of C_c(G): sum over units u of rho(u)^-1 delta_u.
GroupoidFunction unit_element(const HaarSystem& haar);

// Extension by zero from C_c(G_e) to C_c(G).
GroupoidFunction include_i(const IdentityFiber& fiber, const GroupoidFunction& f);
// Restriction of a function on G to G_e.
GroupoidFunction restrict_q(const IdentityFiber& fiber, const GroupoidFunction& a);

// a_gamma = a restricted to G_gamma (as a function on G).
GroupoidFunction graded_component(const GradedGroupoid& graded, const GroupoidFunction& a,
                                  const GroupElement& gamma);

// Arrows where |a(x)| exceeds `threshold`.
std::vector<Index> support(const GroupoidFunction& a, double threshold = 0.0);

}  // namespace workbench
