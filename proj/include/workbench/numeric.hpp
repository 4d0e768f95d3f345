#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstddef>

namespace workbench {

using Index = std::size_t;
inline constexpr Index kNoIndex = static_cast<Index>(-1);

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Exact algebraic identities (associativity, delta calculus, unitary
// conjugations) are compared at this relative tolerance.
inline constexpr double kAlgebraicTol = 1e-12;
// Anything that goes through an eigen- or singular-value solve.
inline constexpr double kSpectralTol = 1e-9;

inline double max_abs(const Vector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Entrywise distance scaled by the larger magnitude (floored at 1).
inline double relative_deviation(const Vector& a, const Vector& b) {
  const double scale = std::max({1.0, max_abs(a), max_abs(b)});
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff() / scale;
}

inline double relative_deviation(const Matrix& a, const Matrix& b) {
  const double scale = std::max({1.0, max_abs(a), max_abs(b)});
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff() / scale;
}

}  // namespace workbench
