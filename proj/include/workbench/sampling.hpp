#pragma once

#include "workbench/conv_algebra.hpp"
#include "workbench/grading.hpp"

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace workbench {

// Seeded source of random coefficients. Draws use the raw 64-bit output of
// mt19937_64 (fully specified by the standard) and map it to [-1, 1] by
// hand, so sequences match across standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double unit();
  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  // Real and imaginary parts independent, uniform in [-1, 1].
  Complex coefficient();

  GroupoidFunction function(const GroupoidPtr& g);
  // Random coefficients on the arrows of a single fiber, zero elsewhere.
  GroupoidFunction fiber_function(const GradedGroupoid& graded, const GroupElement& gamma);

 private:
  std::mt19937_64 engine_;
};

// Mixes a base seed with a label into an independent stream seed.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

std::vector<GroupoidFunction> random_functions(const GroupoidPtr& g, Index count, std::uint64_t seed);

}  // namespace workbench
