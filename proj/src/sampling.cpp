#include "workbench/sampling.hpp"

namespace workbench {

double Sampler::unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Complex Sampler::coefficient() {
  const double re = uniform(-1.0, 1.0);
  const double im = uniform(-1.0, 1.0);
  return {re, im};
}

GroupoidFunction Sampler::function(const GroupoidPtr& g) {
  GroupoidFunction f = GroupoidFunction::zero(g);
  for (Index x = 0; x < f.size(); ++x) f[x] = coefficient();
  return f;
}

GroupoidFunction Sampler::fiber_function(const GradedGroupoid& graded, const GroupElement& gamma) {
  GroupoidFunction f = GroupoidFunction::zero(graded.groupoid_ptr());
  auto it = graded.fibers().find(gamma);
  if (it == graded.fibers().end()) return f;
  for (Index x : it->second) f[x] = coefficient();
  return f;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  // FNV-1a over the label, then seed_seq to decorrelate nearby inputs.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : label) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::vector<GroupoidFunction> random_functions(const GroupoidPtr& g, Index count, std::uint64_t seed) {
  Sampler sampler(seed);
  std::vector<GroupoidFunction> out;
  out.reserve(count);
  for (Index i = 0; i < count; ++i) out.push_back(sampler.function(g));
  return out;
}

}  // namespace workbench
