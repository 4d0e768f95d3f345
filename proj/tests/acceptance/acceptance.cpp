// Acceptance run over the built-in corpus under seed 42. Prints one line
// per criterion and exits nonzero if any fails.

#include "oracles.hpp"
#include "workbench/corpus.hpp"
#include "workbench/fell_bundle.hpp"
#include "workbench/module_theory.hpp"
#include "workbench/rep_norms.hpp"
#include "workbench/sampling.hpp"
#include "workbench/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace workbench;

namespace {

constexpr std::uint64_t kSeed = 42;
constexpr double kAlg = 1e-12;
constexpr double kSpec = 1e-9;

bool below(double x, double y) { return x <= y + kSpec * (1.0 + std::abs(y)); }

double entrywise(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

double entrywise(const GroupoidFunction& a, const GroupoidFunction& b) {
  return oracle::max_diff(a.coefficients(), b.coefficients());
}

// Tracks trials and the first failure of one criterion.
struct Result {
  Index trials = 0;
  Index failures = 0;
  double worst = 0.0;
  std::string first;

  void add(bool ok, double dev, const std::function<std::string()>& where) {
    ++trials;
    if (std::isfinite(dev)) worst = std::max(worst, dev);
    if (ok) return;
    if (failures++ == 0) first = where();
  }
};

Sampler stream(const Document& d, const std::string& label) {
  return Sampler(derive_seed(kSeed, "acceptance/" + d.name + "/" + label));
}

// ---------------------------------------------------------------------------

Result isometric_inclusion(const std::vector<Document>& docs) {
  Result r;
  for (const auto& d : docs) {
    const IdentityFiber& fiber = d.graded.identity_fiber();
    Sampler s = stream(d, "1");
    for (int i = 0; i < 100; ++i) {
      const auto f = s.function(fiber.groupoid);
      const double lhs = cstar_norm(include_i(fiber, f), d.haar()), rhs = cstar_norm(f, fiber.haar);
      const double dev = std::abs(lhs - rhs);
      r.add(dev <= kSpec * (1.0 + rhs), dev, [&] { return d.name + " trial " + std::to_string(i); });
    }
  }
  return r;
}

Result norm_sandwich(const std::vector<Document>& docs) {
  Result r;
  for (const auto& d : docs) {
    const IdentityFiber& fiber = d.graded.identity_fiber();
    Sampler s = stream(d, "2");
    for (int i = 0; i < 100; ++i) {
      const auto a = s.function(d.groupoid_ptr());
      const double q = cstar_norm(restrict_q(fiber, a), fiber.haar);
      const double m = module_norm(d.graded, a);
      const double l = L_operator_norm(d.graded, a);
      const double in = i_norm(a, d.haar());
      const bool ok = below(q, m) && below(m, l) && below(l, in);
      r.add(ok, std::max({q - m, m - l, l - in, 0.0}), [&] {
        std::ostringstream os;
        os << d.name << " trial " << i << ": " << q << " " << m << " " << l << " " << in;
        return os.str();
      });
    }
  }
  return r;
}

Result contraction(const std::vector<Document>& docs) {
  Result r;
  for (const auto& d : docs) {
    const IdentityFiber& fiber = d.graded.identity_fiber();
    Sampler s = stream(d, "3");
    for (int i = 0; i < 100; ++i) {
      const auto a = s.function(d.groupoid_ptr());
      const double q = cstar_norm(restrict_q(fiber, a), fiber.haar), n = cstar_norm(a, d.haar());
      r.add(below(q, n), std::max(0.0, q - n), [&] { return d.name + " trial " + std::to_string(i); });
    }
  }
  return r;
}

Result cstar_and_i_norm(const std::vector<Document>& docs) {
  Result r;
  for (const auto& d : docs) {
    Sampler s = stream(d, "4");
    for (int i = 0; i < 100; ++i) {
      const auto a = s.function(d.groupoid_ptr()), b = s.function(d.groupoid_ptr());
      const double n = cstar_norm(a, d.haar());
      const double aa = cstar_norm(convolve(involute(a), a, d.haar()), d.haar());
      const double dev = std::abs(aa - n * n) / (1.0 + n * n);
      r.add(dev <= kSpec, dev, [&] { return d.name + " C* identity, trial " + std::to_string(i); });
      const double ab = i_norm(convolve(a, b, d.haar()), d.haar()), bound = i_norm(a, d.haar()) * i_norm(b, d.haar());
      r.add(ab <= bound * (1.0 + kSpec), std::max(0.0, ab - bound) / bound,
            [&] { return d.name + " I-norm, trial " + std::to_string(i); });
    }
  }
  return r;
}

Result decomposition_unitaries(const std::vector<Document>& docs, bool& weighted_seen) {
  Result r;
  weighted_seen = false;
  for (const auto& d : docs) {
    const GradedGroupoid& graded = d.graded;
    const FiniteGroupoid& g = d.groupoid();
    const IdentityFiber& fiber = graded.identity_fiber();
    const bool weighted = !d.haar().is_counting();
    Sampler s = stream(d, "5");
    for (int i = 0; i < 20; ++i) {
      const auto f = s.function(fiber.groupoid);
      for (Index u = 0; u < g.unit_count(); ++u) {
        // U: the permuted representation against the direct sum of blocks.
        const UDecomposition dec = decompose_rep_U(graded, f, u);
        Matrix diag = Matrix::Zero(dec.conjugated.rows(), dec.conjugated.cols());
        Eigen::Index at = 0;
        for (const auto& b : dec.blocks) {
          diag.block(at, at, b.block.rows(), b.block.cols()) = b.block;
          at += b.block.rows();
        }
        const double du = at == dec.conjugated.rows() ? entrywise(dec.conjugated, diag) : INFINITY;
        r.add(du <= kAlg, du, [&] { return d.name + " U at unit " + g.unit_id(u); });
        if (weighted && !dec.blocks.empty()) weighted_seen = true;

        // V: every degree and every translator z in (G_gamma)u.
        for (const auto& gamma : graded.image()) {
          for (Index z : graded.fiber_at_source(gamma, u)) {
            const VTranslation v = translate_rep_V(graded, f, u, gamma, z);
            const Matrix target = oracle::rep_matrix(*fiber.groupoid, oracle::weights(fiber.haar), f.coefficients(),
                                                     g.range(z));
            const Index n = static_cast<Index>(v.unitary.rows());
            const double dv = std::max({entrywise(v.conjugated, target), entrywise(v.target, target),
                                        entrywise(v.unitary * v.unitary.adjoint(), Matrix(Matrix::Identity(n, n)))});
            r.add(dv <= kAlg, dv, [&] { return d.name + " V at unit " + g.unit_id(u) + " via " + g.arrow_id(z); });
          }
        }
      }
    }
  }
  return r;
}

Result ruy_identity(const std::vector<Document>& docs) {
  Result r;
  for (const auto& d : docs) {
    const HaarSystem& haar = d.haar();
    Sampler s = stream(d, "6");
    for (int i = 0; i < 20; ++i) {
      const auto a = s.function(d.groupoid_ptr());
      const auto p = expectation_P(d.graded, a);
      for (Index x = 0; x < d.groupoid().arrow_count(); ++x) {
        const auto b = GroupoidFunction::delta(d.groupoid_ptr(), x);
        const RuyCheck c = check_eq_ruy(d.graded, a, b);
        // The right side is recomputed through the oracle convolution.
        const auto w = oracle::weights(haar);
        const Vector rhs = oracle::convolve(d.groupoid(), w, oracle::convolve(d.groupoid(), w,
                                                                                oracle::involute(d.groupoid(), b.coefficients()),
                                                                                p.coefficients()),
                                            b.coefficients());
        const double dev = std::max(entrywise(c.lhs, c.rhs), oracle::max_diff(c.lhs.coefficients(), rhs));
        r.add(dev <= kAlg, dev, [&] { return d.name + " b = delta " + d.groupoid().arrow_id(x); });
      }
    }
  }
  return r;
}

Result kernel_lemma(const std::vector<Document>& docs) {
  Result r;
  for (const auto& d : docs) {
    const InducedSpace space(d.graded);
    Sampler s = stream(d, "7");
    std::vector<GroupoidFunction> corpus{GroupoidFunction::zero(d.groupoid_ptr())};
    for (int i = 0; i < 20; ++i) corpus.push_back(s.function(d.groupoid_ptr()));
    const KernelReport k = kernel_check(d.graded, space, corpus);
    for (Index i = 0; i < k.entries.size(); ++i) {
      const KernelEntry& e = k.entries[i];
      const bool l0 = e.l_norm <= kSpec, p0 = e.p_norm <= kSpec, a0 = e.a_norm <= kSpec;
      const bool ok = e.consistent && l0 == p0 && p0 == a0 && (i == 0) == a0;
      r.add(ok, 0.0, [&] { return d.name + " element " + std::to_string(i); });
    }
  }
  return r;
}

Result grading_axioms(const std::vector<Document>& docs) {
  Result r;
  for (const auto& d : docs) {
    const GradedSubspaceFamily family(d.graded);
    Sampler s = stream(d, "8");
    std::vector<GroupoidFunction> samples;
    for (int i = 0; i < 200; ++i) samples.push_back(s.function(d.groupoid_ptr()));
    const GradingAxiomReport g = check_grading_axioms(family, samples);
    r.add(g.passed() && g.products.max_deviation == 0.0 && g.adjoints.max_deviation == 0.0,
          std::max(g.products.max_deviation, g.adjoints.max_deviation),
          [&] { return d.name + " grading: " + g.products.witness + g.adjoints.witness + g.spanning.witness; });
    const TopologicalGradingReport t = check_topological_grading(family, samples);
    r.add(t.passed() && t.sup_ratio <= 1.0 + kSpec, t.sup_ratio - 1.0,
          [&] { return d.name + " expectation: sup ratio " + std::to_string(t.sup_ratio); });

    // P = id on the A_e basis and 0 on every other basis element, exactly.
    for (Index x = 0; x < d.groupoid().arrow_count(); ++x) {
      const auto delta = GroupoidFunction::delta(d.groupoid_ptr(), x);
      const bool in_e = d.graded.degree(x) == d.graded.group().identity();
      const auto expected = in_e ? delta : GroupoidFunction::zero(d.groupoid_ptr());
      const double dev = entrywise(expectation_P(d.graded, delta), expected);
      r.add(dev == 0.0, dev, [&] { return d.name + " P on delta " + d.groupoid().arrow_id(x); });
    }
  }
  return r;
}

Result positivity(const std::vector<Document>& docs) {
  Result r;
  for (const auto& d : docs) {
    const IdentityFiber& fiber = d.graded.identity_fiber();
    Sampler s = stream(d, "9");
    std::vector<GroupoidFunction> elements{GroupoidFunction::zero(d.groupoid_ptr())};
    for (int i = 0; i < 100; ++i) elements.push_back(s.function(d.groupoid_ptr()));
    for (Index i = 0; i < elements.size(); ++i) {
      const auto& a = elements[i];
      const auto aa = module_inner_product(d.graded, a, a);
      const double lambda = min_eigenvalue(aa, fiber.haar);
      const double scale = cstar_norm(aa, fiber.haar);
      r.add(lambda >= -kSpec * (1.0 + scale), std::max(0.0, -lambda),
            [&] { return d.name + " min eigenvalue, element " + std::to_string(i); });
      if (module_norm(d.graded, a) <= 1e-9) {
        const double n = cstar_norm(a, d.haar());
        r.add(n <= 1e-6, n, [&] { return d.name + " definiteness, element " + std::to_string(i); });
      }
    }
  }
  return r;
}

// Closed forms, derived by hand:
//   delta_x * delta_y = rho(s(x)) delta_xy when s(x) = r(y), else 0;
//   ||delta_x|| = sqrt(rho(s(x)) rho(r(x)));
//   on Z/2 with weight r, ||alpha e + beta g|| = r max(|alpha + beta|, |alpha - beta|).
Result closed_forms(const std::vector<Document>& docs, bool& z2_seen) {
  Result r;
  z2_seen = false;
  for (const auto& d : docs) {
    const FiniteGroupoid& g = d.groupoid();
    const HaarSystem& haar = d.haar();
    for (Index x = 0; x < g.arrow_count(); ++x) {
      const auto dx = GroupoidFunction::delta(d.groupoid_ptr(), x);
      for (Index y = 0; y < g.arrow_count(); ++y) {
        GroupoidFunction expected = GroupoidFunction::zero(d.groupoid_ptr());
        if (g.source(x) == g.range(y)) expected[g.compose(x, y)] = haar.rho(g.source(x));
        const double dev = entrywise(convolve(dx, GroupoidFunction::delta(d.groupoid_ptr(), y), haar), expected);
        r.add(dev <= kAlg * (1.0 + haar.rho(g.source(x))), dev,
              [&] { return d.name + " delta product " + g.arrow_id(x) + " " + g.arrow_id(y); });
      }
      const double expected = std::sqrt(haar.rho(g.source(x)) * haar.rho(g.range(x)));
      const double dev = std::abs(cstar_norm(dx, haar) - expected) / expected;
      r.add(dev <= kAlg, dev, [&] { return d.name + " delta norm " + g.arrow_id(x); });
    }

    if (g.unit_count() == 1 && g.arrow_count() == 2) {
      z2_seen = true;
      const double w = haar.rho(0);
      const Index gen = g.is_unit_arrow(0) ? 1 : 0;
      Sampler s = stream(d, "10");
      for (int i = 0; i < 100; ++i) {
        const Complex alpha = s.coefficient(), beta = s.coefficient();
        const auto a = GroupoidFunction::delta(d.groupoid_ptr(), g.unit_arrow(0), alpha) +
                       GroupoidFunction::delta(d.groupoid_ptr(), gen, beta);
        const double expected = w * std::max(std::abs(alpha + beta), std::abs(alpha - beta));
        const double dev = std::abs(cstar_norm(a, haar) - expected) / (1.0 + expected);
        r.add(dev <= kAlg, dev, [&] { return d.name + " Z/2 norm, trial " + std::to_string(i); });
      }
    }
  }
  return r;
}

bool report(int id, const char* name, const Result& r, const std::string& extra = "") {
  const bool ok = r.failures == 0 && r.trials > 0 && extra.empty();
  std::printf("%s  criterion %2d  %-28s %lld/%lld  max_dev=%.3g%s%s\n", ok ? "PASS" : "FAIL", id, name,
              static_cast<long long>(r.trials - r.failures), static_cast<long long>(r.trials), r.worst,
              r.first.empty() ? "" : ("  first: " + r.first).c_str(), extra.empty() ? "" : ("  " + extra).c_str());
  return ok;
}

}  // namespace

int main() {
  std::vector<Document> docs;
  for (auto& e : builtin_corpus(kSeed)) docs.push_back(std::move(e.document));
  std::printf("corpus: %zu instances, seed %llu\n", docs.size(), static_cast<unsigned long long>(kSeed));

  bool ok = docs.size() >= 12;
  bool weighted_seen = false, z2_seen = false;
  ok &= report(1, "isometric_inclusion", isometric_inclusion(docs));
  ok &= report(2, "norm_sandwich", norm_sandwich(docs));
  ok &= report(3, "restriction_contraction", contraction(docs));
  ok &= report(4, "cstar_identity_i_norm", cstar_and_i_norm(docs));
  const Result five = decomposition_unitaries(docs, weighted_seen);
  ok &= report(5, "decomposition_unitaries", five, weighted_seen ? "" : "no weighted instance");
  ok &= report(6, "ruy_identity", ruy_identity(docs));
  ok &= report(7, "kernel_lemma", kernel_lemma(docs));
  ok &= report(8, "grading_axioms", grading_axioms(docs));
  ok &= report(9, "positivity", positivity(docs));
  const Result ten = closed_forms(docs, z2_seen);
  ok &= report(10, "closed_forms", ten, z2_seen ? "" : "no Z/2 instance");

  // The full verification run on the corpus, with its time budget.
  const auto start = std::chrono::steady_clock::now();
  const VerificationReport full = verify(docs, "all", SuiteOptions{kSeed, 100});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool full_ok = full.ok() && full.count(CheckStatus::pass) > 0 && seconds < 60.0;
  std::printf("%s  verify --suite all         %lld checks, %lld failed, %.2f s\n", full_ok ? "PASS" : "FAIL",
              static_cast<long long>(full.entries.size()), static_cast<long long>(full.count(CheckStatus::fail)),
              seconds);
  ok &= full_ok;
  return ok ? 0 : 1;
}
