#include "workbench/suites.hpp"

#include "workbench/error.hpp"
#include "workbench/fell_bundle.hpp"
#include "workbench/module_theory.hpp"
#include "workbench/rep_norms.hpp"
#include "workbench/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace workbench {

namespace {

// Deviation of x from y, scaled by 1 + |y|.
double gap(double x, double y) { return std::abs(x - y) / (1.0 + std::abs(y)); }
// How far x exceeds y, scaled by 1 + |y|; zero when x <= y.
double excess(double x, double y) { return std::max(0.0, x - y) / (1.0 + std::abs(y)); }

double deviation(const GroupoidFunction& a, const GroupoidFunction& b) {
  return relative_deviation(a.coefficients(), b.coefficients());
}

struct Context {
  const Document& doc;
  const std::string& suite;
  const SuiteOptions& options;

  const GradedGroupoid& graded() const { return doc.graded; }
  const HaarSystem& haar() const { return doc.haar(); }
  const IdentityFiber& fiber() const { return doc.graded.identity_fiber(); }
  const GroupoidPtr& g() const { return doc.groupoid_ptr(); }
  Sampler stream(const std::string& check) const {
    return Sampler(derive_seed(options.seed, doc.name + "/" + suite + "/" + check));
  }
};

class Tally {
 public:
  Tally(const Context& ctx, std::string check, std::string anchor, double tolerance)
      : ctx_(ctx), check_(std::move(check)), anchor_(std::move(anchor)), tolerance_(tolerance) {}

  // One trial; passes when deviation <= tolerance and `ok` holds.
  void add(double dev, const std::function<Json()>& witness = {}, bool ok = true) {
    ++trials_;
    if (std::isfinite(dev)) max_dev_ = std::max(max_dev_, dev);
    if (ok && dev <= tolerance_) return;
    if (failures_++ == 0) first_ = witness ? witness() : Json(nullptr);
  }
  const std::string& check() const noexcept { return check_; }
  void set(const std::string& key, Json value) { extra_[key] = std::move(value); }
  void mark_info() { info_ = true; }

  CheckEntry entry() const {
    Json w = extra_;
    w["trials"] = trials_;
    w["failures"] = failures_;
    w["max_deviation"] = max_dev_;
    if (failures_ > 0) w["first_failure"] = first_;
    CheckStatus status = CheckStatus::pass;
    if (info_) status = CheckStatus::info;
    else if (trials_ == 0) status = CheckStatus::skip;
    else if (failures_ > 0) status = CheckStatus::fail;
    return CheckEntry{ctx_.suite, ctx_.doc.name, check_, anchor_, status, std::move(w), tolerance_,
                      ctx_.options.seed};
  }

 private:
  const Context& ctx_;
  std::string check_;
  std::string anchor_;
  double tolerance_;
  Index trials_ = 0;
  Index failures_ = 0;
  double max_dev_ = 0.0;
  Json first_;
  Json extra_ = Json::object();
  bool info_ = false;
};

std::string arrows_json_list(const FiniteGroupoid& g, std::initializer_list<Index> xs) {
  std::string out;
  for (Index x : xs) out += (out.empty() ? "" : ", ") + g.arrow_id(x);
  return out;
}

Json report_json(const ValidationReport& r) {
  return Json{{"violation", r.violation}, {"witness", r.witness}, {"detail", r.detail}};
}

// ---------------------------------------------------------------------------

void haar_suite(const Context& ctx, std::vector<CheckEntry>& out) {
  const FiniteGroupoid& g = ctx.doc.groupoid();
  const GradedGroupoid& graded = ctx.graded();
  const DiscreteGroup& group = graded.group();

  Tally axioms(ctx, "groupoid_axioms", "sec-set-up", 0.0);
  const ValidationReport gr = validate_groupoid(g);
  axioms.add(gr ? 0.0 : 1.0, [&] { return report_json(gr); });
  out.push_back(axioms.entry());

  Tally invariance(ctx, "left_invariance", "sec-set-up", 0.0);
  const std::vector<double> w = ctx.doc.arrow_weights();
  const auto violation = find_invariance_violation(g, w);
  invariance.add(violation ? std::abs(violation->lhs - violation->rhs) : 0.0, [&] {
    return Json{{"translate", g.arrow_id(violation->translate)},
                {"indicator", g.arrow_id(violation->indicator)},
                {"lhs", violation->lhs},
                {"rhs", violation->rhs}};
  });
  invariance.set("explicit_weights", ctx.doc.weights.has_value());
  out.push_back(invariance.entry());

  Tally cocycle(ctx, "cocycle_homomorphism", "sec-set-up", 0.0);
  const ValidationReport cr = validate_cocycle(g, graded.cocycle());
  cocycle.add(cr ? 0.0 : 1.0, [&] { return report_json(cr); });
  out.push_back(cocycle.entry());

  Tally partition(ctx, "fiber_partition", "sec-set-up", 0.0);
  std::vector<int> seen(g.arrow_count(), 0);
  for (const auto& [gamma, arrows] : graded.fibers())
    for (Index x : arrows) ++seen[x];
  for (Index x = 0; x < g.arrow_count(); ++x) {
    partition.add(seen[x] == 1 ? 0.0 : 1.0, [&] { return Json{{"arrow", g.arrow_id(x)}, {"fibers", seen[x]}}; });
  }
  partition.set("fibers", graded.fibers().size());
  out.push_back(partition.entry());

  Tally calculus(ctx, "fiber_support_calculus", "sec-set-up", 0.0);
  for (Index x = 0; x < g.arrow_count(); ++x) {
    for (Index y : g.arrows_with_range(g.source(x))) {
      const bool ok = graded.degree(g.compose(x, y)) == group.multiply(graded.degree(x), graded.degree(y));
      calculus.add(ok ? 0.0 : 1.0, [&] { return Json{{"pair", arrows_json_list(g, {x, y})}}; });
    }
    const bool inv_ok = graded.degree(g.inverse(x)) == group.inverse(graded.degree(x));
    calculus.add(inv_ok ? 0.0 : 1.0, [&] { return Json{{"inverse_of", g.arrow_id(x)}}; });
  }
  out.push_back(calculus.entry());

  Tally fiber(ctx, "identity_fiber_subgroupoid", "sec-set-up", 0.0);
  const IdentityFiber& ge = graded.identity_fiber();
  const ValidationReport fr = validate_groupoid(*ge.groupoid);
  fiber.add(fr ? 0.0 : 1.0, [&] { return report_json(fr); });
  const std::vector<double> we = ge.haar.arrow_weights();
  const auto fv = find_invariance_violation(*ge.groupoid, we);
  fiber.add(fv ? 1.0 : 0.0, [&] { return Json{{"restricted_haar", "not left invariant"}}; });
  fiber.set("arrows", ge.groupoid->arrow_count());
  out.push_back(fiber.entry());
}

// ---------------------------------------------------------------------------

void algebra_suite(const Context& ctx, std::vector<CheckEntry>& out) {
  const FiniteGroupoid& g = ctx.doc.groupoid();
  const HaarSystem& haar = ctx.haar();
  const Index count = ctx.options.count;

  {
    Tally t(ctx, "associativity", "eq-defn-restricted-inv-conv", kAlgebraicTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i < count; ++i) {
      const auto a = s.function(ctx.g()), b = s.function(ctx.g()), c = s.function(ctx.g());
      t.add(deviation(convolve(convolve(a, b, haar), c, haar), convolve(a, convolve(b, c, haar), haar)),
            [&] { return Json{{"trial", i}}; });
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "involution", "eq-defn-restricted-inv-conv", kAlgebraicTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i < count; ++i) {
      const auto a = s.function(ctx.g()), b = s.function(ctx.g());
      const Complex z = s.coefficient();
      const double anti = deviation(involute(convolve(a, b, haar)), convolve(involute(b), involute(a), haar));
      const double twice = deviation(involute(involute(a)), a);
      const double conj_linear = deviation(involute(z * a + b), std::conj(z) * involute(a) + involute(b));
      t.add(std::max({anti, twice, conj_linear}), [&] {
        return Json{{"trial", i}, {"anti_multiplicative", anti}, {"involutive", twice}, {"conjugate_linear", conj_linear}};
      });
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "unit_element", "eq-defn-restricted-inv-conv", kAlgebraicTol);
    Sampler s = ctx.stream(t.check());
    const auto e = unit_element(haar);
    for (Index i = 0; i < count; ++i) {
      const auto a = s.function(ctx.g());
      t.add(std::max(deviation(convolve(e, a, haar), a), deviation(convolve(a, e, haar), a)),
            [&] { return Json{{"trial", i}}; });
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "delta_calculus", "eq-defn-restricted-inv-conv", kAlgebraicTol);
    for (Index x = 0; x < g.arrow_count(); ++x) {
      for (Index y = 0; y < g.arrow_count(); ++y) {
        GroupoidFunction expected = GroupoidFunction::zero(ctx.g());
        if (g.composable(x, y)) expected[g.compose(x, y)] = haar.weight(x);
        const auto got = convolve(GroupoidFunction::delta(ctx.g(), x), GroupoidFunction::delta(ctx.g(), y), haar);
        t.add(deviation(got, expected), [&] { return Json{{"pair", arrows_json_list(g, {x, y})}}; });
      }
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "i_norm_submultiplicative", "sec-set-up", kSpectralTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i < count; ++i) {
      const auto a = s.function(ctx.g()), b = s.function(ctx.g());
      const double lhs = i_norm(convolve(a, b, haar), haar);
      const double rhs = i_norm(a, haar) * i_norm(b, haar);
      const double inv = gap(i_norm(involute(a), haar), i_norm(a, haar));
      t.add(std::max(excess(lhs, rhs), inv), [&] { return Json{{"trial", i}, {"lhs", lhs}, {"rhs", rhs}}; });
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "graded_components_sum", "sec-set-up", kAlgebraicTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i < count; ++i) {
      const auto a = s.function(ctx.g());
      GroupoidFunction sum = GroupoidFunction::zero(ctx.g());
      for (const auto& gamma : ctx.graded().image()) sum += graded_component(ctx.graded(), a, gamma);
      t.add(deviation(sum, a), [&] { return Json{{"trial", i}}; });
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "inclusion_homomorphism", "thm-inclusions", kAlgebraicTol);
    Sampler s = ctx.stream(t.check());
    const IdentityFiber& fiber = ctx.fiber();
    for (Index i = 0; i < count; ++i) {
      const auto f = s.function(fiber.groupoid), h = s.function(fiber.groupoid);
      const double mult =
          deviation(include_i(fiber, convolve(f, h, fiber.haar)), convolve(include_i(fiber, f), include_i(fiber, h), ctx.haar()));
      const double adj = deviation(involute(include_i(fiber, f)), include_i(fiber, involute(f)));
      const double back = deviation(restrict_q(fiber, include_i(fiber, f)), f);
      t.add(std::max({mult, adj, back}), [&] { return Json{{"trial", i}}; });
    }
    out.push_back(t.entry());
  }
}

// ---------------------------------------------------------------------------

void norms_suite(const Context& ctx, std::vector<CheckEntry>& out) {
  const FiniteGroupoid& g = ctx.doc.groupoid();
  const HaarSystem& haar = ctx.haar();
  const Index count = ctx.options.count;

  {
    Tally t(ctx, "cstar_identity", "prop-part2", kSpectralTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i < count; ++i) {
      const auto a = s.function(ctx.g());
      const double n = cstar_norm(a, haar);
      const double nn = cstar_norm(convolve(involute(a), a, haar), haar);
      t.add(std::abs(nn - n * n) / (1.0 + n * n), [&] { return Json{{"trial", i}, {"norm", n}, {"norm_of_a_star_a", nn}}; });
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "cstar_below_i_norm", "sec-set-up", kSpectralTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i < count; ++i) {
      const auto a = s.function(ctx.g());
      const double n = cstar_norm(a, haar), in = i_norm(a, haar);
      t.add(excess(n, in), [&] { return Json{{"trial", i}, {"cstar", n}, {"i_norm", in}}; });
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "cstar_involution_invariant", "prop-part2", kSpectralTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i < count; ++i) {
      const auto a = s.function(ctx.g());
      t.add(gap(cstar_norm(involute(a), haar), cstar_norm(a, haar)), [&] { return Json{{"trial", i}}; });
    }
    t.add(gap(cstar_norm(unit_element(haar), haar), 1.0), [] { return Json{{"unit_norm", "not 1"}}; });
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "delta_norms", "prop-part2", kAlgebraicTol);
    for (Index x = 0; x < g.arrow_count(); ++x) {
      const double expected = std::sqrt(haar.rho(g.source(x)) * haar.rho(g.range(x)));
      const double got = cstar_norm(GroupoidFunction::delta(ctx.g(), x), haar);
      t.add(std::abs(got - expected) / std::max(1.0, expected),
            [&] { return Json{{"arrow", g.arrow_id(x)}, {"norm", got}, {"expected", expected}}; });
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "positivity_of_a_star_a", "prop-right-Hilbert", kSpectralTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i < count; ++i) {
      const auto a = s.function(ctx.g());
      const auto p = convolve(involute(a), a, haar);
      const double lowest = min_eigenvalue(p, haar);
      t.add(std::max(0.0, -lowest) / (1.0 + cstar_norm(p, haar)), [&] { return Json{{"trial", i}, {"min_eigenvalue", lowest}}; },
            positivity_check(p, haar));
    }
    out.push_back(t.entry());
  }
}

// ---------------------------------------------------------------------------

void inclusion_suite(const Context& ctx, std::vector<CheckEntry>& out) {
  const FiniteGroupoid& g = ctx.doc.groupoid();
  const GradedGroupoid& graded = ctx.graded();
  const IdentityFiber& fiber = ctx.fiber();
  const Index count = ctx.options.count;
  const Index small = std::min<Index>(count, 20);

  {
    Tally t(ctx, "isometric_inclusion", "thm-inclusions", kSpectralTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i < count; ++i) {
      const auto f = s.function(fiber.groupoid);
      const double lhs = cstar_norm(include_i(fiber, f), ctx.haar()), rhs = cstar_norm(f, fiber.haar);
      t.add(gap(lhs, rhs), [&] { return Json{{"trial", i}, {"norm_in_G", lhs}, {"norm_in_Ge", rhs}}; });
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "norm_chain", "prop-part2", kSpectralTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i < count; ++i) {
      const NormChain chain = norm_chain(graded, s.function(fiber.groupoid));
      t.add(std::max(gap(chain.ambient, chain.blocks), gap(chain.blocks, chain.identity_fiber)), [&] {
        return Json{{"trial", i}, {"ambient", chain.ambient}, {"blocks", chain.blocks}, {"identity_fiber", chain.identity_fiber}};
      });
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "block_decomposition_U", "prop-part2", kAlgebraicTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i < small; ++i) {
      const auto f = s.function(fiber.groupoid);
      for (Index u = 0; u < g.unit_count(); ++u) {
        const UDecomposition d = decompose_rep_U(graded, f, u);
        t.add(d.deviation, [&] { return Json{{"trial", i}, {"unit", g.unit_id(u)}}; });
      }
    }
    t.set("non_counting_haar", !ctx.haar().is_counting());
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "translation_V", "prop-part2", kAlgebraicTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i < small; ++i) {
      const auto f = s.function(fiber.groupoid);
      for (Index u = 0; u < g.unit_count(); ++u) {
        for (const auto& gamma : graded.image()) {
          const auto arrows = graded.fiber_at_source(gamma, u);
          if (arrows.empty()) continue;
          // Canonical translator on every trial, every choice on the first.
          std::vector<Index> choices{canonical_translator(graded, u, gamma)};
          if (i == 0) choices = arrows;
          for (Index z : choices) {
            const VTranslation v = translate_rep_V(graded, f, u, gamma, z);
            t.add(std::max(v.deviation, v.unitarity_defect), [&] {
              return Json{{"trial", i}, {"unit", g.unit_id(u)}, {"degree", to_string(gamma)}, {"translator", g.arrow_id(z)}};
            });
          }
        }
      }
    }
    out.push_back(t.entry());
  }
}

// ---------------------------------------------------------------------------

void module_suite(const Context& ctx, std::vector<CheckEntry>& out) {
  const GradedGroupoid& graded = ctx.graded();
  const HaarSystem& haar = ctx.haar();
  const IdentityFiber& fiber = ctx.fiber();
  const Index count = ctx.options.count;
  const InducedSpace space(graded);
  auto L = [&](const GroupoidFunction& a, const GroupoidFunction& b) { return convolve(a, b, haar); };

  {
    Tally t(ctx, "action_is_convolution", "eq-action", kAlgebraicTol);
    Sampler s = ctx.stream(t.check());
    const auto e = unit_element(fiber.haar);
    for (Index i = 0; i < count; ++i) {
      const auto a = s.function(ctx.g());
      const auto f = s.function(fiber.groupoid), h = s.function(fiber.groupoid);
      const double conv = deviation(module_action(graded, a, f), convolve(a, include_i(fiber, f), haar));
      const double assoc = deviation(module_action(graded, a, convolve(f, h, fiber.haar)),
                                     module_action(graded, module_action(graded, a, f), h));
      const double unit = deviation(module_action(graded, a, e), a);
      t.add(std::max({conv, assoc, unit}), [&] {
        return Json{{"trial", i}, {"convolution", conv}, {"associativity", assoc}, {"unit", unit}};
      });
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "inner_product_algebra", "eq-innerproduct", kAlgebraicTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i < count; ++i) {
      const auto a = s.function(ctx.g()), b = s.function(ctx.g());
      const auto f = s.function(fiber.groupoid);
      const auto ab = module_inner_product(graded, a, b);
      const double symmetric = deviation(involute(ab), module_inner_product(graded, b, a));
      const double linear =
          deviation(module_inner_product(graded, a, module_action(graded, b, f)), convolve(ab, f, fiber.haar));
      t.add(std::max(symmetric, linear), [&] { return Json{{"trial", i}, {"symmetry", symmetric}, {"right_linearity", linear}}; });
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "inner_product_positive_definite", "prop-right-Hilbert", kSpectralTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i <= count; ++i) {
      // The last trial is the zero element.
      const auto a = i < count ? s.function(ctx.g()) : GroupoidFunction::zero(ctx.g());
      const auto aa = module_inner_product(graded, a, a);
      const double lowest = min_eigenvalue(aa, fiber.haar);
      const double scale = 1.0 + cstar_norm(aa, fiber.haar);
      const double mnorm = module_norm(graded, a);
      const bool definite = mnorm > 1e-9 || cstar_norm(a, haar) <= 1e-6;
      t.add(std::max(0.0, -lowest) / scale,
            [&] { return Json{{"trial", i}, {"min_eigenvalue", lowest}, {"module_norm", mnorm}}; }, definite);
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "cauchy_schwarz", "cor-right-Hilbert", kSpectralTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i < count; ++i) {
      const auto a = s.function(ctx.g()), b = s.function(ctx.g());
      const double lhs = cstar_norm(module_inner_product(graded, a, b), fiber.haar);
      const double rhs = module_norm(graded, a) * module_norm(graded, b);
      t.add(excess(lhs, rhs), [&] { return Json{{"trial", i}, {"lhs", lhs}, {"rhs", rhs}}; });
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "norm_sandwich", "prop-QP", kSpectralTol);
    Tally gap_record(ctx, "L_norm_vs_cstar_norm", "prop-L", kSpectralTol);
    gap_record.mark_info();
    Sampler s = ctx.stream(t.check());
    Index equal = 0;
    double largest_gap = 0.0;
    for (Index i = 0; i < count; ++i) {
      const auto a = s.function(ctx.g());
      const double q = cstar_norm(restrict_q(fiber, a), fiber.haar);
      const double m = module_norm(graded, a);
      const double l = space.operator_norm(a);
      const double in = i_norm(a, haar);
      t.add(std::max({excess(q, m), excess(m, l), excess(l, in)}), [&] {
        return Json{{"trial", i}, {"restriction", q}, {"module_norm", m}, {"L_norm", l}, {"i_norm", in}};
      });
      const double c = cstar_norm(a, haar);
      gap_record.add(gap(l, c));
      if (gap(l, c) <= kSpectralTol) ++equal;
      largest_gap = std::max(largest_gap, c - l);
    }
    gap_record.set("equal_within_tolerance", equal);
    gap_record.set("largest_cstar_minus_L", largest_gap);
    out.push_back(t.entry());
    out.push_back(gap_record.entry());
  }
  {
    Tally t(ctx, "L_isometric_on_identity_fiber", "prop-part1", kSpectralTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i < count; ++i) {
      const auto f = s.function(fiber.groupoid);
      const double target = cstar_norm(f, fiber.haar);
      const double l = space.operator_norm(include_i(fiber, f));
      const double m = module_norm(graded, include_i(fiber, f));
      t.add(std::max(gap(l, target), gap(m, target)),
            [&] { return Json{{"trial", i}, {"L_norm", l}, {"module_norm", m}, {"norm_in_Ge", target}}; });
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "L_adjointable", "prop-L", kAlgebraicTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i < count; ++i) {
      const auto a1 = s.function(ctx.g()), a2 = s.function(ctx.g());
      const auto b = s.function(ctx.g()), d = s.function(ctx.g());
      const auto lhs = module_inner_product(graded, L(a1, b), L(a2, d));
      const auto rhs = module_inner_product(graded, b, L(convolve(involute(a1), a2, haar), d));
      t.add(deviation(lhs, rhs), [&] { return Json{{"trial", i}}; });
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "kernel_lemma", "lemma-kernel", 0.0);
    Sampler s = ctx.stream(t.check());
    std::vector<GroupoidFunction> corpus;
    for (Index i = 0; i < count; ++i) corpus.push_back(s.function(ctx.g()));
    corpus.push_back(GroupoidFunction::zero(ctx.g()));
    const KernelReport report = kernel_check(graded, space, corpus);
    for (Index i = 0; i < report.entries.size(); ++i) {
      const KernelEntry& e = report.entries[i];
      t.add(e.consistent ? 0.0 : 1.0,
            [&] { return Json{{"trial", i}, {"L_norm", e.l_norm}, {"P_norm", e.p_norm}, {"norm", e.a_norm}}; });
    }
    t.set("zero_threshold", report.tolerance);
    out.push_back(t.entry());
  }
}

// ---------------------------------------------------------------------------

void expectation_suite(const Context& ctx, std::vector<CheckEntry>& out) {
  const FiniteGroupoid& g = ctx.doc.groupoid();
  const GradedGroupoid& graded = ctx.graded();
  const HaarSystem& haar = ctx.haar();
  const IdentityFiber& fiber = ctx.fiber();
  const Index count = ctx.options.count;
  auto P = [&](const GroupoidFunction& a) { return expectation_P(graded, a); };

  {
    Tally t(ctx, "restriction_contraction", "prop-QP", kSpectralTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i < count; ++i) {
      const auto a = s.function(ctx.g());
      const double q = cstar_norm(restrict_q(fiber, a), fiber.haar), n = cstar_norm(a, haar);
      t.add(excess(q, n), [&] { return Json{{"trial", i}, {"restriction", q}, {"norm", n}}; });
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "expectation_idempotent_bimodule", "cor-app", kAlgebraicTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i < count; ++i) {
      const auto a = s.function(ctx.g());
      const auto b = include_i(fiber, s.function(fiber.groupoid)), c = include_i(fiber, s.function(fiber.groupoid));
      const double idem = deviation(P(P(a)), P(a));
      const double bimodule = deviation(P(convolve(convolve(involute(b), a, haar), c, haar)),
                                        convolve(convolve(involute(b), P(a), haar), c, haar));
      t.add(std::max(idem, bimodule), [&] { return Json{{"trial", i}, {"idempotent", idem}, {"bimodule", bimodule}}; });
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "expectation_positive_faithful", "cor-app", kSpectralTol);
    Sampler s = ctx.stream(t.check());
    for (Index i = 0; i < count; ++i) {
      const auto a = s.function(ctx.g());
      const auto p = P(convolve(involute(a), a, haar));
      const double pn = cstar_norm(p, haar);
      const double lowest = min_eigenvalue(p, haar);
      const bool faithful = pn > kSpectralTol || cstar_norm(a, haar) <= kSpectralTol;
      t.add(std::max(0.0, -lowest) / (1.0 + pn), [&] { return Json{{"trial", i}, {"min_eigenvalue", lowest}, {"P_norm", pn}}; },
            faithful && positivity_check(p, haar));
    }
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "ruy_identity", "eq-Ruy", kAlgebraicTol);
    Sampler s = ctx.stream(t.check());
    const Index trials = std::min<Index>(count, 20);
    for (Index i = 0; i < trials; ++i) {
      const auto a = s.function(ctx.g());
      for (Index x = 0; x < g.arrow_count(); ++x) {
        const RuyCheck r = check_eq_ruy(graded, a, GroupoidFunction::delta(ctx.g(), x));
        t.add(r.deviation, [&] { return Json{{"trial", i}, {"b", "delta_" + g.arrow_id(x)}}; });
      }
      for (const auto& gamma : graded.image()) {
        const RuyCheck r = check_eq_ruy(graded, a, s.fiber_function(graded, gamma));
        t.add(r.deviation, [&] { return Json{{"trial", i}, {"b", "random in degree " + to_string(gamma)}}; });
      }
    }
    out.push_back(t.entry());
  }
}

// ---------------------------------------------------------------------------

void axiom_entry(const Context& ctx, std::vector<CheckEntry>& out, const std::string& check,
                 const std::string& anchor, double tol, const AxiomReport& r, Json extra = Json::object()) {
  Tally t(ctx, check, anchor, tol);
  for (const auto& [key, value] : extra.items()) t.set(key, value);
  t.set("checks", r.checks);
  t.add(r.passed ? r.max_deviation : std::max(r.max_deviation, tol + 1.0),
        [&] { return Json{{"witness", r.witness}}; });
  out.push_back(t.entry());
}

void bundle_suite(const Context& ctx, std::vector<CheckEntry>& out) {
  const GradedGroupoid& graded = ctx.graded();
  const GradedSubspaceFamily family(graded);
  Sampler s = ctx.stream("samples");
  std::vector<GroupoidFunction> samples;
  const Index n_samples = std::max<Index>(ctx.options.count, 200);
  for (Index i = 0; i < n_samples; ++i) samples.push_back(s.function(ctx.g()));
  const std::span<const GroupoidFunction> few(samples.data(), std::min<Index>(samples.size(), ctx.options.count));

  const GradingAxiomReport axioms = check_grading_axioms(family, few);
  axiom_entry(ctx, out, "grading_products", "cor-app", 0.0, axioms.products);
  axiom_entry(ctx, out, "grading_adjoints", "cor-app", 0.0, axioms.adjoints);
  Json dims = Json::object();
  for (const auto& [gamma, arrows] : family.basis()) dims[to_string(gamma)] = arrows.size();
  axiom_entry(ctx, out, "grading_spanning", "cor-app", 0.0, axioms.spanning, Json{{"dimensions", dims}});
  axiom_entry(ctx, out, "grading_independence", "cor-app", 0.0, axioms.independence);

  const TopologicalGradingReport top = check_topological_grading(family, samples);
  axiom_entry(ctx, out, "expectation_fixes_unit", "cor-app", kAlgebraicTol, top.unit_fixed);
  axiom_entry(ctx, out, "expectation_identity_on_Ae", "cor-app", kAlgebraicTol, top.identity_on_Ae);
  axiom_entry(ctx, out, "expectation_zero_off_Ae", "cor-app", 0.0, top.zero_off_Ae);
  axiom_entry(ctx, out, "expectation_bounded", "cor-app", kSpectralTol, top.bounded,
              Json{{"sup_ratio", top.sup_ratio}, {"samples", samples.size()}});

  const BundleRepresentation taut = tautological_representation(graded);
  const BundleRepReport tr = bundle_rep_check(family, taut, few);
  axiom_entry(ctx, out, "tautological_rep_multiplicative", "prop-bundles A and B", kAlgebraicTol, tr.multiplicative);
  axiom_entry(ctx, out, "tautological_rep_adjoint", "prop-bundles A and B", kAlgebraicTol, tr.adjoint);
  axiom_entry(ctx, out, "tautological_rep_homomorphism", "prop-bundles A and B", kAlgebraicTol, tr.homomorphism);
  axiom_entry(ctx, out, "tautological_rep_i_norm_bound", "prop-bundles A and B", kSpectralTol, tr.i_norm_bound);

  {
    // Negative control: negating the image of a unit arrow must be caught.
    BundleRepresentation flipped = taut;
    const Index x = graded.groupoid().unit_arrow(0);
    flipped.images[x] *= -1.0;
    const BundleRepReport fr = bundle_rep_check(family, flipped, std::span<const GroupoidFunction>());
    Tally t(ctx, "sign_flip_detected", "prop-bundles A and B", 0.0);
    t.set("flipped", graded.groupoid().arrow_id(x));
    t.add(fr.multiplicative.passed ? 1.0 : 0.0, {});
    t.set("witness", fr.multiplicative.witness);
    out.push_back(t.entry());
  }
  {
    Tally t(ctx, "character_reps", "prop-bundles A and B", kSpectralTol);
    const auto characters = real_characters(graded.groupoid());
    for (Index k = 0; k < characters.size(); ++k) {
      const BundleRepReport cr = bundle_rep_check(family, character_representation(graded, characters[k]), few);
      t.add(cr.passed() ? 0.0 : 1.0, [&] {
        return Json{{"character", k},
                    {"witness", cr.multiplicative.witness + cr.adjoint.witness + cr.homomorphism.witness +
                                    cr.i_norm_bound.witness}};
      });
    }
    t.set("characters", characters.size());
    out.push_back(t.entry());
  }
}

void skip_entry(const Context& ctx, std::vector<CheckEntry>& out) {
  Tally t(ctx, "haar_precondition", "sec-set-up", 0.0);
  t.set("reason", "Haar weights fail left invariance; see the haar suite");
  out.push_back(t.entry());
}

using SuiteFn = void (*)(const Context&, std::vector<CheckEntry>&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites{
      {"haar", haar_suite},     {"algebra", algebra_suite},         {"norms", norms_suite},
      {"inclusion", inclusion_suite}, {"module", module_suite}, {"expectation", expectation_suite},
      {"bundle", bundle_suite}};
  return suites;
}

bool entry_less(const CheckEntry& a, const CheckEntry& b) {
  return std::tie(a.suite, a.instance, a.check) < std::tie(b.suite, b.instance, b.check);
}

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
    case CheckStatus::info: return "info";
  }
  return "unknown";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  return name == "all" || std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end();
}

std::vector<CheckEntry> run_suite(const std::string& suite, const Document& doc, const SuiteOptions& options) {
  if (!is_suite(suite)) throw DomainError("unknown suite \"" + suite + "\"");
  std::vector<CheckEntry> out;
  for (const auto& [name, fn] : registry()) {
    if (suite != "all" && suite != name) continue;
    const Context ctx{doc, name, options};
    if (name != "haar" && !doc.haar_valid()) {
      skip_entry(ctx, out);
      continue;
    }
    fn(ctx, out);
  }
  std::sort(out.begin(), out.end(), entry_less);
  return out;
}

Index VerificationReport::count(CheckStatus s) const {
  return static_cast<Index>(std::count_if(entries.begin(), entries.end(), [s](const CheckEntry& e) { return e.status == s; }));
}

VerificationReport verify(std::span<const Document> documents, const std::string& suite, const SuiteOptions& options) {
  VerificationReport report{suite, options, {}};
  for (const Document& doc : documents) {
    auto entries = run_suite(suite, doc, options);
    report.entries.insert(report.entries.end(), std::make_move_iterator(entries.begin()),
                          std::make_move_iterator(entries.end()));
  }
  std::stable_sort(report.entries.begin(), report.entries.end(), entry_less);
  return report;
}

Json VerificationReport::to_json() const {
  Json entries_json = Json::array();
  for (const CheckEntry& e : entries) {
    entries_json.push_back(Json{{"suite", e.suite},
                                {"instance", e.instance},
                                {"check", e.check},
                                {"anchor", e.anchor},
                                {"status", to_string(e.status)},
                                {"witnesses", e.witnesses},
                                {"tolerance", {{"applied", e.tolerance},
                                               {"algebraic", kAlgebraicTol},
                                               {"spectral", kSpectralTol}}},
                                {"seed", e.seed}});
  }
  return Json{{"format_version", kReportFormatVersion},
              {"tool_version", kToolVersion},
              {"suite", suite},
              {"seed", options.seed},
              {"count", options.count},
              {"notes", {"full and reduced norms coincide for finite groupoids; one C*-norm is computed",
                         "A_gamma and B_gamma coincide; one subspace family is checked",
                         "the module completion is the coefficient space and the quotient Y is not built"}},
              {"summary", {{"checks", entries.size()},
                           {"passed", count(CheckStatus::pass)},
                           {"failed", count(CheckStatus::fail)},
                           {"skipped", count(CheckStatus::skip)},
                           {"info", count(CheckStatus::info)}}},
              {"entries", std::move(entries_json)}};
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  for (const CheckEntry& e : entries) {
    std::string status = to_string(e.status);
    std::transform(status.begin(), status.end(), status.begin(), ::toupper);
    out << status << "  " << e.suite << "  " << e.instance << "  " << e.check;
    if (e.witnesses.contains("trials")) {
      const Index trials = e.witnesses["trials"];
      const Index failures = e.witnesses["failures"];
      out << "  " << trials - failures << "/" << trials;
    }
    if (e.witnesses.contains("max_deviation")) out << "  max_dev=" << e.witnesses["max_deviation"].get<double>();
    if (e.witnesses.contains("first_failure")) out << "  first_failure=" << e.witnesses["first_failure"].dump();
    out << "\n";
  }
  out << "summary: " << entries.size() << " checks, " << count(CheckStatus::pass) << " passed, "
      << count(CheckStatus::fail) << " failed, " << count(CheckStatus::skip) << " skipped, "
      << count(CheckStatus::info) << " recorded\n";
  return out.str();
}

}  // namespace workbench
