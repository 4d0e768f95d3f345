#include "workbench/fell_bundle.hpp"

#include "workbench/error.hpp"
#include "workbench/module_theory.hpp"
#include "workbench/rep_norms.hpp"

#include <cmath>

namespace workbench {

namespace {

void record(AxiomReport& r, bool ok, double deviation, const std::string& witness) {
  ++r.checks;
  r.max_deviation = std::max(r.max_deviation, deviation);
  if (!ok && r.passed) {
    r.passed = false;
    r.witness = witness;
  }
}

// Largest |a(x)| over arrows outside G_gamma; zero iff a lies in A_gamma.
double leakage(const GradedGroupoid& graded, const GroupoidFunction& a, const GroupElement& gamma) {
  double worst = 0.0;
  for (Index x = 0; x < a.size(); ++x)
    if (graded.degree(x) != gamma) worst = std::max(worst, std::abs(a[x]));
  return worst;
}

}  // namespace

GradedSubspaceFamily::GradedSubspaceFamily(const GradedGroupoid& graded) : graded_(graded) {}

Index GradedSubspaceFamily::dimension(const GroupElement& gamma) const {
  auto it = basis().find(gamma);
  return it == basis().end() ? 0 : it->second.size();
}

bool GradedSubspaceFamily::contains(const GroupElement& gamma, const GroupoidFunction& a, double tol) const {
  return leakage(graded_, a, gamma) <= tol;
}

GradingAxiomReport check_grading_axioms(const GradedSubspaceFamily& family,
                                        std::span<const GroupoidFunction> samples) {
  const GradedGroupoid& graded = family.graded();
  const FiniteGroupoid& g = graded.groupoid();
  const DiscreteGroup& group = graded.group();
  const HaarSystem& haar = graded.haar();
  const GroupoidPtr& gp = graded.groupoid_ptr();
  GradingAxiomReport report;

  for (Index x = 0; x < g.arrow_count(); ++x) {
    const auto dx = GroupoidFunction::delta(gp, x);
    for (Index y = 0; y < g.arrow_count(); ++y) {
      const GroupElement target = group.multiply(graded.degree(x), graded.degree(y));
      const double leak = leakage(graded, convolve(dx, GroupoidFunction::delta(gp, y), haar), target);
      record(report.products, leak == 0.0, leak,
             "delta_" + g.arrow_id(x) + " * delta_" + g.arrow_id(y) + " leaves A_" + to_string(target));
    }
    const GroupElement inv = group.inverse(graded.degree(x));
    const double leak = leakage(graded, involute(dx), inv);
    record(report.adjoints, leak == 0.0, leak, "delta_" + g.arrow_id(x) + "* leaves A_" + to_string(inv));
  }

  const auto image = graded.image();
  for (Index i = 0; i + 1 < samples.size(); ++i) {
    for (const GroupElement& beta : image) {
      const auto a = graded_component(graded, samples[i], beta);
      for (const GroupElement& gamma : image) {
        const auto b = graded_component(graded, samples[i + 1], gamma);
        const GroupElement target = group.multiply(beta, gamma);
        const double leak = leakage(graded, convolve(a, b, haar), target);
        record(report.products, leak == 0.0, leak,
               "sample product of degrees " + to_string(beta) + ", " + to_string(gamma) + " leaves A_" +
                   to_string(target));
      }
      const GroupElement inv = group.inverse(beta);
      const double leak = leakage(graded, involute(a), inv);
      record(report.adjoints, leak == 0.0, leak,
             "sample adjoint of degree " + to_string(beta) + " leaves A_" + to_string(inv));
    }
  }
  // Equality A_gamma* = A_{gamma^-1}: involution is injective, so equal
  // dimensions upgrade the containment to equality.
  for (const GroupElement& gamma : image) {
    const GroupElement inv = group.inverse(gamma);
    const bool ok = family.dimension(gamma) == family.dimension(inv);
    record(report.adjoints, ok, ok ? 0.0 : 1.0,
           "dim A_" + to_string(gamma) + " != dim A_" + to_string(inv));
  }

  Index total = 0;
  for (const auto& [gamma, arrows] : family.basis()) total += arrows.size();
  record(report.spanning, total == g.arrow_count(), total == g.arrow_count() ? 0.0 : 1.0,
         "sum of dimensions " + std::to_string(total) + " != " + std::to_string(g.arrow_count()));

  std::vector<int> seen(g.arrow_count(), 0);
  for (const auto& [gamma, arrows] : family.basis())
    for (Index x : arrows) ++seen[x];
  for (Index x = 0; x < g.arrow_count(); ++x) {
    record(report.independence, seen[x] == 1, seen[x] == 1 ? 0.0 : 1.0,
           "arrow " + g.arrow_id(x) + " lies in " + std::to_string(seen[x]) + " grading subspaces");
  }
  return report;
}

TopologicalGradingReport check_topological_grading(const GradedSubspaceFamily& family,
                                                   std::span<const GroupoidFunction> samples) {
  const GradedGroupoid& graded = family.graded();
  const FiniteGroupoid& g = graded.groupoid();
  const HaarSystem& haar = graded.haar();
  const GroupElement e = graded.group().identity();
  TopologicalGradingReport report;

  const auto unit = unit_element(haar);
  const double unit_dev = relative_deviation(expectation_P(graded, unit).coefficients(), unit.coefficients());
  record(report.unit_fixed, unit_dev <= kAlgebraicTol, unit_dev, "P(e) != e");

  for (Index x = 0; x < g.arrow_count(); ++x) {
    const auto dx = GroupoidFunction::delta(graded.groupoid_ptr(), x);
    const auto p = expectation_P(graded, dx);
    if (graded.degree(x) == e) {
      const double dev = relative_deviation(p.coefficients(), dx.coefficients());
      record(report.identity_on_Ae, dev <= kAlgebraicTol, dev, "P(delta_" + g.arrow_id(x) + ") != delta");
    } else {
      const double dev = max_abs(p.coefficients());
      record(report.zero_off_Ae, dev == 0.0, dev, "P(delta_" + g.arrow_id(x) + ") != 0");
    }
  }

  for (Index i = 0; i < samples.size(); ++i) {
    const double denom = cstar_norm(samples[i], haar);
    if (denom == 0.0) continue;
    const double ratio = cstar_norm(expectation_P(graded, samples[i]), haar) / denom;
    report.sup_ratio = std::max(report.sup_ratio, ratio);
    record(report.bounded, ratio <= 1.0 + kSpectralTol, std::max(0.0, ratio - 1.0),
           "||P(a)|| / ||a|| = " + std::to_string(ratio) + " at sample " + std::to_string(i));
  }
  return report;
}

// ---------------------------------------------------------------------------

BundleRepresentation tautological_representation(const GradedGroupoid& graded) {
  const FiniteGroupoid& g = graded.groupoid();
  const HaarSystem& haar = graded.haar();
  BundleRepresentation rep;
  rep.dimension = g.arrow_count();  // sum over u of |Gu|
  const auto dim = static_cast<Eigen::Index>(rep.dimension);
  for (Index x = 0; x < g.arrow_count(); ++x) {
    Matrix m = Matrix::Zero(dim, dim);
    Eigen::Index offset = 0;
    const auto dx = GroupoidFunction::delta(graded.groupoid_ptr(), x);
    for (Index u = 0; u < g.unit_count(); ++u) {
      const Matrix block = regular_rep_matrix(dx, haar, u).matrix;
      m.block(offset, offset, block.rows(), block.cols()) = block;
      offset += block.rows();
    }
    rep.images.push_back(std::move(m));
  }
  return rep;
}

BundleRepresentation character_representation(const GradedGroupoid& graded,
                                               const std::vector<Complex>& chi) {
  const FiniteGroupoid& g = graded.groupoid();
  if (g.unit_count() != 1) throw DomainError("character_representation: groupoid has more than one unit");
  if (chi.size() != g.arrow_count()) throw DomainError("character_representation: one value per arrow");
  BundleRepresentation rep;
  rep.dimension = 1;
  for (Index x = 0; x < g.arrow_count(); ++x) {
    Matrix m(1, 1);
    m(0, 0) = graded.haar().rho(0) * chi[x];
    rep.images.push_back(std::move(m));
  }
  return rep;
}

std::vector<std::vector<Complex>> real_characters(const FiniteGroupoid& g) {
  std::vector<std::vector<Complex>> out;
  const Index n = g.arrow_count();
  if (g.unit_count() != 1 || n > 16) return out;
  const Index e = g.unit_arrow(0);
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    if (mask & (1UL << e)) continue;
    auto sign = [&](Index x) { return (mask >> x) & 1UL ? -1 : 1; };
    bool ok = true;
    for (Index x = 0; x < n && ok; ++x)
      for (Index y = 0; y < n && ok; ++y) ok = sign(x) * sign(y) == sign(g.compose(x, y));
    if (!ok) continue;
    std::vector<Complex> chi(n);
    for (Index x = 0; x < n; ++x) chi[x] = static_cast<double>(sign(x));
    out.push_back(std::move(chi));
  }
  return out;
}

Matrix apply_representation(const BundleRepresentation& rep, const GroupoidFunction& a) {
  const auto dim = static_cast<Eigen::Index>(rep.dimension);
  if (rep.images.size() != a.size()) throw DomainError("apply_representation: arrow count mismatch");
  Matrix out = Matrix::Zero(dim, dim);
  for (Index x = 0; x < a.size(); ++x)
    if (a[x] != 0.0) out += a[x] * rep.images[x];
  return out;
}

BundleRepReport bundle_rep_check(const GradedSubspaceFamily& family, const BundleRepresentation& rep,
                                 std::span<const GroupoidFunction> samples) {
  const GradedGroupoid& graded = family.graded();
  const FiniteGroupoid& g = graded.groupoid();
  const HaarSystem& haar = graded.haar();
  const GroupoidPtr& gp = graded.groupoid_ptr();
  BundleRepReport report;
  if (rep.images.size() != g.arrow_count()) throw DomainError("bundle_rep_check: one image per arrow");

  for (Index x = 0; x < g.arrow_count(); ++x) {
    const auto dx = GroupoidFunction::delta(gp, x);
    for (Index y = 0; y < g.arrow_count(); ++y) {
      const Matrix lhs = rep.images[x] * rep.images[y];
      const Matrix rhs = apply_representation(rep, convolve(dx, GroupoidFunction::delta(gp, y), haar));
      const double dev = relative_deviation(lhs, rhs);
      record(report.multiplicative, dev <= kAlgebraicTol, dev,
             "pi(delta_" + g.arrow_id(x) + ") pi(delta_" + g.arrow_id(y) + ") != pi(delta_" +
                 g.arrow_id(x) + " * delta_" + g.arrow_id(y) + ")");
    }
    const double dev = relative_deviation(Matrix(rep.images[x].adjoint()), apply_representation(rep, involute(dx)));
    record(report.adjoint, dev <= kAlgebraicTol, dev, "pi(delta_" + g.arrow_id(x) + ")* != pi(delta_" +
                                                          g.arrow_id(x) + "*)");
  }

  for (Index i = 0; i < samples.size(); ++i) {
    const auto& a = samples[i];
    const auto& b = samples[(i + 1) % samples.size()];
    const Matrix pa = apply_representation(rep, a);
    const double mult = relative_deviation(Matrix(pa * apply_representation(rep, b)),
                                           apply_representation(rep, convolve(a, b, haar)));
    const double adj = relative_deviation(Matrix(pa.adjoint()), apply_representation(rep, involute(a)));
    const double dev = std::max(mult, adj);
    record(report.homomorphism, dev <= kAlgebraicTol, dev,
           "summed representation is not a *-homomorphism at sample " + std::to_string(i));

    for (const GroupElement& gamma : graded.image()) {
      const auto component = graded_component(graded, a, gamma);
      const double bound = i_norm(component, haar);
      const double value = operator_norm(apply_representation(rep, component));
      record(report.i_norm_bound, value <= bound * (1.0 + kSpectralTol) + kSpectralTol,
             std::max(0.0, value - bound),
             "||pi_" + to_string(gamma) + "(a)|| > ||a||_I at sample " + std::to_string(i));
    }
  }
  return report;
}

}  // namespace workbench
