#pragma once

#include "workbench/conv_algebra.hpp"
#include "workbench/grading.hpp"
#include "workbench/groupoid.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace workbench {

using Json = nlohmann::json;

// A workbench document is a JSON object:
//
//   {
//     "name":      "pair-3",                                   (optional)
//     "groupoid":  {"builtin": "pair", "params": {"n": 3}}
//               |  {"explicit": {"units": [...],
//                                "arrows": [{"id", "src", "dst"}, ...],
//                                "compose": [[x, y, xy], ...],
//                                "inverses": {x: x_inv, ...},
//                                "unit_arrows": {u: x, ...}}}  (optional)
//     "haar":      {"rho": {unit: w, ...},                     (optional, counting)
//                   "weights": {arrow: w, ...}}                (optional)
//     "group":     {"finite": [[...], ...]} | {"free_abelian": k}
//     "cocycle":   {arrow: label, ...}      label = int or int array
//     "functions": {name: {arrow: [re, im] | re, ...}, ...}
//   }
//
// Builtins: pair{n}, cyclic_group{n}, symmetric_group{n},
// cyclic_action{points}, group_bundle{orders}, disjoint_union{left, right},
// product{left, right}; the last two nest groupoid specs.
//
// Without "group" and "cocycle" the grading is trivial. The names "unit"
// and "zero" resolve to the unit element and the zero function unless the
// document defines them.

struct ParseOptions {
  // When false, an explicit weight table that fails left invariance is
  // recorded in the document instead of rejected (the haar suite then
  // reports it as a failed check).
  bool strict = true;
};

struct Document {
  std::string name;
  Json source;
  GradedGroupoid graded;
  std::optional<std::vector<double>> weights;  // explicit per-arrow table
  std::optional<InvarianceViolation> invariance_violation;
  std::map<std::string, GroupoidFunction> functions;

  const FiniteGroupoid& groupoid() const noexcept { return graded.groupoid(); }
  const GroupoidPtr& groupoid_ptr() const noexcept { return graded.groupoid_ptr(); }
  const HaarSystem& haar() const noexcept { return graded.haar(); }
  // Per-arrow weights in force: the explicit table if given, else rho(s(x)).
  std::vector<double> arrow_weights() const;
  bool haar_valid() const noexcept { return !invariance_violation.has_value(); }

  // Throws InputError on an unknown name.
  GroupoidFunction function(const std::string& name) const;
};

// All parse entry points throw InputError; the path is a JSON-pointer-like
// location ("/haar/rho/2") or "line L, column C" for syntax errors.
Document parse_document(std::string_view text, const std::string& fallback_name = "",
                        const ParseOptions& options = {});
Document document_from_json(const Json& j, const std::string& fallback_name = "",
                            const ParseOptions& options = {});
Document load_document(const std::filesystem::path& file, const ParseOptions& options = {});

GroupoidPtr build_groupoid(const Json& spec, const std::string& path = "/groupoid");
DiscreteGroup build_group(const Json& spec, const std::string& path = "/group");
GroupElement parse_group_element(const DiscreteGroup& group, const Json& value, const std::string& path);
Json group_element_json(const DiscreteGroup& group, const GroupElement& element);

}  // namespace workbench
