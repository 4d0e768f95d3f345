#include "workbench/document.hpp"

#include "workbench/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace workbench {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw InputError(path, message);
}

// Re-raise an error from a lower layer under a document path.
[[noreturn]] void rethrow_under(const std::string& prefix, const InputError& e) {
  throw InputError(e.path().empty() ? prefix : prefix + "/" + e.path(), e.message());
}

const Json& require(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) fail(path, std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

Index require_count(const Json& obj, const char* key, const std::string& path, Index lo, Index hi) {
  const Json& v = require(obj, key, path);
  const std::string where = path + "/" + key;
  if (!v.is_number_integer()) fail(where, "expected an integer");
  const auto n = v.get<std::int64_t>();
  if (n < static_cast<std::int64_t>(lo) || n > static_cast<std::int64_t>(hi)) {
    fail(where, "must be in " + std::to_string(lo) + ".." + std::to_string(hi));
  }
  return static_cast<Index>(n);
}

double require_number(const Json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

GroupoidPtr build_explicit(const Json& spec, const std::string& path) {
  const Json& units_json = require(spec, "units", path);
  if (!units_json.is_array()) fail(path + "/units", "expected an array of ids");
  std::vector<std::string> units;
  std::map<std::string, Index> unit_index;
  for (const Json& u : units_json) {
    if (!u.is_string()) fail(path + "/units", "unit ids must be strings");
    if (!unit_index.emplace(u.get<std::string>(), units.size()).second) {
      fail(path + "/units", "duplicate unit id " + u.get<std::string>());
    }
    units.push_back(u.get<std::string>());
  }

  const Json& arrows_json = require(spec, "arrows", path);
  if (!arrows_json.is_array()) fail(path + "/arrows", "expected an array");
  std::vector<Arrow> arrows;
  std::map<std::string, Index> arrow_index;
  for (Index i = 0; i < arrows_json.size(); ++i) {
    const std::string where = path + "/arrows/" + std::to_string(i);
    const Json& a = arrows_json[i];
    const Json& id = require(a, "id", where);
    if (!id.is_string()) fail(where + "/id", "expected a string");
    auto endpoint = [&](const char* key) {
      const Json& v = require(a, key, where);
      if (!v.is_string() || !unit_index.count(v.get<std::string>())) {
        fail(where + "/" + key, "unknown unit " + v.dump());
      }
      return unit_index.at(v.get<std::string>());
    };
    const Index src = endpoint("src");
    const Index dst = endpoint("dst");
    if (!arrow_index.emplace(id.get<std::string>(), arrows.size()).second) {
      fail(where + "/id", "duplicate arrow id " + id.get<std::string>());
    }
    arrows.push_back({id.get<std::string>(), src, dst});
  }
  const Index n = arrows.size();

  auto arrow_ref = [&](const Json& v, const std::string& where) {
    if (!v.is_string() || !arrow_index.count(v.get<std::string>())) fail(where, "unknown arrow " + v.dump());
    return arrow_index.at(v.get<std::string>());
  };

  std::vector<Index> compose(n * n, kNoIndex);
  const Json& compose_json = require(spec, "compose", path);
  if (!compose_json.is_array()) fail(path + "/compose", "expected an array of [x, y, xy] triples");
  for (Index i = 0; i < compose_json.size(); ++i) {
    const std::string where = path + "/compose/" + std::to_string(i);
    const Json& t = compose_json[i];
    if (!t.is_array() || t.size() != 3) fail(where, "expected [x, y, xy]");
    const Index x = arrow_ref(t[0], where), y = arrow_ref(t[1], where), xy = arrow_ref(t[2], where);
    Index& slot = compose[x * n + y];
    if (slot != kNoIndex && slot != xy) fail(where, "conflicting product for " + arrows[x].id + ", " + arrows[y].id);
    slot = xy;
  }

  std::vector<Index> inverse(n, kNoIndex);
  const Json& inverses_json = require(spec, "inverses", path);
  if (!inverses_json.is_object()) fail(path + "/inverses", "expected an object arrow -> inverse");
  for (const auto& [key, value] : inverses_json.items()) {
    const std::string where = path + "/inverses/" + key;
    inverse[arrow_ref(Json(key), where)] = arrow_ref(value, where);
  }
  for (Index x = 0; x < n; ++x) {
    if (inverse[x] == kNoIndex) fail(path + "/inverses/" + arrows[x].id, "missing inverse for arrow " + arrows[x].id);
  }

  std::vector<Index> unit_arrow(units.size(), kNoIndex);
  if (spec.contains("unit_arrows")) {
    const Json& ua = spec.at("unit_arrows");
    if (!ua.is_object()) fail(path + "/unit_arrows", "expected an object unit -> arrow");
    for (const auto& [key, value] : ua.items()) {
      const std::string where = path + "/unit_arrows/" + key;
      if (!unit_index.count(key)) fail(where, "unknown unit " + key);
      unit_arrow[unit_index.at(key)] = arrow_ref(value, where);
    }
  } else {
    // The idempotent loop at each unit.
    for (Index x = 0; x < n; ++x) {
      const Arrow& a = arrows[x];
      if (a.src == a.dst && compose[x * n + x] == x && unit_arrow[a.src] == kNoIndex) unit_arrow[a.src] = x;
    }
  }
  for (Index u = 0; u < units.size(); ++u) {
    if (unit_arrow[u] == kNoIndex) fail(path + "/unit_arrows/" + units[u], "no identity arrow at unit " + units[u]);
  }

  GroupoidPtr g;
  try {
    g = std::make_shared<const FiniteGroupoid>(std::move(units), std::move(arrows), std::move(compose),
                                               std::move(inverse), std::move(unit_arrow));
  } catch (const InputError& e) {
    rethrow_under(path, e);
  }
  return g;
}

std::vector<FiniteGroup> bundle_groups(const Json& orders, const std::string& path) {
  if (!orders.is_array() || orders.empty()) fail(path, "expected a nonempty array of group orders");
  std::vector<FiniteGroup> groups;
  for (const Json& o : orders) {
    if (!o.is_number_integer() || o.get<std::int64_t>() < 1 || o.get<std::int64_t>() > 64) {
      fail(path, "group orders must be integers in 1..64");
    }
    groups.push_back(FiniteGroup::cyclic(o.get<Index>()));
  }
  return groups;
}

GroupoidPtr build_builtin(const std::string& name, const Json& params, const std::string& path) {
  const std::string p = path + "/params";
  if (name == "pair") return pair_groupoid(require_count(params, "n", p, 1, 22));
  if (name == "cyclic_group") return group_groupoid(FiniteGroup::cyclic(require_count(params, "n", p, 1, 500)));
  if (name == "symmetric_group") return group_groupoid(FiniteGroup::symmetric(require_count(params, "n", p, 1, 5)));
  if (name == "cyclic_action") return cyclic_shift_groupoid(require_count(params, "points", p, 1, 22));
  if (name == "group_bundle") return group_bundle(bundle_groups(require(params, "orders", p), p + "/orders"));
  if (name == "disjoint_union" || name == "product") {
    const GroupoidPtr left = build_groupoid(require(params, "left", p), p + "/left");
    const GroupoidPtr right = build_groupoid(require(params, "right", p), p + "/right");
    return name == "product" ? product(*left, *right) : disjoint_union(*left, *right);
  }
  fail(path + "/builtin", "unknown builtin groupoid \"" + name + "\"");
}

std::vector<double> unit_weights(const Json& rho, const FiniteGroupoid& g, const std::string& path) {
  if (!rho.is_object()) fail(path, "expected an object unit -> weight");
  std::vector<double> out(g.unit_count(), 0.0);
  std::vector<bool> seen(g.unit_count(), false);
  for (const auto& [key, value] : rho.items()) {
    const auto u = g.find_unit(key);
    if (!u) fail(path + "/" + key, "unknown unit " + key);
    const double w = require_number(value, path + "/" + key);
    if (!(w > 0.0) || !std::isfinite(w)) fail(path + "/" + key, "nonpositive Haar weight at unit " + key);
    out[*u] = w;
    seen[*u] = true;
  }
  for (Index u = 0; u < g.unit_count(); ++u) {
    if (!seen[u]) fail(path + "/" + g.unit_id(u), "missing Haar weight for unit " + g.unit_id(u));
  }
  return out;
}

std::vector<double> explicit_weights(const Json& table, const FiniteGroupoid& g, const std::string& path) {
  if (!table.is_object()) fail(path, "expected an object arrow -> weight");
  std::vector<double> out(g.arrow_count(), 0.0);
  std::vector<bool> seen(g.arrow_count(), false);
  for (const auto& [key, value] : table.items()) {
    const auto x = g.find_arrow(key);
    if (!x) fail(path + "/" + key, "unknown arrow " + key);
    const double w = require_number(value, path + "/" + key);
    if (!(w > 0.0) || !std::isfinite(w)) fail(path + "/" + key, "nonpositive Haar weight at arrow " + key);
    out[*x] = w;
    seen[*x] = true;
  }
  for (Index x = 0; x < g.arrow_count(); ++x) {
    if (!seen[x]) fail(path + "/" + g.arrow_id(x), "missing weight for arrow " + g.arrow_id(x));
  }
  return out;
}

Complex parse_complex(const Json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  fail(path, "expected [re, im] or a number");
}

std::string describe(const ValidationReport& r) {
  std::string witness;
  for (const auto& w : r.witness) witness += (witness.empty() ? "" : ", ") + w;
  return r.violation + (witness.empty() ? "" : " at (" + witness + ")") + (r.detail.empty() ? "" : ": " + r.detail);
}

}  // namespace

// ---------------------------------------------------------------------------

GroupoidPtr build_groupoid(const Json& spec, const std::string& path) {
  if (!spec.is_object()) fail(path, "expected an object");
  GroupoidPtr g;
  try {
    if (spec.contains("builtin")) {
      const Json& name = spec.at("builtin");
      if (!name.is_string()) fail(path + "/builtin", "expected a string");
      g = build_builtin(name.get<std::string>(), spec.value("params", Json::object()), path);
    } else if (spec.contains("explicit")) {
      g = build_explicit(spec.at("explicit"), path + "/explicit");
    } else {
      fail(path, "expected \"builtin\" or \"explicit\"");
    }
  } catch (const InputError& e) {
    if (e.path().rfind(path, 0) == 0) throw;
    rethrow_under(path, e);
  }
  const ValidationReport report = validate_groupoid(*g);
  if (!report) fail(path, "groupoid axiom violated: " + describe(report));
  return g;
}

DiscreteGroup build_group(const Json& spec, const std::string& path) {
  if (!spec.is_object()) fail(path, "expected an object");
  if (spec.contains("finite")) {
    const Json& rows = spec.at("finite");
    std::vector<std::vector<Index>> table;
    if (!rows.is_array()) fail(path + "/finite", "expected Cayley table rows");
    for (const Json& row : rows) {
      if (!row.is_array()) fail(path + "/finite", "expected Cayley table rows");
      std::vector<Index> r;
      for (const Json& v : row) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0) fail(path + "/finite", "entries must be element indices");
        r.push_back(v.get<Index>());
      }
      table.push_back(std::move(r));
    }
    try {
      return DiscreteGroup(FiniteGroup::from_cayley(table));
    } catch (const InputError& e) {
      rethrow_under(path + "/finite", e);
    }
  }
  if (spec.contains("free_abelian")) {
    return DiscreteGroup::integers(require_count(spec, "free_abelian", path, 1, 16));
  }
  fail(path, "expected \"finite\" or \"free_abelian\"");
}

GroupElement parse_group_element(const DiscreteGroup& group, const Json& value, const std::string& path) {
  GroupElement g;
  if (value.is_number_integer()) {
    g.coords.push_back(value.get<std::int64_t>());
  } else if (value.is_array()) {
    for (const Json& v : value) {
      if (!v.is_number_integer()) fail(path, "group element coordinates must be integers");
      g.coords.push_back(v.get<std::int64_t>());
    }
  } else {
    fail(path, "expected a group element (integer or integer array)");
  }
  if (!group.contains(g)) fail(path, "not an element of the grading group: " + value.dump());
  return g;
}

Json group_element_json(const DiscreteGroup& group, const GroupElement& element) {
  if (group.is_finite() || element.coords.size() == 1) return element.coords.front();
  return element.coords;
}

std::vector<double> Document::arrow_weights() const {
  return weights ? *weights : haar().arrow_weights();
}

GroupoidFunction Document::function(const std::string& fn) const {
  if (auto it = functions.find(fn); it != functions.end()) return it->second;
  if (fn == "unit") return unit_element(haar());
  if (fn == "zero") return GroupoidFunction::zero(groupoid_ptr());
  throw InputError("/functions/" + fn, "unknown function \"" + fn + "\"");
}

Document document_from_json(const Json& j, const std::string& fallback_name, const ParseOptions& options) {
  if (!j.is_object()) fail("", "document must be a JSON object");
  const GroupoidPtr g = build_groupoid(require(j, "groupoid", ""), "/groupoid");

  // Haar system
  std::vector<double> rho(g->unit_count(), 1.0);
  std::optional<std::vector<double>> weights;
  std::optional<InvarianceViolation> violation;
  if (j.contains("haar")) {
    const Json& haar = j.at("haar");
    if (!haar.is_object()) fail("/haar", "expected an object");
    if (haar.contains("rho")) rho = unit_weights(haar.at("rho"), *g, "/haar/rho");
    if (haar.contains("weights")) {
      weights = explicit_weights(haar.at("weights"), *g, "/haar/weights");
      violation = find_invariance_violation(*g, *weights);
      if (violation && options.strict) {
        fail("/haar/weights", "weights are not left invariant: translating the indicator of " +
                                  g->arrow_id(violation->indicator) + " by " + g->arrow_id(violation->translate) +
                                  " gives " + std::to_string(violation->lhs) + " != " + std::to_string(violation->rhs));
      }
      if (!violation) {
        for (Index u = 0; u < g->unit_count(); ++u) {
          const double w = (*weights)[g->unit_arrow(u)];
          if (haar.contains("rho") && std::abs(w - rho[u]) > kAlgebraicTol * std::max(1.0, w)) {
            fail("/haar/weights/" + g->arrow_id(g->unit_arrow(u)), "weight disagrees with rho at unit " + g->unit_id(u));
          }
          rho[u] = w;
        }
      }
    }
  }
  HaarSystem haar = haar_from_weights(g, rho);

  // Grading
  DiscreteGroup group = DiscreteGroup::trivial();
  if (j.contains("group")) group = build_group(j.at("group"), "/group");
  Cocycle cocycle{group, std::vector<GroupElement>(g->arrow_count(), group.identity())};
  if (j.contains("cocycle")) {
    if (!j.contains("group")) fail("/cocycle", "cocycle given without a grading group");
    const Json& labels = j.at("cocycle");
    if (!labels.is_object()) fail("/cocycle", "expected an object arrow -> group element");
    std::vector<bool> seen(g->arrow_count(), false);
    for (const auto& [key, value] : labels.items()) {
      const auto x = g->find_arrow(key);
      if (!x) fail("/cocycle/" + key, "unknown arrow " + key);
      cocycle.labels[*x] = parse_group_element(group, value, "/cocycle/" + key);
      seen[*x] = true;
    }
    for (Index x = 0; x < g->arrow_count(); ++x) {
      if (!seen[x]) fail("/cocycle/" + g->arrow_id(x), "missing label for arrow " + g->arrow_id(x));
    }
  }
  const ValidationReport report = validate_cocycle(*g, cocycle);
  if (!report) fail("/cocycle", "not a homomorphism: " + describe(report));

  Document doc{j.value("name", fallback_name), j, GradedGroupoid(std::move(haar), std::move(cocycle)),
               std::move(weights), violation, {}};

  if (j.contains("functions")) {
    const Json& fns = j.at("functions");
    if (!fns.is_object()) fail("/functions", "expected an object name -> coefficients");
    for (const auto& [name, coeffs] : fns.items()) {
      const std::string where = "/functions/" + name;
      if (!coeffs.is_object()) fail(where, "expected an object arrow -> coefficient");
      GroupoidFunction f = GroupoidFunction::zero(g);
      for (const auto& [key, value] : coeffs.items()) {
        const auto x = g->find_arrow(key);
        if (!x) fail(where + "/" + key, "unknown arrow " + key);
        f[*x] = parse_complex(value, where + "/" + key);
      }
      doc.functions.emplace(name, std::move(f));
    }
  }
  return doc;
}

Document parse_document(std::string_view text, const std::string& fallback_name, const ParseOptions& options) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Locate the byte offset as line and column.
    Index line = 1, column = 1;
    for (Index i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError("line " + std::to_string(line) + ", column " + std::to_string(column),
                     "syntax error: " + std::string(e.what()));
  }
  return document_from_json(j, fallback_name, options);
}

Document load_document(const std::filesystem::path& file, const ParseOptions& options) {
  std::ifstream in(file);
  if (!in) throw InputError(file.string(), "cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_document(text.str(), file.stem().string(), options);
}

}  // namespace workbench
