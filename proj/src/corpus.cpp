#include "workbench/corpus.hpp"

#include "workbench/sampling.hpp"

#include <functional>

namespace workbench {

namespace {

struct Configuration {
  std::string name;
  Json groupoid;
  Json group;  // null for the trivial grading
  // Label of the arrow at a given index, as JSON.
  std::function<Json(Index)> label;
};

Json builtin(const std::string& name, Json params) {
  return Json{{"builtin", name}, {"params", std::move(params)}};
}

Json cayley(const FiniteGroup& g) { return Json{{"finite", g.rows()}}; }

std::vector<Configuration> configurations() {
  std::vector<Configuration> out;
  for (Index n = 2; n <= 5; ++n) {
    out.push_back({"pair-" + std::to_string(n) + "-z", builtin("pair", {{"n", n}}), Json{{"free_abelian", 1}},
                   [n](Index x) { return Json(static_cast<std::int64_t>(x / n) - static_cast<std::int64_t>(x % n)); }});
  }
  for (Index n : {2, 3}) {
    out.push_back({"pair-" + std::to_string(n) + "-trivial", builtin("pair", {{"n", n}}), nullptr, nullptr});
  }
  for (Index n : {2, 3}) {
    out.push_back({"cyclic-" + std::to_string(n) + "-identity", builtin("cyclic_group", {{"n", n}}),
                   cayley(FiniteGroup::cyclic(n)), [](Index x) { return Json(x); }});
  }
  out.push_back({"cyclic-4-mod-2", builtin("cyclic_group", {{"n", 4}}), cayley(FiniteGroup::cyclic(2)),
                 [](Index x) { return Json(x % 2); }});
  out.push_back({"symmetric-3-identity", builtin("symmetric_group", {{"n", 3}}), cayley(FiniteGroup::symmetric(3)),
                 [](Index x) { return Json(x); }});
  const std::vector<int> signs = symmetric_group_signs(3);
  out.push_back({"symmetric-3-sign", builtin("symmetric_group", {{"n", 3}}), cayley(FiniteGroup::cyclic(2)),
                 [signs](Index x) { return Json(signs[x] < 0 ? 1 : 0); }});
  for (Index points : {3, 4}) {
    out.push_back({"shift-" + std::to_string(points), builtin("cyclic_action", {{"points", points}}),
                   cayley(FiniteGroup::cyclic(points)), [points](Index x) { return Json(x % points); }});
  }
  out.push_back({"bundle-2x2", builtin("group_bundle", {{"orders", {2, 2}}}), cayley(FiniteGroup::cyclic(2)),
                 [](Index x) { return Json(x % 2); }});
  // P2 (4 arrows, c = i - j mod 2) followed by Z/2 (identity).
  out.push_back({"union-pair-2-cyclic-2",
                 builtin("disjoint_union", {{"left", builtin("pair", {{"n", 2}})},
                                            {"right", builtin("cyclic_group", {{"n", 2}})}}),
                 cayley(FiniteGroup::cyclic(2)),
                 [](Index x) { return Json(x < 4 ? (x / 2 + x % 2) % 2 : x - 4); }});
  // P2 x Z/3 graded by the Z/3 coordinate.
  out.push_back({"product-pair-2-cyclic-3",
                 builtin("product", {{"left", builtin("pair", {{"n", 2}})},
                                     {"right", builtin("cyclic_group", {{"n", 3}})}}),
                 cayley(FiniteGroup::cyclic(3)), [](Index x) { return Json(x % 3); }});
  return out;
}

}  // namespace

std::vector<CorpusEntry> builtin_corpus(std::uint64_t seed) {
  std::vector<CorpusEntry> out;
  for (const Configuration& config : configurations()) {
    const GroupoidPtr g = build_groupoid(config.groupoid);
    Json base{{"groupoid", config.groupoid}};
    if (!config.group.is_null()) {
      base["group"] = config.group;
      Json labels = Json::object();
      for (Index x = 0; x < g->arrow_count(); ++x) labels[g->arrow_id(x)] = config.label(x);
      base["cocycle"] = std::move(labels);
    }
    for (const bool counting : {true, false}) {
      Json j = base;
      j["name"] = config.name + (counting ? "/counting" : "/rho");
      Json rho = Json::object();
      Sampler sampler(derive_seed(seed, "corpus/" + config.name));
      for (Index u = 0; u < g->unit_count(); ++u) rho[g->unit_id(u)] = counting ? 1.0 : sampler.uniform(0.5, 2.0);
      j["haar"] = Json{{"rho", std::move(rho)}};
      Document doc = document_from_json(j);
      out.push_back({std::move(j), std::move(doc)});
    }
  }
  return out;
}

}  // namespace workbench
