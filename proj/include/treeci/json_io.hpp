#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "treeci/chow_liu.hpp"
#include "treeci/common.hpp"
#include "treeci/errors.hpp"
#include "treeci/gaussian.hpp"
#include "treeci/generators.hpp"
#include "treeci/graph.hpp"
#include "treeci/joint_table.hpp"
#include "treeci/perfectness.hpp"
#include "treeci/properties.hpp"

namespace treeci {

// Key order is part of the canonical output, hence the ordered flavor.
// dump() renders doubles as the shortest decimal that round-trips, which
// keeps byte-identical reruns achievable.
using Json = nlohmann::ordered_json;

inline Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(source + ": " + e.what());
  }
}

namespace detail {

inline const Json& member(const Json& j, const char* key,
                          const std::string& source) {
  if (!j.is_object()) {
    throw FormatError(source + ": expected a JSON object");
  }
  const auto it = j.find(key);
  if (it == j.end()) {
    throw FormatError(source + ": missing key '" + key + "'");
  }
  return *it;
}

inline NameSet string_array(const Json& j, const char* what,
                            const std::string& source) {
  if (!j.is_array()) {
    throw FormatError(source + ": '" + what + "' must be an array");
  }
  NameSet out;
  for (const auto& v : j) {
    if (!v.is_string()) {
      throw FormatError(source + ": '" + what + "' must hold strings");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

inline double number(const Json& j, const char* what,
                     const std::string& source) {
  if (!j.is_number()) {
    throw FormatError(source + ": '" + what + "' must be a number");
  }
  return j.get<double>();
}

}  // namespace detail

inline Json table_to_json(const JointTable& t) {
  Json j;
  j["variables"] = t.variables();
  j["probs"] = t.probs();
  return j;
}

inline JointTable table_from_json(const Json& j,
                                  const std::string& source = "table") {
  const NameSet vars =
      detail::string_array(detail::member(j, "variables", source),
                           "variables", source);
  const Json& probs = detail::member(j, "probs", source);
  if (!probs.is_array()) {
    throw FormatError(source + ": 'probs' must be an array");
  }
  std::vector<double> p;
  p.reserve(probs.size());
  for (const auto& v : probs) {
    p.push_back(detail::number(v, "probs", source));
  }
  return JointTable(vars, std::move(p));
}

inline Json gaussian_to_json(const GaussianModel& g) {
  Json j;
  j["variables"] = g.variables();
  Json rows = Json::array();
  const std::size_t n = g.variable_count();
  for (std::size_t i = 0; i < n; ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < n; ++k) row.push_back(g.covariance()(i, k));
    rows.push_back(std::move(row));
  }
  j["covariance"] = std::move(rows);
  return j;
}

inline GaussianModel gaussian_from_json(const Json& j,
                                        const std::string& source =
                                            "gaussian") {
  const NameSet vars =
      detail::string_array(detail::member(j, "variables", source),
                           "variables", source);
  const Json& cov = detail::member(j, "covariance", source);
  if (!cov.is_array()) {
    throw FormatError(source + ": 'covariance' must be an array of arrays");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& r : cov) {
    if (!r.is_array()) {
      throw FormatError(source + ": 'covariance' must be an array of arrays");
    }
    std::vector<double> row;
    for (const auto& v : r) {
      row.push_back(detail::number(v, "covariance", source));
    }
    rows.push_back(std::move(row));
  }
  return GaussianModel(vars, rows);
}

inline Json graph_to_json(const UGraph& g) {
  Json j;
  j["vertices"] = g.vertices();
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    edges.push_back(Json::array({e.first, e.second}));
  }
  j["edges"] = std::move(edges);
  return j;
}

inline UGraph graph_from_json(const Json& j,
                              const std::string& source = "graph") {
  const NameSet vertices =
      detail::string_array(detail::member(j, "vertices", source),
                           "vertices", source);
  const Json& edges = detail::member(j, "edges", source);
  if (!edges.is_array()) {
    throw FormatError(source + ": 'edges' must be an array");
  }
  std::vector<UGraph::Edge> es;
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() ||
        !e[1].is_string()) {
      throw FormatError(source + ": each edge must be a two-string array");
    }
    es.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return UGraph(vertices, std::move(es));
}

// Bundle for a generated binary tree model. `provenance` is spliced in
// before the params so callers can record a seed or a preset name.
inline Json tree_model_to_json(const TreeModel& m,
                               const Json& provenance = Json::object()) {
  Json j;
  j["tree"] = graph_to_json(m.tree);
  j["root"] = m.root;
  Json cpts;
  cpts["root_p1"] = m.root_p1;
  Json edges = Json::array();
  for (const auto& c : m.cpts) {
    Json e;
    e["vertex"] = c.vertex;
    e["parent"] = c.parent;
    e["p1_given_parent0"] = c.p1_given_parent0;
    e["p1_given_parent1"] = c.p1_given_parent1;
    edges.push_back(std::move(e));
  }
  cpts["edges"] = std::move(edges);
  j["cpts"] = std::move(cpts);
  j["table"] = table_to_json(m.table);
  for (const auto& [k, v] : provenance.items()) j[k] = v;
  Json params;
  params["epsilon"] = m.epsilon;
  params["delta"] = m.delta;
  j["params"] = std::move(params);
  return j;
}

inline TreeModel tree_model_from_json(const Json& j,
                                      const std::string& source = "bundle") {
  const UGraph tree =
      graph_from_json(detail::member(j, "tree", source), source);
  const Json& root_j = detail::member(j, "root", source);
  if (!root_j.is_string()) {
    throw FormatError(source + ": 'root' must be a string");
  }
  const Json& cpts_j = detail::member(j, "cpts", source);
  const double root_p1 = detail::number(
      detail::member(cpts_j, "root_p1", source), "root_p1", source);
  const Json& edges = detail::member(cpts_j, "edges", source);
  if (!edges.is_array()) {
    throw FormatError(source + ": 'cpts.edges' must be an array");
  }
  std::vector<EdgeCpt> cpts;
  for (const auto& e : edges) {
    EdgeCpt c;
    const Json& vj = detail::member(e, "vertex", source);
    const Json& pj = detail::member(e, "parent", source);
    if (!vj.is_string() || !pj.is_string()) {
      throw FormatError(source + ": cpt vertex and parent must be strings");
    }
    c.vertex = vj.get<std::string>();
    c.parent = pj.get<std::string>();
    c.p1_given_parent0 =
        detail::number(detail::member(e, "p1_given_parent0", source),
                       "p1_given_parent0", source);
    c.p1_given_parent1 =
        detail::number(detail::member(e, "p1_given_parent1", source),
                       "p1_given_parent1", source);
    cpts.push_back(std::move(c));
  }
  const Json& params = detail::member(j, "params", source);
  const double epsilon = detail::number(
      detail::member(params, "epsilon", source), "epsilon", source);
  const double delta = detail::number(detail::member(params, "delta", source),
                                      "delta", source);
  TreeModel m = tree_model_from_cpts(tree, root_j.get<std::string>(), root_p1,
                                     std::move(cpts), epsilon, delta);
  if (j.contains("table")) {
    const JointTable stored = table_from_json(j["table"], source + ".table");
    if (stored.variables() != m.table.variables()) {
      throw FormatError(source +
                        ": bundled table names do not match the tree");
    }
    for (std::size_t i = 0; i < stored.cell_count(); ++i) {
      if (std::abs(stored.probs()[i] - m.table.probs()[i]) > 1e-12) {
        throw FormatError(source +
                          ": bundled table does not match its cpts");
      }
    }
  }
  return m;
}

inline Json gaussian_tree_to_json(const GaussianTree& g,
                                  const Json& provenance = Json::object()) {
  Json j;
  j["tree"] = graph_to_json(g.tree);
  Json rho = Json::array();
  for (const auto& [e, r] : g.edge_rho) {
    Json item;
    item["edge"] = Json::array({e.first, e.second});
    item["rho"] = r;
    rho.push_back(std::move(item));
  }
  j["edge_rho"] = std::move(rho);
  j["model"] = gaussian_to_json(g.model);
  for (const auto& [k, v] : provenance.items()) j[k] = v;
  return j;
}

inline GaussianTree gaussian_tree_from_json(const Json& j,
                                            const std::string& source =
                                                "gaussian bundle") {
  const UGraph tree =
      graph_from_json(detail::member(j, "tree", source), source);
  const Json& rho = detail::member(j, "edge_rho", source);
  if (!rho.is_array()) {
    throw FormatError(source + ": 'edge_rho' must be an array");
  }
  std::vector<std::pair<UGraph::Edge, double>> edge_rho;
  for (const auto& item : rho) {
    const Json& e = detail::member(item, "edge", source);
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() ||
        !e[1].is_string()) {
      throw FormatError(source + ": each edge must be a two-string array");
    }
    edge_rho.emplace_back(
        UGraph::Edge{e[0].get<std::string>(), e[1].get<std::string>()},
        detail::number(detail::member(item, "rho", source), "rho", source));
  }
  return gaussian_tree_model(tree, edge_rho);
}

inline Json ciquery_sets_json(const NameSet& a, const NameSet& b,
                              const NameSet& c, const char* ka,
                              const char* kb, const char* kc) {
  Json j;
  j[ka] = a;
  j[kb] = b;
  j[kc] = c;
  return j;
}

inline Json binding_to_json(const PropertyBinding& binding) {
  if (const auto* g = std::get_if<GraphoidBinding>(&binding)) {
    Json j;
    j["X"] = normalized(g->x);
    j["Y"] = normalized(g->y);
    j["W"] = normalized(g->w);
    j["Z"] = normalized(g->z);
    return j;
  }
  if (const auto* w = std::get_if<WeakTransitivityBinding>(&binding)) {
    Json j;
    j["X"] = normalized(w->x);
    j["Y"] = normalized(w->y);
    j["Z"] = normalized(w->z);
    j["c"] = w->c;
    return j;
  }
  const auto& d = std::get<DTBinding>(binding);
  Json j;
  j["a"] = d.a;
  j["c"] = d.c;
  j["e"] = d.e;
  j["B"] = normalized(d.b);
  j["D"] = normalized(d.d);
  return j;
}

inline Json violation_to_json(const Violation& v) {
  Json j;
  j["property"] = std::string(to_string(v.property));
  j["binding"] = binding_to_json(v.binding);
  j["antecedent_dev"] = v.antecedent_dev;
  j["conclusion_dev"] = v.conclusion_dev;
  return j;
}

// One compact JSON object per line; the interchange form for violation
// streams.
inline std::string violations_to_jsonl(const std::vector<Violation>& vs) {
  std::string out;
  for (const auto& v : vs) {
    out += violation_to_json(v).dump();
    out += '\n';
  }
  return out;
}

inline Json scan_report_to_json(PropertyId p, const ScanReport& r) {
  Json j;
  j["property"] = std::string(to_string(p));
  j["instances"] = r.instances;
  j["non_vacuous"] = r.non_vacuous;
  Json vs = Json::array();
  for (const auto& v : r.violations) vs.push_back(violation_to_json(v));
  j["violations"] = std::move(vs);
  return j;
}

inline Json mismatch_to_json(const TripleMismatch& m) {
  Json j = ciquery_sets_json(m.a, m.b, m.c, "A", "B", "C");
  j["direction"] = std::string(to_string(m.direction));
  j["dev"] = m.dev;
  return j;
}

inline Json perfectness_report_to_json(const PerfectnessReport& r) {
  Json j;
  j["model_id"] = r.model_id;
  j["tree"] = graph_to_json(r.tree);
  j["triples_checked"] = r.triples_checked;
  j["non_vacuous"] = r.non_vacuous;
  j["perfect"] = r.perfect();
  Json ms = Json::array();
  for (const auto& m : r.mismatches) ms.push_back(mismatch_to_json(m));
  j["mismatches"] = std::move(ms);
  Json es = Json::array();
  for (const auto& e : r.edge_results) {
    Json item;
    item["edge"] = Json::array({e.edge.first, e.edge.second});
    item["marginal_dev"] = e.marginal_dev;
    item["defining_dev"] = e.defining_dev;
    es.push_back(std::move(item));
  }
  j["edge_results"] = std::move(es);
  return j;
}

inline Json edge_check_to_json(const EdgeCheckResult& r) {
  Json j;
  j["passed"] = r.passed;
  Json es = Json::array();
  for (const auto& e : r.per_edge) {
    Json item;
    item["edge"] = Json::array({e.edge.first, e.edge.second});
    item["dev"] = e.dev;
    es.push_back(std::move(item));
  }
  j["per_edge"] = std::move(es);
  return j;
}

}  // namespace treeci
