#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "treeci/common.hpp"
#include "treeci/errors.hpp"
#include "treeci/gaussian.hpp"
#include "treeci/graph.hpp"
#include "treeci/joint_table.hpp"
#include "treeci/rng.hpp"

namespace treeci {

namespace detail {

inline NameSet indexed_names(std::size_t n) {
  NameSet out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

// Decodes a sequence over [0, n) into the labeled tree it encodes, using a
// min-heap over leaves so the edge order is reproducible.
inline std::vector<UGraph::Edge> decode_tree_sequence(
    std::size_t n, const std::vector<std::size_t>& seq, const NameSet& names) {
  std::vector<std::size_t> degree(n, 1);
  for (std::size_t s : seq) ++degree[s];
  std::priority_queue<std::size_t, std::vector<std::size_t>,
                      std::greater<std::size_t>>
      leaves;
  for (std::size_t i = 0; i < n; ++i) {
    if (degree[i] == 1) leaves.push(i);
  }
  std::vector<UGraph::Edge> edges;
  edges.reserve(n - 1);
  for (std::size_t s : seq) {
    const std::size_t leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(names[leaf], names[s]);
    if (--degree[s] == 1) leaves.push(s);
  }
  const std::size_t u = leaves.top();
  leaves.pop();
  const std::size_t v = leaves.top();
  edges.emplace_back(names[u], names[v]);
  return edges;
}

}  // namespace detail

// Uniform random labeled tree on vertices v0..v(n-1).
inline UGraph random_tree(std::size_t n, Seed seed) {
  if (n == 0) throw ParamError("random_tree: need at least one vertex");
  const NameSet names = detail::indexed_names(n);
  if (n == 1) return UGraph(names, {});
  if (n == 2) return UGraph(names, {{names[0], names[1]}});
  SplitMix64 rng(seed);
  std::vector<std::size_t> seq(n - 2);
  for (auto& s : seq) s = rng.next_below(n);
  return UGraph(names, detail::decode_tree_sequence(n, seq, names));
}

// Conditional table of one binary vertex given its parent in the rooted
// tree: P(vertex=1 | parent=0) and P(vertex=1 | parent=1).
struct EdgeCpt {
  std::string vertex;
  std::string parent;
  double p1_given_parent0 = 0.0;
  double p1_given_parent1 = 0.0;
};

// A binary tree-factored distribution together with the pieces it was
// built from. `epsilon` floors every conditional entry away from 0 and 1;
// `delta` floors the coupling |p1|parent=1 - p1|parent=0| on every edge.
struct TreeModel {
  UGraph tree;
  std::string root;
  double root_p1 = 0.0;
  std::vector<EdgeCpt> cpts;  // sorted by vertex name
  JointTable table;
  double epsilon = 0.0;
  double delta = 0.0;
};

namespace detail {

// Parent of each vertex under a BFS from `root` over sorted adjacency.
inline std::map<std::string, std::string> bfs_parents(const UGraph& g,
                                                      const std::string& root) {
  std::map<std::string, std::string> parent;
  std::vector<char> seen(g.vertex_count(), 0);
  std::queue<std::size_t> frontier;
  const std::size_t r = g.vertex_index(root);
  seen[r] = 1;
  frontier.push(r);
  while (!frontier.empty()) {
    const std::size_t at = frontier.front();
    frontier.pop();
    for (std::size_t nb : g.adjacency()[at]) {
      if (seen[nb]) continue;
      seen[nb] = 1;
      parent[g.vertices()[nb]] = g.vertices()[at];
      frontier.push(nb);
    }
  }
  return parent;
}

}  // namespace detail

// Assembles and validates a TreeModel from explicit parameters. The cpts
// must cover exactly the non-root vertices, each oriented toward its BFS
// parent. The defining-edge property of the resulting table is re-derived
// and compared against the tree unless delta is 0 (a zero coupling floor
// allows edges too weak to detect).
inline TreeModel tree_model_from_cpts(const UGraph& tree,
                                      const std::string& root, double root_p1,
                                      std::vector<EdgeCpt> cpts,
                                      double epsilon, double delta) {
  if (!is_tree(tree)) throw StructureError("tree model: graph is not a tree");
  if (!tree.has_vertex(root)) throw QueryError("tree model: unknown root");
  if (!(epsilon > 0.0) || !(epsilon < 0.5)) {
    throw ParamError("tree model: epsilon must lie in (0, 0.5)");
  }
  if (!(delta >= 0.0) || !(delta < 1.0 - 2.0 * epsilon)) {
    throw ParamError("tree model: delta must lie in [0, 1 - 2*epsilon)");
  }
  auto in_band = [&](double p) {
    return p >= epsilon && p <= 1.0 - epsilon;
  };
  if (!in_band(root_p1)) {
    throw ModelError("tree model: root prior outside [epsilon, 1 - epsilon]");
  }
  const auto parent = detail::bfs_parents(tree, root);
  std::sort(cpts.begin(), cpts.end(),
            [](const EdgeCpt& a, const EdgeCpt& b) {
              return a.vertex < b.vertex;
            });
  if (cpts.size() != tree.vertex_count() - 1) {
    throw ModelError("tree model: need one cpt per non-root vertex");
  }
  for (std::size_t i = 0; i < cpts.size(); ++i) {
    const EdgeCpt& c = cpts[i];
    if (i > 0 && cpts[i - 1].vertex == c.vertex) {
      throw ModelError("tree model: duplicate cpt for '" + c.vertex + "'");
    }
    const auto it = parent.find(c.vertex);
    if (it == parent.end()) {
      throw ModelError("tree model: cpt for unknown or root vertex '" +
                       c.vertex + "'");
    }
    if (it->second != c.parent) {
      throw ModelError("tree model: cpt for '" + c.vertex +
                       "' does not point at its parent");
    }
    if (!in_band(c.p1_given_parent0) || !in_band(c.p1_given_parent1)) {
      throw ModelError("tree model: cpt entry outside [epsilon, 1 - epsilon]");
    }
    if (std::abs(c.p1_given_parent1 - c.p1_given_parent0) < delta) {
      throw ModelError("tree model: coupling below delta on '" + c.vertex +
                       "'");
    }
  }
  const NameSet vars = tree.vertices();
  const std::size_t n = vars.size();
  const std::size_t root_pos =
      static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(),
                                                root) -
                               vars.begin());
  std::vector<double> probs(std::size_t{1} << n, 0.0);
  for (std::size_t cell = 0; cell < probs.size(); ++cell) {
    auto bit_of = [&](const std::string& name) {
      const std::size_t p = static_cast<std::size_t>(
          std::lower_bound(vars.begin(), vars.end(), name) - vars.begin());
      return (cell >> (n - 1 - p)) & std::size_t{1};
    };
    double p = bit_of(vars[root_pos]) ? root_p1 : 1.0 - root_p1;
    for (const EdgeCpt& c : cpts) {
      const double p1 =
          bit_of(c.parent) ? c.p1_given_parent1 : c.p1_given_parent0;
      p *= bit_of(c.vertex) ? p1 : 1.0 - p1;
    }
    probs[cell] = p;
  }
  TreeModel out{tree, root, root_p1, std::move(cpts),
                JointTable(vars, std::move(probs)), epsilon, delta};
  if (delta > 0.0) {
    if (!(markov_network(out.table) == tree)) {
      throw ModelError(
          "tree model: defining edges of the table do not match the tree");
    }
  }
  return out;
}

// Random binary model over a given tree: conditional entries drawn from
// [epsilon, 1 - epsilon], couplings redrawn until they clear delta. Rooted
// at the lexicographically smallest vertex.
inline TreeModel random_tree_binary(const UGraph& tree, Seed seed,
                                    double epsilon, double delta) {
  if (!(epsilon > 0.0) || !(epsilon < 0.5)) {
    throw ParamError("random_tree_binary: epsilon must lie in (0, 0.5)");
  }
  if (!(delta >= 0.0) || !(delta < 1.0 - 2.0 * epsilon)) {
    throw ParamError(
        "random_tree_binary: delta must lie in [0, 1 - 2*epsilon)");
  }
  if (!is_tree(tree)) {
    throw StructureError("random_tree_binary: graph is not a tree");
  }
  if (tree.vertex_count() > JointTable::kMaxVariables) {
    throw ResourceError("random_tree_binary: too many vertices");
  }
  SplitMix64 rng(seed);
  const std::string root = tree.vertices().front();
  const double lo = epsilon;
  const double hi = 1.0 - epsilon;
  const double root_p1 = rng.next_real(lo, hi);
  const auto parent = detail::bfs_parents(tree, root);
  std::vector<EdgeCpt> cpts;
  for (const std::string& v : tree.vertices()) {  // sorted draw order
    if (v == root) continue;
    EdgeCpt c;
    c.vertex = v;
    c.parent = parent.at(v);
    do {
      c.p1_given_parent0 = rng.next_real(lo, hi);
      c.p1_given_parent1 = rng.next_real(lo, hi);
    } while (std::abs(c.p1_given_parent1 - c.p1_given_parent0) < delta);
    cpts.push_back(std::move(c));
  }
  return tree_model_from_cpts(tree, root, root_p1, std::move(cpts), epsilon,
                              delta);
}

// The three-variable chain x - c - y with fixed round parameters; handy as
// a known-answer fixture and as the default model for the docs.
inline TreeModel chain_preset() {
  const UGraph tree(NameSet{"c", "x", "y"}, {{"x", "c"}, {"c", "y"}});
  std::vector<EdgeCpt> cpts;
  cpts.push_back({"c", "x", 0.2, 0.8});
  cpts.push_back({"y", "c", 0.1, 0.6});
  return tree_model_from_cpts(tree, "x", 0.3, std::move(cpts), 0.1, 0.5);
}

// A Gaussian tree model: unit variances, edge correlations as given, and
// every off-tree correlation the product of the correlations along the
// connecting path.
struct GaussianTree {
  UGraph tree;
  std::vector<std::pair<UGraph::Edge, double>> edge_rho;  // sorted edge order
  GaussianModel model;
};

inline GaussianTree gaussian_tree_model(
    const UGraph& tree, const std::vector<std::pair<UGraph::Edge, double>>&
                            edge_rho_in) {
  if (!is_tree(tree)) {
    throw StructureError("gaussian tree: graph is not a tree");
  }
  std::map<UGraph::Edge, double> rho;
  for (auto [e, r] : edge_rho_in) {
    if (e.first > e.second) std::swap(e.first, e.second);
    if (!tree.has_edge(e.first, e.second)) {
      throw QueryError("gaussian tree: correlation given for a non-edge");
    }
    if (!(std::abs(r) > 0.0) || !(std::abs(r) < 1.0)) {
      throw ModelError(
          "gaussian tree: edge correlations must have magnitude in (0, 1)");
    }
    if (!rho.emplace(e, r).second) {
      throw QueryError("gaussian tree: duplicate edge correlation");
    }
  }
  if (rho.size() != tree.edge_count()) {
    throw QueryError("gaussian tree: every edge needs a correlation");
  }
  const std::size_t n = tree.vertex_count();
  std::vector<std::vector<double>> cov(n, std::vector<double>(n, 0.0));
  // correlation from vertex i to everything else: walk the tree once
  for (std::size_t i = 0; i < n; ++i) {
    cov[i][i] = 1.0;
    std::vector<char> seen(n, 0);
    seen[i] = 1;
    std::queue<std::size_t> frontier;
    frontier.push(i);
    while (!frontier.empty()) {
      const std::size_t at = frontier.front();
      frontier.pop();
      for (std::size_t nb : tree.adjacency()[at]) {
        if (seen[nb]) continue;
        seen[nb] = 1;
        UGraph::Edge e{tree.vertices()[at], tree.vertices()[nb]};
        if (e.first > e.second) std::swap(e.first, e.second);
        cov[i][nb] = cov[i][at] * rho.at(e);
        frontier.push(nb);
      }
    }
  }
  std::vector<std::pair<UGraph::Edge, double>> stored;
  for (const auto& e : tree.edges()) stored.emplace_back(e, rho.at(e));
  return GaussianTree{tree, std::move(stored),
                      GaussianModel(tree.vertices(), cov)};
}

// Random Gaussian model over a given tree: correlation magnitudes uniform
// in [rho_min, rho_max], signs decided by a coin per edge, drawn in sorted
// edge order.
inline GaussianTree random_tree_gaussian(const UGraph& tree, Seed seed,
                                         double rho_min, double rho_max) {
  if (!(rho_min > 0.0) || !(rho_min <= rho_max) || !(rho_max < 1.0)) {
    throw ParamError(
        "random_tree_gaussian: need 0 < rho_min <= rho_max < 1");
  }
  if (!is_tree(tree)) {
    throw StructureError("random_tree_gaussian: graph is not a tree");
  }
  SplitMix64 rng(seed);
  std::vector<std::pair<UGraph::Edge, double>> edge_rho;
  for (const auto& e : tree.edges()) {
    const double mag =
        rho_min < rho_max ? rng.next_real(rho_min, rho_max) : rho_min;
    edge_rho.emplace_back(e, rng.next_bit() ? -mag : mag);
  }
  return gaussian_tree_model(tree, edge_rho);
}

// Strictly positive random table on v0..v(n-1): normalized uniform weights
// mixed with the uniform distribution so every cell is at least epsilon.
inline JointTable random_positive_table(std::size_t n, Seed seed,
                                        double epsilon) {
  if (n == 0 || n > JointTable::kMaxVariables) {
    throw ParamError("random_positive_table: variable count out of range");
  }
  const std::size_t cells = std::size_t{1} << n;
  const double uniform = 1.0 / static_cast<double>(cells);
  if (!(epsilon > 0.0) || epsilon > uniform) {
    throw ParamError(
        "random_positive_table: epsilon must lie in (0, 2^-n]");
  }
  SplitMix64 rng(seed);
  std::vector<double> w(cells);
  double total = 0.0;
  do {
    for (auto& x : w) x = rng.next_unit();
    total = stable_sum(w);
  } while (!(total > 0.0));
  const double lambda = epsilon * static_cast<double>(cells);
  for (auto& x : w) x = (1.0 - lambda) * (x / total) + lambda * uniform;
  const double mass = stable_sum(w);
  for (auto& x : w) x /= mass;
  return JointTable(detail::indexed_names(n), std::move(w));
}

// k perfectly correlated coins: all-zeros and all-ones each carry mass 1/2.
// The canonical intersection-property counterexample.
inline JointTable deterministic_copy_dist(std::size_t k) {
  if (k < 2) throw ParamError("deterministic_copy_dist: need at least 2");
  if (k > JointTable::kMaxVariables) {
    throw ResourceError("deterministic_copy_dist: too many variables");
  }
  std::vector<double> probs(std::size_t{1} << k, 0.0);
  probs.front() = 0.5;
  probs.back() = 0.5;
  return JointTable(detail::indexed_names(k), std::move(probs));
}

// Binary samples, one row per draw, column order matching `variables`.
struct SampleMatrix {
  NameSet variables;
  std::vector<std::vector<std::uint8_t>> rows;
};

// IID rows from the table by CDF inversion.
inline SampleMatrix sample_table(const JointTable& t, std::size_t rows,
                                 Seed seed) {
  SplitMix64 rng(seed);
  std::vector<double> cum(t.cell_count());
  double acc = 0.0;
  for (std::size_t i = 0; i < cum.size(); ++i) {
    acc += t.probs()[i];
    cum[i] = acc;
  }
  cum.back() = 1.0;
  SampleMatrix out;
  out.variables = t.variables();
  out.rows.reserve(rows);
  const std::size_t n = t.variable_count();
  for (std::size_t r = 0; r < rows; ++r) {
    const double u = rng.next_unit();
    const std::size_t cell = static_cast<std::size_t>(
        std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
    std::vector<std::uint8_t> row(n);
    for (std::size_t i = 0; i < n; ++i) {
      row[i] = static_cast<std::uint8_t>((cell >> (n - 1 - i)) & 1U);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace treeci
