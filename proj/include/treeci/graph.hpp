#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "treeci/common.hpp"
#include "treeci/errors.hpp"
#include "treeci/joint_table.hpp"

namespace treeci {

// Simple undirected graph over named vertices. Edges are stored in
// canonical form: lexicographically smaller endpoint first, list sorted and
// deduplicated, no self-loops.
class UGraph {
 public:
  using Edge = std::pair<std::string, std::string>;

  UGraph() = default;

  UGraph(NameSet vertices, std::vector<Edge> edges)
      : vertices_(normalized(std::move(vertices))) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      positions_.emplace(vertices_[i], i);
    }
    adjacency_.resize(vertices_.size());
    for (auto& e : edges) {
      if (e.first == e.second) {
        throw StructureError("UGraph: self-loop at '" + e.first + "'");
      }
      if (!positions_.count(e.first) || !positions_.count(e.second)) {
        throw StructureError("UGraph: edge (" + e.first + "," + e.second +
                             ") names an unknown vertex");
      }
      if (e.second < e.first) std::swap(e.first, e.second);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    for (const auto& e : edges_) {
      const auto a = positions_.at(e.first);
      const auto b = positions_.at(e.second);
      adjacency_[a].push_back(static_cast<std::uint32_t>(b));
      adjacency_[b].push_back(static_cast<std::uint32_t>(a));
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
  }

  const NameSet& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  bool has_vertex(const std::string& name) const noexcept {
    return positions_.count(name) != 0;
  }

  std::size_t vertex_index(const std::string& name) const {
    auto it = positions_.find(name);
    if (it == positions_.end()) {
      throw QueryError("unknown vertex '" + name + "'");
    }
    return it->second;
  }

  bool has_edge(const std::string& a, const std::string& b) const {
    Edge e = a < b ? Edge{a, b} : Edge{b, a};
    return std::binary_search(edges_.begin(), edges_.end(), e);
  }

  const std::vector<std::vector<std::uint32_t>>& adjacency() const noexcept {
    return adjacency_;
  }

  friend bool operator==(const UGraph& lhs, const UGraph& rhs) {
    return lhs.vertices_ == rhs.vertices_ && lhs.edges_ == rhs.edges_;
  }

 private:
  NameSet vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> positions_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
};

// Vertex separation query: does every path from A to B pass through C?
struct SepQuery {
  NameSet a;
  NameSet b;
  NameSet c;
};

// True when deleting C disconnects A from B. A and B must be nonempty and
// the three sets pairwise disjoint.
inline bool separates(const UGraph& g, const SepQuery& query) {
  const NameSet a = normalized(query.a);
  const NameSet b = normalized(query.b);
  const NameSet c = normalized(query.c);
  if (a.empty()) throw QueryError("separation query: A must be nonempty");
  if (b.empty()) throw QueryError("separation query: B must be nonempty");
  if (!sets_disjoint(a, b) || !sets_disjoint(a, c) || !sets_disjoint(b, c)) {
    throw QueryError("separation query: A, B, C must be pairwise disjoint");
  }
  const std::size_t n = g.vertex_count();
  std::vector<std::uint8_t> state(n, 0);  // 1 = blocked, 2 = reached
  for (const auto& name : c) state[g.vertex_index(name)] = 1;
  std::vector<std::uint32_t> frontier;
  for (const auto& name : a) {
    const auto i = g.vertex_index(name);
    state[i] = 2;
    frontier.push_back(static_cast<std::uint32_t>(i));
  }
  std::vector<std::uint8_t> target(n, 0);
  for (const auto& name : b) target[g.vertex_index(name)] = 1;
  while (!frontier.empty()) {
    const auto v = frontier.back();
    frontier.pop_back();
    for (auto w : g.adjacency()[v]) {
      if (state[w] != 0) continue;
      if (target[w]) return false;
      state[w] = 2;
      frontier.push_back(w);
    }
  }
  return true;
}

// Connected and exactly |V|-1 edges. A single vertex is a tree; the empty
// graph is not.
inline bool is_tree(const UGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return false;
  if (g.edge_count() != n - 1) return false;
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::uint32_t> frontier{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!frontier.empty()) {
    const auto v = frontier.back();
    frontier.pop_back();
    for (auto w : g.adjacency()[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        frontier.push_back(w);
      }
    }
  }
  return count == n;
}

// Acyclic (every connected component is a tree).
inline bool is_forest(const UGraph& g) {
  std::vector<std::size_t> parent(g.vertex_count());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const auto& e : g.edges()) {
    const auto a = find(g.vertex_index(e.first));
    const auto b = find(g.vertex_index(e.second));
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

// The (pairwise Markov) network of a table: vertices are the variables, and
// (x,y) is an edge exactly when x and y are dependent given all the rest.
// Only strictly positive tables make this construction reliable; on other
// input a one-line warning is written to `diagnostics` (when given) and the
// computation proceeds anyway.
inline UGraph markov_network(const JointTable& t, double tol = kDefaultTol,
                             std::ostream* diagnostics = nullptr) {
  if (!(tol >= 0.0)) throw ParamError("markov_network: tol must be >= 0");
  if (!t.strictly_positive() && diagnostics != nullptr) {
    *diagnostics << "warning: table is not strictly positive; "
                    "pairwise dependence tests may not determine a unique "
                    "network\n";
  }
  const auto& vars = t.variables();
  const std::size_t n = vars.size();
  std::vector<UGraph::Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      NameSet rest;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != i && k != j) rest.push_back(vars[k]);
      }
      const CIQuery q{{vars[i]}, {vars[j]}, normalized(rest)};
      if (!is_ci_discrete(t, q, tol).holds) {
        edges.emplace_back(vars[i], vars[j]);
      }
    }
  }
  return UGraph(NameSet(vars.begin(), vars.end()), std::move(edges));
}

}  // namespace treeci
