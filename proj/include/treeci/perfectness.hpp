#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treeci/common.hpp"
#include "treeci/errors.hpp"
#include "treeci/gaussian.hpp"
#include "treeci/graph.hpp"
#include "treeci/joint_table.hpp"

namespace treeci {

enum class MismatchDirection {
  kSepNotCi,  // graph separates, model still shows dependence
  kCiNotSep,  // model is independent, graph has a connecting path
};

inline std::string_view to_string(MismatchDirection d) {
  return d == MismatchDirection::kSepNotCi ? "sep_not_ci" : "ci_not_sep";
}

struct TripleMismatch {
  NameSet a;
  NameSet b;
  NameSet c;
  MismatchDirection direction;
  double dev = 0.0;  // the model-side CI deviation for the triple
};

struct SeparationCiReport {
  std::size_t triples_checked = 0;
  std::size_t non_vacuous = 0;  // triples where separation or CI held
  std::vector<TripleMismatch> mismatches;

  bool perfect() const { return mismatches.empty(); }
};

// Compares vertex separation in `g` against CI in `m` over every (A, B, C)
// triple of disjoint variable subsets with A and B nonempty. A/B swaps are
// counted as distinct triples. No structural assumption on `g`; callers
// wanting the tree guarantee go through equivalence_scan. Capped at 7
// variables (4^n triples).
template <class Model>
SeparationCiReport separation_ci_mismatches(const Model& m, const UGraph& g,
                                            double tol = kDefaultTol) {
  if (!(tol >= 0.0)) throw ParamError("separation scan: tol must be >= 0");
  if (m.variable_count() > 7) {
    throw ResourceError("separation scan: more than 7 variables");
  }
  const auto& vars = m.variables();
  {
    NameSet mv = normalized(vars);
    NameSet gv = g.vertices();  // already sorted
    if (mv != gv) {
      throw QueryError(
          "separation scan: graph vertices and model variables differ");
    }
  }
  SeparationCiReport report;
  const std::size_t n = vars.size();
  std::vector<std::uint8_t> role(n, 0);  // 0=A 1=B 2=C 3=unused
  auto advance = [&]() {
    std::size_t i = 0;
    while (i < n && ++role[i] == 4) {
      role[i] = 0;
      ++i;
    }
    return i < n;
  };
  do {
    NameSet a, b, c;
    for (std::size_t i = 0; i < n; ++i) {
      switch (role[i]) {
        case 0: a.push_back(vars[i]); break;
        case 1: b.push_back(vars[i]); break;
        case 2: c.push_back(vars[i]); break;
        default: break;
      }
    }
    if (a.empty() || b.empty()) continue;
    a = normalized(std::move(a));
    b = normalized(std::move(b));
    c = normalized(std::move(c));
    ++report.triples_checked;
    const bool sep = separates(g, SepQuery{a, b, c});
    const double dev = ci_deviation(m, CIQuery{a, b, c});
    const bool ci = dev <= tol;
    if (sep || ci) ++report.non_vacuous;
    if (sep != ci) {
      report.mismatches.push_back(
          {a, b, c,
           sep ? MismatchDirection::kSepNotCi : MismatchDirection::kCiNotSep,
           dev});
    }
  } while (advance());
  return report;
}

struct EdgeResult {
  UGraph::Edge edge;
  double marginal_dev = 0.0;  // CI deviation of the endpoints, empty Z
  double defining_dev = 0.0;  // CI deviation given all other variables
};

struct PerfectnessReport {
  std::string model_id;
  UGraph tree;
  std::size_t triples_checked = 0;
  std::size_t non_vacuous = 0;
  std::vector<TripleMismatch> mismatches;
  std::vector<EdgeResult> edge_results;

  bool perfect() const { return mismatches.empty(); }
};

// Full separation-vs-CI audit of a forest-structured model: every triple,
// plus the two per-edge deviations (marginal dependence and dependence
// given the rest). StructureError if `g` has a cycle.
template <class Model>
PerfectnessReport equivalence_scan(const Model& m, const UGraph& g,
                                   double tol = kDefaultTol,
                                   std::string model_id = "") {
  if (!is_forest(g)) {
    throw StructureError("equivalence scan: graph has a cycle");
  }
  SeparationCiReport base = separation_ci_mismatches(m, g, tol);
  PerfectnessReport report;
  report.model_id = std::move(model_id);
  report.tree = g;
  report.triples_checked = base.triples_checked;
  report.non_vacuous = base.non_vacuous;
  report.mismatches = std::move(base.mismatches);
  const NameSet all = normalized(m.variables());
  for (const auto& e : g.edges()) {
    EdgeResult r;
    r.edge = e;
    const NameSet x{e.first}, y{e.second};
    r.marginal_dev = ci_deviation(m, CIQuery{x, y, {}});
    r.defining_dev = ci_deviation(
        m, CIQuery{x, y, set_difference(all, set_union(x, y))});
    report.edge_results.push_back(std::move(r));
  }
  return report;
}

struct EdgeDeviation {
  UGraph::Edge edge;
  double dev = 0.0;
};

struct EdgeCheckResult {
  bool passed = false;
  std::vector<EdgeDeviation> per_edge;
};

// Passes when every edge of `g` joins variables that are dependent already
// at the margin (deviation above tol with empty conditioning set).
template <class Model>
EdgeCheckResult edge_marginal_check(const Model& m, const UGraph& g,
                                    double tol = kDefaultTol) {
  if (!(tol >= 0.0)) throw ParamError("edge check: tol must be >= 0");
  EdgeCheckResult out;
  out.passed = true;
  for (const auto& e : g.edges()) {
    const double dev =
        ci_deviation(m, CIQuery{NameSet{e.first}, NameSet{e.second}, {}});
    if (dev <= tol) out.passed = false;
    out.per_edge.push_back({e, dev});
  }
  return out;
}

// Passes when every edge of `g` joins variables that stay dependent given
// all remaining variables, i.e. the graph has no edge the model can drop.
template <class Model>
EdgeCheckResult defining_edge_check(const Model& m, const UGraph& g,
                                    double tol = kDefaultTol) {
  if (!(tol >= 0.0)) throw ParamError("edge check: tol must be >= 0");
  const NameSet all = normalized(m.variables());
  EdgeCheckResult out;
  out.passed = true;
  for (const auto& e : g.edges()) {
    const NameSet x{e.first}, y{e.second};
    const double dev =
        ci_deviation(m, CIQuery{x, y, set_difference(all, set_union(x, y))});
    if (dev <= tol) out.passed = false;
    out.per_edge.push_back({e, dev});
  }
  return out;
}

}  // namespace treeci
