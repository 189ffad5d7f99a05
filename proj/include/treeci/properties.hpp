#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "treeci/common.hpp"
#include "treeci/errors.hpp"
#include "treeci/gaussian.hpp"
#include "treeci/graph.hpp"
#include "treeci/joint_table.hpp"

namespace treeci {

// The independence properties this module can check and scan for.
enum class PropertyId {
  kSymmetry,
  kDecomposition,
  kWeakUnion,
  kContraction,
  kIntersection,
  kWeakTransitivity,
  kDecomposableTransitivity,
};

inline constexpr PropertyId kAllProperties[] = {
    PropertyId::kSymmetry,        PropertyId::kDecomposition,
    PropertyId::kWeakUnion,       PropertyId::kContraction,
    PropertyId::kIntersection,    PropertyId::kWeakTransitivity,
    PropertyId::kDecomposableTransitivity,
};

inline std::string_view to_string(PropertyId p) {
  switch (p) {
    case PropertyId::kSymmetry: return "symmetry";
    case PropertyId::kDecomposition: return "decomposition";
    case PropertyId::kWeakUnion: return "weak_union";
    case PropertyId::kContraction: return "contraction";
    case PropertyId::kIntersection: return "intersection";
    case PropertyId::kWeakTransitivity: return "weak_transitivity";
    case PropertyId::kDecomposableTransitivity:
      return "decomposable_transitivity";
  }
  throw ParamError("unknown property id");
}

inline PropertyId property_from_string(std::string_view name) {
  for (PropertyId p : kAllProperties) {
    if (to_string(p) == name) return p;
  }
  throw ParamError("unknown property '" + std::string(name) + "'");
}

// Binding for the four set-shaped properties. W stays empty for symmetry.
struct GraphoidBinding {
  NameSet x;
  NameSet y;
  NameSet w;
  NameSet z;
};

// Binding for weak transitivity: a pair of sets, a conditioning set, and
// the single pivot variable c.
struct WeakTransitivityBinding {
  NameSet x;
  NameSet y;
  NameSet z;
  std::string c;
};

// Binding for decomposable transitivity: three distinct single variables
// a, c, e and two disjoint sets B, D (either may be empty).
struct DTBinding {
  std::string a;
  std::string c;
  std::string e;
  NameSet b;
  NameSet d;
};

using PropertyBinding =
    std::variant<GraphoidBinding, WeakTransitivityBinding, DTBinding>;

// The antecedent queries and the conclusion disjuncts a binding induces.
// A property holds on an instance when every antecedent holds (tightly)
// implies at least one conclusion disjunct holds (loosely).
struct PropertySchema {
  std::vector<CIQuery> antecedents;
  std::vector<CIQuery> conclusion;
};

namespace detail {

inline void require_disjoint(std::initializer_list<const NameSet*> sets,
                             const char* what) {
  std::vector<const NameSet*> v(sets);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (!sets_disjoint(*v[i], *v[j])) {
        throw QueryError(std::string(what) +
                         ": binding sets must be pairwise disjoint");
      }
    }
  }
}

inline GraphoidBinding normalized(GraphoidBinding b) {
  b.x = treeci::normalized(std::move(b.x));
  b.y = treeci::normalized(std::move(b.y));
  b.w = treeci::normalized(std::move(b.w));
  b.z = treeci::normalized(std::move(b.z));
  return b;
}

}  // namespace detail

inline PropertySchema property_schema(PropertyId p,
                                      const PropertyBinding& binding) {
  PropertySchema s;
  switch (p) {
    case PropertyId::kSymmetry: {
      const auto* g = std::get_if<GraphoidBinding>(&binding);
      if (!g) throw QueryError("symmetry expects a graphoid binding");
      const auto b = detail::normalized(*g);
      if (!b.w.empty()) {
        throw QueryError("symmetry binding does not use W");
      }
      detail::require_disjoint({&b.x, &b.y, &b.z}, "symmetry");
      s.antecedents.push_back({b.x, b.y, b.z});
      s.conclusion.push_back({b.y, b.x, b.z});
      return s;
    }
    case PropertyId::kDecomposition:
    case PropertyId::kWeakUnion:
    case PropertyId::kContraction:
    case PropertyId::kIntersection: {
      const auto* g = std::get_if<GraphoidBinding>(&binding);
      if (!g) {
        throw QueryError(std::string(to_string(p)) +
                         " expects a graphoid binding");
      }
      const auto b = detail::normalized(*g);
      detail::require_disjoint({&b.x, &b.y, &b.w, &b.z}, to_string(p).data());
      const NameSet yw = set_union(b.y, b.w);
      const NameSet zy = set_union(b.z, b.y);
      const NameSet zw = set_union(b.z, b.w);
      switch (p) {
        case PropertyId::kDecomposition:
          s.antecedents.push_back({b.x, yw, b.z});
          s.conclusion.push_back({b.x, b.y, b.z});
          break;
        case PropertyId::kWeakUnion:
          s.antecedents.push_back({b.x, yw, b.z});
          s.conclusion.push_back({b.x, b.y, zw});
          break;
        case PropertyId::kContraction:
          s.antecedents.push_back({b.x, b.y, b.z});
          s.antecedents.push_back({b.x, b.w, zy});
          s.conclusion.push_back({b.x, yw, b.z});
          break;
        default:  // intersection
          s.antecedents.push_back({b.x, b.y, zw});
          s.antecedents.push_back({b.x, b.w, zy});
          s.conclusion.push_back({b.x, yw, b.z});
          break;
      }
      return s;
    }
    case PropertyId::kWeakTransitivity: {
      const auto* w = std::get_if<WeakTransitivityBinding>(&binding);
      if (!w) {
        throw QueryError("weak_transitivity expects its own binding type");
      }
      WeakTransitivityBinding b{normalized(w->x), normalized(w->y),
                                normalized(w->z), w->c};
      const NameSet c{b.c};
      detail::require_disjoint({&b.x, &b.y, &b.z, &c}, "weak_transitivity");
      s.antecedents.push_back({b.x, b.y, b.z});
      s.antecedents.push_back({b.x, b.y, set_union(b.z, c)});
      s.conclusion.push_back({b.x, c, b.z});
      s.conclusion.push_back({c, b.y, b.z});
      return s;
    }
    case PropertyId::kDecomposableTransitivity: {
      const auto* d = std::get_if<DTBinding>(&binding);
      if (!d) {
        throw QueryError(
            "decomposable_transitivity expects its own binding type");
      }
      DTBinding b{d->a, d->c, d->e, normalized(d->b), normalized(d->d)};
      const NameSet a{b.a}, c{b.c}, e{b.e};
      detail::require_disjoint({&a, &c, &e, &b.b, &b.d},
                               "decomposable_transitivity");
      s.antecedents.push_back(
          {set_union(a, b.b), set_union(b.d, e), c});
      s.antecedents.push_back({a, e, set_union(b.b, b.d)});
      s.conclusion.push_back({a, c, b.b});
      s.conclusion.push_back({c, e, b.d});
      return s;
    }
  }
  throw ParamError("unknown property id");
}

// Discrete tables only support the weak-transitivity check in the regime
// the theorem actually covers: empty Z and a binary pivot. Variables here
// are always binary, so only the Z restriction can bite.
template <class Model>
struct ModelTraits {
  static constexpr bool discrete = false;
};
template <>
struct ModelTraits<JointTable> {
  static constexpr bool discrete = true;
};

struct PropertyCheck {
  bool vacuous = false;
  bool holds = false;
  // Deviations in schema order. Antecedent evaluation stops at the first
  // failure when scanning, so the list may be short for vacuous instances.
  std::vector<double> antecedent_devs;
  std::vector<double> conclusion_devs;
};

namespace detail {

template <class Model>
PropertyCheck check_instance_impl(const Model& m, PropertyId p,
                                  const PropertyBinding& binding,
                                  double tol_ante, double tol_conc,
                                  bool stop_at_first_failed_antecedent) {
  if (!(tol_ante >= 0.0) || !(tol_conc >= 0.0)) {
    throw ParamError("property check: tolerances must be >= 0");
  }
  if constexpr (ModelTraits<Model>::discrete) {
    if (p == PropertyId::kWeakTransitivity) {
      const auto& b = std::get<WeakTransitivityBinding>(binding);
      if (!treeci::normalized(b.z).empty()) {
        throw RegimeError(
            "weak_transitivity on tables is only supported with empty Z "
            "(and a binary pivot)");
      }
    }
  }
  const PropertySchema schema = property_schema(p, binding);
  PropertyCheck out;
  for (const auto& q : schema.antecedents) {
    const double dev = ci_deviation(m, q);
    out.antecedent_devs.push_back(dev);
    if (dev > tol_ante) {
      out.vacuous = true;
      if (stop_at_first_failed_antecedent) break;
    }
  }
  if (out.vacuous) {
    out.holds = true;
    return out;
  }
  for (const auto& q : schema.conclusion) {
    out.conclusion_devs.push_back(ci_deviation(m, q));
  }
  out.holds = std::any_of(out.conclusion_devs.begin(),
                          out.conclusion_devs.end(),
                          [&](double d) { return d <= tol_conc; });
  return out;
}

}  // namespace detail

template <class Model>
PropertyCheck check_property_instance(const Model& m, PropertyId p,
                                      const PropertyBinding& binding,
                                      double tol_ante, double tol_conc) {
  return detail::check_instance_impl(m, p, binding, tol_ante, tol_conc,
                                     /*stop_at_first_failed_antecedent=*/false);
}

struct Violation {
  PropertyId property;
  PropertyBinding binding;
  double antecedent_dev = 0.0;  // largest antecedent deviation
  double conclusion_dev = 0.0;  // smallest conclusion-disjunct deviation
};

struct ScanReport {
  std::vector<Violation> violations;
  std::size_t instances = 0;
  std::size_t non_vacuous = 0;
};

// Canonical text form of a binding; used as the sort key for violations and
// by the serializers.
inline std::string binding_key(const PropertyBinding& binding) {
  if (const auto* g = std::get_if<GraphoidBinding>(&binding)) {
    return "X={" + join(normalized(g->x)) + "};Y={" + join(normalized(g->y)) +
           "};W={" + join(normalized(g->w)) + "};Z={" +
           join(normalized(g->z)) + "}";
  }
  if (const auto* w = std::get_if<WeakTransitivityBinding>(&binding)) {
    return "X={" + join(normalized(w->x)) + "};Y={" + join(normalized(w->y)) +
           "};Z={" + join(normalized(w->z)) + "};c=" + w->c;
  }
  const auto& d = std::get<DTBinding>(binding);
  return "a=" + d.a + ";c=" + d.c + ";e=" + d.e + ";B={" +
         join(normalized(d.b)) + "};D={" + join(normalized(d.d)) + "}";
}

namespace detail {

// Enumerates every binding of the property's schema over `vars`: each
// variable is labeled with one schema role or left unused. Instances that
// differ only by the property's internal symmetry (X<->Y for symmetry and
// weak transitivity, Y<->W for intersection, (a,B)<->(e,D) for decomposable
// transitivity) are emitted once. `discrete` restricts weak transitivity to
// its supported regime instead of erroring.
template <class Fn>
void for_each_property_binding(PropertyId p,
                               const std::vector<std::string>& vars,
                               bool discrete, Fn&& fn) {
  const std::size_t n = vars.size();
  std::uint8_t role_count = 0;
  switch (p) {
    case PropertyId::kSymmetry: role_count = 4; break;           // X Y Z -
    case PropertyId::kDecomposition:
    case PropertyId::kWeakUnion:
    case PropertyId::kContraction:
    case PropertyId::kIntersection: role_count = 5; break;       // X Y W Z -
    case PropertyId::kWeakTransitivity: role_count = 5; break;   // X Y Z c -
    case PropertyId::kDecomposableTransitivity:
      role_count = 6;                                            // a c e B D -
      break;
  }
  std::vector<std::uint8_t> role(n, 0);
  auto advance = [&]() {
    std::size_t i = 0;
    while (i < n && ++role[i] == role_count) {
      role[i] = 0;
      ++i;
    }
    return i < n;
  };
  if (n == 0) return;
  do {
    NameSet slot[5];
    for (auto& s : slot) s.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (role[i] + 1 < role_count) slot[role[i]].push_back(vars[i]);
    }
    for (auto& s : slot) s = treeci::normalized(std::move(s));
    switch (p) {
      case PropertyId::kSymmetry: {
        const auto& x = slot[0];
        const auto& y = slot[1];
        const auto& z = slot[2];
        if (x.empty() || y.empty()) break;
        if (x.front() > y.front()) break;  // X<->Y symmetric
        fn(PropertyBinding(GraphoidBinding{x, y, {}, z}));
        break;
      }
      case PropertyId::kDecomposition:
      case PropertyId::kWeakUnion:
      case PropertyId::kContraction:
      case PropertyId::kIntersection: {
        const auto& x = slot[0];
        const auto& y = slot[1];
        const auto& w = slot[2];
        const auto& z = slot[3];
        if (x.empty() || y.empty() || w.empty()) break;
        if (p == PropertyId::kIntersection && y.front() > w.front()) {
          break;  // antecedents swap under Y<->W
        }
        fn(PropertyBinding(GraphoidBinding{x, y, w, z}));
        break;
      }
      case PropertyId::kWeakTransitivity: {
        const auto& x = slot[0];
        const auto& y = slot[1];
        const auto& z = slot[2];
        const auto& c = slot[3];
        if (x.empty() || y.empty() || c.size() != 1) break;
        if (discrete && !z.empty()) break;  // unsupported regime, skip
        if (x.front() > y.front()) break;   // X<->Y symmetric
        fn(PropertyBinding(WeakTransitivityBinding{x, y, z, c.front()}));
        break;
      }
      case PropertyId::kDecomposableTransitivity: {
        const auto& a = slot[0];
        const auto& c = slot[1];
        const auto& e = slot[2];
        const auto& b = slot[3];
        const auto& d = slot[4];
        if (a.size() != 1 || c.size() != 1 || e.size() != 1) break;
        if (a.front() > e.front()) break;  // (a,B)<->(e,D) mirror
        fn(PropertyBinding(
            DTBinding{a.front(), c.front(), e.front(), b, d}));
        break;
      }
    }
  } while (advance());
}

}  // namespace detail

// Checks one property against every schema binding over the model's
// variables. Capped at 7 variables; the instance count grows as
// (roles+1)^n. Violations come back canonically sorted.
template <class Model>
ScanReport scan_property(const Model& m, PropertyId p, double tol_ante,
                         double tol_conc) {
  if (m.variable_count() > 7) {
    throw ResourceError("scan_property: more than 7 variables");
  }
  ScanReport report;
  detail::for_each_property_binding(
      p, m.variables(), ModelTraits<Model>::discrete,
      [&](const PropertyBinding& binding) {
        ++report.instances;
        const PropertyCheck chk = detail::check_instance_impl(
            m, p, binding, tol_ante, tol_conc,
            /*stop_at_first_failed_antecedent=*/true);
        if (chk.vacuous) return;
        ++report.non_vacuous;
        if (!chk.holds) {
          Violation v;
          v.property = p;
          v.binding = binding;
          v.antecedent_dev = *std::max_element(chk.antecedent_devs.begin(),
                                               chk.antecedent_devs.end());
          v.conclusion_dev = *std::min_element(chk.conclusion_devs.begin(),
                                               chk.conclusion_devs.end());
          report.violations.push_back(std::move(v));
        }
      });
  std::sort(report.violations.begin(), report.violations.end(),
            [](const Violation& a, const Violation& b) {
              return binding_key(a.binding) < binding_key(b.binding);
            });
  return report;
}

// Adapter that lets the property machinery run against vertex separation in
// a graph: deviation 0 when separated, 1 when not.
struct SeparationSemantics {
  const UGraph* graph = nullptr;

  std::size_t variable_count() const { return graph->vertex_count(); }
  const std::vector<std::string>& variables() const {
    return graph->vertices();
  }
  bool has_variable(const std::string& name) const {
    return graph->has_vertex(name);
  }
};

inline double ci_deviation(const SeparationSemantics& s, const CIQuery& q) {
  return separates(*s.graph, SepQuery{q.x, q.y, q.z}) ? 0.0 : 1.0;
}

// Decomposable transitivity read over vertex separation: if the two
// antecedent separations hold, one of the conclusion separations must.
// Returns the truth of that implication (vacuously true included).
inline bool check_graph_dt(const UGraph& g, const DTBinding& inst) {
  const SeparationSemantics sem{&g};
  return check_property_instance(sem, PropertyId::kDecomposableTransitivity,
                                 PropertyBinding(inst), 0.5, 0.5)
      .holds;
}

struct GraphDtSweepResult {
  std::size_t graphs = 0;
  std::size_t instances = 0;
  std::size_t violations = 0;
  // The first few violating (graph, instance) pairs, for diagnosis.
  std::vector<std::pair<UGraph, DTBinding>> examples;
};

// Exhaustive check of graph-level decomposable transitivity over every
// labeled graph with up to `max_vertices` vertices and every disjoint
// (a,c,e,B,D) assignment (mirror-deduplicated). Capped at 6 vertices.
inline GraphDtSweepResult graph_dt_sweep(std::size_t max_vertices) {
  if (max_vertices > 6) {
    throw ResourceError("graph_dt_sweep: capped at 6 vertices");
  }
  GraphDtSweepResult out;
  for (std::size_t k = 1; k <= max_vertices; ++k) {
    NameSet vars;
    for (std::size_t i = 0; i < k; ++i) vars.push_back("v" + std::to_string(i));
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) slots.emplace_back(i, j);
    }
    const std::size_t masks = std::size_t{1} << slots.size();
    for (std::size_t mask = 0; mask < masks; ++mask) {
      std::vector<UGraph::Edge> edges;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (mask & (std::size_t{1} << s)) {
          edges.emplace_back(vars[slots[s].first], vars[slots[s].second]);
        }
      }
      const UGraph g(vars, std::move(edges));
      ++out.graphs;
      detail::for_each_property_binding(
          PropertyId::kDecomposableTransitivity, g.vertices(), false,
          [&](const PropertyBinding& binding) {
            ++out.instances;
            const auto& inst = std::get<DTBinding>(binding);
            if (!check_graph_dt(g, inst)) {
              ++out.violations;
              if (out.examples.size() < 8) out.examples.emplace_back(g, inst);
            }
          });
    }
  }
  return out;
}

struct AlphaBeta {
  double alpha = 0.0;
  double beta = 0.0;
};

namespace detail {

// Cell of the marginal `m` for the assignment in `bits` (keyed by variable
// name). Every variable of the marginal must be assigned.
inline double marginal_cell(const JointTable& m,
                            const std::vector<std::pair<std::string, int>>&
                                assignment) {
  std::size_t idx = 0;
  const std::size_t k = m.variable_count();
  for (const auto& [name, bit] : assignment) {
    if (bit) idx |= std::size_t{1} << (k - 1 - m.position_of(name));
  }
  return m.probs()[idx];
}

inline double odds_ratio(const JointTable& marg, const std::string& lo,
                         const std::string& hi, const NameSet& mid,
                         std::uint32_t mid_bits) {
  std::vector<std::pair<std::string, int>> assign;
  assign.reserve(mid.size() + 2);
  for (std::size_t i = 0; i < mid.size(); ++i) {
    assign.emplace_back(mid[i], (mid_bits >> i) & 1U);
  }
  assign.emplace_back(lo, 0);
  assign.emplace_back(hi, 0);
  auto cell = [&](int lo_bit, int hi_bit) {
    assign[mid.size()].second = lo_bit;
    assign[mid.size() + 1].second = hi_bit;
    const double p = marginal_cell(marg, assign);
    if (!(p > 0.0)) {
      throw ModelError("alpha_beta: zero cell in required marginal");
    }
    return p;
  };
  return (cell(1, 0) * cell(0, 1)) / (cell(0, 0) * cell(1, 1));
}

}  // namespace detail

// The two odds-ratio statistics whose dichotomy drives decomposable
// transitivity on binary models: alpha over (a, B, c) with B fixed at
// b_bits, beta over (c, D, e) with D fixed at d_bits. Bit k of the packed
// assignment is the value of the k-th name of the (sorted) set. Requires
// the touched marginal cells to be strictly positive.
inline AlphaBeta alpha_beta(const JointTable& t, const DTBinding& inst,
                            std::uint32_t b_bits, std::uint32_t d_bits) {
  const DTBinding b{inst.a, inst.c, inst.e, normalized(inst.b),
                    normalized(inst.d)};
  const NameSet sa{b.a}, sc{b.c}, se{b.e};
  detail::require_disjoint({&sa, &sc, &se, &b.b, &b.d}, "alpha_beta");
  if (b.b.size() >= 32 || b.d.size() >= 32) {
    throw ResourceError("alpha_beta: B and D must have fewer than 32 names");
  }
  if ((b.b.size() < 32 && (b_bits >> b.b.size()) != 0) ||
      (b.d.size() < 32 && (d_bits >> b.d.size()) != 0)) {
    throw ParamError("alpha_beta: assignment bits out of range");
  }
  const JointTable acb =
      marginalize(t, set_union(set_union(NameSet{b.a}, NameSet{b.c}), b.b));
  const JointTable ced =
      marginalize(t, set_union(set_union(NameSet{b.c}, NameSet{b.e}), b.d));
  AlphaBeta out;
  out.alpha = detail::odds_ratio(acb, b.a, b.c, b.b, b_bits);
  out.beta = detail::odds_ratio(ced, b.c, b.e, b.d, d_bits);
  return out;
}

struct AlphaBetaProfile {
  double max_alpha_dev = 0.0;  // max over B assignments of |alpha - 1|
  double max_beta_dev = 0.0;   // max over D assignments of |beta - 1|
};

inline AlphaBetaProfile alpha_beta_profile(const JointTable& t,
                                           const DTBinding& inst) {
  const DTBinding b{inst.a, inst.c, inst.e, normalized(inst.b),
                    normalized(inst.d)};
  const JointTable acb =
      marginalize(t, set_union(set_union(NameSet{b.a}, NameSet{b.c}), b.b));
  const JointTable ced =
      marginalize(t, set_union(set_union(NameSet{b.c}, NameSet{b.e}), b.d));
  AlphaBetaProfile out;
  for (std::uint32_t bits = 0; bits < (1U << b.b.size()); ++bits) {
    const double a = detail::odds_ratio(acb, b.a, b.c, b.b, bits);
    out.max_alpha_dev = std::max(out.max_alpha_dev, std::abs(a - 1.0));
  }
  for (std::uint32_t bits = 0; bits < (1U << b.d.size()); ++bits) {
    const double v = detail::odds_ratio(ced, b.c, b.e, b.d, bits);
    out.max_beta_dev = std::max(out.max_beta_dev, std::abs(v - 1.0));
  }
  return out;
}

}  // namespace treeci
