#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "treeci/common.hpp"
#include "treeci/errors.hpp"

namespace treeci {

// Full joint distribution over n binary variables, stored densely.
//
// Cell indexing: the first listed variable owns the most significant bit,
// so cell index = sum over i of bit_i * 2^(n-1-i). Equivalently, bit 0 of
// the index is the last listed variable.
class JointTable {
 public:
  static constexpr std::size_t kMaxVariables = 20;

  JointTable(std::vector<std::string> variables, std::vector<double> probs)
      : variables_(std::move(variables)), probs_(std::move(probs)) {
    if (variables_.size() > kMaxVariables) {
      throw ModelError("JointTable: more than 20 variables");
    }
    for (const auto& v : variables_) {
      if (v.empty()) throw ModelError("JointTable: empty variable name");
      if (!positions_.emplace(v, positions_.size()).second) {
        throw ModelError("JointTable: duplicate variable '" + v + "'");
      }
    }
    const std::size_t want = std::size_t{1} << variables_.size();
    if (probs_.size() != want) {
      throw ModelError("JointTable: expected " + std::to_string(want) +
                       " cells, got " + std::to_string(probs_.size()));
    }
    for (double p : probs_) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw ModelError("JointTable: cells must be finite and nonnegative");
      }
    }
    const double mass = stable_sum(probs_);
    if (std::abs(mass - 1.0) > 1e-12) {
      throw ModelError("JointTable: mass " + std::to_string(mass) +
                       " is not 1 within 1e-12");
    }
  }

  std::size_t variable_count() const noexcept { return variables_.size(); }
  const std::vector<std::string>& variables() const noexcept {
    return variables_;
  }
  const std::vector<double>& probs() const noexcept { return probs_; }
  std::size_t cell_count() const noexcept { return probs_.size(); }
  double cell(std::size_t index) const { return probs_.at(index); }

  bool has_variable(const std::string& name) const noexcept {
    return positions_.count(name) != 0;
  }

  // Position of a variable in the declared order (0 = most significant bit).
  std::size_t position_of(const std::string& name) const {
    auto it = positions_.find(name);
    if (it == positions_.end()) {
      throw QueryError("unknown variable '" + name + "'");
    }
    return it->second;
  }

  bool strictly_positive(double eps = kPositivityEps) const noexcept {
    for (double p : probs_) {
      if (p < eps) return false;
    }
    return true;
  }

 private:
  std::vector<std::string> variables_;
  std::vector<double> probs_;
  std::unordered_map<std::string, std::size_t> positions_;
};

// A conditional-independence query: is X independent of Y given Z?
// X and Y must be nonempty; X, Y, Z pairwise disjoint; all names known to
// the model. Sets are normalized (sorted, deduped) on use.
struct CIQuery {
  NameSet x;
  NameSet y;
  NameSet z;
};

namespace detail {

template <class Model>
inline void validate_query_names(const Model& m, const NameSet& s,
                                 const char* role) {
  for (const auto& name : s) {
    if (!m.has_variable(name)) {
      throw QueryError(std::string(role) + " names unknown variable '" +
                       name + "'");
    }
  }
}

template <class Model>
inline CIQuery validated_ci_query(const Model& m, const CIQuery& q) {
  CIQuery out{normalized(q.x), normalized(q.y), normalized(q.z)};
  if (out.x.empty()) throw QueryError("CI query: X must be nonempty");
  if (out.y.empty()) throw QueryError("CI query: Y must be nonempty");
  if (!sets_disjoint(out.x, out.y) || !sets_disjoint(out.x, out.z) ||
      !sets_disjoint(out.y, out.z)) {
    throw QueryError("CI query: X, Y, Z must be pairwise disjoint");
  }
  validate_query_names(m, out.x, "X");
  validate_query_names(m, out.y, "Y");
  validate_query_names(m, out.z, "Z");
  return out;
}

// Positions (ascending) of `subset` among the variables of `t`.
inline std::vector<std::size_t> positions_in(const JointTable& t,
                                             const NameSet& subset) {
  std::vector<std::size_t> pos;
  pos.reserve(subset.size());
  for (const auto& name : subset) pos.push_back(t.position_of(name));
  std::sort(pos.begin(), pos.end());
  return pos;
}

// Packs the bits at `pos` (ascending variable positions) of a full cell
// index into a sub-index, preserving variable order.
inline std::size_t project_index(std::size_t cell, std::size_t n,
                                 const std::vector<std::size_t>& pos) {
  std::size_t idx = 0;
  for (std::size_t p : pos) {
    idx = (idx << 1) | ((cell >> (n - 1 - p)) & 1U);
  }
  return idx;
}

}  // namespace detail

// Sums out every variable not in `keep`. The result keeps the original
// variable order. keep may be empty: the result is the one-cell table with
// value 1.
inline JointTable marginalize(const JointTable& t, const NameSet& keep) {
  const NameSet k = normalized(keep);
  detail::validate_query_names(t, k, "keep");
  const std::size_t n = t.variable_count();
  const auto pos = detail::positions_in(t, k);
  std::vector<std::string> vars;
  vars.reserve(pos.size());
  for (std::size_t p : pos) vars.push_back(t.variables()[p]);
  std::vector<double> out(std::size_t{1} << pos.size(), 0.0);
  for (std::size_t cell = 0; cell < t.cell_count(); ++cell) {
    out[detail::project_index(cell, n, pos)] += t.probs()[cell];
  }
  return JointTable(std::move(vars), std::move(out));
}

// Largest absolute violation of P(x,y,z)P(z) = P(x,z)P(y,z) over all
// assignments, after restricting the table to the queried variables.
inline double ci_deviation(const JointTable& t, const CIQuery& query) {
  const CIQuery q = detail::validated_ci_query(t, query);
  const NameSet u = set_union(set_union(q.x, q.y), q.z);
  const JointTable r =
      (u.size() == t.variable_count()) ? t : marginalize(t, u);
  const std::size_t m = r.variable_count();
  const NameSet xz = set_union(q.x, q.z);
  const NameSet yz = set_union(q.y, q.z);
  const JointTable pz = marginalize(r, q.z);
  const JointTable pxz = marginalize(r, xz);
  const JointTable pyz = marginalize(r, yz);
  const auto pos_z = detail::positions_in(r, q.z);
  const auto pos_xz = detail::positions_in(r, xz);
  const auto pos_yz = detail::positions_in(r, yz);
  double max_dev = 0.0;
  for (std::size_t cell = 0; cell < r.cell_count(); ++cell) {
    const double lhs =
        r.probs()[cell] * pz.probs()[detail::project_index(cell, m, pos_z)];
    const double rhs =
        pxz.probs()[detail::project_index(cell, m, pos_xz)] *
        pyz.probs()[detail::project_index(cell, m, pos_yz)];
    const double dev = std::abs(lhs - rhs);
    if (dev > max_dev) max_dev = dev;
  }
  return max_dev;
}

struct CiDecision {
  bool holds = false;
  double max_dev = 0.0;
};

inline CiDecision is_ci_discrete(const JointTable& t, const CIQuery& q,
                                 double tol = kDefaultTol) {
  if (!(tol >= 0.0)) throw ParamError("is_ci_discrete: tol must be >= 0");
  const double dev = ci_deviation(t, q);
  return {dev <= tol, dev};
}

}  // namespace treeci
