#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "treeci/common.hpp"
#include "treeci/errors.hpp"
#include "treeci/generators.hpp"
#include "treeci/graph.hpp"
#include "treeci/joint_table.hpp"

namespace treeci {

// Pairwise mutual information in nats, from the 4-cell marginal. Zero-mass
// cells contribute nothing (0*log 0 = 0).
inline double mutual_information(const JointTable& t, const std::string& x,
                                 const std::string& y) {
  if (x == y) throw QueryError("mutual_information: x and y must differ");
  detail::validate_query_names(t, NameSet{x}, "x");
  detail::validate_query_names(t, NameSet{y}, "y");
  const JointTable m = marginalize(t, normalized(NameSet{x, y}));
  const std::size_t px = m.position_of(x);
  const std::size_t py = m.position_of(y);
  double pj[2][2];
  for (std::size_t cell = 0; cell < 4; ++cell) {
    const std::size_t bx = (cell >> (1 - px)) & 1U;
    const std::size_t by = (cell >> (1 - py)) & 1U;
    pj[bx][by] = m.probs()[cell];
  }
  const double mx[2] = {pj[0][0] + pj[0][1], pj[1][0] + pj[1][1]};
  const double my[2] = {pj[0][0] + pj[1][0], pj[0][1] + pj[1][1]};
  double mi = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double p = pj[i][j];
      if (p > 0.0) mi += p * std::log(p / (mx[i] * my[j]));
    }
  }
  return mi;
}

struct PairScore {
  std::string a;  // a < b
  std::string b;
  double mi = 0.0;
};

// All unordered variable pairs with their mutual information, in the order
// the spanning-tree pass consumes them: mi descending, then (a, b)
// ascending. The deterministic tie-break for flat tables.
inline std::vector<PairScore> pairwise_mutual_information(
    const JointTable& t) {
  const NameSet vars = normalized(t.variables());
  std::vector<PairScore> scores;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = i + 1; j < vars.size(); ++j) {
      scores.push_back(
          {vars[i], vars[j], mutual_information(t, vars[i], vars[j])});
    }
  }
  std::sort(scores.begin(), scores.end(),
            [](const PairScore& p, const PairScore& q) {
              if (p.mi != q.mi) return p.mi > q.mi;
              if (p.a != q.a) return p.a < q.a;
              return p.b < q.b;
            });
  return scores;
}

// Maximum-mutual-information spanning tree (Kruskal over the sorted pair
// list). Always returns a tree; zero-information ties fall back to
// lexicographic edge order.
inline UGraph chow_liu(const JointTable& t) {
  const NameSet vars = normalized(t.variables());
  const std::size_t n = vars.size();
  if (n == 1) return UGraph(vars, {});
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  auto pos = [&](const std::string& name) {
    return static_cast<std::size_t>(
        std::lower_bound(vars.begin(), vars.end(), name) - vars.begin());
  };
  std::vector<UGraph::Edge> edges;
  for (const PairScore& s : pairwise_mutual_information(t)) {
    const std::size_t ra = find(pos(s.a));
    const std::size_t rb = find(pos(s.b));
    if (ra == rb) continue;
    parent[ra] = rb;
    edges.emplace_back(s.a, s.b);
    if (edges.size() == n - 1) break;
  }
  return UGraph(vars, std::move(edges));
}

// Empirical table from binary samples with a total pseudo-count of
// `smoothing` spread uniformly over the cells. Positive smoothing makes
// the result strictly positive.
inline JointTable ingest_samples(const SampleMatrix& s, double smoothing) {
  if (!(smoothing >= 0.0)) {
    throw ParamError("ingest_samples: smoothing must be >= 0");
  }
  const std::size_t n = s.variables.size();
  if (n == 0) throw FormatError("ingest_samples: no variables");
  if (n > JointTable::kMaxVariables) {
    throw ResourceError("ingest_samples: too many variables");
  }
  if (s.rows.empty()) throw FormatError("ingest_samples: no sample rows");
  const std::size_t cells = std::size_t{1} << n;
  std::vector<double> count(cells, 0.0);
  for (std::size_t r = 0; r < s.rows.size(); ++r) {
    const auto& row = s.rows[r];
    if (row.size() != n) {
      throw FormatError("ingest_samples: row " + std::to_string(r + 1) +
                        " has " + std::to_string(row.size()) +
                        " values, expected " + std::to_string(n));
    }
    std::size_t cell = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (row[i] > 1) {
        throw FormatError("ingest_samples: row " + std::to_string(r + 1) +
                          " has a non-binary value");
      }
      cell |= static_cast<std::size_t>(row[i]) << (n - 1 - i);
    }
    count[cell] += 1.0;
  }
  const double total = static_cast<double>(s.rows.size()) + smoothing;
  const double pseudo = smoothing / static_cast<double>(cells);
  for (auto& c : count) c = (c + pseudo) / total;
  return JointTable(s.variables, std::move(count));
}

namespace detail {

inline std::string trimmed(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) {
    --e;
  }
  return s.substr(b, e - b);
}

}  // namespace detail

// Headered CSV: first non-blank line names the variables, every following
// non-blank line is one row of 0/1 values. `source` seeds error messages.
inline SampleMatrix parse_sample_csv(const std::string& text,
                                     const std::string& source = "csv") {
  std::istringstream in(text);
  SampleMatrix out;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trimmed(line);
    if (t.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(t);
    while (std::getline(ls, field, ',')) {
      fields.push_back(detail::trimmed(field));
    }
    if (t.back() == ',') fields.push_back("");
    if (!have_header) {
      for (const auto& name : fields) {
        if (name.empty()) {
          throw FormatError(source + ":" + std::to_string(lineno) +
                            ": empty variable name");
        }
      }
      NameSet names(fields.begin(), fields.end());
      if (normalized(names).size() != fields.size()) {
        throw FormatError(source + ":" + std::to_string(lineno) +
                          ": duplicate variable name");
      }
      out.variables = std::move(names);
      have_header = true;
      continue;
    }
    if (fields.size() != out.variables.size()) {
      throw FormatError(source + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(out.variables.size()) +
                        " values, got " + std::to_string(fields.size()));
    }
    std::vector<std::uint8_t> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      if (f == "0") {
        row.push_back(0);
      } else if (f == "1") {
        row.push_back(1);
      } else {
        throw FormatError(source + ":" + std::to_string(lineno) +
                          ": value '" + f + "' is not 0 or 1");
      }
    }
    out.rows.push_back(std::move(row));
  }
  if (!have_header) throw FormatError(source + ": no header line");
  if (out.rows.empty()) throw FormatError(source + ": no sample rows");
  return out;
}

inline std::string write_sample_csv(const SampleMatrix& s) {
  std::string out = join(s.variables, ",");
  out += '\n';
  for (const auto& row : s.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i] ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

}  // namespace treeci
