#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "treeci/common.hpp"
#include "treeci/errors.hpp"

namespace treeci {

// Syntax-level independence statement: either a distribution fact (_|_) or
// a graph-separation fact (_|_G). Not bound to any concrete model.
enum class AtomKind { kCi, kSep };

struct Atom {
  AtomKind kind = AtomKind::kCi;
  NameSet x;
  NameSet y;
  NameSet z;

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.kind == b.kind && a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend bool operator<(const Atom& a, const Atom& b) {
    return std::tie(a.kind, a.x, a.y, a.z) <
           std::tie(b.kind, b.x, b.y, b.z);
  }
};

// Canonicalizes (sorts the three sets) and validates the atom shape.
inline Atom make_atom(AtomKind kind, NameSet x, NameSet y, NameSet z) {
  Atom a{kind, normalized(std::move(x)), normalized(std::move(y)),
         normalized(std::move(z))};
  if (a.x.empty() || a.y.empty()) {
    throw ScriptError("atom: first two sets must be nonempty");
  }
  if (!sets_disjoint(a.x, a.y) || !sets_disjoint(a.x, a.z) ||
      !sets_disjoint(a.y, a.z)) {
    throw ScriptError("atom: the three sets must be pairwise disjoint");
  }
  return a;
}

inline std::string to_string(const Atom& a) {
  const auto set = [](const NameSet& s) { return "{" + join(s) + "}"; };
  return set(a.x) + (a.kind == AtomKind::kSep ? " _|_G " : " _|_ ") +
         set(a.y) + " | " + set(a.z);
}

// A disjunction of atoms. Canonical form: sorted, deduplicated, nonempty.
using Clause = std::vector<Atom>;

inline Clause canonical_clause(Clause c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  if (c.empty()) throw ScriptError("clause: needs at least one disjunct");
  return c;
}

inline std::string to_string(const Clause& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += " OR ";
    out += to_string(c[i]);
  }
  return out;
}

enum class RuleId {
  kSymmetry,
  kDecomposition,
  kWeakUnion,
  kContraction,
  kIntersection,
  kWeakTransitivity,
  kDecomposableTransitivity,
  kMarkovTransfer,
  kAssumption,
};

inline constexpr RuleId kAllRules[] = {
    RuleId::kSymmetry,        RuleId::kDecomposition,
    RuleId::kWeakUnion,       RuleId::kContraction,
    RuleId::kIntersection,    RuleId::kWeakTransitivity,
    RuleId::kDecomposableTransitivity,
    RuleId::kMarkovTransfer,  RuleId::kAssumption,
};

inline std::string_view rule_name(RuleId r) {
  switch (r) {
    case RuleId::kSymmetry: return "symmetry";
    case RuleId::kDecomposition: return "decomposition";
    case RuleId::kWeakUnion: return "weak_union";
    case RuleId::kContraction: return "contraction";
    case RuleId::kIntersection: return "intersection";
    case RuleId::kWeakTransitivity: return "weak_transitivity";
    case RuleId::kDecomposableTransitivity:
      return "decomposable_transitivity";
    case RuleId::kMarkovTransfer: return "markov_transfer";
    case RuleId::kAssumption: return "assumption";
  }
  throw ParamError("unknown rule id");
}

inline RuleId rule_from_string(std::string_view name) {
  for (RuleId r : kAllRules) {
    if (rule_name(r) == name) return r;
  }
  throw ParamError("unknown rule '" + std::string(name) + "'");
}

inline std::size_t rule_arity(RuleId r) {
  switch (r) {
    case RuleId::kSymmetry:
    case RuleId::kDecomposition:
    case RuleId::kWeakUnion:
    case RuleId::kMarkovTransfer:
      return 1;
    case RuleId::kContraction:
    case RuleId::kIntersection:
    case RuleId::kWeakTransitivity:
    case RuleId::kDecomposableTransitivity:
      return 2;
    case RuleId::kAssumption:
      return 0;
  }
  throw ParamError("unknown rule id");
}

// Semantic side condition the rule needs to be sound. Recorded as metadata
// only; the checker validates syntax, not regimes.
inline std::string_view rule_side_condition(RuleId r) {
  switch (r) {
    case RuleId::kIntersection:
      return "strictly positive distribution";
    case RuleId::kWeakTransitivity:
      return "joint normal, or binary pivot with empty conditioning set";
    case RuleId::kDecomposableTransitivity:
      return "strictly positive binary distribution";
    case RuleId::kMarkovTransfer:
      return "graph is a Markov network of the distribution";
    default:
      return "";
  }
}

struct Step {
  std::size_t index = 0;
  Clause clause;
  RuleId rule = RuleId::kAssumption;
  std::vector<std::size_t> premises;
  std::string note;
};

struct Script {
  std::vector<Step> steps;
};

namespace detail {

// Every nonempty proper sub-split of `from`: fn(kept, moved) with both
// parts nonempty. Used by decomposition (drop `moved`) and weak union
// (condition on `moved`).
template <class Fn>
void for_each_split(const NameSet& from, Fn&& fn) {
  const std::size_t m = from.size();
  if (m < 2 || m > 25) return;
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << m); ++mask) {
    NameSet kept, moved;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (std::size_t{1} << i)) {
        kept.push_back(from[i]);
      } else {
        moved.push_back(from[i]);
      }
    }
    fn(kept, moved);
  }
}

inline void unary_images(RuleId r, const Atom& a, std::vector<Clause>& out) {
  switch (r) {
    case RuleId::kSymmetry:
      out.push_back({make_atom(a.kind, a.y, a.x, a.z)});
      return;
    case RuleId::kDecomposition:
      for_each_split(a.y, [&](const NameSet& kept, const NameSet&) {
        out.push_back({make_atom(a.kind, a.x, kept, a.z)});
      });
      return;
    case RuleId::kWeakUnion:
      for_each_split(a.y, [&](const NameSet& kept, const NameSet& moved) {
        out.push_back({make_atom(a.kind, a.x, kept, set_union(a.z, moved))});
      });
      return;
    case RuleId::kMarkovTransfer:
      if (a.kind == AtomKind::kSep) {
        out.push_back({make_atom(AtomKind::kCi, a.x, a.y, a.z)});
      }
      return;
    default:
      return;
  }
}

// Images of the binary rules with `p` in the first schema slot and `q` in
// the second. Atoms of different kinds never unify.
inline void binary_images(RuleId r, const Atom& p, const Atom& q,
                          std::vector<Clause>& out) {
  if (p.kind != q.kind) return;
  switch (r) {
    case RuleId::kContraction: {
      // p: X _|_ Y | Z    q: X _|_ W | Z+Y    =>    X _|_ Y+W | Z
      if (p.x != q.x) return;
      if (q.z != set_union(p.z, p.y)) return;
      out.push_back({make_atom(p.kind, p.x, set_union(p.y, q.y), p.z)});
      return;
    }
    case RuleId::kIntersection: {
      // p: X _|_ Y | Z+W    q: X _|_ W | Z+Y    =>    X _|_ Y+W | Z
      if (p.x != q.x) return;
      if (!subset_of(q.y, p.z)) return;
      const NameSet z = set_difference(p.z, q.y);
      if (q.z != set_union(z, p.y)) return;
      out.push_back({make_atom(p.kind, p.x, set_union(p.y, q.y), z)});
      return;
    }
    case RuleId::kWeakTransitivity: {
      // p: X _|_ Y | Z    q: X _|_ Y | Z+c    =>    X _|_ c | Z  OR  c _|_ Y | Z
      if (p.x != q.x || p.y != q.y) return;
      if (!subset_of(p.z, q.z)) return;
      const NameSet extra = set_difference(q.z, p.z);
      if (extra.size() != 1) return;
      out.push_back({make_atom(p.kind, p.x, extra, p.z),
                     make_atom(p.kind, extra, p.y, p.z)});
      return;
    }
    case RuleId::kDecomposableTransitivity: {
      // p: a+B _|_ D+e | c    q: a _|_ e | B+D    =>    a _|_ c | B  OR  c _|_ e | D
      if (p.z.size() != 1 || q.x.size() != 1 || q.y.size() != 1) return;
      const std::string& a = q.x.front();
      const std::string& e = q.y.front();
      if (!set_contains(p.x, a) || !set_contains(p.y, e)) return;
      const NameSet b = set_difference(p.x, q.x);
      const NameSet d = set_difference(p.y, q.y);
      if (q.z != set_union(b, d)) return;
      out.push_back({make_atom(p.kind, q.x, p.z, b),
                     make_atom(p.kind, p.z, q.y, d)});
      return;
    }
    default:
      return;
  }
}

inline Clause merged_clause(Clause image, const Clause& leftover_a,
                            const Clause& leftover_b) {
  image.insert(image.end(), leftover_a.begin(), leftover_a.end());
  image.insert(image.end(), leftover_b.begin(), leftover_b.end());
  return canonical_clause(std::move(image));
}

}  // namespace detail

// One-step closure of the rule on the given premise clauses. Rules act on
// a single disjunct of each premise, carrying the remaining disjuncts
// along unchanged; binary rules try each cross pairing in both argument
// orders. Output is canonically sorted and deduplicated.
inline std::vector<Clause> apply_rule(RuleId rule,
                                      const std::vector<Clause>& premises) {
  if (premises.size() != rule_arity(rule)) {
    throw RuleError(std::string(rule_name(rule)) + ": expects " +
                    std::to_string(rule_arity(rule)) + " premise(s), got " +
                    std::to_string(premises.size()));
  }
  if (rule == RuleId::kAssumption) return {};
  std::vector<Clause> results;
  if (rule_arity(rule) == 1) {
    const Clause prem = canonical_clause(premises[0]);
    for (std::size_t i = 0; i < prem.size(); ++i) {
      Clause rest;
      rest.reserve(prem.size() - 1);
      for (std::size_t k = 0; k < prem.size(); ++k) {
        if (k != i) rest.push_back(prem[k]);
      }
      std::vector<Clause> images;
      detail::unary_images(rule, prem[i], images);
      for (auto& img : images) {
        results.push_back(detail::merged_clause(std::move(img), rest, {}));
      }
    }
  } else {
    const Clause pa = canonical_clause(premises[0]);
    const Clause pb = canonical_clause(premises[1]);
    for (std::size_t i = 0; i < pa.size(); ++i) {
      Clause rest_a;
      for (std::size_t k = 0; k < pa.size(); ++k) {
        if (k != i) rest_a.push_back(pa[k]);
      }
      for (std::size_t j = 0; j < pb.size(); ++j) {
        Clause rest_b;
        for (std::size_t k = 0; k < pb.size(); ++k) {
          if (k != j) rest_b.push_back(pb[k]);
        }
        std::vector<Clause> images;
        detail::binary_images(rule, pa[i], pb[j], images);
        detail::binary_images(rule, pb[j], pa[i], images);
        for (auto& img : images) {
          results.push_back(
              detail::merged_clause(std::move(img), rest_a, rest_b));
        }
      }
    }
  }
  std::sort(results.begin(), results.end());
  results.erase(std::unique(results.begin(), results.end()), results.end());
  if (results.empty()) {
    throw RuleError(std::string(rule_name(rule)) +
                    ": premises do not fit the rule schema");
  }
  return results;
}

struct DerivationResult {
  bool valid = false;
  std::optional<std::size_t> first_bad_step;
};

namespace detail {

inline void validate_script_structure(const Script& s) {
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    const Step& st = s.steps[i];
    if (st.index != i + 1) {
      throw ScriptError("step at position " + std::to_string(i + 1) +
                        " has index " + std::to_string(st.index) +
                        "; steps must be numbered 1..n in order");
    }
    for (std::size_t p : st.premises) {
      if (p == 0 || p >= st.index) {
        throw ScriptError("step " + std::to_string(st.index) +
                          " cites premise " + std::to_string(p) +
                          "; premises must point at earlier steps");
      }
    }
  }
}

}  // namespace detail

// Replays a script. Structural defects (bad numbering, dangling premise
// references) throw; a step whose clause is not derivable by its cited
// rule and premises makes the result invalid at that index.
inline DerivationResult check_derivation(const Script& s) {
  detail::validate_script_structure(s);
  for (const Step& st : s.steps) {
    bool ok = false;
    try {
      if (st.rule == RuleId::kAssumption) {
        if (!st.premises.empty()) {
          throw RuleError("assumption: expects 0 premise(s)");
        }
        canonical_clause(st.clause);  // shape check
        ok = true;
      } else {
        std::vector<Clause> prems;
        prems.reserve(st.premises.size());
        for (std::size_t p : st.premises) {
          prems.push_back(s.steps[p - 1].clause);
        }
        const Clause want = canonical_clause(st.clause);
        for (const Clause& got : apply_rule(st.rule, prems)) {
          if (got == want) {
            ok = true;
            break;
          }
        }
      }
    } catch (const RuleError&) {
      ok = false;
    } catch (const ScriptError&) {
      ok = false;
    }
    if (!ok) return {false, st.index};
  }
  return {true, std::nullopt};
}

namespace detail {

struct ScriptToken {
  enum Kind {
    kNumber,
    kName,
    kLBrace,
    kRBrace,
    kComma,
    kColon,
    kBar,
    kCiOp,
    kSepOp,
    kBy,
    kFrom,
    kOr,
    kEnd,
  };
  Kind kind = kEnd;
  std::string text;
  std::size_t col = 0;  // 1-based
};

inline bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

class ScriptLexer {
 public:
  ScriptLexer(const std::string& line, const std::string& where)
      : line_(line), where_(where) {}

  ScriptToken next() {
    while (at_ < line_.size() && (line_[at_] == ' ' || line_[at_] == '\t')) {
      ++at_;
    }
    ScriptToken t;
    t.col = at_ + 1;
    if (at_ >= line_.size()) {
      t.kind = ScriptToken::kEnd;
      return t;
    }
    const char c = line_[at_];
    switch (c) {
      case '{': t.kind = ScriptToken::kLBrace; ++at_; return t;
      case '}': t.kind = ScriptToken::kRBrace; ++at_; return t;
      case ',': t.kind = ScriptToken::kComma; ++at_; return t;
      case ':': t.kind = ScriptToken::kColon; ++at_; return t;
      default: break;
    }
    if (line_.compare(at_, 3, "_|_") == 0) {
      if (at_ + 3 < line_.size() && line_[at_ + 3] == 'G' &&
          (at_ + 4 >= line_.size() || !ident_char(line_[at_ + 4]))) {
        t.kind = ScriptToken::kSepOp;
        at_ += 4;
      } else {
        t.kind = ScriptToken::kCiOp;
        at_ += 3;
      }
      return t;
    }
    if (c == '|') {
      t.kind = ScriptToken::kBar;
      ++at_;
      return t;
    }
    if (ident_char(c)) {
      std::size_t end = at_;
      while (end < line_.size() && ident_char(line_[end])) ++end;
      t.text = line_.substr(at_, end - at_);
      at_ = end;
      if (t.text == "BY") {
        t.kind = ScriptToken::kBy;
      } else if (t.text == "FROM") {
        t.kind = ScriptToken::kFrom;
      } else if (t.text == "OR") {
        t.kind = ScriptToken::kOr;
      } else if (t.text.find_first_not_of("0123456789") ==
                 std::string::npos) {
        t.kind = ScriptToken::kNumber;
      } else {
        t.kind = ScriptToken::kName;
      }
      return t;
    }
    fail(t.col, std::string("unexpected character '") + c + "'");
  }

  [[noreturn]] void fail(std::size_t col, const std::string& msg) const {
    throw FormatError(where_ + ":" + std::to_string(col) + ": " + msg);
  }

 private:
  const std::string& line_;
  std::string where_;  // "source:lineno"
  std::size_t at_ = 0;
};

class ScriptLineParser {
 public:
  ScriptLineParser(const std::string& line, const std::string& where)
      : lex_(line, where) {
    shift();
  }

  Step parse_step() {
    Step st;
    st.index = parse_number("step index");
    expect(ScriptToken::kColon, "':' after the step index");
    st.clause = parse_clause();
    expect(ScriptToken::kBy, "'BY <rule>' after the clause");
    if (tok_.kind != ScriptToken::kName) {
      fail("rule name after BY");
    }
    try {
      st.rule = rule_from_string(tok_.text);
    } catch (const ParamError&) {
      lex_.fail(tok_.col, "unknown rule '" + tok_.text + "'");
    }
    shift();
    if (tok_.kind == ScriptToken::kFrom) {
      shift();
      st.premises.push_back(parse_number("premise index"));
      while (tok_.kind == ScriptToken::kComma) {
        shift();
        st.premises.push_back(parse_number("premise index"));
      }
    }
    if (tok_.kind != ScriptToken::kEnd) {
      fail("end of step");
    }
    return st;
  }

 private:
  void shift() { tok_ = lex_.next(); }

  [[noreturn]] void fail(const std::string& expected) {
    lex_.fail(tok_.col, "expected " + expected);
  }

  void expect(ScriptToken::Kind k, const std::string& what) {
    if (tok_.kind != k) fail(what);
    shift();
  }

  std::size_t parse_number(const std::string& what) {
    if (tok_.kind != ScriptToken::kNumber) fail(what);
    std::size_t value = 0;
    for (char c : tok_.text) {
      value = value * 10 + static_cast<std::size_t>(c - '0');
      if (value > 1'000'000) lex_.fail(tok_.col, what + " out of range");
    }
    shift();
    return value;
  }

  NameSet parse_set() {
    expect(ScriptToken::kLBrace, "'{'");
    NameSet names;
    if (tok_.kind == ScriptToken::kRBrace) {
      shift();
      return names;
    }
    while (true) {
      if (tok_.kind != ScriptToken::kName &&
          tok_.kind != ScriptToken::kNumber) {
        fail("a name inside the set");
      }
      names.push_back(tok_.text);
      shift();
      if (tok_.kind == ScriptToken::kComma) {
        shift();
        continue;
      }
      expect(ScriptToken::kRBrace, "',' or '}'");
      return names;
    }
  }

  Atom parse_atom() {
    const std::size_t col = tok_.col;
    NameSet x = parse_set();
    AtomKind kind;
    if (tok_.kind == ScriptToken::kCiOp) {
      kind = AtomKind::kCi;
    } else if (tok_.kind == ScriptToken::kSepOp) {
      kind = AtomKind::kSep;
    } else {
      fail("'_|_' or '_|_G'");
    }
    shift();
    NameSet y = parse_set();
    expect(ScriptToken::kBar, "'|' before the conditioning set");
    NameSet z = parse_set();
    try {
      return make_atom(kind, std::move(x), std::move(y), std::move(z));
    } catch (const ScriptError& e) {
      lex_.fail(col, e.what());
    }
  }

  Clause parse_clause() {
    Clause c;
    c.push_back(parse_atom());
    while (tok_.kind == ScriptToken::kOr) {
      shift();
      c.push_back(parse_atom());
    }
    return canonical_clause(std::move(c));
  }

  ScriptLexer lex_;
  ScriptToken tok_;
};

}  // namespace detail

// Parses the one-step-per-line script format:
//   <index>: <clause> BY <rule> [FROM <i,j,...>] [# note]
// Blank lines are skipped. Structural defects (out-of-order indices, bad
// premise references) throw ScriptError; syntax problems throw FormatError
// tagged source:line:col.
inline Script load_script(const std::string& text,
                          const std::string& source = "script") {
  Script script;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    std::string line = text.substr(
        start, nl == std::string::npos ? std::string::npos : nl - start);
    start = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string note;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) {
      note = line.substr(hash + 1);
      line = line.substr(0, hash);
      const std::size_t b = note.find_first_not_of(" \t");
      const std::size_t e = note.find_last_not_of(" \t");
      note = b == std::string::npos ? "" : note.substr(b, e - b + 1);
    }
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    try {
      Step st = detail::ScriptLineParser(line, where).parse_step();
      st.note = std::move(note);
      script.steps.push_back(std::move(st));
    } catch (const ScriptError& e) {
      throw ScriptError(where + ": " + e.what());
    }
  }
  detail::validate_script_structure(script);
  return script;
}

// Canonical text form; load_script(serialize_script(s)) reproduces s.
inline std::string serialize_script(const Script& s) {
  std::string out;
  for (const Step& st : s.steps) {
    out += std::to_string(st.index);
    out += ": ";
    out += to_string(canonical_clause(st.clause));
    out += " BY ";
    out += rule_name(st.rule);
    if (!st.premises.empty()) {
      out += " FROM ";
      for (std::size_t i = 0; i < st.premises.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(st.premises[i]);
      }
    }
    if (!st.note.empty()) {
      out += " # ";
      out += st.note;
    }
    out += '\n';
  }
  return out;
}

}  // namespace treeci
