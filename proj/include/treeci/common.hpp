#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <string>
#include <vector>

#include "treeci/errors.hpp"

namespace treeci {

// Variable-name sets are plain sorted, duplicate-free string vectors.
using NameSet = std::vector<std::string>;

// Absolute deviation below which a conditional-independence statement is
// accepted. All tolerances in this library are absolute, never relative.
inline constexpr double kDefaultTol = 1e-9;

// Looser bound used for the conclusion side of property checks, so that a
// conclusion is not rejected on accumulated rounding when the antecedents
// held tightly.
inline constexpr double kDefaultConclusionTol = 1e-6;

// Tight bound for antecedents in property scans.
inline constexpr double kAntecedentTol = 1e-10;

// A table counts as strictly positive when every cell clears this floor.
inline constexpr double kPositivityEps = 1e-12;

inline NameSet normalized(NameSet names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

inline bool set_contains(const NameSet& s, const std::string& name) {
  return std::binary_search(s.begin(), s.end(), name);
}

inline bool sets_disjoint(const NameSet& a, const NameSet& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      return false;
    }
  }
  return true;
}

inline bool subset_of(const NameSet& sub, const NameSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

inline NameSet set_union(const NameSet& a, const NameSet& b) {
  NameSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

inline NameSet set_difference(const NameSet& a, const NameSet& b) {
  NameSet out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

inline std::string join(const NameSet& s, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += sep;
    out += s[i];
  }
  return out;
}

// Compensated (Neumaier) summation; keeps the mass checks meaningful even
// for tables with a million cells.
inline double stable_sum(const std::vector<double>& xs) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

}  // namespace treeci
