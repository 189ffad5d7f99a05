#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <tuple>

#include <treeci/gaussian.hpp>
#include <treeci/generators.hpp>

#include "oracles.hpp"

using treeci::CIQuery;
using treeci::GaussianModel;
using treeci::Seed;

namespace {

// Disambiguates against the Eigen-matrix constructor, which since Eigen 3.4
// also accepts nested braces.
GaussianModel gm(treeci::NameSet names, std::vector<std::vector<double>> rows) {
  return GaussianModel(std::move(names), rows);
}

// Unit-variance triple with Sigma_xy = 0.48 = 0.8 * 0.6, so x and y are
// uncorrelated once z is held fixed.
GaussianModel collider_free_triple() {
  return gm({"x", "y", "z"}, {{1.0, 0.48, 0.8},
                              {0.48, 1.0, 0.6},
                              {0.8, 0.6, 1.0}});
}

}  // namespace

TEST_CASE("covariance validation", "[gaussian]") {
  CHECK_THROWS_AS(gm({"a", "b"}, {{1.0, 0.2}, {0.3, 1.0}}),
                  treeci::ModelError);
  CHECK_THROWS_AS(gm({"a", "b"}, {{1.0, 2.0}, {2.0, 1.0}}),
                  treeci::ModelError);
  CHECK_THROWS_AS(gm({"a", "b"}, {{1.0, 0.2, 0.0}, {0.2, 1.0, 0.0}}),
                  treeci::ModelError);
  CHECK_THROWS_AS(gm({"a", "a"}, {{1.0, 0.0}, {0.0, 1.0}}),
                  treeci::ModelError);
  CHECK_NOTHROW(gm({"a", "b"}, {{1.0, 0.5}, {0.5, 1.0}}));
}

TEST_CASE("partial correlation argument checks", "[gaussian]") {
  const GaussianModel g = collider_free_triple();
  CHECK_THROWS_AS(treeci::partial_correlation(g, "x", "x", {}),
                  treeci::QueryError);
  CHECK_THROWS_AS(treeci::partial_correlation(g, "x", "y", {"x"}),
                  treeci::QueryError);
  CHECK_THROWS_AS(treeci::partial_correlation(g, "x", "q", {}),
                  treeci::QueryError);
  CHECK_THROWS_AS(treeci::is_ci_gaussian(g, {{"x"}, {"y"}, {}}, -1.0),
                  treeci::ParamError);
}

TEST_CASE("identity covariance means everything is independent",
          "[gaussian]") {
  const GaussianModel g = gm({"a", "b", "c"}, {{1.0, 0.0, 0.0},
                                               {0.0, 1.0, 0.0},
                                               {0.0, 0.0, 1.0}});
  CHECK(treeci::partial_correlation(g, "a", "b", {}) == 0.0);
  CHECK(treeci::partial_correlation(g, "a", "b", {"c"}) == 0.0);
  CHECK(treeci::is_ci_gaussian(g, {{"a", "c"}, {"b"}, {}}).holds);
}

TEST_CASE("unconditional correlation is read straight off the matrix",
          "[gaussian]") {
  const GaussianModel g = gm({"x", "y"}, {{1.0, 0.5}, {0.5, 1.0}});
  CHECK_THAT(treeci::partial_correlation(g, "x", "y", {}),
             Catch::Matchers::WithinAbs(0.5, 1e-15));
}

TEST_CASE("conditioning on the middle variable kills the correlation",
          "[gaussian]") {
  const GaussianModel g = collider_free_triple();
  const auto marginal = treeci::is_ci_gaussian(g, {{"x"}, {"y"}, {}});
  CHECK_FALSE(marginal.holds);
  CHECK_THAT(marginal.max_abs_pcor, Catch::Matchers::WithinAbs(0.48, 1e-15));
  // 0.8 * 0.6 is not exactly representable as 0.48, so the residual is tiny
  // but nonzero.
  const double r = treeci::partial_correlation(g, "x", "y", {"z"});
  CHECK_THAT(r, Catch::Matchers::WithinAbs(0.0, 1e-12));
  CHECK(treeci::is_ci_gaussian(g, {{"x"}, {"y"}, {"z"}}).holds);
}

TEST_CASE("block-diagonal covariance separates the blocks", "[gaussian]") {
  const GaussianModel g = gm({"a", "b", "u", "v"}, {{1.0, 0.7, 0.0, 0.0},
                                                    {0.7, 1.0, 0.0, 0.0},
                                                    {0.0, 0.0, 1.0, 0.3},
                                                    {0.0, 0.0, 0.3, 1.0}});
  CHECK(treeci::is_ci_gaussian(g, {{"a", "b"}, {"u", "v"}, {}}).holds);
  CHECK(treeci::is_ci_gaussian(g, {{"a"}, {"u"}, {"b", "v"}}).holds);
  CHECK_FALSE(treeci::is_ci_gaussian(g, {{"a"}, {"b"}, {"u"}}).holds);
}

TEST_CASE("precision-based pcor matches the textbook recursion",
          "[gaussian]") {
  for (std::uint64_t seed : {21u, 22u, 23u}) {
    const auto tree = treeci::random_tree(5, Seed{seed});
    const auto gt = treeci::random_tree_gaussian(tree, Seed{seed + 100}, 0.2,
                                                 0.9);
    const GaussianModel& g = gt.model;
    const std::vector<std::tuple<std::string, std::string, treeci::NameSet>>
        cases = {
            {"v0", "v1", {}},
            {"v0", "v2", {"v1"}},
            {"v0", "v3", {"v1", "v2"}},
            {"v1", "v4", {"v0", "v2", "v3"}},
        };
    for (const auto& [x, y, z] : cases) {
      CHECK_THAT(treeci::partial_correlation(g, x, y, z),
                 Catch::Matchers::WithinAbs(
                     oracle::partial_correlation(g, x, y, z), 1e-9));
    }
  }
}

TEST_CASE("set deviation is the max over pairs", "[gaussian]") {
  const auto tree = treeci::random_tree(4, Seed{31});
  const auto gt = treeci::random_tree_gaussian(tree, Seed{32}, 0.2, 0.9);
  const GaussianModel& g = gt.model;
  const CIQuery q{{"v0", "v1"}, {"v2", "v3"}, {}};
  double expect = 0.0;
  for (const auto& x : q.x) {
    for (const auto& y : q.y) {
      expect = std::max(expect,
                        std::abs(treeci::partial_correlation(g, x, y, q.z)));
    }
  }
  CHECK(treeci::ci_deviation(g, q) == expect);
}
