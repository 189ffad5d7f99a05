#include <catch2/catch_amalgamated.hpp>

#include <treeci/generators.hpp>
#include <treeci/joint_table.hpp>

#include "oracles.hpp"

using treeci::CIQuery;
using treeci::JointTable;
using treeci::NameSet;
using treeci::Seed;

namespace {

// P(x) P(c|x) P(y|c) with P(x=1)=0.3, P(c=1|x)=0.2/0.8, P(y=1|c)=0.1/0.6.
// Variable order (x, c, y): index = 4x + 2c + y.
JointTable chain_table() {
  return JointTable({"x", "c", "y"},
                    {0.7 * 0.8 * 0.9, 0.7 * 0.8 * 0.1, 0.7 * 0.2 * 0.4,
                     0.7 * 0.2 * 0.6, 0.3 * 0.2 * 0.9, 0.3 * 0.2 * 0.1,
                     0.3 * 0.8 * 0.4, 0.3 * 0.8 * 0.6});
}

// Mass 0.24 on the four z = x XOR y cells, 0.01 elsewhere.
JointTable smoothed_xor_table() {
  return JointTable({"x", "y", "z"},
                    {0.24, 0.01, 0.01, 0.24, 0.01, 0.24, 0.24, 0.01});
}

}  // namespace

TEST_CASE("construction rejects malformed tables", "[joint_table]") {
  CHECK_THROWS_AS(JointTable({"a", "a"}, {0.25, 0.25, 0.25, 0.25}),
                  treeci::ModelError);
  CHECK_THROWS_AS(JointTable({"a"}, {0.5, 0.25, 0.25}), treeci::ModelError);
  CHECK_THROWS_AS(JointTable({"a"}, {1.5, -0.5}), treeci::ModelError);
  CHECK_THROWS_AS(JointTable({"a"}, {0.6, 0.5}), treeci::ModelError);
  CHECK_THROWS_AS(JointTable({""}, {0.5, 0.5}), treeci::ModelError);
  const std::vector<std::string> many(21, "v");
  CHECK_THROWS_AS(JointTable(many, {}), treeci::ModelError);
  CHECK_NOTHROW(JointTable({"a"}, {0.5, 0.5 + 5e-13}));
}

TEST_CASE("accessors and positivity", "[joint_table]") {
  const JointTable t = chain_table();
  CHECK(t.variable_count() == 3);
  CHECK(t.cell_count() == 8);
  CHECK(t.position_of("x") == 0);
  CHECK(t.position_of("y") == 2);
  CHECK_THROWS_AS(t.position_of("q"), treeci::QueryError);
  CHECK(t.strictly_positive());
  const JointTable point({"a", "b"}, {1.0, 0.0, 0.0, 0.0});
  CHECK_FALSE(point.strictly_positive());
}

TEST_CASE("query validation", "[joint_table]") {
  const JointTable t = chain_table();
  CHECK_THROWS_AS(treeci::ci_deviation(t, {{}, {"y"}, {}}),
                  treeci::QueryError);
  CHECK_THROWS_AS(treeci::ci_deviation(t, {{"x"}, {"x"}, {}}),
                  treeci::QueryError);
  CHECK_THROWS_AS(treeci::ci_deviation(t, {{"x"}, {"y"}, {"y"}}),
                  treeci::QueryError);
  CHECK_THROWS_AS(treeci::ci_deviation(t, {{"x"}, {"nope"}, {}}),
                  treeci::QueryError);
  CHECK_THROWS_AS(treeci::is_ci_discrete(t, {{"x"}, {"y"}, {}}, -1.0),
                  treeci::ParamError);
}

TEST_CASE("product of fair coins is exactly independent", "[joint_table]") {
  const JointTable t({"x", "y"}, {0.25, 0.25, 0.25, 0.25});
  const auto d = treeci::is_ci_discrete(t, {{"x"}, {"y"}, {}});
  CHECK(d.holds);
  CHECK(d.max_dev == 0.0);
}

TEST_CASE("smoothed xor: marginal independence, conditional dependence",
          "[joint_table]") {
  const JointTable t = smoothed_xor_table();
  CHECK(treeci::is_ci_discrete(t, {{"x"}, {"y"}, {}}).holds);
  const auto d = treeci::is_ci_discrete(t, {{"x"}, {"y"}, {"z"}});
  CHECK_FALSE(d.holds);
  CHECK_THAT(d.max_dev, Catch::Matchers::WithinAbs(0.0575, 1e-12));
  CHECK_THAT(oracle::ci_deviation(t, {"x"}, {"y"}, {"z"}),
             Catch::Matchers::WithinAbs(d.max_dev, 1e-15));
}

TEST_CASE("chain: independent given the middle, dependent without it",
          "[joint_table]") {
  const JointTable t = chain_table();
  CHECK(treeci::is_ci_discrete(t, {{"x"}, {"y"}, {"c"}}).holds);
  const auto marginal = treeci::is_ci_discrete(t, {{"x"}, {"y"}, {}});
  CHECK_FALSE(marginal.holds);
  CHECK_THAT(marginal.max_dev,
             Catch::Matchers::WithinAbs(
                 oracle::ci_deviation(t, {"x"}, {"y"}, {}), 1e-15));
}

TEST_CASE("marginalize basics", "[joint_table]") {
  const JointTable t = chain_table();
  const JointTable x = treeci::marginalize(t, {"x"});
  REQUIRE(x.variables() == std::vector<std::string>{"x"});
  CHECK_THAT(x.probs()[0], Catch::Matchers::WithinAbs(0.7, 1e-12));
  CHECK_THAT(x.probs()[1], Catch::Matchers::WithinAbs(0.3, 1e-12));

  const JointTable all = treeci::marginalize(t, {"x", "c", "y"});
  CHECK(all.variables() == t.variables());
  CHECK(all.probs() == t.probs());

  const JointTable none = treeci::marginalize(t, {});
  CHECK(none.variable_count() == 0);
  CHECK(none.probs() == std::vector<double>{1.0});

  CHECK_THROWS_AS(treeci::marginalize(t, {"q"}), treeci::QueryError);
}

TEST_CASE("marginalize keeps the declared variable order", "[joint_table]") {
  const JointTable t = chain_table();
  const JointTable m = treeci::marginalize(t, {"y", "x"});
  CHECK(m.variables() == std::vector<std::string>{"x", "y"});
}

TEST_CASE("marginalize is idempotent and commutes", "[joint_table]") {
  const JointTable t =
      treeci::random_positive_table(4, Seed{11}, 1e-3);
  const NameSet a{"v0", "v1", "v2"};
  const NameSet b{"v0", "v2"};
  const JointTable two_step = treeci::marginalize(treeci::marginalize(t, a), b);
  const JointTable one_step = treeci::marginalize(t, b);
  REQUIRE(two_step.variables() == one_step.variables());
  for (std::size_t i = 0; i < one_step.cell_count(); ++i) {
    CHECK_THAT(two_step.probs()[i],
               Catch::Matchers::WithinAbs(one_step.probs()[i], 1e-12));
  }
}

TEST_CASE("ci decision is symmetric in X and Y", "[joint_table]") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const JointTable t = treeci::random_positive_table(4, Seed{seed}, 1e-3);
    const std::vector<CIQuery> queries = {
        {{"v0"}, {"v1"}, {}},
        {{"v0"}, {"v1"}, {"v2"}},
        {{"v0", "v2"}, {"v1"}, {"v3"}},
        {{"v0"}, {"v1", "v3"}, {"v2"}},
    };
    for (const CIQuery& q : queries) {
      const auto fwd = treeci::is_ci_discrete(t, q);
      const auto rev = treeci::is_ci_discrete(t, {q.y, q.x, q.z});
      CHECK(fwd.holds == rev.holds);
      CHECK(fwd.max_dev == rev.max_dev);
    }
  }
}

TEST_CASE("ci deviation matches the assignment-sum oracle", "[joint_table]") {
  for (std::uint64_t seed : {5u, 6u, 7u, 8u}) {
    const JointTable t = treeci::random_positive_table(4, Seed{seed}, 1e-3);
    const std::vector<CIQuery> queries = {
        {{"v0"}, {"v1"}, {}},
        {{"v0"}, {"v3"}, {"v1"}},
        {{"v0", "v1"}, {"v2", "v3"}, {}},
        {{"v1"}, {"v2"}, {"v0", "v3"}},
        {{"v0", "v3"}, {"v2"}, {"v1"}},
    };
    for (const CIQuery& q : queries) {
      CHECK_THAT(treeci::ci_deviation(t, q),
                 Catch::Matchers::WithinAbs(
                     oracle::ci_deviation(t, q.x, q.y, q.z), 1e-14));
    }
  }
}
