#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include <treeci/generators.hpp>
#include <treeci/properties.hpp>

#include "oracles.hpp"

using treeci::CIQuery;
using treeci::DTBinding;
using treeci::GraphoidBinding;
using treeci::JointTable;
using treeci::NameSet;
using treeci::PropertyBinding;
using treeci::PropertyId;
using treeci::Seed;
using treeci::WeakTransitivityBinding;

namespace {

bool same_query(const CIQuery& a, const CIQuery& b) {
  return a.x == b.x && a.y == b.y && a.z == b.z;
}

// Mass 0.5 on all-zeros and all-ones: every variable is a copy of the first.
JointTable copy3() { return treeci::deterministic_copy_dist(3); }

// Three independent coins with dyadic marginals, so every marginal cell and
// odds ratio is exact in double arithmetic.
JointTable coin_product() {
  const double pa[2] = {0.5, 0.5};
  const double pc[2] = {0.75, 0.25};
  const double pe[2] = {0.5, 0.5};
  std::vector<double> cells(8);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int e = 0; e < 2; ++e) cells[4 * a + 2 * c + e] = pa[a] * pc[c] * pe[e];
  return JointTable({"a", "c", "e"}, cells);
}

// Product of a dependent pair (a, b) and a path c - d - e, as one 5-variable
// table. The two blocks are independent of each other.
JointTable forest_product() {
  const double pab[4] = {0.4, 0.2, 0.1, 0.3};
  const double pc1 = 0.4, pd1_c0 = 0.3, pd1_c1 = 0.7, pe1_d0 = 0.2,
               pe1_d1 = 0.6;
  std::vector<double> cells(32);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) {
          for (int e = 0; e < 2; ++e) {
            const double pc = c ? pc1 : 1.0 - pc1;
            const double pd = d ? (c ? pd1_c1 : pd1_c0)
                                : (c ? 1.0 - pd1_c1 : 1.0 - pd1_c0);
            const double pe = e ? (d ? pe1_d1 : pe1_d0)
                                : (d ? 1.0 - pe1_d1 : 1.0 - pe1_d0);
            cells[16 * a + 8 * b + 4 * c + 2 * d + e] =
                pab[2 * a + b] * pc * pd * pe;
          }
        }
      }
    }
  }
  return JointTable({"a", "b", "c", "d", "e"}, cells);
}

}  // namespace

TEST_CASE("property names round-trip", "[properties]") {
  for (PropertyId p : treeci::kAllProperties) {
    CHECK(treeci::property_from_string(treeci::to_string(p)) == p);
  }
  CHECK_THROWS_AS(treeci::property_from_string("no_such_axiom"),
                  treeci::ParamError);
}

TEST_CASE("schemas expand to the expected queries", "[properties]") {
  const GraphoidBinding g{{"x"}, {"y"}, {"w"}, {"z"}};

  auto s = treeci::property_schema(PropertyId::kSymmetry,
                                   GraphoidBinding{{"x"}, {"y"}, {}, {"z"}});
  REQUIRE(s.antecedents.size() == 1);
  REQUIRE(s.conclusion.size() == 1);
  CHECK(same_query(s.antecedents[0], {{"x"}, {"y"}, {"z"}}));
  CHECK(same_query(s.conclusion[0], {{"y"}, {"x"}, {"z"}}));

  s = treeci::property_schema(PropertyId::kDecomposition, g);
  REQUIRE(s.antecedents.size() == 1);
  CHECK(same_query(s.antecedents[0], {{"x"}, {"w", "y"}, {"z"}}));
  CHECK(same_query(s.conclusion[0], {{"x"}, {"y"}, {"z"}}));

  s = treeci::property_schema(PropertyId::kWeakUnion, g);
  CHECK(same_query(s.antecedents[0], {{"x"}, {"w", "y"}, {"z"}}));
  CHECK(same_query(s.conclusion[0], {{"x"}, {"y"}, {"w", "z"}}));

  s = treeci::property_schema(PropertyId::kContraction, g);
  REQUIRE(s.antecedents.size() == 2);
  CHECK(same_query(s.antecedents[0], {{"x"}, {"y"}, {"z"}}));
  CHECK(same_query(s.antecedents[1], {{"x"}, {"w"}, {"y", "z"}}));
  CHECK(same_query(s.conclusion[0], {{"x"}, {"w", "y"}, {"z"}}));

  s = treeci::property_schema(PropertyId::kIntersection, g);
  REQUIRE(s.antecedents.size() == 2);
  CHECK(same_query(s.antecedents[0], {{"x"}, {"y"}, {"w", "z"}}));
  CHECK(same_query(s.antecedents[1], {{"x"}, {"w"}, {"y", "z"}}));
  CHECK(same_query(s.conclusion[0], {{"x"}, {"w", "y"}, {"z"}}));

  s = treeci::property_schema(PropertyId::kWeakTransitivity,
                              WeakTransitivityBinding{{"x"}, {"y"}, {"z"}, "c"});
  REQUIRE(s.antecedents.size() == 2);
  REQUIRE(s.conclusion.size() == 2);
  CHECK(same_query(s.antecedents[0], {{"x"}, {"y"}, {"z"}}));
  CHECK(same_query(s.antecedents[1], {{"x"}, {"y"}, {"c", "z"}}));
  CHECK(same_query(s.conclusion[0], {{"x"}, {"c"}, {"z"}}));
  CHECK(same_query(s.conclusion[1], {{"c"}, {"y"}, {"z"}}));

  s = treeci::property_schema(PropertyId::kDecomposableTransitivity,
                              DTBinding{"a", "c", "e", {"b"}, {"d"}});
  REQUIRE(s.antecedents.size() == 2);
  REQUIRE(s.conclusion.size() == 2);
  CHECK(same_query(s.antecedents[0], {{"a", "b"}, {"d", "e"}, {"c"}}));
  CHECK(same_query(s.antecedents[1], {{"a"}, {"e"}, {"b", "d"}}));
  CHECK(same_query(s.conclusion[0], {{"a"}, {"c"}, {"b"}}));
  CHECK(same_query(s.conclusion[1], {{"c"}, {"e"}, {"d"}}));
}

TEST_CASE("bindings must be disjoint and correctly shaped", "[properties]") {
  CHECK_THROWS_AS(treeci::property_schema(
                      PropertyId::kDecomposition,
                      GraphoidBinding{{"x"}, {"x"}, {"w"}, {}}),
                  treeci::QueryError);
  CHECK_THROWS_AS(treeci::property_schema(
                      PropertyId::kSymmetry,
                      GraphoidBinding{{"x"}, {"y"}, {"w"}, {}}),
                  treeci::QueryError);
  CHECK_THROWS_AS(treeci::property_schema(PropertyId::kWeakTransitivity,
                                          GraphoidBinding{}),
                  treeci::QueryError);
  CHECK_THROWS_AS(treeci::property_schema(
                      PropertyId::kDecomposableTransitivity,
                      DTBinding{"a", "c", "a", {}, {}}),
                  treeci::QueryError);
}

TEST_CASE("vacuous instances hold by convention", "[properties]") {
  const treeci::TreeModel m = treeci::chain_preset();
  // x and y are dependent, so this contraction antecedent fails.
  const auto chk = treeci::check_property_instance(
      m.table, PropertyId::kContraction,
      GraphoidBinding{{"x"}, {"y"}, {"c"}, {}}, 1e-10, 1e-6);
  CHECK(chk.vacuous);
  CHECK(chk.holds);
}

TEST_CASE("symmetry holds tightly on the chain", "[properties]") {
  const treeci::TreeModel m = treeci::chain_preset();
  const auto chk = treeci::check_property_instance(
      m.table, PropertyId::kSymmetry, GraphoidBinding{{"x"}, {"y"}, {}, {"c"}},
      1e-10, 1e-6);
  CHECK_FALSE(chk.vacuous);
  CHECK(chk.holds);
  REQUIRE(chk.antecedent_devs.size() == 1);
  REQUIRE(chk.conclusion_devs.size() == 1);
  CHECK(chk.antecedent_devs[0] == chk.conclusion_devs[0]);
}

TEST_CASE("the copy distribution violates intersection", "[properties]") {
  const JointTable t = copy3();
  const auto chk = treeci::check_property_instance(
      t, PropertyId::kIntersection,
      GraphoidBinding{{"v0"}, {"v1"}, {"v2"}, {}}, 1e-10, 1e-6);
  CHECK_FALSE(chk.vacuous);
  CHECK_FALSE(chk.holds);
  REQUIRE(chk.antecedent_devs.size() == 2);
  CHECK(chk.antecedent_devs[0] == 0.0);
  CHECK(chk.antecedent_devs[1] == 0.0);
  REQUIRE(chk.conclusion_devs.size() == 1);
  CHECK_THAT(chk.conclusion_devs[0], Catch::Matchers::WithinAbs(0.25, 1e-15));

  const auto report =
      treeci::scan_property(t, PropertyId::kIntersection, 1e-10, 1e-6);
  REQUIRE_FALSE(report.violations.empty());
  bool found = false;
  for (const auto& v : report.violations) {
    if (treeci::binding_key(v.binding) == "X={v0};Y={v1};W={v2};Z={}") {
      found = true;
      CHECK_THAT(v.conclusion_dev, Catch::Matchers::WithinAbs(0.25, 1e-15));
    }
  }
  CHECK(found);
}

TEST_CASE("graphoid axioms pass on positive product and chain tables",
          "[properties]") {
  const PropertyId graphoid[] = {
      PropertyId::kSymmetry, PropertyId::kDecomposition,
      PropertyId::kWeakUnion, PropertyId::kContraction,
      PropertyId::kIntersection};
  const JointTable tables[] = {coin_product(), treeci::chain_preset().table,
                               treeci::random_positive_table(4, Seed{77},
                                                             1e-3)};
  for (const auto& t : tables) {
    for (PropertyId p : graphoid) {
      const auto report = treeci::scan_property(t, p, 1e-10, 1e-6);
      CHECK(report.violations.empty());
      CHECK(report.instances > 0);
    }
  }
}

TEST_CASE("weak transitivity with nonempty Z is out of regime on tables",
          "[properties]") {
  CHECK_THROWS_AS(
      treeci::check_property_instance(
          forest_product(), PropertyId::kWeakTransitivity,
          WeakTransitivityBinding{{"a"}, {"c"}, {"b"}, "d"}, 1e-10, 1e-6),
      treeci::RegimeError);
  // With empty Z the check runs, and the product table satisfies it.
  const auto report = treeci::scan_property(
      coin_product(), PropertyId::kWeakTransitivity, 1e-10, 1e-6);
  CHECK(report.violations.empty());
  CHECK(report.non_vacuous > 0);
}

TEST_CASE("weak transitivity on a gaussian path", "[properties]") {
  const auto tree = treeci::random_tree(4, Seed{41});
  const auto gt = treeci::random_tree_gaussian(tree, Seed{42}, 0.3, 0.8);
  for (PropertyId p : treeci::kAllProperties) {
    const auto report = treeci::scan_property(gt.model, p, 1e-10, 1e-6);
    CHECK(report.violations.empty());
  }

  // A hand-picked non-vacuous instance on an explicit path.
  const treeci::UGraph path({"v0", "v1", "v2", "v3"},
                            {{"v0", "v1"}, {"v1", "v2"}, {"v2", "v3"}});
  const auto pg = treeci::random_tree_gaussian(path, Seed{43}, 0.3, 0.8);
  const auto chk = treeci::check_property_instance(
      pg.model, PropertyId::kWeakTransitivity,
      WeakTransitivityBinding{{"v0"}, {"v3"}, {"v1"}, "v2"}, 1e-9, 1e-6);
  CHECK_FALSE(chk.vacuous);
  CHECK(chk.holds);
}

TEST_CASE("decomposable transitivity on the two-block product",
          "[properties]") {
  const JointTable t = forest_product();
  const auto chk = treeci::check_property_instance(
      t, PropertyId::kDecomposableTransitivity,
      DTBinding{"a", "c", "e", {"b"}, {"d"}}, 1e-10, 1e-6);
  CHECK_FALSE(chk.vacuous);
  CHECK(chk.holds);
  // Both disjuncts fire here: a and c live in independent blocks, and
  // c - d - e is a chain.
  REQUIRE(chk.conclusion_devs.size() == 2);
  CHECK(chk.conclusion_devs[0] <= 1e-6);
  CHECK(chk.conclusion_devs[1] <= 1e-6);
}

TEST_CASE("odds ratios are exactly one on an independent triple",
          "[properties]") {
  const JointTable t = coin_product();
  const auto ab = treeci::alpha_beta(t, DTBinding{"a", "c", "e", {}, {}}, 0, 0);
  CHECK(ab.alpha == 1.0);
  CHECK(ab.beta == 1.0);
}

TEST_CASE("odds-ratio profile on the two-block product", "[properties]") {
  const JointTable t = forest_product();
  const auto prof =
      treeci::alpha_beta_profile(t, DTBinding{"a", "c", "e", {"b"}, {"d"}});
  // a and c live in independent blocks: alpha stays at 1 for both b values.
  CHECK(prof.max_alpha_dev <= 1e-9);
  // c - d - e is a chain, so beta is 1 too once d is fixed.
  CHECK(prof.max_beta_dev <= 1e-9);
}

TEST_CASE("odds ratios reject zero cells and stray bits", "[properties]") {
  CHECK_THROWS_AS(
      treeci::alpha_beta(copy3(), DTBinding{"v0", "v1", "v2", {}, {}}, 0, 0),
      treeci::ModelError);
  CHECK_THROWS_AS(
      treeci::alpha_beta(coin_product(), DTBinding{"a", "c", "e", {}, {}}, 1,
                         0),
      treeci::ParamError);
}

TEST_CASE("graph-level decomposable transitivity", "[properties]") {
  const treeci::UGraph path({"a", "b", "c", "d", "e"},
                            {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}});
  CHECK(treeci::check_graph_dt(path, DTBinding{"a", "c", "e", {"b"}, {"d"}}));
  const treeci::UGraph clique(
      {"a", "c", "e"}, {{"a", "c"}, {"c", "e"}, {"a", "e"}});
  // Both antecedent separations fail, so the instance holds vacuously.
  CHECK(treeci::check_graph_dt(clique, DTBinding{"a", "c", "e", {}, {}}));

  const auto sweep = treeci::graph_dt_sweep(3);
  CHECK(sweep.graphs == 11);
  CHECK(sweep.violations == 0);
  CHECK(sweep.instances > 0);
  CHECK(sweep.examples.empty());
  CHECK_THROWS_AS(treeci::graph_dt_sweep(7), treeci::ResourceError);
}

TEST_CASE("scans are deterministic", "[properties]") {
  const JointTable t = treeci::random_positive_table(4, Seed{91}, 1e-3);
  const auto a = treeci::scan_property(t, PropertyId::kContraction, 1e-4, 1e-6);
  const auto b = treeci::scan_property(t, PropertyId::kContraction, 1e-4, 1e-6);
  CHECK(a.instances == b.instances);
  CHECK(a.non_vacuous == b.non_vacuous);
  REQUIRE(a.violations.size() == b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    CHECK(treeci::binding_key(a.violations[i].binding) ==
          treeci::binding_key(b.violations[i].binding));
  }
}

TEST_CASE("scans refuse oversized models", "[properties]") {
  const JointTable t = treeci::random_positive_table(8, Seed{5}, 1e-3);
  CHECK_THROWS_AS(treeci::scan_property(t, PropertyId::kSymmetry, 1e-10, 1e-6),
                  treeci::ResourceError);
}
