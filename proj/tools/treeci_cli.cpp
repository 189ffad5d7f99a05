// treeci: command-line front end. Every subcommand is a thin adapter over
// one library call; all randomness flows through --seed. Exit codes:
//   0  success (property holds / artifact written)
//   1  ran fine but found a violation, mismatch, or invalid proof
//   2  usage error (bad flags, bad query names, missing input file)
//   3  input format error (file exists but cannot be interpreted)

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <treeci/treeci.hpp>

namespace {

using treeci::Json;
using treeci::NameSet;
using treeci::Seed;
using treeci::UGraph;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw treeci::ParamError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "a,b , c" -> {"a","b","c"}; empty string -> {}.
NameSet split_names(const std::string& csv) {
  NameSet out;
  std::string piece;
  std::istringstream in(csv);
  while (std::getline(in, piece, ',')) {
    const std::size_t b = piece.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const std::size_t e = piece.find_last_not_of(" \t");
    out.push_back(piece.substr(b, e - b + 1));
  }
  return out;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw treeci::ParamError("cannot open " + out_path + " for writing");
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Shortest decimal that round-trips, same as the JSON serializer uses.
std::string num(double v) { return Json(v).dump(); }

std::string edge_lines(const UGraph& g) {
  std::string out;
  for (const auto& e : g.edges()) {
    out += e.first;
    out += ',';
    out += e.second;
    out += '\n';
  }
  return out;
}

// gen-model and gen-gauss deal one sub-seed per stage off a master stream:
// first the tree shape, then the parameters on it.
struct StageSeeds {
  Seed tree;
  Seed params;
};

StageSeeds deal_seeds(std::uint64_t seed) {
  treeci::SplitMix64 master(Seed{seed});
  StageSeeds s{};
  s.tree = Seed{master.next_u64()};
  s.params = Seed{master.next_u64()};
  return s;
}

struct Options {
  std::string out_path;
  std::string format;  // "", "json", "summary"
  std::string table_path;
  std::string gauss_path;
  std::string graph_path;
  std::string tree_path;
  std::string bundle_path;
  std::string csv_path;
  std::string script_path;
  std::string jsonl_path;
  std::string x_set, y_set, z_set;
  std::string a_set, b_set, c_set;
  std::string x_name, y_name;
  std::string property = "";
  std::string kind = "positive";
  std::string preset;
  std::size_t n = 0;
  std::size_t graph_dt = 0;
  std::uint64_t seed = 0;
  double tol = treeci::kDefaultTol;
  double tol_conc = treeci::kDefaultConclusionTol;
  double epsilon = -1.0;
  double delta = 0.05;
  double rho_min = 0.2;
  double rho_max = 0.9;
  double smoothing = 0.0;
  bool summary_flag = false;
};

bool want_json(const Options& o, bool artifact_default) {
  if (o.summary_flag) return false;
  if (o.format.empty()) return artifact_default;
  return o.format == "json";
}

treeci::JointTable load_table(const std::string& path) {
  return treeci::table_from_json(treeci::parse_json(slurp(path), path), path);
}

treeci::GaussianModel load_gauss(const std::string& path) {
  return treeci::gaussian_from_json(treeci::parse_json(slurp(path), path),
                                    path);
}

UGraph load_graph(const std::string& path) {
  return treeci::graph_from_json(treeci::parse_json(slurp(path), path), path);
}

// perfect and edge-check take either a loose table+tree pair or a generated
// model bundle.
struct ModelInput {
  treeci::JointTable table;
  UGraph tree;
  std::string id;
};

ModelInput load_model_input(const Options& o) {
  if (!o.bundle_path.empty()) {
    if (!o.table_path.empty() || !o.tree_path.empty()) {
      throw treeci::ParamError("--bundle excludes --table and --tree");
    }
    const treeci::TreeModel m = treeci::tree_model_from_json(
        treeci::parse_json(slurp(o.bundle_path), o.bundle_path),
        o.bundle_path);
    return {m.table, m.tree, o.bundle_path};
  }
  if (o.table_path.empty() || o.tree_path.empty()) {
    throw treeci::ParamError("need --table and --tree, or --bundle");
  }
  return {load_table(o.table_path), load_graph(o.tree_path), o.table_path};
}

int run_gen_tree(const Options& o) {
  const UGraph t = treeci::random_tree(o.n, Seed{o.seed});
  emit(o.out_path,
       want_json(o, true) ? dump(treeci::graph_to_json(t)) : edge_lines(t));
  return 0;
}

int run_gen_model(const Options& o, bool have_seed) {
  treeci::TreeModel model = [&] {
    if (!o.preset.empty()) {
      if (o.preset != "chain") {
        throw treeci::ParamError("unknown preset " + o.preset);
      }
      return treeci::chain_preset();
    }
    if (!have_seed) throw treeci::ParamError("--seed is required");
    if (o.n == 0) throw treeci::ParamError("--n is required");
    const StageSeeds s = deal_seeds(o.seed);
    const double eps = o.epsilon < 0.0 ? 1e-4 : o.epsilon;
    return treeci::random_tree_binary(treeci::random_tree(o.n, s.tree),
                                      s.params, eps, o.delta);
  }();
  Json provenance = Json::object();
  if (o.preset.empty()) {
    provenance["seed"] = o.seed;
  } else {
    provenance["preset"] = o.preset;
  }
  emit(o.out_path, want_json(o, true)
                       ? dump(treeci::tree_model_to_json(model, provenance))
                       : edge_lines(model.tree));
  return 0;
}

int run_gen_gauss(const Options& o) {
  const StageSeeds s = deal_seeds(o.seed);
  const treeci::GaussianTree gt = treeci::random_tree_gaussian(
      treeci::random_tree(o.n, s.tree), s.params, o.rho_min, o.rho_max);
  Json provenance = Json::object();
  provenance["seed"] = o.seed;
  provenance["params"] = {{"rho_min", o.rho_min}, {"rho_max", o.rho_max}};
  emit(o.out_path, want_json(o, true)
                       ? dump(treeci::gaussian_tree_to_json(gt, provenance))
                       : edge_lines(gt.tree));
  return 0;
}

int run_gen_table(const Options& o) {
  const treeci::JointTable t = [&] {
    if (o.kind == "copy") return treeci::deterministic_copy_dist(o.n);
    if (o.kind != "positive") {
      throw treeci::ParamError("--kind must be positive or copy");
    }
    const double eps = o.epsilon < 0.0
                           ? std::min(1e-3, std::ldexp(1.0, -(int)o.n))
                           : o.epsilon;
    return treeci::random_positive_table(o.n, Seed{o.seed}, eps);
  }();
  emit(o.out_path, want_json(o, true)
                       ? dump(treeci::table_to_json(t))
                       : "variables=" + std::to_string(t.variable_count()) +
                             " cells=" + std::to_string(t.cell_count()) + "\n");
  return 0;
}

int run_ci(const Options& o) {
  const treeci::JointTable t = load_table(o.table_path);
  const treeci::CIQuery q{split_names(o.x_set), split_names(o.y_set),
                          split_names(o.z_set)};
  const treeci::CiDecision d = treeci::is_ci_discrete(t, q, o.tol);
  if (want_json(o, false)) {
    Json j;
    j["query"] = treeci::ciquery_sets_json(q.x, q.y, q.z, "X", "Y", "Z");
    j["tol"] = o.tol;
    j["holds"] = d.holds;
    j["max_dev"] = d.max_dev;
    emit(o.out_path, dump(j));
  } else {
    emit(o.out_path, d.holds ? "true\n" : "false\n");
  }
  return d.holds ? 0 : 1;
}

int run_pcor(const Options& o) {
  const treeci::GaussianModel g = load_gauss(o.gauss_path);
  const treeci::CIQuery q{split_names(o.x_set), split_names(o.y_set),
                          split_names(o.z_set)};
  const treeci::GaussianCiDecision d = treeci::is_ci_gaussian(g, q, o.tol);
  if (want_json(o, false)) {
    Json j;
    j["query"] = treeci::ciquery_sets_json(q.x, q.y, q.z, "X", "Y", "Z");
    j["tol"] = o.tol;
    j["holds"] = d.holds;
    j["max_abs_pcor"] = d.max_abs_pcor;
    if (q.x.size() == 1 && q.y.size() == 1) {
      j["pcor"] = treeci::partial_correlation(g, q.x.front(), q.y.front(),
                                              q.z);
    }
    emit(o.out_path, dump(j));
  } else {
    emit(o.out_path, d.holds ? "true\n" : "false\n");
  }
  return d.holds ? 0 : 1;
}

int run_sep(const Options& o) {
  const UGraph g = load_graph(o.graph_path);
  const treeci::SepQuery q{split_names(o.a_set), split_names(o.b_set),
                           split_names(o.c_set)};
  const bool sep = treeci::separates(g, q);
  if (want_json(o, false)) {
    Json j;
    j["query"] = treeci::ciquery_sets_json(q.a, q.b, q.c, "A", "B", "C");
    j["separated"] = sep;
    emit(o.out_path, dump(j));
  } else {
    emit(o.out_path, sep ? "true\n" : "false\n");
  }
  return sep ? 0 : 1;
}

int run_mn(const Options& o) {
  const treeci::JointTable t = load_table(o.table_path);
  const UGraph g = treeci::markov_network(t, o.tol, &std::cerr);
  emit(o.out_path,
       want_json(o, true) ? dump(treeci::graph_to_json(g)) : edge_lines(g));
  return 0;
}

int run_perfect(const Options& o) {
  const ModelInput in = load_model_input(o);
  const treeci::PerfectnessReport r =
      treeci::equivalence_scan(in.table, in.tree, o.tol, in.id);
  if (want_json(o, false)) {
    emit(o.out_path, dump(treeci::perfectness_report_to_json(r)));
  } else {
    emit(o.out_path, r.perfect() ? "PERFECT\n"
                                 : "MISMATCHES " +
                                       std::to_string(r.mismatches.size()) +
                                       "\n");
  }
  return r.perfect() ? 0 : 1;
}

int run_edge_check(const Options& o) {
  const ModelInput in = load_model_input(o);
  const treeci::EdgeCheckResult marginal =
      treeci::edge_marginal_check(in.table, in.tree, o.tol);
  const treeci::EdgeCheckResult defining =
      treeci::defining_edge_check(in.table, in.tree, o.tol);
  if (want_json(o, false)) {
    Json j;
    j["marginal"] = treeci::edge_check_to_json(marginal);
    j["defining"] = treeci::edge_check_to_json(defining);
    emit(o.out_path, dump(j));
  } else {
    std::string out;
    out += marginal.passed ? "marginal PASS\n" : "marginal FAIL\n";
    out += defining.passed ? "defining PASS\n" : "defining FAIL\n";
    emit(o.out_path, out);
  }
  return marginal.passed && defining.passed ? 0 : 1;
}

std::vector<treeci::PropertyId> axiom_selection(const std::string& prop) {
  using treeci::PropertyId;
  if (prop.empty()) {
    return {PropertyId::kSymmetry, PropertyId::kDecomposition,
            PropertyId::kWeakUnion, PropertyId::kContraction,
            PropertyId::kIntersection};
  }
  if (prop == "all") {
    return {std::begin(treeci::kAllProperties),
            std::end(treeci::kAllProperties)};
  }
  return {treeci::property_from_string(prop)};
}

template <class Model>
int scan_axioms(const Options& o, const Model& m) {
  const std::vector<treeci::PropertyId> props = axiom_selection(o.property);
  std::vector<treeci::Violation> all_violations;
  Json reports = Json::array();
  std::string summary;
  for (treeci::PropertyId p : props) {
    const treeci::ScanReport r =
        treeci::scan_property(m, p, o.tol, o.tol_conc);
    reports.push_back(treeci::scan_report_to_json(p, r));
    summary += treeci::to_string(p);
    if (r.violations.empty()) {
      summary += " PASS instances=" + std::to_string(r.instances) +
                 " non_vacuous=" + std::to_string(r.non_vacuous) + "\n";
    } else {
      summary +=
          " FAIL violations=" + std::to_string(r.violations.size()) + "\n";
    }
    all_violations.insert(all_violations.end(), r.violations.begin(),
                          r.violations.end());
  }
  if (!o.jsonl_path.empty()) {
    emit(o.jsonl_path, treeci::violations_to_jsonl(all_violations));
  }
  emit(o.out_path, want_json(o, false) ? dump(reports) : summary);
  return all_violations.empty() ? 0 : 1;
}

int run_axioms(const Options& o, bool have_graph_dt) {
  const int sources = (!o.table_path.empty() ? 1 : 0) +
                      (!o.gauss_path.empty() ? 1 : 0) + (have_graph_dt ? 1 : 0);
  if (sources != 1) {
    throw treeci::ParamError(
        "need exactly one of --table, --gauss, --graph-dt");
  }
  if (have_graph_dt) {
    const treeci::GraphDtSweepResult r = treeci::graph_dt_sweep(o.graph_dt);
    if (want_json(o, false)) {
      Json j;
      j["graphs"] = r.graphs;
      j["instances"] = r.instances;
      j["violations"] = r.violations;
      emit(o.out_path, dump(j));
    } else {
      emit(o.out_path,
           r.violations == 0
               ? "PASS graphs=" + std::to_string(r.graphs) +
                     " instances=" + std::to_string(r.instances) + "\n"
               : "FAIL violations=" + std::to_string(r.violations) + "\n");
    }
    return r.violations == 0 ? 0 : 1;
  }
  if (!o.table_path.empty()) return scan_axioms(o, load_table(o.table_path));
  return scan_axioms(o, load_gauss(o.gauss_path));
}

int run_mi(const Options& o) {
  const treeci::JointTable t = load_table(o.table_path);
  const double v = treeci::mutual_information(t, o.x_name, o.y_name);
  if (want_json(o, false)) {
    Json j;
    j["x"] = o.x_name;
    j["y"] = o.y_name;
    j["mi"] = v;
    emit(o.out_path, dump(j));
  } else {
    emit(o.out_path, num(v) + "\n");
  }
  return 0;
}

int run_chowliu(const Options& o) {
  if (o.table_path.empty() == o.csv_path.empty()) {
    throw treeci::ParamError("need exactly one of --table, --csv");
  }
  const treeci::JointTable t =
      o.csv_path.empty()
          ? load_table(o.table_path)
          : treeci::ingest_samples(
                treeci::parse_sample_csv(slurp(o.csv_path), o.csv_path),
                o.smoothing);
  const UGraph g = treeci::chow_liu(t);
  emit(o.out_path,
       want_json(o, true) ? dump(treeci::graph_to_json(g)) : edge_lines(g));
  return 0;
}

int run_ingest(const Options& o) {
  const treeci::SampleMatrix s =
      treeci::parse_sample_csv(slurp(o.csv_path), o.csv_path);
  const treeci::JointTable t = treeci::ingest_samples(s, o.smoothing);
  emit(o.out_path, want_json(o, true)
                       ? dump(treeci::table_to_json(t))
                       : "variables=" + std::to_string(t.variable_count()) +
                             " rows=" + std::to_string(s.rows.size()) + "\n");
  return 0;
}

int run_prove(const Options& o) {
  const treeci::Script s =
      treeci::load_script(slurp(o.script_path), o.script_path);
  const treeci::DerivationResult r = treeci::check_derivation(s);
  if (want_json(o, false)) {
    Json j;
    j["valid"] = r.valid;
    j["steps"] = s.steps.size();
    if (r.first_bad_step) j["first_bad_step"] = *r.first_bad_step;
    emit(o.out_path, dump(j));
  } else if (r.valid) {
    emit(o.out_path, "VALID " + std::to_string(s.steps.size()) + " steps\n");
  } else {
    emit(o.out_path,
         "INVALID at step " + std::to_string(*r.first_bad_step) + "\n");
  }
  return r.valid ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "verification lab for tree-structured Markov models: exact CI queries, "
      "graph separation, perfectness scans, axiom checks, Chow-Liu learning, "
      "and proof-script validation"};
  app.require_subcommand(1);

  Options o;

  const auto add_common = [&](CLI::App* sub, bool with_tol) {
    sub->add_option("--out", o.out_path, "write the report here, not stdout");
    sub->add_option("--format", o.format, "json or summary")
        ->check(CLI::IsMember({"json", "summary"}));
    if (with_tol) {
      sub->add_option("--tol", o.tol, "absolute CI tolerance")
          ->check(CLI::NonNegativeNumber);
    }
  };

  auto* gen_tree = app.add_subcommand(
      "gen-tree", "uniform random labeled tree, as graph JSON");
  gen_tree->add_option("--n", o.n, "vertex count")->required();
  gen_tree->add_option("--seed", o.seed, "RNG seed")->required();
  add_common(gen_tree, false);

  auto* gen_model = app.add_subcommand(
      "gen-model", "random binary tree model bundle (tree, cpts, table)");
  gen_model->add_option("--n", o.n, "vertex count");
  gen_model->add_option("--seed", o.seed, "RNG seed");
  gen_model->add_option("--epsilon", o.epsilon,
                        "probability floor, default 1e-4");
  gen_model->add_option("--delta", o.delta,
                        "minimum cpt coupling, default 0.05");
  gen_model->add_option("--preset", o.preset,
                        "named fixed model instead (chain)");
  add_common(gen_model, false);

  auto* gen_gauss = app.add_subcommand(
      "gen-gauss", "random Gaussian tree model bundle (tree, rho, covariance)");
  gen_gauss->add_option("--n", o.n, "vertex count")->required();
  gen_gauss->add_option("--seed", o.seed, "RNG seed")->required();
  gen_gauss->add_option("--rho-min", o.rho_min,
                        "smallest edge correlation magnitude, default 0.2");
  gen_gauss->add_option("--rho-max", o.rho_max,
                        "largest edge correlation magnitude, default 0.9");
  add_common(gen_gauss, false);

  auto* gen_table = app.add_subcommand(
      "gen-table", "random strictly positive table, or the copy distribution");
  gen_table->add_option("--n", o.n, "variable count")->required();
  gen_table->add_option("--seed", o.seed, "RNG seed (unused for copy)")
      ->required();
  gen_table->add_option("--kind", o.kind, "positive (default) or copy")
      ->check(CLI::IsMember({"positive", "copy"}));
  gen_table->add_option("--epsilon", o.epsilon,
                        "cell floor, default min(1e-3, 2^-n)");
  add_common(gen_table, false);

  auto* ci = app.add_subcommand(
      "ci", "is X independent of Y given Z in a joint table");
  ci->add_option("--table", o.table_path, "table JSON")->required();
  ci->add_option("--X", o.x_set, "comma-separated names")->required();
  ci->add_option("--Y", o.y_set, "comma-separated names")->required();
  ci->add_option("--Z", o.z_set, "comma-separated names, default empty");
  add_common(ci, true);

  auto* pcor = app.add_subcommand(
      "pcor", "is X independent of Y given Z in a Gaussian model");
  pcor->add_option("--gauss", o.gauss_path, "covariance JSON")->required();
  pcor->add_option("--X", o.x_set, "comma-separated names")->required();
  pcor->add_option("--Y", o.y_set, "comma-separated names")->required();
  pcor->add_option("--Z", o.z_set, "comma-separated names, default empty");
  add_common(pcor, true);

  auto* sep = app.add_subcommand(
      "sep", "does C separate A from B in an undirected graph");
  sep->add_option("--graph", o.graph_path, "graph JSON")->required();
  sep->add_option("--A", o.a_set, "comma-separated names")->required();
  sep->add_option("--B", o.b_set, "comma-separated names")->required();
  sep->add_option("--C", o.c_set, "comma-separated names, default empty");
  add_common(sep, false);

  auto* mn = app.add_subcommand(
      "mn", "Markov network of a table: edge iff dependent given the rest");
  mn->add_option("--table", o.table_path, "table JSON")->required();
  add_common(mn, true);

  auto* perfect = app.add_subcommand(
      "perfect", "separation vs CI over every disjoint triple of a tree");
  perfect->add_option("--table", o.table_path, "table JSON");
  perfect->add_option("--tree", o.tree_path, "tree graph JSON");
  perfect->add_option("--bundle", o.bundle_path, "gen-model bundle JSON");
  perfect->add_flag("--summary", o.summary_flag,
                    "one-line verdict (same as --format summary)");
  add_common(perfect, true);

  auto* edge_check = app.add_subcommand(
      "edge-check", "per-edge dependence: marginally and given the rest");
  edge_check->add_option("--table", o.table_path, "table JSON");
  edge_check->add_option("--tree", o.tree_path, "tree graph JSON");
  edge_check->add_option("--bundle", o.bundle_path, "gen-model bundle JSON");
  add_common(edge_check, true);

  auto* axioms = app.add_subcommand(
      "axioms", "exhaustive property scans over all variable bindings");
  axioms->add_option("--table", o.table_path, "table JSON");
  axioms->add_option("--gauss", o.gauss_path, "covariance JSON");
  auto* graph_dt_opt = axioms->add_option(
      "--graph-dt", o.graph_dt,
      "sweep the graph transitivity analogue over all graphs up to this size");
  axioms->add_option(
      "--property", o.property,
      "one property name, or all; default is the five graphoid axioms");
  axioms->add_option("--tol-conc", o.tol_conc,
                     "conclusion tolerance, default 1e-6")
      ->check(CLI::NonNegativeNumber);
  axioms->add_option("--jsonl", o.jsonl_path,
                     "also write violations as JSON lines to this file");
  add_common(axioms, true);

  auto* mi = app.add_subcommand(
      "mi", "mutual information of two variables, in nats");
  mi->add_option("--table", o.table_path, "table JSON")->required();
  mi->add_option("--x", o.x_name, "variable name")->required();
  mi->add_option("--y", o.y_name, "variable name")->required();
  add_common(mi, false);

  auto* chowliu = app.add_subcommand(
      "chowliu", "maximum mutual-information spanning tree of a table or CSV");
  chowliu->add_option("--table", o.table_path, "table JSON");
  chowliu->add_option("--csv", o.csv_path, "headered 0/1 sample CSV");
  chowliu->add_option("--smoothing", o.smoothing,
                      "total pseudo-count for CSV ingestion, default 0")
      ->check(CLI::NonNegativeNumber);
  add_common(chowliu, false);

  auto* ingest = app.add_subcommand(
      "ingest", "turn a headered 0/1 sample CSV into a table JSON");
  ingest->add_option("--csv", o.csv_path, "headered 0/1 sample CSV")
      ->required();
  ingest->add_option("--smoothing", o.smoothing,
                     "total pseudo-count, default 0")
      ->check(CLI::NonNegativeNumber);
  add_common(ingest, false);

  auto* prove = app.add_subcommand(
      "prove", "check a derivation script step by step");
  prove->add_option("script", o.script_path, "proof script path")->required();
  add_common(prove, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(gen_tree)) return run_gen_tree(o);
    if (app.got_subcommand(gen_model)) {
      return run_gen_model(o, gen_model->count("--seed") > 0);
    }
    if (app.got_subcommand(gen_gauss)) return run_gen_gauss(o);
    if (app.got_subcommand(gen_table)) return run_gen_table(o);
    if (app.got_subcommand(ci)) return run_ci(o);
    if (app.got_subcommand(pcor)) return run_pcor(o);
    if (app.got_subcommand(sep)) return run_sep(o);
    if (app.got_subcommand(mn)) return run_mn(o);
    if (app.got_subcommand(perfect)) return run_perfect(o);
    if (app.got_subcommand(edge_check)) return run_edge_check(o);
    if (app.got_subcommand(axioms)) {
      return run_axioms(o, graph_dt_opt->count() > 0);
    }
    if (app.got_subcommand(mi)) return run_mi(o);
    if (app.got_subcommand(chowliu)) return run_chowliu(o);
    if (app.got_subcommand(ingest)) return run_ingest(o);
    if (app.got_subcommand(prove)) return run_prove(o);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const treeci::ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const treeci::QueryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const treeci::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const treeci::RegimeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const treeci::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
