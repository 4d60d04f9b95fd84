#include "hdx/cli.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "hdx/error.hpp"
#include "hdx/io.hpp"
#include "hdx/zoo.hpp"

namespace hdx::cli {

namespace {

struct Config {
  std::string family;
  std::string input;
  std::string output;
  // generate
  int d = 3;
  double lambda = 0.2;
  std::vector<int> sizes;
  std::string graph = "complete:3";
  int colors = 5;
  RandomPartiteSpec random;
  std::string model = "uniform";
  int factors = 2;
  std::uint64_t seed = 42;
  // analysis
  std::optional<double> delta;
  std::string delta_sweep;
  std::string ordering = "decreasing";
  std::string variant = "main";
  double tol = kZeroExpanderTolerance;
  double margin_tol = kMarginTolerance;
  double verify_tol = kVerifyTolerance;
  int threads = 1;
  int max_dim = 16;
  bool per_link = false;
  bool keep_table = false;
  bool strict = false;
  // scenario
  int Delta = 2;
  std::optional<double> eps;
  std::optional<double> eps_from_p;
  std::optional<double> delta_from_p;
  std::string scenario_family = "ko";
  std::optional<double> delta_coef;
  bool search_min_p = false;
};

// Condition and certificate failures map to exit 2, everything else to 1.
int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConditionUnsatisfiable:
    case ErrorKind::DenominatorNonpositive:
    case ErrorKind::CertificateInvalid:
    case ErrorKind::HypothesisViolated:
      return 2;
    default:
      return 1;
  }
}

Graph parse_graph(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::BadParams, "graph must look like complete:N, empty:N or N:a-b,c-d");
  const std::string head = s.substr(0, colon), tail = s.substr(colon + 1);
  try {
    if (head == "complete") return Graph::complete(std::stoi(tail));
    Graph G;
    if (head == "empty") {
      G.n = std::stoi(tail);
      return G;
    }
    G.n = std::stoi(head);
    std::stringstream ss(tail);
    std::string edge;
    while (std::getline(ss, edge, ',')) {
      if (edge.empty()) continue;
      const auto dash = edge.find('-');
      if (dash == std::string::npos) throw Error(ErrorKind::BadParams, "edge '" + edge + "' must look like a-b");
      G.edges.emplace_back(std::stoi(edge.substr(0, dash)), std::stoi(edge.substr(dash + 1)));
    }
    return G;
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::BadParams, "cannot parse graph '" + s + "'");
  }
}

WeightModel parse_model(const std::string& s) {
  if (s == "uniform") return WeightModel::Uniform;
  if (s == "lognormal") return WeightModel::LogNormal;
  if (s == "coupled") return WeightModel::Coupled;
  throw Error(ErrorKind::BadParams, "unknown weight model '" + s + "' (expected uniform|lognormal|coupled)");
}

WeightedComplex generate(Config& c) {
  c.random.model = parse_model(c.model);
  if (c.family == "hardcore") return hardcore_complex(c.d, c.lambda);
  if (c.family == "barbell") return barbell_complex(c.d);
  if (c.family == "complete_partite") return complete_partite_complex(c.sizes.empty() ? std::vector<int>{2, 2} : c.sizes);
  if (c.family == "random_partite") return random_partite_complex(c.random, c.seed);
  if (c.family == "product") return random_product(std::vector<RandomPartiteSpec>(c.factors, c.random), c.seed);
  if (c.family == "coloring") {
    const Graph G = parse_graph(c.graph);
    std::vector<int> list(c.colors);
    for (int i = 0; i < c.colors; ++i) list[i] = i;
    return coloring_complex(G, std::vector<std::vector<int>>(G.n, list));
  }
  throw Error(ErrorKind::BadParams, "unknown family '" + c.family + "'");
}

ProfileOptions profile_options(const Config& c) {
  ProfileOptions o;
  o.sweep.threads = c.threads;
  o.sweep.max_dim = c.max_dim;
  o.keep_table = c.keep_table;
  return o;
}

json tolerances(const Config& c) {
  return {{"dependency", c.tol}, {"margin", c.margin_tol}, {"verify", c.verify_tol}, {"eigen", EigenOptions{}.tolerance}};
}

std::vector<double> sweep_points(const std::string& spec) {
  double lo = 0, hi = 0;
  int n = 0;
  char c1 = 0, c2 = 0;
  std::stringstream ss(spec);
  if (!(ss >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1) {
    throw Error(ErrorKind::BadParams, "--delta-sweep must look like lo:hi:steps");
  }
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  return out;
}

struct Analysis {
  WeightedComplex X;
  EpsilonTable eps;
  DependencyGraph G;
};

Analysis analyze_input(const Config& c) {
  WeightedComplex X = read_complex(c.input);
  EpsilonTable eps = epsilon_table(X, profile_options(c));
  DependencyGraph G = dependency_graph(eps, c.tol);
  return {std::move(X), std::move(eps), std::move(G)};
}

// delta from the flag, else delta* of the chosen variant.
double pick_delta(const Config& c, const Analysis& a, Variant variant, Ordering ordering) {
  if (c.delta) return *c.delta;
  auto star = max_feasible_delta(a.eps, a.G, variant, ordering, c.margin_tol);
  if (!star) throw Error(ErrorKind::ConditionUnsatisfiable, "no delta in (0, 1) satisfies the conditions");
  return *star;
}

int execute(const std::string& command, Config& c, json& report) {
  const Ordering ordering = parse_ordering(c.ordering);
  const Variant variant = parse_variant(c.variant);
  if (command == "generate") {
    report = complex_to_json(generate(c));
    return 0;
  }
  if (command == "scenario") {
    const ScenarioFamily family = parse_family(c.scenario_family);
    const double coef = c.delta_coef ? *c.delta_coef : uniform_weight_sum(c.Delta);
    report["tolerances"] = {{"margin", c.margin_tol}};
    if (c.search_min_p) {
      const MinimalP m = minimal_p(family, c.Delta, coef, 10000000, c.margin_tol);
      report["family"] = c.scenario_family;
      report["delta_coef"] = coef;
      report["minimal_p"] = m.p ? json(*m.p) : json(nullptr);
      if (m.p) report["at_p"] = scenario_to_json(m.at_p);
      return m.p ? 0 : 2;
    }
    double eps = 0.0;
    if (c.eps) {
      eps = *c.eps;
    } else if (c.eps_from_p) {
      eps = family_eps(family, *c.eps_from_p);
    } else {
      throw Error(ErrorKind::BadParams, "scenario needs --eps or --eps-from-p");
    }
    std::optional<double> delta = c.delta;
    if (c.delta_from_p) delta = 1.0 - coef * family_eps(family, *c.delta_from_p);
    const ScenarioResult r = scenario_calculator(c.Delta, eps, delta, c.margin_tol);
    report["scenario"] = scenario_to_json(r);
    return r.pass ? 0 : 2;
  }

  report["tolerances"] = tolerances(c);
  if (command == "analyze") {
    const WeightedComplex X = read_complex(c.input);
    const ProfileOptions o = profile_options(c);
    const SpectralProfile p = spectral_profile(X, o);
    report["profile"] = profile_to_json(X, p, o.eigen);
    if (p.totally_connected() && X.dim() >= 1) {
      try {
        report["classical"] = classical_to_json(classical_bound(p.gamma(2), X.dim()));
      } catch (const Error& e) {
        report["classical"] = {{"error", e.what()}};
      }
    }
    return 0;
  }

  Analysis a = analyze_input(c);
  if (command == "epsilon") {
    report["epsilon"] = epsilon_to_json(&a.X, a.eps, a.G);
    report["decomposition"] = decomposition_to_json(a.X, product_decomposition(a.X, a.G, c.strict));
    return 0;
  }
  if (command == "conditions") {
    const auto star = max_feasible_delta(a.eps, a.G, variant, ordering, c.margin_tol);
    report["delta_star"] = star ? json(*star) : json(nullptr);
    int code = star ? 0 : 2;
    if (c.delta) {
      const ConditionReport r = check_conditions(a.eps, a.G, *c.delta, variant, ordering, c.margin_tol);
      report["report"] = conditions_to_json(r);
      code = r.pass ? 0 : 2;
    }
    if (!c.delta_sweep.empty()) {
      json sweep = json::array();
      for (double d : sweep_points(c.delta_sweep)) {
        sweep.push_back(conditions_to_json(check_conditions(a.eps, a.G, d, variant, ordering, c.margin_tol)));
      }
      report["sweep"] = sweep;
    }
    if (c.per_link) {
      const double d = c.delta ? *c.delta : (star ? *star : 0.5);
      report["per_link"] = per_link_to_json(a.X, per_link_conditions(a.X, d, ordering, profile_options(c)));
    }
    return code;
  }

  const double delta = pick_delta(c, a, Variant::Main, ordering);
  const ConditionReport cond = check_main_conditions(a.eps, a.G, delta, ordering, c.margin_tol);
  report["conditions"] = conditions_to_json(cond);
  const FVectors f = build_f_vectors(a.eps, a.G, delta, ordering);
  if (command == "certify") {
    report["certificate"] = fvectors_to_json(f);
    report["diagnostics"] = diagnostics_to_json(inequality_diagnostics(f));
    return cond.pass ? 0 : 2;
  }
  if (command == "verify") {
    const ProfileOptions o = profile_options(c);
    const ScalarReport s = verify_scalar_conditions(a.X, f, o, c.verify_tol);
    const MatrixReport m = verify_matrix_conditions(a.X, f, o, c.verify_tol);
    report["scalar"] = scalar_to_json(f, s);
    report["matrix"] = matrix_to_json(a.X, f, m);
    return s.pass && m.pass ? 0 : 2;
  }
  if (command == "bounds") {
    const BoundProfile b = bound_profile(a.X, f, profile_options(c), c.verify_tol);
    report["bounds"] = bounds_to_json(a.X, f, b);
    // The Delta-based rows carry delta_k and both forms; absent when its hypotheses fail.
    double gamma2 = 0.0;
    for (const auto& row : b.by_k) {
      if (row.k == 2) gamma2 = row.exact;
    }
    try {
      report["degree_based"] = degree_bounds_to_json(degree_bounds(std::max(gamma2, 0.0), f.graph.max_degree,
                                                                   delta, a.X.dim()));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::HypothesisViolated) throw;
      report["degree_based"] = {{"hypothesis_violated", e.what()}};
    }
    return b.worst_face_slack >= -c.verify_tol ? 0 : 2;
  }
  throw Error(ErrorKind::BadParams, "unknown command '" + command + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Local spectral expansion and trickle-down certificates for weighted complexes", "hdx"};
  app.require_subcommand(1, 1);
  auto positive = CLI::PositiveNumber;

  auto add_common = [&](CLI::App* sub, bool input) {
    if (input) sub->add_option("--input,-i", c.input, "complex JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--output,-o", c.output, "write the report here instead of stdout");
    sub->add_option("--threads", c.threads, "worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
    sub->add_option("--max-dim", c.max_dim, "refuse sweeps above this dimension")->check(positive);
  };
  auto add_analysis = [&](CLI::App* sub) {
    sub->add_option("--tol", c.tol, "eps at or below this is a 0-expander")->check(positive);
    sub->add_option("--margin-tol", c.margin_tol, "condition margins above -tol pass")->check(positive);
    sub->add_option("--verify-tol", c.verify_tol, "residual tolerance of the verifiers")->check(positive);
    sub->add_option("--ordering", c.ordering, "eps ordering: decreasing|increasing");
  };

  auto* gen = app.add_subcommand("generate", "emit a complex from the zoo");
  gen->add_option("family", c.family, "coloring|hardcore|barbell|complete_partite|random_partite|product")->required();
  gen->add_option("--d", c.d, "dimension parameter");
  gen->add_option("--lambda", c.lambda, "hardcore activity");
  gen->add_option("--sizes", c.sizes, "part sizes of complete_partite");
  gen->add_option("--graph", c.graph, "coloring graph: complete:N, empty:N or N:a-b,c-d");
  gen->add_option("--colors", c.colors, "list size for every vertex")->check(positive);
  gen->add_option("--parts", c.random.parts, "random: number of parts");
  gen->add_option("--min-size", c.random.min_size, "random: smallest part");
  gen->add_option("--max-size", c.random.max_size, "random: largest part");
  gen->add_option("--density", c.random.density, "random: facet density");
  gen->add_option("--model", c.model, "random weights: uniform|lognormal|coupled");
  gen->add_option("--sigma", c.random.sigma, "random: lognormal spread");
  gen->add_option("--coupling", c.random.coupling, "random: coupled pair strength");
  gen->add_option("--edge-prob", c.random.edge_probability, "random: chance two parts interact");
  gen->add_option("--factors", c.factors, "product: number of random factors")->check(positive);
  gen->add_option("--seed", c.seed, "random seed");
  add_common(gen, false);

  auto* analyze = app.add_subcommand("analyze", "spectral profile gamma_k and argmax faces");
  add_common(analyze, true);
  analyze->add_flag("--keep-table", c.keep_table, "include every face");

  auto* epsilon = app.add_subcommand("epsilon", "eps table, dependency graph and product blocks");
  add_common(epsilon, true);
  add_analysis(epsilon);
  epsilon->add_flag("--strict", c.strict, "compare the product split across every anchor");

  auto* conditions = app.add_subcommand("conditions", "condition margins and delta*");
  add_common(conditions, true);
  add_analysis(conditions);
  conditions->add_option("--delta", c.delta, "delta in (0, 1)");
  conditions->add_option("--delta-sweep", c.delta_sweep, "lo:hi:steps");
  conditions->add_option("--variant", c.variant, "main|averaged|delta_uniform");
  conditions->add_flag("--per-link", c.per_link, "also evaluate each link on its own");

  std::vector<CLI::App*> certified;
  for (const char* name : {"certify", "verify", "bounds"}) {
    auto* sub = app.add_subcommand(name, std::string(name) == "certify"   ? "build the f_S certificate"
                                         : std::string(name) == "verify" ? "scalar and matrix verification"
                                                                         : "certified bounds against exact gamma_k");
    add_common(sub, true);
    add_analysis(sub);
    sub->add_option("--delta", c.delta, "delta in (0, 1); defaults to delta*");
    if (std::string(name) != "certify") sub->add_flag("--keep-table", c.keep_table, "per-face rows");
  }

  auto* scenario = app.add_subcommand("scenario", "uniform-eps condition arithmetic");
  scenario->add_option("--Delta", c.Delta, "dependency degree")->required()->check(positive);
  scenario->add_option("--eps", c.eps, "uniform eps");
  scenario->add_option("--eps-from-p", c.eps_from_p, "eps from p via the family");
  scenario->add_option("--delta", c.delta, "delta in (0, 1)");
  scenario->add_option("--delta-from-p", c.delta_from_p, "delta = 1 - coef * eps(p)");
  scenario->add_option("--family", c.scenario_family, "ko (eps = 1/sqrt p) | op (eps = sqrt(2/p))");
  scenario->add_option("--delta-coef", c.delta_coef, "coefficient in delta = 1 - coef * eps(p)");
  scenario->add_flag("--search-min-p", c.search_min_p, "smallest integer p passing both conditions");
  scenario->add_option("--margin-tol", c.margin_tol, "condition margins above -tol pass")->check(positive);
  scenario->add_option("--output,-o", c.output, "write the report here instead of stdout");

  std::vector<std::string> storage{"hdx"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run 'hdx --help' for usage\n";
    return 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  json report;
  int code = 0;
  try {
    if (command != "generate") report["command"] = command;
    code = execute(command, c, report);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: Internal: " << e.what() << "\n";
    return 1;
  }
  const std::string text = report.dump(2) + "\n";
  if (c.output.empty()) {
    out << text;
  } else {
    try {
      write_text(c.output, text);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return code;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace hdx::cli
