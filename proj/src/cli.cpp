/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qrecover/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qrecover/info.hpp"
#include "qrecover/io.hpp"
#include "qrecover/states.hpp"

namespace qrecover {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

struct CommonOptions {
  std::uint64_t seed = 0;
  std::vector<int> dims;
  long long trials = 0;
  std::string out;
  std::string format = "json";
  int threads = 0; // 0: QRECOVER_THREADS, else 1
  double tol = 1e-7;
};

int resolved_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char *env = std::getenv("QRECOVER_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

void emit(const std::string &text, const std::string &out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

std::vector<double> parse_grid(const std::string &spec) {
  double lo = 0, hi = 0, step = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
      step <= 0 || hi < lo)
    throw DomainError("grid must be lo:hi:step with step > 0, got '" + spec +
                      "'");
  std::vector<double> grid;
  const long long count = static_cast<long long>(std::round((hi - lo) / step));
  grid.reserve(static_cast<std::size_t>(count) + 1);
  for (long long i = 0; i <= count; ++i) grid.push_back(lo + static_cast<double>(i) * step);
  return grid;
}

MultipartiteState load_or_sample(const std::string &state_path,
                                 const CommonOptions &common,
                                 const std::string &ensemble) {
  if (!state_path.empty()) return parse_state(read_text_file(state_path));
  if (common.dims.empty())
    throw DomainError("either --state or --dims is required");
  StateEnsembleSpec spec;
  spec.dims = common.dims;
  spec.seed = common.seed;
  if (ensemble == "haar_pure") spec.ensemble = Ensemble::haar_pure;
  else if (ensemble == "hilbert_schmidt") spec.ensemble = Ensemble::hilbert_schmidt_mixed;
  else if (ensemble == "bures") spec.ensemble = Ensemble::bures_mixed;
  else throw DomainError("unknown ensemble: " + ensemble);
  return random_state(spec);
}

// A two- or three-factor operand: bipartite states pass through, a
// three-factor state is read as a supplied extension with the middle factor
// as the environment.
struct ExtendInput {
  MultipartiteState rho_ab;
  std::optional<MultipartiteState> supplied;
};

ExtendInput split_extend_input(const MultipartiteState &state) {
  ExtendInput input;
  if (state.layout.size() == 2) {
    input.rho_ab = state;
  } else if (state.layout.size() == 3) {
    input.supplied = state;
    input.rho_ab = marginal(state, {state.layout.labels[0], state.layout.labels[2]});
  } else {
    throw DomainError(
        "extend expects a bipartite state or a three-factor extension");
  }
  return input;
}

int do_extend(const CommonOptions &common, const std::string &state_path,
              const std::string &ensemble, int k, const std::string &grid_spec) {
  const MultipartiteState state = load_or_sample(state_path, common, ensemble);
  const ExtendInput input = split_extend_input(state);
  const ExtensionResult result =
      build_k_extension(input.rho_ab, k, parse_grid(grid_spec), input.supplied);
  if (common.format == "csv")
    emit(csv_header(result.report) + "\n" + csv_row(result.report) + "\n",
         common.out);
  else
    emit(serialize(result.report, timestamp_utc()), common.out);
  return 0;
}

int do_fuzz(const CommonOptions &common, const std::string &inequality,
            const std::string &variant, int refine, double scale,
            const std::string &family, const std::string &witness_dir) {
  SearchConfig config;
  config.trials = common.trials > 0 ? common.trials : 1;
  config.refine_steps = refine;
  config.perturbation_scale = scale;
  if (!common.dims.empty()) config.dims = common.dims;
  config.seed = common.seed;
  config.tolerance = common.tol;
  config.threads = resolved_threads(common.threads);
  if (family == "quantum") config.family = InstanceFamily::quantum;
  else if (family == "classical") config.family = InstanceFamily::classical_embedded;
  else throw DomainError("unknown family: " + family);

  const InequalityId id = inequality_from_string(inequality);
  const MapVariant map_variant = map_variant_from_string(variant);
  const SearchResult result = search_counterexample(id, map_variant, config);

  const std::string timestamp = timestamp_utc();
  if (common.format == "csv") {
    std::ostringstream out;
    out << csv_header(result.best) << "\n" << csv_row(result.best) << "\n";
    for (const auto &r : result.worst) out << csv_row(r) << "\n";
    emit(out.str(), common.out);
  } else {
    emit(serialize(result, timestamp), common.out);
  }

  if (result.best.violation) {
    std::error_code ec;
    std::filesystem::create_directories(witness_dir, ec);
    if (ec)
      throw IoError("cannot create witness directory " + witness_dir);
    const std::string stem = witness_dir + "/" + to_string(id) + "_" +
                             std::to_string(result.best.instance_seed);
    write_text_file(stem + ".state.json", serialize(result.witness, timestamp));
    write_text_file(stem + ".report.json",
                    serialize(result.best, timestamp));
    std::cerr << "violation archived: " << stem << ".{state,report}.json\n";
  }
  return 0;
}

int do_measures(const CommonOptions &common, const std::string &state_path,
                const std::string &measure, int restarts, int env_dim,
                int ensemble_size) {
  const MultipartiteState state = parse_state(read_text_file(state_path));
  MeasureEstimate estimate;
  if (measure == "eof") {
    if (state.layout.size() != 2)
      throw DomainError("eof expects a bipartite state");
    const std::vector<std::string> a{state.layout.labels[0]};
    const std::vector<std::string> b{state.layout.labels[1]};
    int m = ensemble_size;
    if (m <= 0) {
      const HermitianEig eig = hermitian_eig(state.matrix);
      int rank = 0;
      for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
        if (eig.eigenvalues(i) > 1e-12 * eig.eigenvalues(0)) ++rank;
      m = default_ensemble_size(std::max(rank, 1));
    }
    estimate = entanglement_of_formation(state, a, b, std::max(restarts, 1), m,
                                         common.seed);
  } else if (measure == "esq_ub") {
    const ExtendInput input = split_extend_input(state);
    const std::vector<std::string> a{input.rho_ab.layout.labels[0]};
    const std::vector<std::string> b{input.rho_ab.layout.labels[1]};
    const int env = env_dim > 0 ? env_dim
                                : static_cast<int>(
                                      std::min<long long>(input.rho_ab.dim(),
                                                          64));
    estimate = squashed_entanglement_upper_bound(
        input.rho_ab, a, b, env, std::max(restarts, 1), common.seed,
        input.supplied);
  } else {
    throw DomainError("unknown measure: " + measure);
  }
  if (common.format == "csv")
    emit(csv_header(estimate) + "\n" + csv_row(estimate) + "\n", common.out);
  else
    emit(serialize(estimate, timestamp_utc()), common.out);
  return 0;
}

int do_gen(const CommonOptions &common, const std::string &fixture,
           const std::string &ensemble, int rank, int copies, int d,
           int blocks) {
  MultipartiteState state;
  if (fixture == "bell") {
    state = bell();
  } else if (fixture == "ghz") {
    state = ghz(copies);
  } else if (fixture == "classical_copy") {
    state = classical_copy(d);
  } else if (fixture == "maximally_mixed") {
    state = maximally_mixed(d);
  } else if (fixture == "alpha") {
    state = antisymmetric_state(d, copies);
  } else if (fixture == "markov") {
    Rng rng(common.seed);
    std::vector<MarkovBlock> block_list;
    const RealVector p = rng.simplex(blocks);
    for (int j = 0; j < blocks; ++j) {
      MarkovBlock block;
      block.p = p(j);
      StateEnsembleSpec spec;
      spec.dims = {2, 2};
      spec.seed = common.seed ^ (0x9e3779b97f4a7c15ULL *
                                 static_cast<std::uint64_t>(2 * j + 1));
      block.sigma = random_state(spec);
      spec.seed = common.seed ^ (0x9e3779b97f4a7c15ULL *
                                 static_cast<std::uint64_t>(2 * j + 2));
      block.tau = random_state(spec);
      block_list.push_back(std::move(block));
    }
    state = quantum_markov_chain(block_list);
  } else if (fixture == "random") {
    if (common.dims.empty()) throw DomainError("random fixture needs --dims");
    StateEnsembleSpec spec;
    spec.dims = common.dims;
    spec.seed = common.seed;
    spec.rank = rank;
    if (ensemble == "haar_pure") spec.ensemble = Ensemble::haar_pure;
    else if (ensemble == "hilbert_schmidt") spec.ensemble = Ensemble::hilbert_schmidt_mixed;
    else if (ensemble == "bures") spec.ensemble = Ensemble::bures_mixed;
    else if (ensemble == "rank_limited") spec.ensemble = Ensemble::rank_limited;
    else throw DomainError("unknown ensemble: " + ensemble);
    state = random_state(spec);
  } else {
    throw DomainError("unknown fixture: " + fixture);
  }
  emit(serialize(state, timestamp_utc()), common.out);
  return 0;
}

// ---- check suites --------------------------------------------------------

Rng property_rng(std::uint64_t seed, int property_index) {
  return Rng(seed ^ (0x9e3779b97f4a7c15ULL *
                     static_cast<std::uint64_t>(property_index + 1)));
}

MultipartiteState hs_state(Rng &rng, const std::vector<int> &dims,
                           const std::vector<std::string> &labels) {
  long long n = 1;
  for (int d : dims) n *= d;
  Matrix g = rng.ginibre(n, n);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return make_state(std::move(m), SubsystemLayout(labels, dims));
}

PropertyResult check_ssa(long long trials, std::uint64_t seed) {
  PropertyResult r{"ssa_cmi_nonnegative", trials, 0, 0, false};
  Rng rng = property_rng(seed, 0);
  for (long long i = 0; i < trials; ++i) {
    const MultipartiteState rho = hs_state(rng, {2, 2, 2}, {"A", "E", "B"});
    const double cmi =
        conditional_mutual_information(rho, {"A"}, {"B"}, {"E"});
    r.worst = std::min(r.worst, cmi);
    if (cmi < -1e-8) ++r.failures;
  }
  return r;
}

PropertyResult check_cmi_as_rel_ent(long long trials, std::uint64_t seed) {
  PropertyResult r{"cmi_equals_relative_entropy_difference", trials, 0, 0,
                   false};
  Rng rng = property_rng(seed, 1);
  for (long long i = 0; i < trials; ++i) {
    const MultipartiteState rho = hs_state(rng, {2, 2, 2}, {"A", "E", "B"});
    const double cmi =
        conditional_mutual_information(rho, {"A"}, {"B"}, {"E"});
    const MultipartiteState rho_ae = marginal(rho, {"A", "E"});
    const double two_path =
        relative_entropy(rho, product(marginal(rho, {"A"}),
                                      marginal(rho, {"E", "B"}))) -
        relative_entropy(rho_ae, product(marginal(rho, {"A"}),
                                         marginal(rho, {"E"})));
    const double dev = std::abs(cmi - two_path);
    r.worst = std::max(r.worst, dev);
    if (!(dev <= 1e-8)) ++r.failures;
  }
  return r;
}

PropertyResult check_fvdg(long long trials, std::uint64_t seed) {
  PropertyResult r{"fuchs_van_de_graaf_sandwich", trials, 0, 0, false};
  Rng rng = property_rng(seed, 2);
  for (long long i = 0; i < trials; ++i) {
    const MultipartiteState alpha = hs_state(rng, {4}, {"A"});
    const MultipartiteState beta = hs_state(rng, {4}, {"A"});
    const FvdGReport rep = check_fuchs_van_de_graaf(alpha, beta);
    r.worst = std::max(r.worst, std::max(rep.lhs - rep.mid, rep.mid - rep.rhs));
    if (!rep.holds) ++r.failures;
  }
  return r;
}

PropertyResult check_pinsker(long long trials, std::uint64_t seed) {
  PropertyResult r{"pinsker", trials, 0, 0, false};
  Rng rng = property_rng(seed, 3);
  for (long long i = 0; i < trials; ++i) {
    const MultipartiteState rho = hs_state(rng, {4}, {"A"});
    const MultipartiteState sigma = hs_state(rng, {4}, {"A"});
    const double d_bits = relative_entropy(rho, sigma);
    const double t = trace_distance(rho, sigma);
    const double floor = t * t / (2 * kLn2);
    r.worst = std::min(r.worst, d_bits - floor);
    if (d_bits < floor - 1e-9) ++r.failures;
  }
  return r;
}

PropertyResult check_classical_gap(long long trials, std::uint64_t seed) {
  PropertyResult r{"transpose_gap_nonnegative", trials, 0, 0, false};
  Rng rng = property_rng(seed, 4);
  for (long long i = 0; i < trials; ++i) {
    const int nx = 2 + static_cast<int>(rng.below(5));
    const int nu = 2 + static_cast<int>(rng.below(5));
    const Distribution p = random_distribution(rng, {nx});
    const Distribution q = random_distribution(rng, {nx});
    const StochasticMap t = random_stochastic(rng, nu, nx);
    const ClassicalGapReport rep = check_transpose_gap(p, q, t);
    if (std::isfinite(rep.gap)) r.worst = std::min(r.worst, rep.gap);
    if (!rep.holds) ++r.failures;
  }
  return r;
}

PropertyResult check_deterministic_equality(long long trials,
                                            std::uint64_t seed) {
  PropertyResult r{"deterministic_equality", trials, 0, 0, false};
  Rng rng = property_rng(seed, 5);
  for (long long i = 0; i < trials; ++i) {
    const int nx = 2 + static_cast<int>(rng.below(2));
    const int nu = 2 + static_cast<int>(rng.below(2));
    std::vector<int> to(static_cast<std::size_t>(nx));
    for (auto &u : to) u = static_cast<int>(rng.below(nu));
    const Distribution p = random_distribution(rng, {nx});
    const Distribution q = random_distribution(rng, {nx});
    const ClassicalGapReport rep =
        check_transpose_gap(p, q, deterministic_map(to, nu));
    if (std::isfinite(rep.gap)) r.worst = std::max(r.worst, std::abs(rep.gap));
    if (!rep.equality) ++r.failures;
  }
  return r;
}

PropertyResult check_markov_projection(long long trials, std::uint64_t seed) {
  PropertyResult r{"markov_projection_cmi", trials, 0, 0, false};
  Rng rng = property_rng(seed, 6);
  for (long long i = 0; i < trials; ++i) {
    const Distribution p = random_distribution(rng, {3, 3, 3});
    const double via_projection = relative_entropy(p, markov_projection(p));
    const double dev = std::abs(via_projection - classical_cmi(p));
    r.worst = std::max(r.worst, dev);
    if (!(dev <= 1e-10)) ++r.failures;
  }
  return r;
}

PropertyResult check_axiom(FunctorialityAxiom axiom, long long instances,
                           std::uint64_t seed, int property_index) {
  const FunctorialityReport rep = check_functoriality(
      axiom, seed ^ static_cast<std::uint64_t>(property_index * 7919),
      static_cast<int>(instances));
  PropertyResult r;
  r.name = "functoriality_" + to_string(axiom);
  r.instances = instances;
  r.worst = rep.deviation;
  r.informational = !rep.asserted;
  r.failures = rep.asserted && !rep.holds ? 1 : 0;
  return r;
}

PropertyResult check_chain_identity(int n, long long trials,
                                    std::uint64_t seed) {
  PropertyResult r{"chain_identity_n" + std::to_string(n), trials, 0, 0,
                   false};
  Rng rng = property_rng(seed, 7 + n);
  std::vector<int> dims(static_cast<std::size_t>(n) + 1, 2);
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back("A" + std::to_string(i));
  labels.push_back("E");
  std::vector<std::vector<std::string>> parts;
  for (int i = 0; i < n; ++i) parts.push_back({labels[static_cast<std::size_t>(i)]});
  for (long long trial = 0; trial < trials; ++trial) {
    const MultipartiteState rho = hs_state(rng, dims, labels);
    const double direct = conditional_multi_information(rho, parts, {"E"});
    double chain = 0;
    for (int i = 0; i < n - 1; ++i) {
      std::vector<std::string> rest(labels.begin() + i + 1, labels.end() - 1);
      chain += conditional_mutual_information(
          rho, {labels[static_cast<std::size_t>(i)]}, rest, {"E"});
    }
    const double dev = std::abs(direct - chain);
    r.worst = std::max(r.worst, dev);
    if (!(dev <= 1e-9)) ++r.failures;
  }
  return r;
}

} // namespace

std::vector<PropertyResult> run_check_suite(const std::string &suite,
                                            long long trials,
                                            std::uint64_t seed) {
  std::vector<PropertyResult> results;
  if (suite == "info") {
    const long long n = trials > 0 ? trials : 200;
    results.push_back(check_ssa(n, seed));
    results.push_back(check_cmi_as_rel_ent(n, seed));
  } else if (suite == "fvdg") {
    results.push_back(check_fvdg(trials > 0 ? trials : 500, seed));
  } else if (suite == "pinsker") {
    results.push_back(check_pinsker(trials > 0 ? trials : 500, seed));
  } else if (suite == "classical") {
    const long long n = trials > 0 ? trials : 500;
    results.push_back(check_classical_gap(n, seed));
    results.push_back(check_deterministic_equality(n, seed));
    results.push_back(check_markov_projection(n, seed));
  } else if (suite == "functoriality") {
    const long long n = trials > 0 ? std::min<long long>(trials, 50) : 12;
    results.push_back(
        check_axiom(FunctorialityAxiom::normalization, n, seed, 0));
    results.push_back(check_axiom(FunctorialityAxiom::tensor, n, seed, 1));
    results.push_back(check_axiom(FunctorialityAxiom::composition, n, seed, 2));
  } else if (suite == "chain_identity") {
    const long long n = trials > 0 ? trials : 100;
    for (int parties = 2; parties <= 4; ++parties)
      results.push_back(check_chain_identity(parties, n, seed));
  } else {
    throw DomainError("unknown suite: " + suite);
  }
  return results;
}

namespace {

int do_check(const CommonOptions &common, const std::string &suite) {
  const std::vector<PropertyResult> results =
      run_check_suite(suite, common.trials, common.seed);
  long long failures = 0;
  std::ostringstream lines;
  for (const auto &r : results) {
    lines << r.name << ": instances=" << r.instances
          << " failures=" << r.failures << " worst=" << format_real(r.worst)
          << (r.informational ? " (informational)" : "") << "\n";
    if (!r.informational) failures += r.failures;
  }
  lines << "suite " << suite << ": " << (failures == 0 ? "PASS" : "FAIL")
        << "\n";
  if (common.format == "csv") {
    std::ostringstream csv;
    csv << "property,instances,failures,worst,informational\n";
    for (const auto &r : results)
      csv << r.name << ',' << r.instances << ',' << r.failures << ','
          << format_real(r.worst) << ',' << (r.informational ? "true" : "false")
          << "\n";
    emit(csv.str(), common.out);
    std::cerr << lines.str();
  } else {
    emit(lines.str(), common.out);
  }
  return failures == 0 ? 0 : 2;
}

} // namespace

int run_cli(int argc, const char *const *argv) {
  CLI::App app{"Recovery-map toolkit: extensions, measures, inequality fuzzing"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions common;
  app.add_option("--seed", common.seed, "base RNG seed");
  app.add_option("--dims", common.dims, "subsystem dimensions")
      ->delimiter(',');
  app.add_option("--trials", common.trials, "trial count");
  app.add_option("--out", common.out, "output path (default stdout)");
  app.add_option("--format", common.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", common.threads,
                 "worker threads (default QRECOVER_THREADS or 1)");
  app.add_option("--tol", common.tol, "violation tolerance");

  auto *extend = app.add_subcommand("extend", "k-extension pipeline");
  std::string extend_state, extend_ensemble = "hilbert_schmidt";
  std::string grid_spec = "-10:10:0.1";
  int k = 2;
  extend->add_option("--state", extend_state, "input state file");
  extend->add_option("--ensemble", extend_ensemble,
                     "sampling ensemble when --dims is used");
  extend->add_option("--k", k, "number of B factors")->required();
  extend->add_option("--grid", grid_spec, "swivel grid lo:hi:step");

  auto *fuzz = app.add_subcommand("fuzz", "inequality counterexample search");
  std::string inequality, variant = "petz_t0", family = "quantum";
  std::string witness_dir = ".";
  int refine = 50;
  double scale = 0.05;
  fuzz->add_option("--inequality", inequality, "inequality id")->required();
  fuzz->add_option("--variant", variant, "recovery-map variant");
  fuzz->add_option("--refine", refine, "hill-climb steps");
  fuzz->add_option("--scale", scale, "perturbation scale");
  fuzz->add_option("--family", family, "quantum or classical");
  fuzz->add_option("--witness-dir", witness_dir, "violation archive directory");

  auto *check = app.add_subcommand("check", "invariant suites");
  std::string suite;
  check->add_option("suite", suite, "info|classical|functoriality|fvdg|pinsker|chain_identity")
      ->required();

  auto *measures = app.add_subcommand("measures", "entanglement estimates");
  std::string measures_state, measure;
  int restarts = 8, env_dim = 0, ensemble_size = 0;
  measures->add_option("--state", measures_state, "input state file")
      ->required();
  measures->add_option("--measure", measure, "eof or esq_ub")->required();
  measures->add_option("--restarts", restarts, "optimizer restarts");
  measures->add_option("--env-dim", env_dim, "extension environment dimension");
  measures->add_option("--ensemble-size", ensemble_size,
                       "decomposition size (0: automatic)");

  auto *gen = app.add_subcommand("gen", "state fixture generator");
  std::string fixture, gen_ensemble = "hilbert_schmidt";
  int rank = 1, copies = 2, d = 3, blocks = 2;
  gen->add_option("fixture", fixture,
                  "bell|ghz|classical_copy|maximally_mixed|alpha|markov|random")
      ->required();
  gen->add_option("--ensemble", gen_ensemble, "ensemble for random");
  gen->add_option("--rank", rank, "rank for rank_limited");
  gen->add_option("--copies", copies, "copies for ghz/alpha");
  gen->add_option("--d", d, "local dimension for alpha/classical_copy");
  gen->add_option("--blocks", blocks, "block count for markov");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 1;
  }

  try {
    if (extend->parsed())
      return do_extend(common, extend_state, extend_ensemble, k, grid_spec);
    if (fuzz->parsed())
      return do_fuzz(common, inequality, variant, refine, scale, family,
                     witness_dir);
    if (check->parsed()) return do_check(common, suite);
    if (measures->parsed())
      return do_measures(common, measures_state, measure, restarts, env_dim,
                         ensemble_size);
    if (gen->parsed())
      return do_gen(common, fixture, gen_ensemble, rank, copies, d, blocks);
    std::cerr << "no subcommand\n";
    return 1;
  } catch (const InvalidState &e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error &e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}

int run_cli(const std::vector<std::string> &args) {
  std::vector<const char *> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("qrecover");
  for (const auto &a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

} // namespace qrecover
