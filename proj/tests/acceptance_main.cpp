/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

// Acceptance battery. One criterion per invocation (argv[1] in 1..10), one
// [PASS]/[FAIL] line per criterion on stdout; a criterion also fails when it
// overruns its stated wall-clock budget. Volumes and tolerances here are the
// project's release gate -- do not shrink them to make a run faster.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <qrecover/channels.hpp>
#include <qrecover/cli.hpp>
#include <qrecover/classical.hpp>
#include <qrecover/conjectures.hpp>
#include <qrecover/extend.hpp>
#include <qrecover/info.hpp>
#include <qrecover/io.hpp>
#include <qrecover/measures.hpp>
#include <qrecover/states.hpp>

using namespace qrecover;
namespace fs = std::filesystem;

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// Minimal check recorder: counts failures, echoes the first few so a red run
// is diagnosable from the ctest log alone.
struct Checker {
  long long checks = 0;
  long long failures = 0;

  void expect(bool ok, const std::string &what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (failures <= 10) std::fprintf(stderr, "  check failed: %s\n", what.c_str());
    if (failures == 11) std::fprintf(stderr, "  (further failures suppressed)\n");
  }

  bool expect_near(double got, double want, double tol, const std::string &what) {
    const bool ok = std::isfinite(got) && std::abs(got - want) <= tol;
    std::ostringstream msg;
    msg << what << " (got " << got << ", want " << want << " +- " << tol << ")";
    expect(ok, msg.str());
    return ok;
  }

  bool expect_le(double got, double bound, const std::string &what) {
    const bool ok = std::isfinite(got) && got <= bound;
    std::ostringstream msg;
    msg << what << " (got " << got << ", bound " << bound << ")";
    expect(ok, msg.str());
    return ok;
  }
};

std::string scratch(const std::string &name) {
  const fs::path dir = fs::path("/tmp/qrecover_acceptance") / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

bool same_modulo_timestamp(const std::string &a, const std::string &b) {
  std::istringstream sa(a), sb(b);
  std::string la, lb;
  while (true) {
    const bool ga = static_cast<bool>(std::getline(sa, la));
    const bool gb = static_cast<bool>(std::getline(sb, lb));
    if (ga != gb) return false;
    if (!ga) return true;
    if (la != lb && la.find("timestamp") == std::string::npos) return false;
  }
}

// ---- 1: classical transpose-channel gap ----------------------------------

bool criterion_1(Checker &c) {
  Rng rng(10001);
  for (int i = 0; i < 10000; ++i) {
    const int nx = 2 + static_cast<int>(rng.below(7));
    const int nu = 2 + static_cast<int>(rng.below(7));
    const Distribution p = make_distribution(rng.simplex(nx), {nx});
    const Distribution q = make_distribution(rng.simplex(nx), {nx});
    RealMatrix t(nu, nx);
    for (int col = 0; col < nx; ++col) t.col(col) = rng.simplex(nu);
    const ClassicalGapReport rep = check_transpose_gap(p, q, make_stochastic(t));
    c.expect(rep.holds, "random gap >= -1e-10 at trial " + std::to_string(i));
  }

  // Every deterministic map on alphabets up to three, several priors each:
  // the chain collapses to an identity and the gap must vanish.
  for (int nx = 2; nx <= 3; ++nx)
    for (int nu = 1; nu <= 3; ++nu) {
      std::vector<int> to(nx, 0);
      while (true) {
        StochasticMap map = deterministic_map(to, nu);
        for (int rep_i = 0; rep_i < 5; ++rep_i) {
          const Distribution p = make_distribution(rng.simplex(nx), {nx});
          const Distribution q = make_distribution(rng.simplex(nx), {nx});
          const ClassicalGapReport rep = check_transpose_gap(p, q, map);
          c.expect(rep.deterministic, "map detected as deterministic");
          c.expect(rep.equality,
                   "deterministic |gap| <= 1e-10, nx=" + std::to_string(nx) +
                       " nu=" + std::to_string(nu));
        }
        int pos = 0;
        while (pos < nx && ++to[pos] == nu) to[pos++] = 0;
        if (pos == nx) break;
      }
    }
  return c.failures == 0;
}

// ---- 2: markov projection of three-variable joints -----------------------

bool criterion_2(Checker &c) {
  Rng rng(20002);
  for (int i = 0; i < 1000; ++i) {
    const Distribution p = make_distribution(rng.simplex(27), {3, 3, 3});
    const Distribution q = markov_projection(p);
    const double cmi = classical_cmi(p);
    c.expect_near(relative_entropy(p, q), cmi, 1e-10,
                  "D(P||M(P)) = I(X:Z|Y) at trial " + std::to_string(i));
    const double l1 = (p.probs - q.probs).cwiseAbs().sum();
    c.expect_le(l1, std::sqrt(2 * kLn2) * std::sqrt(cmi) + 1e-9,
                "l1 distance to the projection at trial " + std::to_string(i));
  }
  return c.failures == 0;
}

// ---- 3: exact recovery on random markov chains ---------------------------

bool criterion_3(Checker &c) {
  Rng rng(30003);
  std::uint64_t state_seed = 1u << 20;
  for (int i = 0; i < 100; ++i) {
    // Draw block shapes until the composite fits the desk-scale cap.
    int d_a, d_b;
    std::vector<std::pair<int, int>> shape;
    while (true) {
      d_a = 2 + static_cast<int>(rng.below(2));
      d_b = 2 + static_cast<int>(rng.below(2));
      const int n_blocks = 1 + static_cast<int>(rng.below(3));
      shape.clear();
      int d_e = 0;
      for (int j = 0; j < n_blocks; ++j) {
        const int el = 1 + static_cast<int>(rng.below(2));
        const int er = 1 + static_cast<int>(rng.below(2));
        shape.emplace_back(el, er);
        d_e += el * er;
      }
      if (d_a * d_e * d_b <= 48) break;
    }
    const RealVector weights = rng.simplex(static_cast<int>(shape.size()));
    std::vector<MarkovBlock> blocks;
    for (std::size_t j = 0; j < shape.size(); ++j) {
      MarkovBlock block;
      block.p = weights(static_cast<Eigen::Index>(j));
      StateEnsembleSpec spec;
      spec.dims = {d_a, shape[j].first};
      spec.seed = state_seed++;
      block.sigma = random_state(spec);
      spec.dims = {shape[j].second, d_b};
      spec.seed = state_seed++;
      block.tau = random_state(spec);
      blocks.push_back(std::move(block));
    }
    const MultipartiteState chain = quantum_markov_chain(blocks);
    c.expect_le(conditional_mutual_information(chain, {"A"}, {"B"}, {"E"}),
                1e-8, "I(A:B|E) on chain " + std::to_string(i));
    const RecoveryMap rec = cmi_petz_map(marginal(chain, {"E", "B"}));
    const MultipartiteState recovered = permute(
        apply_on_subsystem(rec.channel, marginal(chain, {"A", "E"}), {"E"}),
        {"A", "E", "B"});
    c.expect_le(trace_distance(recovered, chain), 1e-6,
                "recovery of chain " + std::to_string(i));
  }
  return c.failures == 0;
}

// ---- 4: fidelity bound via the swivel scan -------------------------------

bool criterion_4(Checker &c) {
  const std::string dir = scratch("swivel_exceptions");
  const std::vector<double> grid = default_swivel_grid();
  int persistent_exceptions = 0;
  for (int i = 0; i < 1000; ++i) {
    StateEnsembleSpec spec;
    spec.dims = {2, 2, 2};
    spec.seed = 40000 + static_cast<std::uint64_t>(i);
    spec.ensemble = Ensemble::haar_pure;
    const MultipartiteState rho = random_state(spec);
    const SwivelScan scan = best_swivel_scan(rho, {"A"}, {"E"}, {"B"}, grid);
    if (scan.bound_holds) continue;

    // Archive the instance, then re-check on a tenfold finer grid around the
    // coarse winner before counting it against the success rate.
    write_text_file(dir + "/seed_" + std::to_string(spec.seed) + ".state.json",
                    serialize(rho, timestamp_utc()));
    std::vector<double> fine;
    for (int g = -100; g <= 100; ++g)
      fine.push_back(scan.t_best + 0.01 * g);
    const SwivelScan recheck = best_swivel_scan(rho, {"A"}, {"E"}, {"B"}, fine);
    std::fprintf(stderr,
                 "  exception at seed %llu: score %.3e vs cmi %.3e, refined "
                 "score %.3e\n",
                 static_cast<unsigned long long>(spec.seed), scan.score_best,
                 scan.cmi, recheck.score_best);
    if (!recheck.bound_holds) ++persistent_exceptions;
  }
  c.expect(persistent_exceptions <= 1,
           "bound holds in at least 999 of 1000 instances (exceptions: " +
               std::to_string(persistent_exceptions) + ")");
  return c.failures == 0;
}

// ---- 5: extension bookkeeping --------------------------------------------

void check_extension_books(Checker &c, const std::string &tag,
                           const MultipartiteState &rho_ab,
                           const ExtensionResult &result, bool deep) {
  const ExtensionReport &rep = result.report;
  c.expect_le(rep.symmetry_residual, 1e-8, tag + ": symmetry residual");
  c.expect(static_cast<int>(rep.marginal_distances.size()) == rep.k,
           tag + ": one marginal reading per copy");
  for (std::size_t i = 0; i < rep.marginal_distances.size(); ++i)
    c.expect_le(rep.marginal_distances[i], rep.measured_bound + 1e-8,
                tag + ": marginal " + std::to_string(i) +
                    " within the measured step bound");
  if (!deep) return;

  // Independent reads of the same two facts, straight off omega.
  const MultipartiteState &omega = result.omega;
  if (rep.k >= 2) {
    const MultipartiteState swapped =
        permute(relabel(omega, {"B1", "B2"}, {"B2", "B1"}),
                omega.layout.labels);
    c.expect_le(trace_distance(swapped, omega), 1e-8,
                tag + ": omega invariant under swapping the first two copies");
  }
  const std::string b_label = rho_ab.layout.labels[1];
  for (int i = 1; i <= rep.k; ++i) {
    const MultipartiteState part = relabel(
        marginal(omega, {"A", "B" + std::to_string(i)}),
        {"B" + std::to_string(i)}, {b_label});
    const double dist = trace_distance(part, rho_ab);
    c.expect_le(dist, rep.measured_bound + 1e-8,
                tag + ": direct marginal " + std::to_string(i));
    c.expect_near(dist, rep.marginal_distances[static_cast<std::size_t>(i - 1)],
                  1e-9, tag + ": ledger agrees with the direct read");
  }
}

bool criterion_5(Checker &c) {
  const std::vector<double> grid = default_swivel_grid();

  { // markov chain, supplied extension path, k = 4
    std::vector<MarkovBlock> blocks(2);
    StateEnsembleSpec spec;
    spec.dims = {2, 2};
    for (int j = 0; j < 2; ++j) {
      blocks[static_cast<std::size_t>(j)].p = j == 0 ? 0.35 : 0.65;
      spec.seed = static_cast<std::uint64_t>(50 + 2 * j);
      blocks[static_cast<std::size_t>(j)].sigma = random_state(spec);
      spec.seed = static_cast<std::uint64_t>(51 + 2 * j);
      blocks[static_cast<std::size_t>(j)].tau = random_state(spec);
    }
    const MultipartiteState chain = quantum_markov_chain(blocks);
    const MultipartiteState rho_ab = marginal(chain, {"A", "B"});
    check_extension_books(c, "markov k=4", rho_ab,
                          build_k_extension(rho_ab, 4, grid, chain), true);
  }
  check_extension_books(c, "bell k=2", bell(),
                        build_k_extension(bell(), 2, grid), true);
  {
    const MultipartiteState alpha3 = antisymmetric_state(3, 2);
    check_extension_books(c, "alpha3 k=2", alpha3,
                          build_k_extension(alpha3, 2, grid), true);
  }
  for (int i = 0; i < 50; ++i) {
    StateEnsembleSpec spec;
    spec.dims = {2, 2, 2};
    spec.seed = 56000 + static_cast<std::uint64_t>(i);
    const MultipartiteState ext = random_state(spec);
    const MultipartiteState rho_ab = marginal(ext, {"A", "B"});
    check_extension_books(c, "random " + std::to_string(i), rho_ab,
                          build_k_extension(rho_ab, 3, grid, ext), false);
  }
  return c.failures == 0;
}

// ---- 6: antisymmetric marginals and their squashed bound -----------------

bool criterion_6(Checker &c) {
  for (int d = 3; d <= 4; ++d) {
    const MultipartiteState big = antisymmetric_state(d, d);
    const MultipartiteState two = antisymmetric_state(d, 2);
    const std::vector<std::string> &labels = big.layout.labels;
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = i + 1; j < labels.size(); ++j) {
        const MultipartiteState pair = relabel(
            marginal(big, {labels[i], labels[j]}), {labels[i], labels[j]},
            {"A", "B"});
        c.expect_le(trace_distance(pair, two), 1e-10,
                    "d=" + std::to_string(d) + " marginal (" + labels[i] +
                        ", " + labels[j] + ")");
      }
  }
  const MeasureEstimate esq = squashed_entanglement_upper_bound(
      antisymmetric_state(3, 2), {"A"}, {"B"}, 9, 4, 1);
  c.expect_le(esq.value, 0.80, "squashed bound on the d=3 antisymmetric state");
  return c.failures == 0;
}

// ---- 7: counterexample campaign ------------------------------------------

bool criterion_7(Checker &c) {
  const std::string dir = scratch("fuzz");
  const std::string out = dir + "/summary.json";
  const int rc = run_cli({"--trials", "100000", "--seed", "1", "--dims",
                          "2,2,2", "--threads", "4", "fuzz", "--inequality",
                          "transpose_gap_quantum", "--variant", "petz_t0",
                          "--refine", "200", "--witness-dir", dir + "/witness",
                          "--out", out});
  c.expect(rc == 0, "campaign exit code " + std::to_string(rc));
  if (rc != 0) return false;

  const SearchResult summary = parse_search_summary(read_text_file(out));
  if (summary.status == "violation_found") {
    c.expect_le(summary.best.gap, -1e-4, "witnessed gap depth");
    const std::string stem =
        dir + "/witness/transpose_gap_quantum_" +
        std::to_string(summary.best.instance_seed);
    const MultipartiteState witness =
        parse_state(read_text_file(stem + ".state.json"));
    c.expect(witness.layout.dims == std::vector<int>{2, 2, 2},
             "witness archived at the campaign dimensions");
    const InequalityReport archived =
        parse_inequality_report(read_text_file(stem + ".report.json"));
    c.expect(archived.gap == summary.best.gap,
             "archived report matches the summary");
    std::printf("  witnessed gap %.6f at seed %llu\n", summary.best.gap,
                static_cast<unsigned long long>(summary.best.instance_seed));
  } else {
    // No witness: the only acceptable outcome is the explicit flag.
    c.expect(summary.status == "inconclusive",
             "campaign without witness must report 'inconclusive', got '" +
                 summary.status + "'");
    std::printf("  campaign inconclusive after 100000 trials\n");
  }
  return c.failures == 0;
}

// ---- 8: formation and squashed estimates ---------------------------------

void check_formation_witness(Checker &c, const std::string &tag,
                             const MultipartiteState &rho,
                             const MeasureEstimate &estimate) {
  c.expect(estimate.decomposition.has_value(),
           tag + ": formation run returns its decomposition");
  if (!estimate.decomposition) return;
  const SeparableApproximation sep =
      separable_from_formation(rho, {"A"}, {"B"}, *estimate.decomposition);
  c.expect_le(sep.distance, sep.bound + 1e-12,
              tag + ": constructive separable distance within its bound");
  c.expect_near(sep.bound,
                std::sqrt(4 * kLn2) * std::sqrt(std::max(estimate.value, 0.0)),
                1e-6, tag + ": bound wired to the formation value");
}

bool criterion_8(Checker &c) {
  Rng rng(80008);

  const MeasureEstimate bell_ef =
      entanglement_of_formation(bell(), {"A"}, {"B"}, 4, 6, 2);
  c.expect_near(bell_ef.value, 1.0, 1e-3, "formation of the bell pair");
  check_formation_witness(c, "bell", bell(), bell_ef);

  for (int i = 0; i < 20; ++i) {
    // Mixture of four product kets on two qubits: manifestly separable.
    Matrix m = Matrix::Zero(4, 4);
    const RealVector weights = rng.simplex(4);
    for (int term = 0; term < 4; ++term) {
      Vector a(2), b(2);
      for (int k = 0; k < 2; ++k) {
        a(k) = Complex(rng.normal(), rng.normal());
        b(k) = Complex(rng.normal(), rng.normal());
      }
      a.normalize();
      b.normalize();
      const Vector ab = tensor(a, b);
      m += weights(term) * (ab * ab.adjoint());
    }
    const MultipartiteState sep =
        make_state(m, SubsystemLayout({"A", "B"}, {2, 2}));
    const std::string tag = "separable " + std::to_string(i);
    const MeasureEstimate ef = entanglement_of_formation(
        sep, {"A"}, {"B"}, 6, 12, 8000 + static_cast<std::uint64_t>(i));
    c.expect_le(ef.value, 1e-3, tag + ": formation");
    const MeasureEstimate esq = squashed_entanglement_upper_bound(
        sep, {"A"}, {"B"}, 12, 8, 8100 + static_cast<std::uint64_t>(i));
    c.expect_le(esq.value, 1e-3, tag + ": squashed bound");
    check_formation_witness(c, tag, sep, ef);
  }

  for (int i = 0; i < 50; ++i) {
    StateEnsembleSpec spec;
    spec.dims = {2, 2};
    spec.seed = 82000 + static_cast<std::uint64_t>(i);
    const MultipartiteState rho = random_state(spec);
    const std::string tag = "random " + std::to_string(i);
    const MeasureEstimate ef = entanglement_of_formation(
        rho, {"A"}, {"B"}, 8, 12, 8200 + static_cast<std::uint64_t>(i));
    const MeasureEstimate esq = squashed_entanglement_upper_bound(
        rho, {"A"}, {"B"}, 12, 3, 8300 + static_cast<std::uint64_t>(i));
    c.expect_le(esq.value, ef.value + 5e-3, tag + ": squashed <= formation");
    check_formation_witness(c, tag, rho, ef);
  }
  return c.failures == 0;
}

// ---- 9: entropy core at volume -------------------------------------------

bool criterion_9(Checker &c) {
  for (const std::string suite : {"info", "fvdg", "pinsker", "chain_identity"})
    for (const PropertyResult &r : run_check_suite(suite, 10000, 90009)) {
      c.expect(r.instances == 10000,
               r.name + ": ran at the full instance count");
      c.expect(r.failures == 0, r.name + ": " + std::to_string(r.failures) +
                                    " failures, worst margin " +
                                    format_real(r.worst));
    }
  return c.failures == 0;
}

// ---- 10: byte-identical reruns -------------------------------------------

bool criterion_10(Checker &c) {
  const std::string dir = scratch("rerun");

  const auto rerun = [&](const std::string &tag,
                         std::vector<std::string> args) {
    const std::string f1 = dir + "/" + tag + "_1.out";
    const std::string f2 = dir + "/" + tag + "_2.out";
    std::vector<std::string> first = args, second = std::move(args);
    first.insert(first.end(), {"--out", f1});
    second.insert(second.end(), {"--out", f2});
    c.expect(run_cli(first) == 0, tag + ": first run");
    c.expect(run_cli(second) == 0, tag + ": second run");
    c.expect(same_modulo_timestamp(read_text_file(f1), read_text_file(f2)),
             tag + ": reports identical modulo timestamp");
  };

  // The fuzz campaign owns one witness directory per run so the archives of
  // the two runs can be compared to each other, not to themselves.
  c.expect(run_cli({"--trials", "2000", "--seed", "11", "fuzz", "--inequality",
                    "transpose_gap_quantum", "--variant", "petz_t0",
                    "--refine", "50", "--witness-dir", dir + "/w1", "--out",
                    dir + "/fuzz_1.out"}) == 0,
           "fuzz: first run");
  c.expect(run_cli({"--trials", "2000", "--seed", "11", "fuzz", "--inequality",
                    "transpose_gap_quantum", "--variant", "petz_t0",
                    "--refine", "50", "--witness-dir", dir + "/w2", "--out",
                    dir + "/fuzz_2.out"}) == 0,
           "fuzz: second run");
  c.expect(same_modulo_timestamp(read_text_file(dir + "/fuzz_1.out"),
                                 read_text_file(dir + "/fuzz_2.out")),
           "fuzz: reports identical modulo timestamp");
  rerun("fuzz_csv", {"--format", "csv", "--trials", "500", "--seed", "12",
                     "fuzz", "--inequality", "bsw", "--variant", "best_scan"});
  rerun("gen", {"--seed", "13", "--dims", "2,2", "gen", "random"});
  rerun("measures_eof", {"--seed", "14", "measures", "--state",
                         dir + "/gen_1.out", "--measure", "eof"});
  rerun("measures_esq", {"--seed", "14", "measures", "--state",
                         dir + "/gen_1.out", "--measure", "esq_ub",
                         "--env-dim", "8", "--restarts", "2"});
  rerun("check", {"--trials", "500", "--seed", "15", "check", "classical"});

  { // extension pipeline over a generated three-factor state
    const std::string state = dir + "/ext_state.json";
    c.expect(run_cli({"--seed", "16", "--dims", "2,2,2", "gen", "random",
                      "--out", state}) == 0,
             "extension input fixture");
    rerun("extend", {"extend", "--state", state, "--k", "3"});
  }

  // The witness archive of the fuzz campaign is part of the report surface.
  const SearchResult summary =
      parse_search_summary(read_text_file(dir + "/fuzz_1.out"));
  if (summary.status == "violation_found") {
    const std::string name = "transpose_gap_quantum_" +
                             std::to_string(summary.best.instance_seed);
    for (const std::string part : {".state.json", ".report.json"})
      c.expect(same_modulo_timestamp(
                   read_text_file(dir + "/w1/" + name + part),
                   read_text_file(dir + "/w2/" + name + part)),
               "witness file " + part + " stable across reruns");
  }
  return c.failures == 0;
}

struct Criterion {
  const char *description;
  double budget_seconds; // 0: no stated budget
  bool (*run)(Checker &);
};

const Criterion kCriteria[] = {
    {"classical transpose-channel gap is nonnegative, exactly zero for "
     "deterministic maps",
     30, criterion_1},
    {"markov projection divergence equals I(X:Z|Y) and bounds the l1 "
     "distance",
     10, criterion_2},
    {"recovery is exact on random quantum markov chains", 120, criterion_3},
    {"swivel scan meets the fidelity bound on random pure tripartite states",
     600, criterion_4},
    {"extension ledger: permutation symmetry and marginal drift within the "
     "measured step bound",
     300, criterion_5},
    {"antisymmetric marginals match and their squashed bound stays small", 60,
     criterion_6},
    {"counterexample campaign produces a witness or an explicit inconclusive",
     1200, criterion_7},
    {"formation and squashed estimates agree on anchors, separables and "
     "random two-qubit states",
     600, criterion_8},
    {"entropy inequalities hold on ten thousand instances each", 300,
     criterion_9},
    {"same-seed campaign reruns are byte-identical modulo timestamp", 0,
     criterion_10},
};

} // namespace

int main(int argc, char **argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <criterion 1..10>\n", argv[0]);
    return 2;
  }
  const int n = std::atoi(argv[1]);
  if (n < 1 || n > 10) {
    std::fprintf(stderr, "criterion out of range: %s\n", argv[1]);
    return 2;
  }
  const Criterion &criterion = kCriteria[n - 1];

  Checker checker;
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = criterion.run(checker);
  } catch (const std::exception &e) {
    std::fprintf(stderr, "  unexpected exception: %s\n", e.what());
    ok = false;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (criterion.budget_seconds > 0 && elapsed >= criterion.budget_seconds) {
    std::fprintf(stderr, "  overran the %.0f s budget\n",
                 criterion.budget_seconds);
    ok = false;
  }
  std::printf("[%s] criterion %d: %s (%lld checks, %.1f s)\n",
              ok ? "PASS" : "FAIL", n, criterion.description, checker.checks,
              elapsed);
  return ok ? 0 : 1;
}
