/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qrecover/conjectures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "qrecover/classical.hpp"
#include "qrecover/info.hpp"
#include "qrecover/rng.hpp"
#include "qrecover/states.hpp"

namespace qrecover {

bool is_cmi_form(InequalityId id) {
  switch (id) {
  case InequalityId::fr_fidelity:
  case InequalityId::kim:
  case InequalityId::bsw:
  case InequalityId::cmi_rel_ent:
    return true;
  case InequalityId::zhang:
  case InequalityId::sbw:
  case InequalityId::big_one:
  case InequalityId::transpose_gap_quantum:
    return false;
  }
  throw DomainError("unknown inequality id");
}

std::string to_string(InequalityId id) {
  switch (id) {
  case InequalityId::fr_fidelity: return "fr_fidelity";
  case InequalityId::kim: return "kim";
  case InequalityId::zhang: return "zhang";
  case InequalityId::bsw: return "bsw";
  case InequalityId::sbw: return "sbw";
  case InequalityId::cmi_rel_ent: return "cmi_rel_ent";
  case InequalityId::big_one: return "big_one";
  case InequalityId::transpose_gap_quantum: return "transpose_gap_quantum";
  }
  throw DomainError("unknown inequality id");
}

std::string to_string(MapVariant variant) {
  switch (variant) {
  case MapVariant::petz_t0: return "petz_t0";
  case MapVariant::swivelled: return "swivelled";
  case MapVariant::best_scan: return "best_scan";
  }
  throw DomainError("unknown map variant");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool ratio_only(InequalityId id) {
  return id == InequalityId::kim || id == InequalityId::zhang;
}

double neg_log2_fid_sq(double f) {
  if (f <= 0) return kInf;
  return -2 * std::log2(std::min(f, 1.0));
}

// Collapse an (a, e, b) tripartition into three single factors so that the
// bipartite recovery-map machinery applies regardless of how the caller split
// the labels.
MultipartiteState merge_tripartition(const MultipartiteState &rho,
                                     const std::vector<std::string> &a,
                                     const std::vector<std::string> &e,
                                     const std::vector<std::string> &b) {
  if (a.empty() || e.empty() || b.empty())
    throw DomainError("tripartition with an empty part");
  std::vector<std::string> order;
  order.insert(order.end(), a.begin(), a.end());
  order.insert(order.end(), e.begin(), e.end());
  order.insert(order.end(), b.begin(), b.end());
  if (static_cast<int>(order.size()) != rho.layout.size())
    throw DomainError("tripartition must cover the state exactly");
  MultipartiteState flat = permute(rho, order);
  SubsystemLayout merged({"A", "E", "B"},
                         {static_cast<int>(rho.layout.dim_of(a)),
                          static_cast<int>(rho.layout.dim_of(e)),
                          static_cast<int>(rho.layout.dim_of(b))});
  return make_state(std::move(flat.matrix), std::move(merged));
}

std::string dims_tag(const SubsystemLayout &layout) {
  std::ostringstream out;
  for (int i = 0; i < layout.size(); ++i) {
    if (i) out << 'x';
    out << layout.dims[i];
  }
  return out.str();
}

// rhs of the named inequality given the recovered state; the lhs never
// depends on the map and is handled by the caller.
double cmi_rhs(InequalityId id, const MultipartiteState &rho,
               const MultipartiteState &recovered) {
  switch (id) {
  case InequalityId::fr_fidelity:
  case InequalityId::bsw:
    return neg_log2_fid_sq(fidelity(rho, recovered));
  case InequalityId::kim: {
    const double d = trace_distance(rho, recovered);
    return d * d;
  }
  case InequalityId::cmi_rel_ent:
    return relative_entropy(rho, recovered);
  default:
    throw DomainError(to_string(id) + " is not a cmi-form inequality");
  }
}

double channel_rhs(InequalityId id, const MultipartiteState &rho,
                   const MultipartiteState &recovered) {
  switch (id) {
  case InequalityId::zhang: {
    const double d = trace_distance(rho, recovered);
    return d * d;
  }
  case InequalityId::sbw:
    return neg_log2_fid_sq(fidelity(rho, recovered));
  case InequalityId::big_one:
  case InequalityId::transpose_gap_quantum:
    return relative_entropy(rho, recovered);
  default:
    throw DomainError(to_string(id) + " is not a channel-form inequality");
  }
}

// Minimize f over the swivel grid, tie-breaking toward smaller |t| then
// smaller t, followed by one golden-section pass around the coarse minimum.
template <typename F>
std::pair<double, double> grid_minimize(F &&f, const std::vector<double> &grid) {
  double t_best = 0, v_best = kInf;
  bool first = true;
  for (double t : grid) {
    const double v = f(t);
    const bool better =
        first || v < v_best - 1e-12 ||
        (v <= v_best + 1e-12 && (std::abs(t) < std::abs(t_best) - 1e-12 ||
                                 (std::abs(t) <= std::abs(t_best) + 1e-12 &&
                                  t < t_best)));
    if (better) {
      t_best = t;
      v_best = v;
    }
    first = false;
  }
  double step = 0.1;
  if (grid.size() > 1) step = std::abs(grid[1] - grid[0]);
  double lo = t_best - step, hi = t_best + step;
  const double gr = (std::sqrt(5.0) - 1) / 2;
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 40; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = f(d);
    }
  }
  const double t_ref = (lo + hi) / 2;
  const double v_ref = f(t_ref);
  if (v_ref < v_best - 1e-12) return {t_ref, v_ref};
  return {t_best, v_best};
}

void finalize(InequalityReport &rep, double tolerance) {
  rep.gap = rep.lhs - rep.rhs;
  rep.ratio = rep.rhs > 0 ? rep.lhs / rep.rhs : kInf;
  // Untamed-constant comparisons report the ratio but can never be flagged
  // as violations; everything else flags on a negative gap (NaN-safe).
  rep.violation = ratio_only(rep.inequality) ? false : rep.gap < -tolerance;
}

} // namespace

InequalityReport evaluate(InequalityId id, const CmiInstance &instance,
                          MapVariant variant, double t, double tolerance) {
  if (!is_cmi_form(id))
    throw DomainError(to_string(id) + " takes a channel-form instance");
  const MultipartiteState merged =
      merge_tripartition(instance.rho, instance.a, instance.e, instance.b);
  const MultipartiteState rho_eb = marginal(merged, {"E", "B"});
  const MultipartiteState rho_ae = marginal(merged, {"A", "E"});

  InequalityReport rep;
  rep.inequality = id;
  rep.map_variant = variant;
  rep.instance_seed = instance.seed;
  rep.instance_descriptor = "cmi:" + dims_tag(merged.layout);
  rep.lhs = conditional_mutual_information(merged, {"A"}, {"B"}, {"E"});

  const auto rhs_at = [&](double tt) {
    const RecoveryMap rec = swivelled_cmi_petz_map(rho_eb, tt);
    const MultipartiteState recovered =
        apply_on_subsystem(rec.channel, rho_ae, {"E"});
    return cmi_rhs(id, merged, recovered);
  };

  switch (variant) {
  case MapVariant::petz_t0:
    rep.swivel_t = 0;
    rep.rhs = [&] {
      const RecoveryMap rec = cmi_petz_map(rho_eb);
      const MultipartiteState recovered =
          apply_on_subsystem(rec.channel, rho_ae, {"E"});
      return cmi_rhs(id, merged, recovered);
    }();
    break;
  case MapVariant::swivelled:
    rep.swivel_t = t;
    rep.rhs = rhs_at(t);
    break;
  case MapVariant::best_scan:
    if (id == InequalityId::fr_fidelity || id == InequalityId::bsw) {
      // The fidelity objective has a dedicated cached scan.
      const SwivelScan scan = best_swivel_scan(merged, {"A"}, {"E"}, {"B"},
                                               default_swivel_grid());
      rep.swivel_t = scan.t_best;
      rep.rhs = scan.score_best;
    } else {
      const auto [tb, vb] = grid_minimize(rhs_at, default_swivel_grid());
      rep.swivel_t = tb;
      rep.rhs = vb;
    }
    break;
  }
  finalize(rep, tolerance);
  return rep;
}

InequalityReport evaluate(InequalityId id, const ChannelInstance &instance,
                          MapVariant variant, double t, double tolerance) {
  if (is_cmi_form(id))
    throw DomainError(to_string(id) + " takes a cmi-form instance");
  const MultipartiteState t_rho = apply(instance.channel, instance.rho);
  const MultipartiteState t_sigma = apply(instance.channel, instance.sigma);

  InequalityReport rep;
  rep.inequality = id;
  rep.map_variant = variant;
  rep.instance_seed = instance.seed;
  rep.instance_descriptor = "channel:" + dims_tag(instance.rho.layout) + ";" +
                            instance.channel.id;
  const double d_full = relative_entropy(instance.rho, instance.sigma);
  const double d_out = relative_entropy(t_rho, t_sigma);
  rep.lhs = (std::isinf(d_full) && std::isinf(d_out))
                ? std::numeric_limits<double>::quiet_NaN()
                : d_full - d_out;

  const auto rhs_at = [&](double tt) {
    const RecoveryMap rec =
        swivelled_petz_map(instance.channel, instance.sigma, tt);
    return channel_rhs(id, instance.rho, apply(rec.channel, t_rho));
  };

  switch (variant) {
  case MapVariant::petz_t0:
    rep.swivel_t = 0;
    rep.rhs = [&] {
      const RecoveryMap rec = petz_map(instance.channel, instance.sigma);
      return channel_rhs(id, instance.rho, apply(rec.channel, t_rho));
    }();
    break;
  case MapVariant::swivelled:
    rep.swivel_t = t;
    rep.rhs = rhs_at(t);
    break;
  case MapVariant::best_scan: {
    const auto [tb, vb] = grid_minimize(rhs_at, default_swivel_grid());
    rep.swivel_t = tb;
    rep.rhs = vb;
    break;
  }
  }
  finalize(rep, tolerance);
  return rep;
}

namespace {

void check_search_dims(const std::vector<int> &dims) {
  if (dims.size() != 3)
    throw DomainError("search dims must name (A, E, B)");
  long long n = 1;
  for (int d : dims) {
    if (d < 2 || d > 8) throw DomainError("search dims must lie in [2, 8]");
    n *= d;
  }
  if (n > kDimensionCap) throw DimensionCap("search instance too large");
}

long long flat_dim(const std::vector<int> &dims) {
  long long n = 1;
  for (int d : dims) n *= d;
  return n;
}

MultipartiteState state_from_factor(const Matrix &g,
                                    const std::vector<int> &dims) {
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return make_state(std::move(m), SubsystemLayout({"A", "E", "B"}, dims));
}

CmiInstance cmi_from_state(MultipartiteState rho, std::uint64_t seed) {
  CmiInstance inst;
  inst.rho = std::move(rho);
  inst.a = {"A"};
  inst.e = {"E"};
  inst.b = {"B"};
  inst.seed = seed;
  return inst;
}

// Channel-form search family: T = tr_B and sigma = rho^A (x) rho^{EB}, so
// the lhs evaluates to I(A:B|E) of rho.
ChannelInstance channel_from_state(MultipartiteState rho, std::uint64_t seed) {
  ChannelInstance inst;
  inst.sigma = product(marginal(rho, {"A"}), marginal(rho, {"E", "B"}));
  inst.channel = partial_trace_channel(rho.layout, {"A", "E"});
  inst.rho = std::move(rho);
  inst.seed = seed;
  return inst;
}

struct ClassicalTriple {
  Distribution p, q;
  StochasticMap t;
};

ClassicalTriple classical_triple(Rng &rng, int n) {
  ClassicalTriple triple;
  triple.p = random_distribution(rng, {n});
  triple.q = random_distribution(rng, {n});
  triple.t = random_stochastic(rng, n, n);
  return triple;
}

ChannelInstance classical_instance(const ClassicalTriple &triple,
                                   std::uint64_t seed) {
  const long long n = triple.p.size();
  const SubsystemLayout in_layout({"X"}, {static_cast<int>(n)});
  ChannelInstance inst;
  inst.rho = make_state(Matrix(triple.p.probs.cast<Complex>().asDiagonal()),
                        in_layout);
  inst.sigma = make_state(Matrix(triple.q.probs.cast<Complex>().asDiagonal()),
                          in_layout);
  inst.channel = classical_embedding_channel(triple.t.t, "classical");
  inst.seed = seed;
  return inst;
}

ClassicalTriple perturb_triple(const ClassicalTriple &triple, Rng &rng,
                               double scale) {
  ClassicalTriple out = triple;
  const auto renorm = [](RealVector v) {
    v = v.cwiseMax(0.0);
    const double s = v.sum();
    if (s <= 0) v.setConstant(1.0 / static_cast<double>(v.size()));
    else v /= s;
    return v;
  };
  for (long long i = 0; i < out.p.size(); ++i) {
    out.p.probs(i) += scale * rng.normal();
    out.q.probs(i) += scale * rng.normal();
  }
  out.p = make_distribution(renorm(out.p.probs), out.p.shape);
  out.q = make_distribution(renorm(out.q.probs), out.q.shape);
  RealMatrix t = out.t.t;
  for (long long c = 0; c < t.cols(); ++c) {
    for (long long r = 0; r < t.rows(); ++r) t(r, c) += scale * rng.normal();
    t.col(c) = renorm(t.col(c));
  }
  out.t = make_stochastic(std::move(t));
  return out;
}

// --- tightened re-evaluation --------------------------------------------
// Used before archiving a violation: the entropic quantities are recomputed
// from scratch with support cutoffs at 1e-14 relative instead of the library
// defaults, so a candidate produced by eigenvalue dust does not survive.

double tight_relative_entropy(const Matrix &a, const Matrix &b) {
  const HermitianEig ea = hermitian_eig(a);
  const HermitianEig eb = hermitian_eig(b);
  const double cut_a = 1e-14 * std::max(std::abs(ea.eigenvalues(0)), 1e-300);
  const double cut_b = 1e-14 * std::max(std::abs(eb.eigenvalues(0)), 1e-300);
  double tr_rho_log_rho = 0;
  for (Eigen::Index i = 0; i < ea.eigenvalues.size(); ++i) {
    const double v = ea.eigenvalues(i);
    if (v > cut_a) tr_rho_log_rho += v * std::log2(v);
  }
  double tr_rho_log_sigma = 0, kernel_mass = 0;
  for (Eigen::Index j = 0; j < eb.eigenvalues.size(); ++j) {
    const double w = eb.eigenvalues(j);
    const double mass =
        eb.eigenvectors.col(j).dot(a * eb.eigenvectors.col(j)).real();
    if (w > cut_b)
      tr_rho_log_sigma += mass * std::log2(w);
    else
      kernel_mass += std::max(mass, 0.0);
  }
  if (kernel_mass > 1e-11) return kInf;
  return tr_rho_log_rho - tr_rho_log_sigma;
}

double tight_entropy(const Matrix &rho) {
  const HermitianEig e = hermitian_eig(rho);
  const double cut = 1e-14 * std::max(std::abs(e.eigenvalues(0)), 1e-300);
  double s = 0;
  for (Eigen::Index i = 0; i < e.eigenvalues.size(); ++i)
    if (e.eigenvalues(i) > cut) s -= e.eigenvalues(i) * std::log2(e.eigenvalues(i));
  return s;
}

double tight_cmi(const MultipartiteState &rho) {
  const auto ae = marginal(rho, {"A", "E"});
  const auto eb = marginal(rho, {"E", "B"});
  const auto e = marginal(rho, {"E"});
  return tight_entropy(ae.matrix) + tight_entropy(eb.matrix) -
         tight_entropy(e.matrix) - tight_entropy(rho.matrix);
}

// Gap recomputed through the tightened routines; the swivel t is frozen from
// the report under recheck.
double tight_gap(InequalityId id, const CmiInstance &instance,
                 const InequalityReport &rep) {
  const MultipartiteState merged =
      merge_tripartition(instance.rho, instance.a, instance.e, instance.b);
  const RecoveryMap rec =
      swivelled_cmi_petz_map(marginal(merged, {"E", "B"}), rep.swivel_t);
  const MultipartiteState recovered =
      apply_on_subsystem(rec.channel, marginal(merged, {"A", "E"}), {"E"});
  double rhs;
  if (id == InequalityId::cmi_rel_ent)
    rhs = tight_relative_entropy(merged.matrix, recovered.matrix);
  else
    rhs = cmi_rhs(id, merged, recovered);
  return tight_cmi(merged) - rhs;
}

double tight_gap(InequalityId id, const ChannelInstance &instance,
                 const InequalityReport &rep) {
  const MultipartiteState t_rho = apply(instance.channel, instance.rho);
  const MultipartiteState t_sigma = apply(instance.channel, instance.sigma);
  const double lhs =
      tight_relative_entropy(instance.rho.matrix, instance.sigma.matrix) -
      tight_relative_entropy(t_rho.matrix, t_sigma.matrix);
  const RecoveryMap rec =
      swivelled_petz_map(instance.channel, instance.sigma, rep.swivel_t);
  const MultipartiteState recovered = apply(rec.channel, t_rho);
  double rhs;
  if (id == InequalityId::big_one || id == InequalityId::transpose_gap_quantum)
    rhs = tight_relative_entropy(instance.rho.matrix, recovered.matrix);
  else
    rhs = channel_rhs(id, instance.rho, recovered);
  return lhs - rhs;
}

bool report_less(const InequalityReport &x, const InequalityReport &y) {
  if (x.gap != y.gap) return x.gap < y.gap;
  return x.instance_seed < y.instance_seed;
}

struct TrialBlock {
  std::vector<InequalityReport> worst; // sorted ascending, <= 10 entries
  InequalityReport best;
  bool has_best = false;
  long long violations = 0;
};

void note_report(TrialBlock &block, const InequalityReport &rep) {
  if (!block.has_best || report_less(rep, block.best)) {
    block.best = rep;
    block.has_best = true;
  }
  auto &w = block.worst;
  auto pos = std::upper_bound(w.begin(), w.end(), rep, report_less);
  if (pos != w.end() || w.size() < 10) {
    w.insert(pos, rep);
    if (w.size() > 10) w.pop_back();
  }
}

} // namespace

CmiInstance make_cmi_instance(const std::vector<int> &dims, std::uint64_t seed) {
  check_search_dims(dims);
  Rng rng(seed);
  const long long n = flat_dim(dims);
  return cmi_from_state(state_from_factor(rng.ginibre(n, n), dims), seed);
}

ChannelInstance make_channel_instance(const std::vector<int> &dims,
                                      std::uint64_t seed) {
  check_search_dims(dims);
  Rng rng(seed);
  const long long n = flat_dim(dims);
  return channel_from_state(state_from_factor(rng.ginibre(n, n), dims), seed);
}

SearchResult search_counterexample(InequalityId id, MapVariant variant,
                                   const SearchConfig &config) {
  check_search_dims(config.dims);
  if (config.trials < 1) throw DomainError("trials must be >= 1");
  const bool classical = config.family == InstanceFamily::classical_embedded;
  if (classical && is_cmi_form(id))
    throw DomainError("classical embedding only drives channel-form ids");

  const long long n = flat_dim(config.dims);

  // Returns the (possibly rechecked) report for one trial; the witness state
  // is regenerated from the seed afterwards, so nothing heavy is stored here.
  const auto run_trial = [&](long long trial) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(trial);
    Rng rng(seed);
    InequalityReport rep;
    if (classical) {
      const ChannelInstance inst =
          classical_instance(classical_triple(rng, static_cast<int>(n)), seed);
      rep = evaluate(id, inst, variant, 0, config.tolerance);
      if (rep.violation && tight_gap(id, inst, rep) >= -config.tolerance)
        rep.violation = false;
    } else if (is_cmi_form(id)) {
      const CmiInstance inst =
          cmi_from_state(state_from_factor(rng.ginibre(n, n), config.dims), seed);
      rep = evaluate(id, inst, variant, 0, config.tolerance);
      if (rep.violation && tight_gap(id, inst, rep) >= -config.tolerance)
        rep.violation = false;
    } else {
      const ChannelInstance inst = channel_from_state(
          state_from_factor(rng.ginibre(n, n), config.dims), seed);
      rep = evaluate(id, inst, variant, 0, config.tolerance);
      if (rep.violation && tight_gap(id, inst, rep) >= -config.tolerance)
        rep.violation = false;
    }
    return rep;
  };

  const int threads = static_cast<int>(
      std::min<long long>(std::max(config.threads, 1), config.trials));
  std::vector<TrialBlock> blocks(threads);
  if (threads == 1) {
    for (long long i = 0; i < config.trials; ++i) {
      const InequalityReport rep = run_trial(i);
      note_report(blocks[0], rep);
      if (rep.violation) ++blocks[0].violations;
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (long long i = w; i < config.trials; i += threads) {
          const InequalityReport rep = run_trial(i);
          note_report(blocks[w], rep);
          if (rep.violation) ++blocks[w].violations;
        }
      });
    }
    for (auto &t : pool) t.join();
  }

  TrialBlock merged;
  for (const auto &b : blocks) {
    merged.violations += b.violations;
    if (b.has_best) {
      if (!merged.has_best || report_less(b.best, merged.best)) {
        merged.best = b.best;
        merged.has_best = true;
      }
    }
  }
  std::vector<InequalityReport> worst;
  for (const auto &b : blocks)
    worst.insert(worst.end(), b.worst.begin(), b.worst.end());
  std::sort(worst.begin(), worst.end(), report_less);
  if (worst.size() > 10) worst.resize(10);

  SearchResult result;
  result.best = merged.best;
  result.worst = std::move(worst);
  result.violations = merged.violations;

  // Rebuild the winning instance, then hill-climb its generating parameters:
  // Gaussian noise on the Ginibre factor (probability tables for the
  // classical family), re-projected onto the valid set, accepted when the
  // gap decreases.
  const std::uint64_t best_seed = result.best.instance_seed;
  Rng best_rng(best_seed);
  Matrix g;
  ClassicalTriple triple;
  MultipartiteState best_state;
  if (classical) {
    triple = classical_triple(best_rng, static_cast<int>(n));
    best_state = classical_instance(triple, best_seed).rho;
  } else {
    g = best_rng.ginibre(n, n);
    best_state = state_from_factor(g, config.dims);
  }

  if (config.refine_steps > 0) {
    Rng climb(config.seed ^ 0xc1b2a3d4e5f60718ULL);
    for (int step = 0; step < config.refine_steps; ++step) {
      InequalityReport rep;
      if (classical) {
        const ClassicalTriple candidate =
            perturb_triple(triple, climb, config.perturbation_scale);
        const ChannelInstance inst = classical_instance(candidate, best_seed);
        rep = evaluate(id, inst, variant, 0, config.tolerance);
        if (rep.gap < result.best.gap) {
          if (rep.violation && tight_gap(id, inst, rep) >= -config.tolerance)
            rep.violation = false;
          triple = candidate;
          best_state = inst.rho;
        } else {
          continue;
        }
      } else {
        const Matrix candidate =
            g + config.perturbation_scale * climb.ginibre(n, n);
        const MultipartiteState rho = state_from_factor(candidate, config.dims);
        if (is_cmi_form(id)) {
          const CmiInstance inst = cmi_from_state(rho, best_seed);
          rep = evaluate(id, inst, variant, 0, config.tolerance);
          if (rep.gap >= result.best.gap) continue;
          if (rep.violation && tight_gap(id, inst, rep) >= -config.tolerance)
            rep.violation = false;
        } else {
          const ChannelInstance inst = channel_from_state(rho, best_seed);
          rep = evaluate(id, inst, variant, 0, config.tolerance);
          if (rep.gap >= result.best.gap) continue;
          if (rep.violation && tight_gap(id, inst, rep) >= -config.tolerance)
            rep.violation = false;
        }
        g = candidate;
        best_state = rho;
      }
      rep.instance_descriptor += ";climbed";
      if (rep.violation && !result.best.violation) ++result.violations;
      result.best = rep;
    }
  }

  result.witness = std::move(best_state);
  const bool any = result.best.violation || result.violations > 0;
  const bool expected = id == InequalityId::transpose_gap_quantum &&
                        variant == MapVariant::petz_t0 && !classical;
  result.status = any ? "violation_found" : (expected ? "inconclusive" : "clean");
  return result;
}

namespace {

MultipartiteState random_full_rank_state(Rng &rng, const SubsystemLayout &layout) {
  const long long n = layout.total_dim();
  Matrix g = rng.ginibre(n, n);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  m = 0.999 * m + 0.001 * Matrix::Identity(n, n) / static_cast<double>(n);
  return make_state(std::move(m), layout);
}

// Haar-random channel with equal input and output dimension: Kraus operators
// sliced from a Haar isometry into system (x) environment.
QuantumChannel random_channel(Rng &rng, const SubsystemLayout &layout, int env,
                              const std::string &id) {
  const long long d = layout.total_dim();
  const Matrix u = rng.haar_unitary(d * env);
  std::vector<Matrix> ops(env, Matrix::Zero(d, d));
  for (int e = 0; e < env; ++e)
    for (long long i = 0; i < d; ++i)
      for (long long j = 0; j < d; ++j)
        ops[e](i, j) = u(i * env + e, j);
  return make_channel(std::move(ops), layout, layout, id);
}

} // namespace

FunctorialityReport check_functoriality(FunctorialityAxiom axiom,
                                        std::uint64_t seed, int instances) {
  if (instances < 1) throw DomainError("instances must be >= 1");
  FunctorialityReport report;
  report.axiom = axiom;
  report.instances = instances;
  report.asserted = axiom != FunctorialityAxiom::composition;

  double deviation = 0;
  for (int k = 0; k < instances; ++k) {
    Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(k + 1)));
    const int d = 2 + k % 2;
    switch (axiom) {
    case FunctorialityAxiom::normalization: {
      const SubsystemLayout layout({"X"}, {d});
      const MultipartiteState tau = random_full_rank_state(rng, layout);
      const RecoveryMap rec = petz_map(identity_channel(layout), tau);
      for (int p = 0; p < 3; ++p) {
        const MultipartiteState xi = random_full_rank_state(rng, layout);
        deviation =
            std::max(deviation, trace_distance(apply(rec.channel, xi), xi));
      }
      break;
    }
    case FunctorialityAxiom::tensor: {
      const SubsystemLayout l1({"X1"}, {d}), l2({"X2"}, {5 - d});
      const QuantumChannel t1 = random_channel(rng, l1, 2, "t1");
      const QuantumChannel t2 = random_channel(rng, l2, 2, "t2");
      const MultipartiteState s1 = random_full_rank_state(rng, l1);
      const MultipartiteState s2 = random_full_rank_state(rng, l2);
      const RecoveryMap joint = petz_map(tensor_channel(t1, t2), product(s1, s2));
      const QuantumChannel split =
          tensor_channel(petz_map(t1, s1).channel, petz_map(t2, s2).channel);
      const SubsystemLayout l12({"X1", "X2"}, {d, 5 - d});
      for (int p = 0; p < 3; ++p) {
        const MultipartiteState xi = random_full_rank_state(rng, l12);
        deviation = std::max(deviation, trace_distance(apply(joint.channel, xi),
                                                       apply(split, xi)));
      }
      break;
    }
    case FunctorialityAxiom::composition: {
      const SubsystemLayout layout({"X"}, {d});
      const QuantumChannel t1 = random_channel(rng, layout, 2, "t1");
      const QuantumChannel t2 = random_channel(rng, layout, 2, "t2");
      const MultipartiteState sigma = random_full_rank_state(rng, layout);
      const RecoveryMap joint = petz_map(compose(t2, t1), sigma);
      const RecoveryMap r1 = petz_map(t1, sigma);
      const RecoveryMap r2 = petz_map(t2, apply(t1, sigma));
      const QuantumChannel split = compose(r1.channel, r2.channel);
      for (int p = 0; p < 3; ++p) {
        const MultipartiteState xi = random_full_rank_state(rng, layout);
        deviation = std::max(deviation, trace_distance(apply(joint.channel, xi),
                                                       apply(split, xi)));
      }
      break;
    }
    }
  }
  report.deviation = deviation;
  report.holds = deviation <= 1e-8;
  return report;
}

} // namespace qrecover
