/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qrecover/extend.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qrecover/info.hpp"
#include "qrecover/states.hpp"

namespace qrecover {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

void check_recovery_shape(const RecoveryMap &recovery) {
  const auto &in = recovery.channel.in_layout;
  const auto &out = recovery.channel.out_layout;
  if (in.size() != 1 || out.size() != 2 || out.labels[0] != in.labels[0] ||
      out.dims[0] != in.dims[0])
    throw DimensionMismatch("recovery map does not have the E -> E(x)B shape");
}

} // namespace

MultipartiteState iterate_recovery(const MultipartiteState &rho_aeb,
                                   const RecoveryMap &recovery, int k) {
  return iterate_recovery(rho_aeb, recovery, k, nullptr);
}

MultipartiteState iterate_recovery(const MultipartiteState &rho_aeb,
                                   const RecoveryMap &recovery, int k,
                                   std::vector<double> *step_distances) {
  if (k < 1)
    throw DomainError("iterate_recovery needs k >= 1");
  if (step_distances)
    step_distances->clear();
  if (k == 1)
    return rho_aeb;
  check_recovery_shape(recovery);
  const std::string e_label = recovery.channel.in_layout.labels[0];
  const std::string b_base = recovery.channel.out_layout.labels[1];
  const int db = recovery.channel.out_layout.dims[1];
  if (rho_aeb.layout.dim_of(e_label) != recovery.channel.in_layout.dims[0] ||
      rho_aeb.layout.dim_of(b_base) != db)
    throw DimensionMismatch("state factors do not match the recovery map");

  long long final_dim = rho_aeb.dim();
  for (int j = 1; j < k; ++j) {
    final_dim *= db;
    if (final_dim > kDimensionCap)
      throw DimensionCap("extension exceeds the dimension cap");
  }

  std::vector<std::string> a_labels;
  for (const std::string &l : rho_aeb.layout.labels)
    if (l != e_label && l != b_base)
      a_labels.push_back(l);

  std::vector<std::string> order = a_labels;
  order.push_back(e_label);
  order.push_back(b_base + "1");
  MultipartiteState current =
      permute(relabel(rho_aeb, {b_base}, {b_base + "1"}), order);
  const Matrix reference = current.matrix; // rho on [A..., E, B1]

  std::vector<std::string> ref_order = a_labels;
  ref_order.push_back(e_label);
  for (int j = 1; j < k; ++j) {
    const std::string new_b = b_base + std::to_string(j + 1);
    QuantumChannel step = recovery.channel;
    step.out_layout.labels[1] = new_b;
    MultipartiteState next = apply_on_subsystem(step, current, {e_label});
    order.push_back(new_b);
    next = permute(next, order);
    if (step_distances) {
      std::vector<std::string> keep = ref_order;
      keep.push_back(new_b);
      const MultipartiteState marg = marginal(next, keep);
      step_distances->push_back(trace_distance(marg.matrix, reference));
    }
    current = std::move(next);
  }
  return current;
}

MultipartiteState symmetrize(const MultipartiteState &omega,
                             const std::vector<std::string> &b_labels) {
  const int k = static_cast<int>(b_labels.size());
  if (k < 1)
    throw DomainError("symmetrize needs at least one factor");
  if (k > 8)
    throw TooManyFactors("factor count too large for exhaustive symmetrization");
  const int d0 = omega.layout.dim_of(b_labels[0]);
  for (const std::string &l : b_labels)
    if (omega.layout.dim_of(l) != d0)
      throw DimensionMismatch("symmetrized factors must share one dimension");

  std::vector<int> slot;
  for (const std::string &l : omega.layout.labels) {
    auto it = std::find(b_labels.begin(), b_labels.end(), l);
    slot.push_back(it == b_labels.end() ? -1
                                        : static_cast<int>(it - b_labels.begin()));
  }

  std::vector<int> perm(b_labels.size());
  std::iota(perm.begin(), perm.end(), 0);
  Matrix acc = Matrix::Zero(omega.dim(), omega.dim());
  long long count = 0;
  do {
    std::vector<std::string> order;
    for (std::size_t i = 0; i < omega.layout.labels.size(); ++i)
      order.push_back(slot[i] < 0 ? omega.layout.labels[i]
                                  : b_labels[perm[slot[i]]]);
    acc += permute_subsystems(omega.matrix, omega.layout, order);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  acc /= static_cast<double>(count);
  acc = ((acc + acc.adjoint()) / 2.0).eval();
  return {std::move(acc), omega.layout};
}

double symmetry_residual(const MultipartiteState &state,
                         const std::vector<std::string> &b_labels) {
  double worst = 0;
  for (std::size_t i = 0; i < b_labels.size(); ++i)
    for (std::size_t j = i + 1; j < b_labels.size(); ++j) {
      std::vector<std::string> order = state.layout.labels;
      std::replace(order.begin(), order.end(), b_labels[i], std::string("\x01"));
      std::replace(order.begin(), order.end(), b_labels[j], b_labels[i]);
      std::replace(order.begin(), order.end(), std::string("\x01"), b_labels[j]);
      const Matrix swapped = permute_subsystems(state.matrix, state.layout, order);
      worst = std::max(worst, max_abs(state.matrix - swapped));
    }
  return worst;
}

ExtensionResult build_k_extension(const MultipartiteState &rho_ab, int k,
                                  const std::vector<double> &swivel_grid,
                                  const std::optional<MultipartiteState> &supplied) {
  if (rho_ab.layout.size() != 2)
    throw DimensionMismatch("extension pipeline needs a bipartite input");
  if (k < 2)
    throw DomainError("extension pipeline needs k >= 2");
  const std::string a = rho_ab.layout.labels[0];
  const std::string b = rho_ab.layout.labels[1];

  MultipartiteState ext{Matrix(), SubsystemLayout{}};
  std::string e;
  if (supplied) {
    if (supplied->layout.size() != 3 || !supplied->layout.has(a) ||
        !supplied->layout.has(b))
      throw DimensionMismatch("supplied extension must add one factor to A,B");
    for (const std::string &l : supplied->layout.labels)
      if (l != a && l != b)
        e = l;
    const MultipartiteState marg = permute(marginal(*supplied, {a, b}), {a, b});
    if (trace_distance(marg.matrix, rho_ab.matrix) > 1e-8)
      throw InvalidState("supplied extension does not extend the input state");
    ext = *supplied;
  } else {
    e = (a == "E" || b == "E") ? "E_" : "E";
    ext = relabel(purify(rho_ab, "__purifier"), {"__purifier"}, {e});
  }
  const MultipartiteState rho_aeb = permute(ext, {a, e, b});

  RecoveryMap winner;
  const SwivelScan scan = best_swivel_scan(rho_aeb, {a}, {e}, {b}, swivel_grid,
                                           &winner);
  const MultipartiteState rho_ae = marginal(rho_aeb, {a, e});
  const MultipartiteState recovered =
      permute(apply_on_subsystem(winner.channel, rho_ae, {e}), {a, e, b});
  const double t_measured = trace_distance(recovered.matrix, rho_aeb.matrix);

  ExtensionResult result;
  ExtensionReport &report = result.report;
  report.k = k;
  report.cmi_used = scan.cmi;
  const MultipartiteState omega =
      iterate_recovery(rho_aeb, winner, k, &report.step_distances);

  std::vector<std::string> b_labels;
  for (int i = 1; i <= k; ++i)
    b_labels.push_back(b + std::to_string(i));
  std::vector<std::string> keep{a};
  keep.insert(keep.end(), b_labels.begin(), b_labels.end());
  result.omega = symmetrize(marginal(omega, keep), b_labels);
  report.symmetry_residual = symmetry_residual(result.omega, b_labels);

  report.theorem_bound = (k - 1) * std::sqrt(2.0 * kLn2) *
                         std::sqrt(std::max(scan.cmi, 0.0) / 2.0);
  report.measured_bound = (k - 1) / 2.0 * t_measured;
  for (const std::string &bi : b_labels) {
    const MultipartiteState m = marginal(result.omega, {a, bi});
    report.marginal_distances.push_back(trace_distance(m.matrix, rho_ab.matrix));
  }
  for (double d : report.marginal_distances)
    if (d > report.measured_bound + 1e-8)
      throw InvalidState("extension marginal exceeds the bookkeeping bound");
  return result;
}

int choose_k(double eps, int dim_b) {
  if (eps <= 0)
    throw DomainError("k choice needs eps > 0");
  if (dim_b < 2)
    throw DomainError("k choice needs dimB >= 2");
  const double raw =
      std::pow(2.0 / kLn2, 0.25) * dim_b / std::pow(eps, 0.25);
  const int k = static_cast<int>(std::floor(raw + 1e-9));
  return std::max(k, 1);
}

SeparableBound separable_distance_bound(const ExtensionReport &report, int dim_b) {
  SeparableBound b;
  b.certificate =
      report.measured_bound + 2.0 * dim_b * dim_b / std::max(report.k, 1);
  b.headline =
      3.1 * dim_b * std::pow(std::max(report.cmi_used, 0.0) / 2.0, 0.25);
  return b;
}

} // namespace qrecover
