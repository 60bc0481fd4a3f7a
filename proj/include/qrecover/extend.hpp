/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef QRECOVER_EXTEND_HPP_
#define QRECOVER_EXTEND_HPP_

#include <optional>
#include <vector>

#include "qrecover/channels.hpp"

namespace qrecover {

// Applies `recovery` (mapping E to E(x)B) to the E factor of rho_AEB k-1
// times, labeling the produced B factors <b>1 ... <b>k (the original B factor
// is renamed <b>1). k = 1 returns the input unchanged. The output is ordered
// [A..., E, B1, ..., Bk]. Throws DimensionCap when the extended state would
// exceed the global dimension limit.
MultipartiteState iterate_recovery(const MultipartiteState &rho_aeb,
                                   const RecoveryMap &recovery, int k);

// As above, also recording after each application j the distance
// ||omega_j^{A E B_{j+1}} - rho^{AEB}||_1 (the triangle-inequality ledger:
// entry j is bounded by (j+1) * t_measured).
MultipartiteState iterate_recovery(const MultipartiteState &rho_aeb,
                                   const RecoveryMap &recovery, int k,
                                   std::vector<double> *step_distances);

// Group average over all k! permutations of the (equal-dimension) b_labels:
// (1/k!) sum_pi U_pi omega U_pi^dag. TooManyFactors for k > 8.
MultipartiteState symmetrize(const MultipartiteState &omega,
                             const std::vector<std::string> &b_labels);

// Largest max-norm change of `state` under any transposition of two b_labels.
double symmetry_residual(const MultipartiteState &state,
                         const std::vector<std::string> &b_labels);

struct ExtensionReport {
  int k = 0;
  std::vector<double> step_distances;     // length k-1
  std::vector<double> marginal_distances; // length k
  double theorem_bound = 0;               // (k-1) sqrt(2 ln 2) sqrt(I/2)
  double measured_bound = 0;              // (k-1)/2 * t_measured
  double cmi_used = 0;                    // bits
  double symmetry_residual = 0;
};

struct ExtensionResult {
  ExtensionReport report;
  MultipartiteState omega; // the symmetrized k-party B extension, on A,B1..Bk
};

// Full pipeline: extend rho_AB by an environment E (the canonical purifier by
// default, or a supplied three-factor extension whose extra factor plays E),
// compute I(A:B|E), pick the best swivelled recovery on the scan grid, apply
// it k-1 times, trace out E, and symmetrize the B factors. measured_bound is
// unconditional bookkeeping and is asserted against every marginal distance;
// theorem_bound is reported for comparison only (its step bound depends on
// the fidelity inequality holding for the scanned map).
ExtensionResult build_k_extension(const MultipartiteState &rho_ab, int k,
                                  const std::vector<double> &swivel_grid,
                                  const std::optional<MultipartiteState> &supplied =
                                      std::nullopt);

// k = floor((2/ln 2)^{1/4} * dimB / eps^{1/4}), clamped to at least 1.
// eps is in bits. Monotone nonincreasing in eps, nondecreasing in dimB.
int choose_k(double eps, int dim_b);

struct SeparableBound {
  double certificate = 0; // measured_bound + 2 dimB^2 / k
  double headline = 0;    // 3.1 * dimB * eps^{1/4}, eps = cmi_used / 2
};

// Distance-to-separable certificate for a pipeline run: with k chosen by
// choose_k, certificate <= headline whenever the per-step bounds held.
SeparableBound separable_distance_bound(const ExtensionReport &report, int dim_b);

} // namespace qrecover

#endif // QRECOVER_EXTEND_HPP_
