/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef QRECOVER_CONJECTURES_HPP_
#define QRECOVER_CONJECTURES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "qrecover/channels.hpp"

namespace qrecover {

// Inequality landscape around recovery maps. Two families by instance shape:
//  - conditional-mutual-information form, instance = tripartite rho^{AEB}:
//      fr_fidelity   I(A:B|E) >= -log2 F(rho^{AEB}, (id(x)R) rho^{AE})^2
//      kim           I(A:B|E) vs ||rho^{AEB} - (id(x)R) rho^{AE}||_1^2
//                    (unknown constant: ratio logged, never a violation)
//      bsw           same as fr_fidelity but read as a conjecture for the
//                    plain recovery map
//      cmi_rel_ent   I(A:B|E) >= D(rho^{AEB} || (id(x)R) rho^{AE})
//  - channel form, instance = (rho, sigma, T):
//      zhang         D(rho||sigma) - D(T rho||T sigma) vs ||rho - RT rho||_1^2
//                    (ratio only)
//      sbw           D(rho||sigma) - D(T rho||T sigma) >= -log2 F(rho, RT rho)^2
//      big_one       D(rho||sigma) - D(T rho||T sigma) >= D(rho || RT rho)
//      transpose_gap_quantum
//                    the classical transpose-channel identity read verbatim
//                    with quantum relative entropies and the plain recovery
//                    map (known to fail; the search target)
enum class InequalityId {
  fr_fidelity,
  kim,
  zhang,
  bsw,
  sbw,
  cmi_rel_ent,
  big_one,
  transpose_gap_quantum,
};

enum class MapVariant { petz_t0, swivelled, best_scan };

bool is_cmi_form(InequalityId id);
std::string to_string(InequalityId id);
std::string to_string(MapVariant variant);

struct CmiInstance {
  MultipartiteState rho; // tripartite
  std::vector<std::string> a, e, b;
  std::uint64_t seed = 0; // provenance, copied into reports
};

struct ChannelInstance {
  MultipartiteState rho, sigma; // same layout, sigma = recovery anchor
  QuantumChannel channel;
  std::uint64_t seed = 0;
};

struct InequalityReport {
  InequalityId inequality = InequalityId::bsw;
  MapVariant map_variant = MapVariant::petz_t0;
  double swivel_t = 0; // the t actually used (picked one for best_scan)
  double lhs = 0, rhs = 0, gap = 0;
  double ratio = 0; // lhs / rhs (inf when rhs <= 0); the headline for kim/zhang
  std::uint64_t instance_seed = 0;
  std::string instance_descriptor;
  bool violation = false; // gap < -tolerance; never set for kim/zhang
};

// For best_scan the rhs is minimized over the default swivel grid (plus one
// golden-section refinement); for kim/zhang no violation is ever flagged.
InequalityReport evaluate(InequalityId id, const CmiInstance &instance,
                          MapVariant variant, double t = 0,
                          double tolerance = 1e-7);
InequalityReport evaluate(InequalityId id, const ChannelInstance &instance,
                          MapVariant variant, double t = 0,
                          double tolerance = 1e-7);

// quantum: Hilbert-Schmidt random rho^{AEB}; channel-form ids then use
//   T = tr_B, sigma = rho^A (x) rho^{EB} (the lhs is exactly I(A:B|E)).
// classical_embedded: random (P, Q, T) on the flattened alphabet, embedded
//   as diagonal states and a classical channel; channel-form ids only. The
//   classical identity makes this family provably violation-free, which gives
//   the campaign a null control.
enum class InstanceFamily { quantum, classical_embedded };

struct SearchConfig {
  long long trials = 1;
  int refine_steps = 0;
  double perturbation_scale = 0.05;
  std::vector<int> dims{2, 2, 2}; // (A, E, B)
  std::uint64_t seed = 0;
  double tolerance = 1e-7;
  int threads = 1; // trial partitioning only; results are partition-invariant
  InstanceFamily family = InstanceFamily::quantum;
};

struct SearchResult {
  InequalityReport best;
  MultipartiteState witness;                // instance state at the best gap
  std::vector<InequalityReport> worst;      // up to 10 most negative gaps
  long long violations = 0;
  std::string status; // violation_found | inconclusive | clean
};

// Random sampling (trial i uses seed + i) plus hill-climbing from the worst
// trial: Gaussian perturbation of the Ginibre factor generating the state,
// accepted when the gap decreases. Channel-form instances use the search
// family T = tr_B, sigma = rho^A (x) rho^{EB}. A candidate violation
// is re-evaluated with tightened support cutoffs before being flagged.
// status: "inconclusive" marks a fruitless search for the known-to-fail
// transpose_gap_quantum target; other fruitless searches report "clean".
SearchResult search_counterexample(InequalityId id, MapVariant variant,
                                   const SearchConfig &config);

// Instance construction shared with tests and the CLI: rho from the Hilbert-
// Schmidt ensemble on `dims`, and for channel-form ids sigma/T as above.
CmiInstance make_cmi_instance(const std::vector<int> &dims, std::uint64_t seed);
ChannelInstance make_channel_instance(const std::vector<int> &dims,
                                      std::uint64_t seed);

enum class FunctorialityAxiom { normalization, tensor, composition };

struct FunctorialityReport {
  FunctorialityAxiom axiom = FunctorialityAxiom::normalization;
  double deviation = 0; // max trace distance over probes
  int instances = 0;
  bool asserted = false; // normalization/tensor carry a <= 1e-8 promise
  bool holds = false;
};

// Deviation between the two sides of the named axiom for the plain recovery
// map, maximized over `instances` random instances and a small probe set.
// Composition is measured and reported only.
FunctorialityReport check_functoriality(FunctorialityAxiom axiom,
                                        std::uint64_t seed, int instances);

} // namespace qrecover

#endif // QRECOVER_CONJECTURES_HPP_
