/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef QRECOVER_CHANNELS_HPP_
#define QRECOVER_CHANNELS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "qrecover/state.hpp"

namespace qrecover {

// Completely positive map in Kraus form, X -> sum_K K X K^dagger. Complete
// positivity is automatic; nothing else is promised (see QuantumChannel).
struct KrausMap {
  std::vector<Matrix> ops;
  SubsystemLayout in_layout, out_layout;
  std::string id; // provenance tag, e.g. "tr_B" or "petz(tr_B)"
};

// Trace-preserving KrausMap; make_channel enforces sum K^dagger K = 1
// within 1e-9.
struct QuantumChannel : KrausMap {};

QuantumChannel make_channel(std::vector<Matrix> ops, SubsystemLayout in_layout,
                            SubsystemLayout out_layout, std::string id);

Matrix apply_kraus(const std::vector<Matrix> &ops, const Matrix &x);

// sum K^dagger K (identity for a channel; used for validation and tests).
Matrix kraus_gram(const std::vector<Matrix> &ops);

MultipartiteState apply(const QuantumChannel &channel, const MultipartiteState &rho);

// Channel on `target` (listed in the channel's input factor order), identity
// on everything else. Output layout is [spectators in original order] followed
// by the channel's output labels; output labels must not collide with
// spectator labels.
MultipartiteState apply_on_subsystem(const QuantumChannel &channel,
                                     const MultipartiteState &rho,
                                     const std::vector<std::string> &target);

// Adjoint with respect to the Hilbert-Schmidt pairing: Kraus ops conjugated-
// transposed. Not trace preserving (it is unital when the input is a channel).
KrausMap adjoint(const QuantumChannel &channel);

QuantumChannel identity_channel(const SubsystemLayout &layout);
// Traces out the complement of `keep`.
QuantumChannel partial_trace_channel(const SubsystemLayout &layout,
                                     const std::vector<std::string> &keep);
// c2 after c1.
QuantumChannel compose(const QuantumChannel &c2, const QuantumChannel &c1);
QuantumChannel tensor_channel(const QuantumChannel &c1, const QuantumChannel &c2);
// Stochastic matrix t(u|x) embedded as Kraus ops sqrt(t_ux) |u><x|; maps
// diagonal states to diagonal states by the classical action.
QuantumChannel classical_embedding_channel(const RealMatrix &t, std::string id = "");

// Recovery map R for (T, sigma): sqrt(sigma) T*((T sigma)^{-1/2} .
// (T sigma)^{-1/2}) sqrt(sigma), Kraus-synthesized through the Choi matrix of
// the composed action. Input mass on the kernel of T(sigma) is sent to sigma
// (kernel completion), which keeps the map trace preserving globally;
// kernel_completed records whether that path is live. Always satisfies
// R(T(sigma)) = sigma within 1e-8 (validated at construction).
struct RecoveryMap {
  QuantumChannel channel;
  std::string source_channel_id;
  MultipartiteState anchor; // sigma
  std::optional<double> swivel_t;
  bool kernel_completed = false;
};

RecoveryMap petz_map(const QuantumChannel &channel, const MultipartiteState &sigma);

// Specialization recovering the second factor of a bipartite state from the
// first: R(xi) = sqrt(rho_EB) ((rho_E)^{-1/2} xi (rho_E)^{-1/2} (x) 1_B)
// sqrt(rho_EB). Factor 0 of rho_eb is the conditioning system E, factor 1 the
// recovered system B; labels are preserved from rho_eb's layout.
RecoveryMap cmi_petz_map(const MultipartiteState &rho_eb);

// R_t: the recovery map conjugated by time evolution under sigma (output) and
// T(sigma) (input). R_0 equals the plain map; R_t(T(sigma)) = sigma for all t.
RecoveryMap swivelled_petz_map(const QuantumChannel &channel,
                               const MultipartiteState &sigma, double t);
RecoveryMap swivelled_cmi_petz_map(const MultipartiteState &rho_eb, double t);

struct SwivelScan {
  double t_best = 0;
  double fidelity_best = 0;
  double score_best = 0; // -log2 F^2 at t_best
  double cmi = 0;        // I(A:B|E) of the scanned state
  bool bound_holds = false;
};

// Evaluates -log2 F(rho^{AEB}, (id_A (x) R_t) rho^{AE})^2 over the grid using
// the cmi-specialized R_t built from rho^{EB}, then refines once by
// golden-section around the coarse minimum. Ties break toward smaller |t|,
// then smaller t. bound_holds: min score <= I(A:B|E) + 1e-6.
SwivelScan best_swivel_scan(const MultipartiteState &rho,
                            const std::vector<std::string> &a,
                            const std::vector<std::string> &e,
                            const std::vector<std::string> &b,
                            const std::vector<double> &grid);

// Same scan, also handing back the winning map (built at t_best).
SwivelScan best_swivel_scan(const MultipartiteState &rho,
                            const std::vector<std::string> &a,
                            const std::vector<std::string> &e,
                            const std::vector<std::string> &b,
                            const std::vector<double> &grid, RecoveryMap *winner);

std::vector<double> default_swivel_grid(); // -10..10, step 0.1

} // namespace qrecover

#endif // QRECOVER_CHANNELS_HPP_
