/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef QRECOVER_STATES_HPP_
#define QRECOVER_STATES_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrecover/rng.hpp"
#include "qrecover/state.hpp"

namespace qrecover {

inline constexpr long long kDimensionCap = 4096;

enum class Ensemble { haar_pure, hilbert_schmidt_mixed, bures_mixed, rank_limited };

struct StateEnsembleSpec {
  Ensemble ensemble = Ensemble::hilbert_schmidt_mixed;
  std::vector<int> dims;
  std::uint64_t seed = 0;
  int rank = 1; // rank_limited only
  // Labels default to the operand convention used throughout: (A, B) for two
  // factors, (A, E, B) for three -- conditioning system in the middle --
  // then (A, E, B1, B2, ...).
  std::optional<std::vector<std::string>> labels;
};

std::vector<std::string> default_labels(int n_parts);

// Deterministic in the spec (same spec => bitwise-identical state).
MultipartiteState random_state(const StateEnsembleSpec &spec);

// Canonical purification (sqrt(rho) (x) 1)|Phi> with |Phi> = sum_i |i>|i>
// taken unnormalized; the purifier has the state's full dimension and is
// appended as the least significant factor.
MultipartiteState purify(const MultipartiteState &rho,
                         const std::string &purifier_label);

// Purification of a state symmetric under permutations of `b_labels`, with the
// purifier split into primed copies (label + "'") of every factor so that
// simultaneous permutations of (B_i, B_i') pairs leave the purification
// invariant. Throws NotSymmetric if omega is not 1e-8-symmetric on b_labels.
MultipartiteState
permutation_invariant_purification(const MultipartiteState &omega,
                                   const std::vector<std::string> &b_labels);

// Normalized projector onto the totally antisymmetric subspace of
// (C^d)^(x copies). Labels: (A, B) for copies = 2, else (A, B1, .., B_{c-1}).
MultipartiteState antisymmetric_state(int d, int copies);

struct MarkovBlock {
  double p = 0;
  MultipartiteState sigma; // bipartite: A (x) left environment factor
  MultipartiteState tau;   // bipartite: right environment factor (x) B
};

// Direct sum  (+)_j p_j sigma_j (x) tau_j  embedded on A (x) E (x) B with
// E = sum_j dim(eL_j) * dim(eR_j); blocks are laid out in input order.
// Every output has I(A:B|E) = 0 and is recovered exactly by the Petz map.
MultipartiteState quantum_markov_chain(const std::vector<MarkovBlock> &blocks,
                                       const std::vector<std::string> &labels = {
                                           "A", "E", "B"});

// Fixtures with documented basis conventions.
MultipartiteState bell();                 // (|00> + |11>)/sqrt(2) on (A, B)
MultipartiteState ghz(int n);             // (|0..0> + |1..1>)/sqrt(2)
MultipartiteState maximally_mixed(int d); // 1/d on a single factor "A"
MultipartiteState classical_copy(int d = 2); // sum_i |ii><ii| / d on (A, B)

} // namespace qrecover

#endif // QRECOVER_STATES_HPP_
