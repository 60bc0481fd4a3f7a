/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef QRECOVER_MEASURES_HPP_
#define QRECOVER_MEASURES_HPP_

#include <optional>
#include <vector>

#include "qrecover/state.hpp"

namespace qrecover {

// Pure-state ensemble {p_i, |phi_i>} on A(x)B (A most significant).
struct PureDecomposition {
  std::vector<double> weights;
  std::vector<Vector> kets;
};

struct MeasureEstimate {
  enum class Kind { upper_bound, heuristic_min };
  double value = 0; // bits
  Kind kind = Kind::upper_bound;
  int restarts = 0;
  bool converged = false;
  // Witness: whichever of the two the estimator produced.
  std::optional<PureDecomposition> decomposition;
  std::optional<MultipartiteState> extension; // on merged labels A, B, E
};

// Heuristic minimum of sum_i p_i S(phi_i^A) over pure-state decompositions,
// parameterized by isometries mixing the eigendecomposition (every
// decomposition of fixed size arises this way). Local search: random Givens
// rotations with geometric step decay, then a deterministic pair-sweep
// polish. The result is an upper bound on the true value. Restart 0 starts
// from the eigendecomposition itself; ties keep the earlier restart.
MeasureEstimate entanglement_of_formation(const MultipartiteState &rho,
                                          const std::vector<std::string> &a,
                                          const std::vector<std::string> &b,
                                          int restarts, int ensemble_size,
                                          unsigned long long seed = 0);

int default_ensemble_size(int rank);

// Upper bound on squashed entanglement: minimizes (1/2) I(A:B|E) over
// extensions of environment dimension env_dim, parameterized as isometries
// from the canonical purifier into E (x) G with G traced out. Starting
// points: the purifier embedding, the formation extension built from an
// internal entanglement_of_formation run (when env_dim allows), and
// optionally a caller-supplied extension (three factors, the non-AB factor
// playing E, env_dim >= its dimension).
MeasureEstimate squashed_entanglement_upper_bound(
    const MultipartiteState &rho, const std::vector<std::string> &a,
    const std::vector<std::string> &b, int env_dim, int restarts,
    unsigned long long seed = 0,
    const std::optional<MultipartiteState> &supplied_extension = std::nullopt);

// Builds rho^{ABE} = sum_i p_i phi_i (x) |i><i|^E from the decomposition and
// returns (1/2) I(A:B|E); equals sum_i p_i S(phi_i^A) within 1e-8. Throws
// BadDecomposition when the ensemble does not reconstruct rho within 1e-9.
double formation_extension_cmi(const MultipartiteState &rho,
                               const std::vector<std::string> &a,
                               const std::vector<std::string> &b,
                               const PureDecomposition &decomposition);

struct SeparableApproximation {
  MultipartiteState sigma; // sum_i p_i phi_i^A (x) phi_i^B, labels A, B
  double distance = 0;     // ||rho - sigma||_1
  double bound = 0;        // sqrt(4 ln 2) sqrt(sum_i p_i S(phi_i^A))
};

// Product-marginal separable approximation built from a decomposition; the
// distance obeys distance <= bound unconditionally (asserted).
SeparableApproximation separable_from_formation(const MultipartiteState &rho,
                                                const std::vector<std::string> &a,
                                                const std::vector<std::string> &b,
                                                const PureDecomposition &decomposition);

// 5 log2(dimA dimB) sqrt(delta) + sqrt(delta) log2(delta), for
// 0 < delta <= 1/e^2: formation bound for states delta-close to separable.
double nielsen_bound(double delta, int dim_a, int dim_b);

} // namespace qrecover

#endif // QRECOVER_MEASURES_HPP_
