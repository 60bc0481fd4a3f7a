/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef QRECOVER_CLASSICAL_HPP_
#define QRECOVER_CLASSICAL_HPP_

#include <vector>

#include "qrecover/linalg.hpp"
#include "qrecover/rng.hpp"

namespace qrecover {

// Joint pmf over finitely many variables, stored flat in row-major order with
// the first axis most significant (same convention as the quantum side).
struct Distribution {
  RealVector probs;
  std::vector<int> shape;

  long long size() const { return probs.size(); }
  double &at(const std::vector<int> &idx);
  double at(const std::vector<int> &idx) const;
};

// Validates: shape consistent with probs, entries >= -1e-12 (tiny negatives
// are clamped to zero), total mass within 1e-9 of 1.
Distribution make_distribution(RealVector probs, std::vector<int> shape);
Distribution random_distribution(Rng &rng, const std::vector<int> &shape);

// Sum over all axes not listed in `keep` (axes identified by index, result
// keeps them in increasing-index order).
Distribution axis_marginal(const Distribution &p, const std::vector<int> &keep);

// Column-stochastic transition matrix t(u|x) = t(u, x).
struct StochasticMap {
  RealMatrix t;
};

StochasticMap make_stochastic(RealMatrix t);
StochasticMap random_stochastic(Rng &rng, int n_out, int n_in);
// t(to[x] | x) = 1.
StochasticMap deterministic_map(const std::vector<int> &to, int n_out);

Distribution push(const StochasticMap &map, const Distribution &p);

// Sum_i |p_i - q_i|.
double one_norm_distance(const Distribution &p, const Distribution &q);

// D(p || q) in bits; +infinity when p puts mass outside the support of q.
double relative_entropy(const Distribution &p, const Distribution &q);

// Bayes reversal of `map` at prior `q`: r(x|u) = t(u|x) q(x) / (Tq)(u).
// Columns of unreachable outputs ((Tq)(u) = 0) are filled with q itself, so
// the result is always a channel and always satisfies R(Tq) = q.
StochasticMap transpose_channel(const StochasticMap &map, const Distribution &q);

// Every column has a single entry >= 1 - 1e-12.
bool is_deterministic(const StochasticMap &map);

// Data-processing slack of the transpose channel:
//   lhs = D(p||q) - D(Tp||Tq),  rhs = D(p || R(Tp)),  gap = lhs - rhs.
// Classically gap >= 0, with equality whenever `map` is deterministic. The
// gap is NaN when both relative entropies in lhs are infinite.
struct ClassicalGapReport {
  double d_pq = 0, d_tp_tq = 0;
  double lhs = 0, rhs = 0, gap = 0;
  bool deterministic = false;
  bool equality = false; // |gap| <= 1e-10
  bool holds = false;    // gap >= -1e-10
};

ClassicalGapReport check_transpose_gap(const Distribution &p, const Distribution &q,
                                       const StochasticMap &map);

// For a three-variable joint P(x, y, z): the Markov approximation
// Q(x, y, z) = P(x, y) P(z|y), the closest y-mediated Markov chain in the
// relative-entropy sense. D(P || Q) equals I(X:Z|Y).
Distribution markov_projection(const Distribution &p);
double classical_cmi(const Distribution &p); // I(X:Z|Y), conditioning axis 1

// P as a diagonal density matrix (one subsystem per axis).
Matrix diagonal_embedding(const Distribution &p);

} // namespace qrecover

#endif // QRECOVER_CLASSICAL_HPP_
