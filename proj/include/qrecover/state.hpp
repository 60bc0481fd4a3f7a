/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef QRECOVER_STATE_HPP_
#define QRECOVER_STATE_HPP_

#include <string>
#include <vector>

#include "qrecover/linalg.hpp"

namespace qrecover {

// Density matrix plus its ordered subsystem layout; the universal operand.
// Invariants (checked by validate / make_state): Hermitian within 1e-10,
// eigenvalues >= -1e-10, unit trace within 1e-10.
struct MultipartiteState {
  Matrix matrix;
  SubsystemLayout layout;

  long long dim() const { return layout.total_dim(); }
};

void validate(const MultipartiteState &rho, bool check_psd = true);

// Validating constructor; symmetrizes the (within-tolerance) Hermitian part
// so that drift does not accumulate across chained channel applications.
MultipartiteState make_state(Matrix m, SubsystemLayout layout);

// Marginal on `keep` (kept in layout order).
MultipartiteState marginal(const MultipartiteState &rho,
                           const std::vector<std::string> &keep);

// Tensor-factor reorder; result layout follows `new_order`.
MultipartiteState permute(const MultipartiteState &rho,
                          const std::vector<std::string> &new_order);

// Rename factors in place (dims untouched); `from` and `to` run in parallel.
MultipartiteState relabel(const MultipartiteState &rho,
                          const std::vector<std::string> &from,
                          const std::vector<std::string> &to);

// Tensor product of two states (left factors most significant).
MultipartiteState product(const MultipartiteState &a, const MultipartiteState &b);

double trace_distance(const Matrix &a, const Matrix &b);

} // namespace qrecover

#endif // QRECOVER_STATE_HPP_
