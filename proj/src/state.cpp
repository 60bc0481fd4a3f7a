/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qrecover/state.hpp"

namespace qrecover {

void validate(const MultipartiteState &rho, bool check_psd) {
  rho.layout.check();
  if (rho.matrix.rows() != rho.matrix.cols() ||
      rho.matrix.rows() != rho.layout.total_dim())
    throw DimensionMismatch("state matrix does not match layout");
  if (!is_hermitian(rho.matrix))
    throw InvalidState("not Hermitian within 1e-10");
  const double tr_dev = std::abs(rho.matrix.trace() - Complex(1, 0));
  if (tr_dev > 1e-10)
    throw InvalidState("trace deviates from 1 by " + std::to_string(tr_dev));
  if (check_psd) {
    auto eig = hermitian_eig(rho.matrix);
    if (eig.eigenvalues.minCoeff() < -1e-10)
      throw InvalidState("negative eigenvalue below -1e-10");
  }
}

MultipartiteState make_state(Matrix m, SubsystemLayout layout) {
  MultipartiteState rho{std::move(m), std::move(layout)};
  validate(rho);
  rho.matrix = (rho.matrix + rho.matrix.adjoint().eval()) / 2.0;
  return rho;
}

MultipartiteState marginal(const MultipartiteState &rho,
                           const std::vector<std::string> &keep) {
  auto [m, layout] = partial_trace(rho.matrix, rho.layout, keep);
  return MultipartiteState{std::move(m), std::move(layout)};
}

MultipartiteState permute(const MultipartiteState &rho,
                          const std::vector<std::string> &new_order) {
  Matrix m = permute_subsystems(rho.matrix, rho.layout, new_order);
  return MultipartiteState{std::move(m), sublayout_reordered(rho.layout, new_order)};
}

MultipartiteState relabel(const MultipartiteState &rho,
                          const std::vector<std::string> &from,
                          const std::vector<std::string> &to) {
  if (from.size() != to.size())
    throw DimensionMismatch("relabel lists differ in length");
  // Resolve every position against the input layout before writing anything,
  // so swap renames like (B1, B2) -> (B2, B1) land in parallel.
  std::vector<int> positions;
  positions.reserve(from.size());
  for (const std::string &l : from) positions.push_back(rho.layout.index_of(l));
  SubsystemLayout layout = rho.layout;
  for (std::size_t i = 0; i < from.size(); ++i)
    layout.labels[positions[i]] = to[i];
  layout.check();
  return MultipartiteState{rho.matrix, std::move(layout)};
}

MultipartiteState product(const MultipartiteState &a, const MultipartiteState &b) {
  SubsystemLayout layout = a.layout;
  layout.labels.insert(layout.labels.end(), b.layout.labels.begin(),
                       b.layout.labels.end());
  layout.dims.insert(layout.dims.end(), b.layout.dims.begin(),
                     b.layout.dims.end());
  layout.check();
  return MultipartiteState{tensor(a.matrix, b.matrix), std::move(layout)};
}

double trace_distance(const Matrix &a, const Matrix &b) {
  return trace_norm_hermitian(a - b);
}

} // namespace qrecover
