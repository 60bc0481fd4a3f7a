/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qrecover/states.hpp"

#include <algorithm>
#include <cmath>

namespace qrecover {

std::vector<std::string> default_labels(int n_parts) {
  switch (n_parts) {
    case 1: return {"A"};
    case 2: return {"A", "B"};
    case 3: return {"A", "E", "B"};
    default: {
      std::vector<std::string> out = {"A", "E"};
      for (int i = 1; i <= n_parts - 2; ++i) out.push_back("B" + std::to_string(i));
      return out;
    }
  }
}

static SubsystemLayout spec_layout(const StateEnsembleSpec &spec) {
  if (spec.dims.empty()) throw DimensionMismatch("ensemble spec has no dims");
  auto labels = spec.labels ? *spec.labels
                            : default_labels(static_cast<int>(spec.dims.size()));
  SubsystemLayout layout(labels, spec.dims);
  if (layout.total_dim() > kDimensionCap)
    throw DimensionCap("total dimension " + std::to_string(layout.total_dim()) +
                       " exceeds cap " + std::to_string(kDimensionCap));
  return layout;
}

MultipartiteState random_state(const StateEnsembleSpec &spec) {
  SubsystemLayout layout = spec_layout(spec);
  const int n = static_cast<int>(layout.total_dim());
  Rng rng(spec.seed);
  Matrix m;
  switch (spec.ensemble) {
    case Ensemble::haar_pure: {
      Vector psi = rng.haar_ket(n);
      m = psi * psi.adjoint();
      break;
    }
    case Ensemble::hilbert_schmidt_mixed: {
      Matrix g = rng.ginibre(n, n);
      m = g * g.adjoint();
      m /= m.trace().real();
      break;
    }
    case Ensemble::bures_mixed: {
      // (1 + U) G with Haar U: the standard Bures-measure construction.
      Matrix g = rng.ginibre(n, n);
      Matrix u = rng.haar_unitary(n);
      Matrix a = (Matrix::Identity(n, n) + u) * g;
      m = a * a.adjoint();
      m /= m.trace().real();
      break;
    }
    case Ensemble::rank_limited: {
      if (spec.rank < 1) throw DomainError("rank_limited needs rank >= 1");
      Matrix g = rng.ginibre(n, std::min(spec.rank, n));
      m = g * g.adjoint();
      m /= m.trace().real();
      break;
    }
  }
  return make_state(std::move(m), std::move(layout));
}

MultipartiteState purify(const MultipartiteState &rho,
                         const std::string &purifier_label) {
  const int n = static_cast<int>(rho.dim());
  Matrix sq = msqrt(rho.matrix);
  // (sqrt(rho) (x) 1) sum_i |i>|i> = sum_i (sqrt(rho)|i>) (x) |i>; with the
  // purifier least significant this is just a reshape of sqrt(rho).
  Vector psi(static_cast<long long>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int p = 0; p < n; ++p) psi[static_cast<long long>(i) * n + p] = sq(i, p);
  // <psi|psi> = tr rho = 1 already; renormalize only numerical dust.
  psi /= psi.norm();
  SubsystemLayout layout = rho.layout;
  layout.labels.push_back(purifier_label);
  layout.dims.push_back(n);
  layout.check();
  return MultipartiteState{psi * psi.adjoint(), std::move(layout)};
}

MultipartiteState
permutation_invariant_purification(const MultipartiteState &omega,
                                   const std::vector<std::string> &b_labels) {
  // Symmetry gate: max trace distance over adjacent B transpositions.
  for (std::size_t i = 0; i + 1 < b_labels.size(); ++i) {
    auto order = omega.layout.labels;
    const int pi = omega.layout.index_of(b_labels[i]);
    const int pj = omega.layout.index_of(b_labels[i + 1]);
    if (omega.layout.dims[pi] != omega.layout.dims[pj])
      throw DimensionMismatch("symmetrized factors must share a dimension");
    std::swap(order[pi], order[pj]);
    Matrix swapped = permute_subsystems(omega.matrix, omega.layout, order);
    if (trace_distance(swapped, omega.matrix) > 1e-8)
      throw NotSymmetric("input is not permutation symmetric on the B factors");
  }

  MultipartiteState psi = purify(omega, "__purifier");
  // Split the purifier (dimension = prod of all factors) into primed copies
  // mirroring the unprimed significance order; the global |Phi> then factors
  // as a product of per-factor |Phi> pairs, so simultaneous (B_i, B_i') swaps
  // are a symmetry whenever omega is B-symmetric.
  SubsystemLayout layout = omega.layout;
  for (int i = 0; i < omega.layout.size(); ++i) {
    layout.labels.push_back(omega.layout.labels[i] + "'");
    layout.dims.push_back(omega.layout.dims[i]);
  }
  layout.check();
  if (layout.total_dim() != psi.layout.total_dim())
    throw DimensionMismatch("purifier split lost dimensions");
  return MultipartiteState{std::move(psi.matrix), std::move(layout)};
}

namespace {

void antisym_ket(const std::vector<int> &combo, int d, Vector &out) {
  // Slater determinant of the standard basis vectors indexed by `combo`.
  const int k = static_cast<int>(combo.size());
  std::vector<int> perm(combo);
  std::sort(perm.begin(), perm.end());
  out.setZero();
  double norm = 1.0;
  for (int i = 2; i <= k; ++i) norm *= i;
  norm = 1.0 / std::sqrt(norm);
  std::vector<int> pos(k);
  for (int i = 0; i < k; ++i) pos[i] = i;
  do {
    // Sign of pos as a permutation.
    int sign = 1;
    std::vector<bool> seen(k, false);
    for (int i = 0; i < k; ++i) {
      if (seen[i]) continue;
      int cycle = 0, j = i;
      while (!seen[j]) {
        seen[j] = true;
        j = pos[j];
        ++cycle;
      }
      if (cycle % 2 == 0) sign = -sign;
    }
    long long index = 0;
    for (int i = 0; i < k; ++i) index = index * d + perm[pos[i]];
    out[index] += sign * norm;
  } while (std::next_permutation(pos.begin(), pos.end()));
}

} // namespace

MultipartiteState antisymmetric_state(int d, int copies) {
  if (copies < 2) throw DomainError("need at least two copies");
  if (copies > d)
    throw TooManyCopies("antisymmetric subspace of " + std::to_string(copies) +
                        " copies in dimension " + std::to_string(d) + " is zero");
  long long n = 1;
  for (int i = 0; i < copies; ++i) n *= d;
  if (n > kDimensionCap) throw DimensionCap("antisymmetric state too large");

  Matrix m = Matrix::Zero(n, n);
  Vector ket(n);
  std::vector<int> combo(copies);
  for (int i = 0; i < copies; ++i) combo[i] = i;
  long long count = 0;
  while (true) {
    antisym_ket(combo, d, ket);
    m += ket * ket.adjoint();
    ++count;
    int i = copies - 1;
    while (i >= 0 && combo[i] == d - copies + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < copies; ++j) combo[j] = combo[j - 1] + 1;
  }
  m /= static_cast<double>(count);

  std::vector<std::string> labels;
  std::vector<int> dims(copies, d);
  if (copies == 2) {
    labels = {"A", "B"};
  } else {
    labels.push_back("A");
    for (int i = 1; i < copies; ++i) labels.push_back("B" + std::to_string(i));
  }
  return make_state(std::move(m), SubsystemLayout(labels, dims));
}

MultipartiteState quantum_markov_chain(const std::vector<MarkovBlock> &blocks,
                                       const std::vector<std::string> &labels) {
  if (blocks.empty()) throw BlockMismatch("no blocks");
  if (labels.size() != 3) throw BlockMismatch("need exactly three labels");
  double psum = 0;
  for (const auto &b : blocks) {
    if (b.p < 0) throw BlockMismatch("negative block probability");
    psum += b.p;
    if (b.sigma.layout.size() != 2 || b.tau.layout.size() != 2)
      throw BlockMismatch("sigma and tau must be bipartite");
  }
  if (std::abs(psum - 1.0) > 1e-12)
    throw BlockMismatch("block probabilities must sum to 1");
  const int da = blocks[0].sigma.layout.dims[0];
  const int db = blocks[0].tau.layout.dims[1];
  long long de = 0;
  for (const auto &b : blocks) {
    if (b.sigma.layout.dims[0] != da || b.tau.layout.dims[1] != db)
      throw BlockMismatch("A / B dimensions differ across blocks");
    de += static_cast<long long>(b.sigma.layout.dims[1]) * b.tau.layout.dims[0];
  }
  const long long n = da * de * db;
  if (n > kDimensionCap) throw DimensionCap("markov chain state too large");

  Matrix m = Matrix::Zero(n, n);
  long long offset = 0; // block offset inside E
  for (const auto &b : blocks) {
    const int dl = b.sigma.layout.dims[1];
    const int dr = b.tau.layout.dims[0];
    const Matrix &s = b.sigma.matrix; // indexed (a, l)
    const Matrix &t = b.tau.matrix;   // indexed (r, bb)
    for (int a = 0; a < da; ++a)
      for (int a2 = 0; a2 < da; ++a2)
        for (int l = 0; l < dl; ++l)
          for (int l2 = 0; l2 < dl; ++l2)
            for (int r = 0; r < dr; ++r)
              for (int r2 = 0; r2 < dr; ++r2)
                for (int bb = 0; bb < db; ++bb)
                  for (int b2 = 0; b2 < db; ++b2) {
                    const long long e = offset + static_cast<long long>(l) * dr + r;
                    const long long e2 = offset + static_cast<long long>(l2) * dr + r2;
                    const long long row = (a * de + e) * db + bb;
                    const long long col = (a2 * de + e2) * db + b2;
                    m(row, col) += b.p * s(a * dl + l, a2 * dl + l2) *
                                   t(r * db + bb, r2 * db + b2);
                  }
    offset += static_cast<long long>(dl) * dr;
  }
  return make_state(std::move(m),
                    SubsystemLayout(labels, {da, static_cast<int>(de), db}));
}

MultipartiteState bell() {
  Vector psi = Vector::Zero(4);
  psi[0] = psi[3] = 1.0 / std::sqrt(2.0);
  return MultipartiteState{psi * psi.adjoint(), SubsystemLayout({"A", "B"}, {2, 2})};
}

MultipartiteState ghz(int n) {
  if (n < 2) throw DomainError("ghz needs at least two parties");
  long long dim = 1LL << n;
  if (dim > kDimensionCap) throw DimensionCap("ghz state too large");
  Vector psi = Vector::Zero(dim);
  psi[0] = psi[dim - 1] = 1.0 / std::sqrt(2.0);
  return MultipartiteState{psi * psi.adjoint(),
                           SubsystemLayout(default_labels(n), std::vector<int>(n, 2))};
}

MultipartiteState maximally_mixed(int d) {
  return MultipartiteState{Matrix::Identity(d, d) / static_cast<double>(d),
                           SubsystemLayout({"A"}, {d})};
}

MultipartiteState classical_copy(int d) {
  Matrix m = Matrix::Zero(static_cast<long long>(d) * d, static_cast<long long>(d) * d);
  for (int i = 0; i < d; ++i) {
    const long long ii = static_cast<long long>(i) * d + i;
    m(ii, ii) = 1.0 / d;
  }
  return MultipartiteState{std::move(m), SubsystemLayout({"A", "B"}, {d, d})};
}

} // namespace qrecover
