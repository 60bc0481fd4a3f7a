/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qrecover/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qrecover/errors.hpp"

namespace qrecover {

namespace {

constexpr double kLog2 = 0.69314718055994530942;

long long flat_index(const std::vector<int> &shape, const std::vector<int> &idx) {
  if (idx.size() != shape.size())
    throw DimensionMismatch("index rank does not match distribution rank");
  long long flat = 0;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= shape[i])
      throw DimensionMismatch("index out of range");
    flat = flat * shape[i] + idx[i];
  }
  return flat;
}

} // namespace

double &Distribution::at(const std::vector<int> &idx) {
  return probs[flat_index(shape, idx)];
}

double Distribution::at(const std::vector<int> &idx) const {
  return probs[flat_index(shape, idx)];
}

Distribution make_distribution(RealVector probs, std::vector<int> shape) {
  long long n = 1;
  for (int d : shape) {
    if (d < 1)
      throw DimensionMismatch("distribution axis with nonpositive size");
    n *= d;
  }
  if (probs.size() != n)
    throw DimensionMismatch("probability vector does not match the shape");
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (probs[i] < -1e-12)
      throw InvalidState("negative probability");
    if (probs[i] < 0)
      probs[i] = 0;
  }
  if (std::abs(probs.sum() - 1.0) > 1e-12)
    throw InvalidState("probabilities do not sum to one");
  return {std::move(probs), std::move(shape)};
}

Distribution random_distribution(Rng &rng, const std::vector<int> &shape) {
  long long n = 1;
  for (int d : shape)
    n *= d;
  return make_distribution(rng.simplex(static_cast<int>(n)), shape);
}

Distribution axis_marginal(const Distribution &p, const std::vector<int> &keep) {
  for (int a : keep)
    if (a < 0 || a >= static_cast<int>(p.shape.size()))
      throw DimensionMismatch("marginal axis out of range");
  std::vector<int> out_shape;
  for (int a = 0; a < static_cast<int>(p.shape.size()); ++a)
    if (std::find(keep.begin(), keep.end(), a) != keep.end())
      out_shape.push_back(p.shape[a]);
  long long out_n = 1;
  for (int d : out_shape)
    out_n *= d;
  RealVector out = RealVector::Zero(out_n);

  std::vector<int> idx(p.shape.size(), 0);
  for (long long flat = 0; flat < p.size(); ++flat) {
    long long rem = flat;
    for (int a = static_cast<int>(p.shape.size()) - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rem % p.shape[a]);
      rem /= p.shape[a];
    }
    long long out_flat = 0;
    for (int a = 0; a < static_cast<int>(p.shape.size()); ++a)
      if (std::find(keep.begin(), keep.end(), a) != keep.end())
        out_flat = out_flat * p.shape[a] + idx[a];
    out[out_flat] += p.probs[flat];
  }
  return {std::move(out), std::move(out_shape)};
}

StochasticMap make_stochastic(RealMatrix t) {
  for (Eigen::Index x = 0; x < t.cols(); ++x) {
    for (Eigen::Index u = 0; u < t.rows(); ++u) {
      if (t(u, x) < -1e-12)
        throw InvalidState("negative transition probability");
      if (t(u, x) < 0)
        t(u, x) = 0;
    }
    if (std::abs(t.col(x).sum() - 1.0) > 1e-12)
      throw InvalidState("transition matrix column does not sum to one");
  }
  return {std::move(t)};
}

StochasticMap random_stochastic(Rng &rng, int n_out, int n_in) {
  RealMatrix t(n_out, n_in);
  for (int x = 0; x < n_in; ++x)
    t.col(x) = rng.simplex(n_out);
  return make_stochastic(std::move(t));
}

StochasticMap deterministic_map(const std::vector<int> &to, int n_out) {
  RealMatrix t = RealMatrix::Zero(n_out, static_cast<Eigen::Index>(to.size()));
  for (std::size_t x = 0; x < to.size(); ++x) {
    if (to[x] < 0 || to[x] >= n_out)
      throw DimensionMismatch("deterministic map target out of range");
    t(to[x], static_cast<Eigen::Index>(x)) = 1.0;
  }
  return {std::move(t)};
}

Distribution push(const StochasticMap &map, const Distribution &p) {
  if (map.t.cols() != p.size())
    throw DimensionMismatch("distribution does not match the map input");
  RealVector out = map.t * p.probs;
  return {std::move(out), {static_cast<int>(map.t.rows())}};
}

double one_norm_distance(const Distribution &p, const Distribution &q) {
  if (p.size() != q.size())
    throw DimensionMismatch("distributions of different size");
  return (p.probs - q.probs).cwiseAbs().sum();
}

double relative_entropy(const Distribution &p, const Distribution &q) {
  if (p.size() != q.size())
    throw DimensionMismatch("distributions of different size");
  double sum = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p.probs[i] <= 0)
      continue;
    if (q.probs[i] <= 0)
      return std::numeric_limits<double>::infinity();
    sum += p.probs[i] * std::log(p.probs[i] / q.probs[i]);
  }
  return sum / kLog2;
}

StochasticMap transpose_channel(const StochasticMap &map, const Distribution &q) {
  if (map.t.cols() != q.size())
    throw DimensionMismatch("prior does not match the map input");
  const RealVector image = map.t * q.probs;
  RealMatrix r(map.t.cols(), map.t.rows());
  for (Eigen::Index u = 0; u < map.t.rows(); ++u) {
    if (image[u] > 0)
      r.col(u) = map.t.row(u).transpose().cwiseProduct(q.probs) / image[u];
    else
      r.col(u) = q.probs;
  }
  return make_stochastic(std::move(r));
}

bool is_deterministic(const StochasticMap &map) {
  for (Eigen::Index x = 0; x < map.t.cols(); ++x) {
    int big = 0;
    for (Eigen::Index u = 0; u < map.t.rows(); ++u)
      if (map.t(u, x) >= 1.0 - 1e-12)
        ++big;
    if (big != 1)
      return false;
  }
  return true;
}

ClassicalGapReport check_transpose_gap(const Distribution &p, const Distribution &q,
                                       const StochasticMap &map) {
  ClassicalGapReport rep;
  const StochasticMap r = transpose_channel(map, q);
  const Distribution tp = push(map, p);
  const Distribution tq = push(map, q);
  const Distribution back = push(r, tp);
  rep.d_pq = relative_entropy(p, q);
  rep.d_tp_tq = relative_entropy(tp, tq);
  rep.lhs = rep.d_pq - rep.d_tp_tq;
  rep.rhs = relative_entropy(p, back);
  rep.gap = rep.lhs - rep.rhs;
  rep.deterministic = is_deterministic(map);
  rep.equality = std::abs(rep.gap) <= 1e-10;
  rep.holds = rep.gap >= -1e-10; // NaN compares false
  return rep;
}

Distribution markov_projection(const Distribution &p) {
  if (p.shape.size() != 3)
    throw DimensionMismatch("Markov projection needs a three-variable joint");
  const int nx = p.shape[0], ny = p.shape[1], nz = p.shape[2];
  const Distribution pxy = axis_marginal(p, {0, 1});
  const Distribution pyz = axis_marginal(p, {1, 2});
  const Distribution py = axis_marginal(p, {1});
  RealVector out = RealVector::Zero(p.size());
  for (int y = 0; y < ny; ++y) {
    if (py.probs[y] <= 0)
      continue;
    for (int x = 0; x < nx; ++x)
      for (int z = 0; z < nz; ++z)
        out[(static_cast<long long>(x) * ny + y) * nz + z] =
            pxy.probs[x * ny + y] * pyz.probs[y * nz + z] / py.probs[y];
  }
  return {std::move(out), p.shape};
}

double classical_cmi(const Distribution &p) {
  if (p.shape.size() != 3)
    throw DimensionMismatch("conditional mutual information needs three variables");
  const int nx = p.shape[0], ny = p.shape[1], nz = p.shape[2];
  const Distribution pxy = axis_marginal(p, {0, 1});
  const Distribution pyz = axis_marginal(p, {1, 2});
  const Distribution py = axis_marginal(p, {1});
  double sum = 0;
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      for (int z = 0; z < nz; ++z) {
        const double v = p.probs[(static_cast<long long>(x) * ny + y) * nz + z];
        if (v <= 0)
          continue;
        sum += v * std::log(v * py.probs[y] /
                            (pxy.probs[x * ny + y] * pyz.probs[y * nz + z]));
      }
  return sum / kLog2;
}

Matrix diagonal_embedding(const Distribution &p) {
  Matrix m = Matrix::Zero(p.size(), p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i)
    m(i, i) = p.probs[i];
  return m;
}

} // namespace qrecover
