/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qrecover/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qrecover/info.hpp"
#include "qrecover/linalg.hpp"

namespace qrecover {

namespace {

constexpr double kTpTol = 1e-9;
constexpr double kAnchorTol = 1e-8;

void check_ops(const std::vector<Matrix> &ops, Eigen::Index din, Eigen::Index dout) {
  if (ops.empty())
    throw DimensionMismatch("channel has no Kraus operators");
  for (const Matrix &k : ops)
    if (k.rows() != dout || k.cols() != din)
      throw DimensionMismatch("Kraus operator shape does not match the layouts");
}

} // namespace

Matrix kraus_gram(const std::vector<Matrix> &ops) {
  Matrix g = Matrix::Zero(ops[0].cols(), ops[0].cols());
  for (const Matrix &k : ops)
    g += k.adjoint() * k;
  return g;
}

QuantumChannel make_channel(std::vector<Matrix> ops, SubsystemLayout in_layout,
                            SubsystemLayout out_layout, std::string id) {
  in_layout.check();
  out_layout.check();
  const Eigen::Index din = in_layout.total_dim(), dout = out_layout.total_dim();
  check_ops(ops, din, dout);
  const Matrix g = kraus_gram(ops);
  if (max_abs(g - Matrix::Identity(din, din)) > kTpTol)
    throw BadDecomposition("Kraus operators are not trace preserving: " + id);
  QuantumChannel c;
  c.ops = std::move(ops);
  c.in_layout = std::move(in_layout);
  c.out_layout = std::move(out_layout);
  c.id = std::move(id);
  return c;
}

Matrix apply_kraus(const std::vector<Matrix> &ops, const Matrix &x) {
  Matrix out = Matrix::Zero(ops[0].rows(), ops[0].rows());
  for (const Matrix &k : ops)
    out.noalias() += k * x * k.adjoint();
  return out;
}

MultipartiteState apply(const QuantumChannel &channel, const MultipartiteState &rho) {
  if (rho.layout.dims != channel.in_layout.dims)
    throw DimensionMismatch("state does not live on the channel input");
  Matrix out = apply_kraus(channel.ops, rho.matrix);
  out = ((out + out.adjoint()) / 2.0).eval();
  return {std::move(out), channel.out_layout};
}

MultipartiteState apply_on_subsystem(const QuantumChannel &channel,
                                     const MultipartiteState &rho,
                                     const std::vector<std::string> &target) {
  std::vector<std::string> spectators;
  for (const std::string &l : rho.layout.labels)
    if (std::find(target.begin(), target.end(), l) == target.end())
      spectators.push_back(l);
  std::vector<std::string> order = spectators;
  order.insert(order.end(), target.begin(), target.end());
  const MultipartiteState perm = permute(rho, order);

  const Eigen::Index din = channel.in_layout.total_dim();
  const Eigen::Index dout = channel.out_layout.total_dim();
  if (perm.layout.dim_of(target) != din)
    throw DimensionMismatch("target dimension does not match the channel input");
  for (const std::string &l : channel.out_layout.labels)
    if (std::find(spectators.begin(), spectators.end(), l) != spectators.end())
      throw OverlappingLabels("channel output label collides with a spectator: " + l);

  const Eigen::Index ds = perm.dim() / din;
  Matrix out = Matrix::Zero(ds * dout, ds * dout);
  for (const Matrix &k : channel.ops)
    for (Eigen::Index s = 0; s < ds; ++s)
      for (Eigen::Index t = 0; t < ds; ++t)
        out.block(s * dout, t * dout, dout, dout).noalias() +=
            k * perm.matrix.block(s * din, t * din, din, din) * k.adjoint();
  out = ((out + out.adjoint()) / 2.0).eval();

  SubsystemLayout layout = sublayout(perm.layout, spectators);
  layout.labels.insert(layout.labels.end(), channel.out_layout.labels.begin(),
                       channel.out_layout.labels.end());
  layout.dims.insert(layout.dims.end(), channel.out_layout.dims.begin(),
                     channel.out_layout.dims.end());
  layout.check();
  return {std::move(out), std::move(layout)};
}

KrausMap adjoint(const QuantumChannel &channel) {
  KrausMap m;
  for (const Matrix &k : channel.ops)
    m.ops.push_back(k.adjoint());
  m.in_layout = channel.out_layout;
  m.out_layout = channel.in_layout;
  m.id = "adjoint(" + channel.id + ")";
  return m;
}

QuantumChannel identity_channel(const SubsystemLayout &layout) {
  const Eigen::Index d = layout.total_dim();
  return make_channel({Matrix::Identity(d, d)}, layout, layout, "id");
}

QuantumChannel partial_trace_channel(const SubsystemLayout &layout,
                                     const std::vector<std::string> &keep) {
  for (const std::string &l : keep)
    (void)layout.index_of(l);
  std::vector<int> keep_pos, rest_pos;
  for (int i = 0; i < layout.size(); ++i) {
    const bool kept =
        std::find(keep.begin(), keep.end(), layout.labels[i]) != keep.end();
    (kept ? keep_pos : rest_pos).push_back(i);
  }
  std::vector<long long> keep_base, rest_base;
  detail::index_bases(layout, keep_pos, keep_base);
  detail::index_bases(layout, rest_pos, rest_base);
  std::vector<Matrix> ops;
  ops.reserve(rest_base.size());
  for (std::size_t r = 0; r < rest_base.size(); ++r) {
    Matrix k = Matrix::Zero(static_cast<Eigen::Index>(keep_base.size()),
                            layout.total_dim());
    for (std::size_t i = 0; i < keep_base.size(); ++i)
      k(static_cast<Eigen::Index>(i), keep_base[i] + rest_base[r]) = 1.0;
    ops.push_back(std::move(k));
  }
  std::string id = "tr";
  for (const std::string &l : layout.complement(keep))
    id += "_" + l;
  return make_channel(std::move(ops), layout, sublayout(layout, keep), std::move(id));
}

QuantumChannel compose(const QuantumChannel &c2, const QuantumChannel &c1) {
  if (c1.out_layout.dims != c2.in_layout.dims)
    throw DimensionMismatch("channels do not compose: " + c2.id + " after " + c1.id);
  std::vector<Matrix> ops;
  ops.reserve(c1.ops.size() * c2.ops.size());
  for (const Matrix &k2 : c2.ops)
    for (const Matrix &k1 : c1.ops)
      ops.push_back(k2 * k1);
  return make_channel(std::move(ops), c1.in_layout, c2.out_layout,
                      c2.id + "*" + c1.id);
}

QuantumChannel tensor_channel(const QuantumChannel &c1, const QuantumChannel &c2) {
  std::vector<Matrix> ops;
  ops.reserve(c1.ops.size() * c2.ops.size());
  for (const Matrix &k1 : c1.ops)
    for (const Matrix &k2 : c2.ops)
      ops.push_back(tensor(k1, k2));
  auto join = [](const SubsystemLayout &a, const SubsystemLayout &b) {
    SubsystemLayout l = a;
    l.labels.insert(l.labels.end(), b.labels.begin(), b.labels.end());
    l.dims.insert(l.dims.end(), b.dims.begin(), b.dims.end());
    return l;
  };
  return make_channel(std::move(ops), join(c1.in_layout, c2.in_layout),
                      join(c1.out_layout, c2.out_layout),
                      c1.id + "(x)" + c2.id);
}

QuantumChannel classical_embedding_channel(const RealMatrix &t, std::string id) {
  const Eigen::Index nu = t.rows(), nx = t.cols();
  std::vector<Matrix> ops;
  for (Eigen::Index u = 0; u < nu; ++u)
    for (Eigen::Index x = 0; x < nx; ++x) {
      if (t(u, x) < -1e-12)
        throw DomainError("negative transition probability");
      if (t(u, x) <= 0)
        continue;
      Matrix k = Matrix::Zero(nu, nx);
      k(u, x) = std::sqrt(t(u, x));
      ops.push_back(std::move(k));
    }
  if (id.empty())
    id = "classical";
  return make_channel(std::move(ops), {{"X"}, {static_cast<int>(nx)}},
                      {{"U"}, {static_cast<int>(nu)}}, std::move(id));
}

namespace {

// Kernel-completion Kraus ops sending mass on the kernel of `input` (the
// channel's image of sigma) to `target` (sigma itself): sqrt(s_m) |v_m><k_j|.
void append_kernel_completion(std::vector<Matrix> &ops, const HermitianEig &input_eig,
                              double input_cutoff, const HermitianEig &target_eig,
                              double target_cutoff, bool *completed) {
  const Eigen::Index din = input_eig.eigenvectors.rows();
  const Eigen::Index dout = target_eig.eigenvectors.rows();
  *completed = false;
  for (Eigen::Index j = 0; j < din; ++j) {
    if (input_eig.eigenvalues[j] > input_cutoff)
      continue;
    *completed = true;
    for (Eigen::Index m = 0; m < dout; ++m) {
      if (target_eig.eigenvalues[m] <= target_cutoff)
        continue;
      Matrix op(dout, din);
      op.noalias() = std::sqrt(target_eig.eigenvalues[m]) *
                     target_eig.eigenvectors.col(m) *
                     input_eig.eigenvectors.col(j).adjoint();
      ops.push_back(std::move(op));
    }
  }
}

double support_cutoff(const HermitianEig &eig) {
  return 1e-12 * std::max(eig.eigenvalues[0], 0.0);
}

// Resynthesizes the map given by `ops` into Kraus form from its Choi matrix.
// Collapses redundant operator sets (e.g. a long completion list) to at most
// din*dout operators and balances their norms.
std::vector<Matrix> choi_resynthesize(const std::vector<Matrix> &ops) {
  const Eigen::Index din = ops[0].cols(), dout = ops[0].rows();
  Matrix choi = Matrix::Zero(din * dout, din * dout);
  Vector v(din * dout);
  for (const Matrix &k : ops) {
    for (Eigen::Index i = 0; i < din; ++i)
      v.segment(i * dout, dout) = k.col(i);
    choi.noalias() += v * v.adjoint();
  }
  const HermitianEig eig = hermitian_eig(choi);
  const double cutoff = support_cutoff(eig);
  std::vector<Matrix> out;
  for (Eigen::Index l = 0; l < eig.eigenvalues.size(); ++l) {
    if (eig.eigenvalues[l] <= cutoff)
      break; // descending order
    Matrix k(dout, din);
    for (Eigen::Index i = 0; i < din; ++i)
      k.col(i) = std::sqrt(eig.eigenvalues[l]) *
                 eig.eigenvectors.col(l).segment(i * dout, dout);
    out.push_back(std::move(k));
  }
  return out;
}

void check_anchor(const RecoveryMap &map, const Matrix &image_of_sigma) {
  const Matrix back = apply_kraus(map.channel.ops, image_of_sigma);
  if (trace_distance(back, map.anchor.matrix) > kAnchorTol)
    throw BadDecomposition("recovery map does not restore its anchor state");
}

} // namespace

RecoveryMap petz_map(const QuantumChannel &channel, const MultipartiteState &sigma) {
  if (!(sigma.layout == channel.in_layout))
    throw DimensionMismatch("anchor state does not live on the channel input");
  const Matrix image = apply_kraus(channel.ops, sigma.matrix);
  const HermitianEig image_eig = hermitian_eig(image);
  const HermitianEig sigma_eig = hermitian_eig(sigma.matrix);
  const double image_cut = support_cutoff(image_eig);
  const double sigma_cut = support_cutoff(sigma_eig);
  if (image_eig.eigenvalues.minCoeff() < -1e-8 ||
      sigma_eig.eigenvalues.minCoeff() < -1e-8)
    throw NotPSD("anchor state or its image is not positive semidefinite");

  const Matrix inv_sqrt_image = matrix_function_on_support(
      image, [](double x) { return 1.0 / std::sqrt(x); });
  const Matrix sqrt_sigma = msqrt(sigma.matrix);
  std::vector<Matrix> ops;
  ops.reserve(channel.ops.size());
  for (const Matrix &k : channel.ops)
    ops.push_back(sqrt_sigma * k.adjoint() * inv_sqrt_image);
  bool completed = false;
  append_kernel_completion(ops, image_eig, image_cut, sigma_eig, sigma_cut,
                           &completed);

  RecoveryMap r;
  r.channel = make_channel(choi_resynthesize(ops), channel.out_layout,
                           channel.in_layout, "petz(" + channel.id + ")");
  r.source_channel_id = channel.id;
  r.anchor = sigma;
  r.kernel_completed = completed;
  check_anchor(r, image);
  return r;
}

RecoveryMap cmi_petz_map(const MultipartiteState &rho_eb) {
  if (rho_eb.layout.size() != 2)
    throw DimensionMismatch("cmi recovery needs a bipartite state");
  const std::string e_label = rho_eb.layout.labels[0];
  const Eigen::Index de = rho_eb.layout.dims[0], db = rho_eb.layout.dims[1];
  const MultipartiteState rho_e = marginal(rho_eb, {e_label});

  const HermitianEig eb_eig = hermitian_eig(rho_eb.matrix);
  const HermitianEig e_eig = hermitian_eig(rho_e.matrix);
  const Matrix sqrt_eb = msqrt(rho_eb.matrix);
  const Matrix inv_sqrt_e = matrix_function_on_support(
      rho_e.matrix, [](double x) { return 1.0 / std::sqrt(x); });

  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(db));
  for (Eigen::Index b = 0; b < db; ++b) {
    Matrix embed = Matrix::Zero(de * db, de); // (P (x) |b>), P = rho_E^{-1/2}
    for (Eigen::Index ep = 0; ep < de; ++ep)
      embed.row(ep * db + b) = inv_sqrt_e.row(ep);
    ops.push_back(sqrt_eb * embed);
  }
  bool completed = false;
  append_kernel_completion(ops, e_eig, support_cutoff(e_eig), eb_eig,
                           support_cutoff(eb_eig), &completed);

  RecoveryMap r;
  r.channel = make_channel(std::move(ops), sublayout(rho_eb.layout, {e_label}),
                           rho_eb.layout,
                           "petz(tr_" + rho_eb.layout.labels[1] + ")");
  r.source_channel_id = "tr_" + rho_eb.layout.labels[1];
  r.anchor = rho_eb;
  r.kernel_completed = completed;
  check_anchor(r, rho_e.matrix);
  return r;
}

namespace {

RecoveryMap swivel(RecoveryMap base, const Matrix &image_of_sigma, double t) {
  const Matrix left = mexp_i(base.anchor.matrix, -t);
  const Matrix right = mexp_i(image_of_sigma, t);
  for (Matrix &k : base.channel.ops)
    k = (left * k * right).eval();
  base.channel.id = "swivel(" + base.channel.id + ")";
  base.swivel_t = t;
  return base;
}

} // namespace

RecoveryMap swivelled_petz_map(const QuantumChannel &channel,
                               const MultipartiteState &sigma, double t) {
  RecoveryMap base = petz_map(channel, sigma);
  const Matrix image = apply_kraus(channel.ops, sigma.matrix);
  return swivel(std::move(base), image, t);
}

RecoveryMap swivelled_cmi_petz_map(const MultipartiteState &rho_eb, double t) {
  RecoveryMap base = cmi_petz_map(rho_eb);
  const Matrix rho_e = marginal(rho_eb, {rho_eb.layout.labels[0]}).matrix;
  return swivel(std::move(base), rho_e, t);
}

std::vector<double> default_swivel_grid() {
  std::vector<double> g;
  for (int i = -100; i <= 100; ++i)
    g.push_back(i / 10.0);
  return g;
}

namespace {

// Scan workspace: the tripartition merged to single A/E/B factors, recovery
// Kraus ops pre-rotated into the eigenbases of rho_EB and rho_E so that the
// swivelled ops at any t are two diagonal scalings away.
struct ScanCache {
  Eigen::Index da, de, db;
  Matrix sqrt_full;                // sqrt of the permuted global state
  Matrix rho_ae;
  std::vector<Matrix> rotated;     // U_EB^dag L U_E
  HermitianEig eb_eig, e_eig;
};

double scan_score(const ScanCache &c, double t) {
  const Eigen::Index de = c.de, deb = c.de * c.db;
  Vector phase_out(deb), phase_in(de);
  for (Eigen::Index i = 0; i < deb; ++i)
    phase_out[i] = std::exp(Complex(0, -t * c.eb_eig.eigenvalues[i]));
  for (Eigen::Index i = 0; i < de; ++i)
    phase_in[i] = std::exp(Complex(0, t * c.e_eig.eigenvalues[i]));
  std::vector<Matrix> ops;
  ops.reserve(c.rotated.size());
  for (const Matrix &m : c.rotated)
    ops.push_back(c.eb_eig.eigenvectors * phase_out.asDiagonal() * m *
                  phase_in.asDiagonal() * c.e_eig.eigenvectors.adjoint());

  Matrix rec = Matrix::Zero(c.da * deb, c.da * deb);
  for (const Matrix &k : ops)
    for (Eigen::Index s = 0; s < c.da; ++s)
      for (Eigen::Index sp = 0; sp < c.da; ++sp)
        rec.block(s * deb, sp * deb, deb, deb).noalias() +=
            k * c.rho_ae.block(s * de, sp * de, de, de) * k.adjoint();
  rec = ((rec + rec.adjoint()) / 2.0).eval();
  const double f =
      std::clamp(nuclear_norm(c.sqrt_full * msqrt(rec)), 0.0, 1.0);
  if (f <= 0)
    return std::numeric_limits<double>::infinity();
  return -2.0 * std::log2(f);
}

} // namespace

SwivelScan best_swivel_scan(const MultipartiteState &rho,
                            const std::vector<std::string> &a,
                            const std::vector<std::string> &e,
                            const std::vector<std::string> &b,
                            const std::vector<double> &grid) {
  return best_swivel_scan(rho, a, e, b, grid, nullptr);
}

SwivelScan best_swivel_scan(const MultipartiteState &rho,
                            const std::vector<std::string> &a,
                            const std::vector<std::string> &e,
                            const std::vector<std::string> &b,
                            const std::vector<double> &grid,
                            RecoveryMap *winner) {
  if (grid.empty())
    throw DomainError("swivel grid is empty");
  std::vector<std::string> order = a;
  order.insert(order.end(), e.begin(), e.end());
  order.insert(order.end(), b.begin(), b.end());
  const MultipartiteState perm = permute(rho, order);
  MultipartiteState merged{perm.matrix,
                           {{"A", "E", "B"},
                            {static_cast<int>(rho.layout.dim_of(a)),
                             static_cast<int>(rho.layout.dim_of(e)),
                             static_cast<int>(rho.layout.dim_of(b))}}};
  const MultipartiteState rho_eb = marginal(merged, {"E", "B"});
  const RecoveryMap base = cmi_petz_map(rho_eb);

  ScanCache c;
  c.da = merged.layout.dims[0];
  c.de = merged.layout.dims[1];
  c.db = merged.layout.dims[2];
  c.sqrt_full = msqrt(merged.matrix);
  c.rho_ae = marginal(merged, {"A", "E"}).matrix;
  c.eb_eig = hermitian_eig(rho_eb.matrix);
  c.e_eig = hermitian_eig(marginal(merged, {"E"}).matrix);
  for (const Matrix &k : base.channel.ops)
    c.rotated.push_back(c.eb_eig.eigenvectors.adjoint() * k *
                        c.e_eig.eigenvectors);

  SwivelScan result;
  double best = std::numeric_limits<double>::infinity();
  double t_best = grid[0];
  std::size_t i_best = 0;
  constexpr double kTieTol = 1e-12;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = scan_score(c, grid[i]);
    const bool tie = std::abs(s - best) <= kTieTol;
    const bool better =
        s < best - kTieTol ||
        (tie && (std::abs(grid[i]) < std::abs(t_best) - kTieTol ||
                 (std::abs(std::abs(grid[i]) - std::abs(t_best)) <= kTieTol &&
                  grid[i] < t_best)));
    if (better) {
      best = s;
      t_best = grid[i];
      i_best = i;
    }
  }

  // One golden-section pass between the coarse minimum's grid neighbours.
  double step = 0.1;
  if (i_best > 0)
    step = grid[i_best] - grid[i_best - 1];
  else if (grid.size() > 1)
    step = grid[1] - grid[0];
  double lo = t_best - std::abs(step), hi = t_best + std::abs(step);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = scan_score(c, x1), f2 = scan_score(c, x2);
  for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = scan_score(c, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = scan_score(c, x2);
    }
  }
  const double t_ref = f1 <= f2 ? x1 : x2;
  const double s_ref = std::min(f1, f2);
  if (s_ref < best - kTieTol) {
    best = s_ref;
    t_best = t_ref;
  }

  result.t_best = t_best;
  result.score_best = best;
  result.fidelity_best = std::pow(2.0, -best / 2.0);
  result.cmi = conditional_mutual_information(merged, {"A"}, {"B"}, {"E"});
  result.bound_holds = best <= result.cmi + 1e-6;
  if (winner) {
    if (e.size() == 1 && b.size() == 1) {
      const MultipartiteState eb_orig =
          permute(marginal(rho, {e[0], b[0]}), {e[0], b[0]});
      *winner = swivelled_cmi_petz_map(eb_orig, t_best);
    } else {
      *winner = swivelled_cmi_petz_map(rho_eb, t_best);
    }
  }
  return result;
}

} // namespace qrecover
