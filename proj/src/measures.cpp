/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qrecover/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qrecover/info.hpp"
#include "qrecover/linalg.hpp"
#include "qrecover/rng.hpp"
#include "qrecover/states.hpp"

namespace qrecover {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kZeroValue = 1e-7; // entropy sums cannot go below 0

double entropy_of_eigenvalues(const RealVector &w) {
  double s = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w[i] > 1e-15)
      s -= w[i] * std::log(w[i]);
  return s / kLn2;
}

double plain_entropy(const Matrix &m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return entropy_of_eigenvalues(es.eigenvalues());
}

// Entropy of the A marginal of a normalized pure ket on A(x)B.
double marginal_entropy(const Vector &psi, Eigen::Index da, Eigen::Index db) {
  Matrix m(da, db);
  for (Eigen::Index i = 0; i < da; ++i)
    m.row(i) = psi.segment(i * db, db).transpose();
  return plain_entropy(m * m.adjoint());
}

struct MergedBipartite {
  Matrix rho;
  Eigen::Index da = 0, db = 0;
};

MergedBipartite merge_bipartite(const MultipartiteState &rho,
                                const std::vector<std::string> &a,
                                const std::vector<std::string> &b) {
  std::vector<std::string> order = a;
  order.insert(order.end(), b.begin(), b.end());
  MergedBipartite m;
  m.rho = permute(rho, order).matrix;
  m.da = rho.layout.dim_of(a);
  m.db = rho.layout.dim_of(b);
  return m;
}

void rotate_rows(Matrix &v, Eigen::Index j, Eigen::Index k, double theta,
                 double phi) {
  const double c = std::cos(theta), s = std::sin(theta);
  const Complex e = std::exp(Complex(0, phi));
  const auto rj = v.row(j).eval();
  v.row(j) = c * rj + e * s * v.row(k);
  v.row(k) = -std::conj(e) * s * rj + c * v.row(k);
}

Eigen::Index second_index(Rng &rng, Eigen::Index n, Eigen::Index j) {
  Eigen::Index k = static_cast<Eigen::Index>(rng.below(static_cast<long long>(n - 1)));
  return k >= j ? k + 1 : k;
}

Rng restart_rng(unsigned long long seed, int restart) {
  return Rng(seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<unsigned long long>(restart) + 1)));
}

// ---- entanglement of formation ------------------------------------------

double decomposition_value(const Matrix &kcols, const Matrix &v, Eigen::Index da,
                           Eigen::Index db) {
  const Matrix psi = kcols * v.transpose();
  double total = 0;
  for (Eigen::Index i = 0; i < psi.cols(); ++i) {
    const double p = psi.col(i).squaredNorm();
    if (p < 1e-14)
      continue;
    total += p * marginal_entropy(psi.col(i) / std::sqrt(p), da, db);
  }
  return total;
}

struct SearchOutcome {
  double value = 0;
  Matrix v;
  bool converged = false;
};

// Random-Givens descent with geometric step decay, then greedy pair sweeps.
SearchOutcome formation_search(const Matrix &kcols, Matrix v, Eigen::Index da,
                               Eigen::Index db, Rng rng) {
  constexpr int kSteps = 200;
  constexpr double kScaleHi = 0.7, kScaleLo = 2e-3;
  const Eigen::Index m = v.rows();
  SearchOutcome out;
  out.value = decomposition_value(kcols, v, da, db);
  if (m < 2) {
    out.converged = true;
    out.v = std::move(v);
    return out;
  }
  for (int step = 0; step < kSteps && out.value > kZeroValue; ++step) {
    const double scale =
        kScaleHi * std::pow(kScaleLo / kScaleHi, step / double(kSteps - 1));
    const Eigen::Index j = static_cast<Eigen::Index>(rng.below(m));
    const Eigen::Index k = second_index(rng, m, j);
    Matrix trial = v;
    rotate_rows(trial, j, k, scale * rng.normal(), 2 * M_PI * rng.uniform());
    const double val = decomposition_value(kcols, trial, da, db);
    if (val < out.value) {
      out.value = val;
      v = std::move(trial);
    }
  }

  static const double kAngles[] = {0.05, 0.15, 0.4, 0.8, 1.2};
  static const double kPhases[] = {0, M_PI / 2, M_PI, 3 * M_PI / 2};
  bool improved = true;
  int sweeps = 0;
  while (improved && sweeps < 40 && out.value > kZeroValue) {
    improved = false;
    ++sweeps;
    for (Eigen::Index j = 0; j + 1 < m; ++j)
      for (Eigen::Index k = j + 1; k < m; ++k)
        for (double theta : kAngles)
          for (double phi : kPhases) {
            Matrix trial = v;
            rotate_rows(trial, j, k, theta, phi);
            const double val = decomposition_value(kcols, trial, da, db);
            if (val < out.value - 1e-10) {
              out.value = val;
              v = std::move(trial);
              improved = true;
            }
          }
  }
  out.converged = !improved || out.value <= kZeroValue;
  out.v = std::move(v);
  return out;
}

} // namespace

int default_ensemble_size(int rank) {
  return std::max(rank, std::min(2 * rank + 4, 16));
}

MeasureEstimate entanglement_of_formation(const MultipartiteState &rho,
                                          const std::vector<std::string> &a,
                                          const std::vector<std::string> &b,
                                          int restarts, int ensemble_size,
                                          unsigned long long seed) {
  if (restarts < 1)
    throw DomainError("need at least one restart");
  const MergedBipartite merged = merge_bipartite(rho, a, b);
  const HermitianEig eig = hermitian_eig(merged.rho);
  const double cutoff = 1e-12 * std::max(eig.eigenvalues[0], 0.0);
  Eigen::Index rank = 0;
  while (rank < eig.eigenvalues.size() && eig.eigenvalues[rank] > cutoff)
    ++rank;
  if (ensemble_size < rank)
    throw DomainError("ensemble size below the state rank");

  Matrix kcols(merged.rho.rows(), rank);
  for (Eigen::Index j = 0; j < rank; ++j)
    kcols.col(j) = std::sqrt(eig.eigenvalues[j]) * eig.eigenvectors.col(j);

  const Eigen::Index m = ensemble_size;
  MeasureEstimate est;
  est.kind = MeasureEstimate::Kind::heuristic_min;
  est.restarts = restarts;
  double best = std::numeric_limits<double>::infinity();
  Matrix best_v;
  for (int r = 0; r < restarts; ++r) {
    Rng rng = restart_rng(seed, r);
    Matrix v0;
    if (r == 0) {
      v0 = Matrix::Zero(m, rank);
      v0.topRows(rank) = Matrix::Identity(rank, rank);
    } else {
      const Matrix g = rng.ginibre(m, rank);
      Eigen::HouseholderQR<Matrix> qr(g);
      v0 = qr.householderQ() * Matrix::Identity(m, rank);
    }
    const SearchOutcome out =
        formation_search(kcols, std::move(v0), merged.da, merged.db, rng);
    if (out.value < best - 1e-12) {
      best = out.value;
      best_v = out.v;
      est.converged = out.converged;
    }
    if (best <= kZeroValue)
      break;
  }

  est.value = best;
  PureDecomposition dec;
  const Matrix psi = kcols * best_v.transpose();
  for (Eigen::Index i = 0; i < psi.cols(); ++i) {
    const double p = psi.col(i).squaredNorm();
    if (p < 1e-12)
      continue;
    dec.weights.push_back(p);
    dec.kets.push_back(psi.col(i) / std::sqrt(p));
  }
  est.decomposition = std::move(dec);
  return est;
}

// ---- squashed entanglement upper bound ----------------------------------

namespace {

struct EsqWorkspace {
  Eigen::Index da, db, de, dg;
  Matrix m1; // sqrt(rho_AB), columns indexed by the purifier
  SubsystemLayout abe_layout;
};

double esq_value(const EsqWorkspace &ws, const Matrix &w, Matrix *rho_abe_out) {
  const Eigen::Index dab = ws.da * ws.db;
  Matrix psi2(dab * ws.de, ws.dg);
  for (Eigen::Index i = 0; i < dab; ++i) {
    const Vector blk = w * ws.m1.row(i).transpose();
    for (Eigen::Index e = 0; e < ws.de; ++e)
      psi2.row(i * ws.de + e) = blk.segment(e * ws.dg, ws.dg).transpose();
  }
  const Matrix rho_abe = psi2 * psi2.adjoint();
  const Matrix rho_ae = partial_trace(rho_abe, ws.abe_layout, {"A", "E"}).first;
  const Matrix rho_be = partial_trace(rho_abe, ws.abe_layout, {"B", "E"}).first;
  const Matrix rho_e = partial_trace(rho_abe, ws.abe_layout, {"E"}).first;
  const double s_abe = plain_entropy(psi2.adjoint() * psi2); // same spectrum
  const double cmi =
      plain_entropy(rho_ae) + plain_entropy(rho_be) - plain_entropy(rho_e) - s_abe;
  if (rho_abe_out)
    *rho_abe_out = rho_abe;
  return 0.5 * cmi;
}

void check_candidate(const EsqWorkspace &ws, const Matrix &w, const Matrix &rho) {
  Matrix rho_abe;
  esq_value(ws, w, &rho_abe);
  const Matrix rho_ab = partial_trace(rho_abe, ws.abe_layout, {"A", "B"}).first;
  if (trace_distance(rho_ab, rho) > 1e-8)
    throw BadDecomposition("extension candidate does not extend the state");
}

SearchOutcome esq_search(const EsqWorkspace &ws, Matrix w, Rng rng) {
  constexpr int kSteps = 200;
  constexpr double kScaleHi = 0.7, kScaleLo = 2e-3;
  const Eigen::Index n = w.rows();
  SearchOutcome out;
  out.value = esq_value(ws, w, nullptr);
  if (n < 2) {
    out.converged = true;
    out.v = std::move(w);
    return out;
  }
  int last_accept = -1;
  for (int step = 0; step < kSteps && out.value > kZeroValue; ++step) {
    const double scale =
        kScaleHi * std::pow(kScaleLo / kScaleHi, step / double(kSteps - 1));
    const Eigen::Index j = static_cast<Eigen::Index>(rng.below(n));
    const Eigen::Index k = second_index(rng, n, j);
    Matrix trial = w;
    rotate_rows(trial, j, k, scale * rng.normal(), 2 * M_PI * rng.uniform());
    const double val = esq_value(ws, trial, nullptr);
    if (val < out.value) {
      out.value = val;
      w = std::move(trial);
      last_accept = step;
    }
  }
  out.converged = last_accept < kSteps - 50 || out.value <= kZeroValue;
  out.v = std::move(w);
  return out;
}

} // namespace

MeasureEstimate squashed_entanglement_upper_bound(
    const MultipartiteState &rho, const std::vector<std::string> &a,
    const std::vector<std::string> &b, int env_dim, int restarts,
    unsigned long long seed,
    const std::optional<MultipartiteState> &supplied_extension) {
  if (env_dim < 1)
    throw DomainError("environment dimension must be at least 1");
  if (restarts < 1)
    throw DomainError("need at least one restart");
  const MergedBipartite merged = merge_bipartite(rho, a, b);
  const Eigen::Index dab = merged.da * merged.db;
  if (dab * env_dim > kDimensionCap)
    throw DimensionCap("extension dimension exceeds the cap");

  EsqWorkspace ws;
  ws.da = merged.da;
  ws.db = merged.db;
  ws.de = env_dim;
  ws.m1 = msqrt(merged.rho);
  ws.abe_layout = {{"A", "B", "E"},
                   {static_cast<int>(merged.da), static_cast<int>(merged.db),
                    static_cast<int>(env_dim)}};
  const Matrix pinv_sqrt = matrix_function_on_support(
      merged.rho, [](double x) { return 1.0 / std::sqrt(x); });
  const Eigen::Index dp = dab;

  std::vector<std::pair<Matrix, Eigen::Index>> candidates; // (W, dG)

  // Purifier embedding.
  if (env_dim >= dp) {
    Matrix w = Matrix::Zero(env_dim, dp);
    for (Eigen::Index p = 0; p < dp; ++p)
      w(p, p) = 1.0;
    candidates.emplace_back(std::move(w), 1);
  } else {
    Matrix w = Matrix::Zero(env_dim * dp, dp);
    for (Eigen::Index p = 0; p < dp; ++p)
      w((p % env_dim) * dp + p, p) = 1.0;
    candidates.emplace_back(std::move(w), dp);
  }

  // Formation extension from an internal decomposition search.
  const MeasureEstimate eof = entanglement_of_formation(
      rho, a, b, restarts, default_ensemble_size(static_cast<int>(dab)), seed + 1);
  const PureDecomposition &dec = *eof.decomposition;
  const Eigen::Index used = static_cast<Eigen::Index>(dec.weights.size());
  if (env_dim >= used) {
    const Eigen::Index dg = used;
    Matrix m2 = Matrix::Zero(dab, env_dim * dg);
    for (Eigen::Index i = 0; i < used; ++i)
      m2.col(i * dg + i) = std::sqrt(dec.weights[i]) * dec.kets[i];
    candidates.emplace_back((pinv_sqrt * m2).transpose().eval(), dg);
  }

  // Caller-supplied extension.
  if (supplied_extension) {
    const auto &sup = *supplied_extension;
    std::string e_label;
    for (const std::string &l : sup.layout.labels) {
      bool in_ab = std::find(a.begin(), a.end(), l) != a.end() ||
                   std::find(b.begin(), b.end(), l) != b.end();
      if (!in_ab)
        e_label = l;
    }
    if (e_label.empty() ||
        sup.layout.size() != static_cast<int>(a.size() + b.size() + 1))
      throw DimensionMismatch("supplied extension must add one factor to A,B");
    std::vector<std::string> order = a;
    order.insert(order.end(), b.begin(), b.end());
    order.push_back(e_label);
    const MultipartiteState sup_p = permute(sup, order);
    const Eigen::Index de_s = sup.layout.dim_of(e_label);
    if (de_s > env_dim)
      throw DomainError("supplied extension environment exceeds env_dim");
    const Matrix sup_ab =
        partial_trace(sup_p.matrix, sup_p.layout,
                      std::vector<std::string>(order.begin(), order.end() - 1))
            .first;
    if (trace_distance(sup_ab, merged.rho) > 1e-8)
      throw InvalidState("supplied extension does not extend the input state");
    const Matrix sqrt_sup = msqrt(sup_p.matrix);
    const Eigen::Index dq = sqrt_sup.cols();
    Matrix m2 = Matrix::Zero(dab, env_dim * dq);
    for (Eigen::Index i = 0; i < dab; ++i)
      for (Eigen::Index ep = 0; ep < de_s; ++ep)
        for (Eigen::Index q = 0; q < dq; ++q)
          m2(i, ep * dq + q) = sqrt_sup(i * de_s + ep, q);
    candidates.emplace_back((pinv_sqrt * m2).transpose().eval(), dq);
  }

  MeasureEstimate est;
  est.kind = MeasureEstimate::Kind::upper_bound;
  est.restarts = restarts;
  double best = std::numeric_limits<double>::infinity();
  Matrix best_w;
  Eigen::Index best_dg = 0;
  int candidate_index = 0;
  for (const auto &[w0, dg] : candidates) {
    ws.dg = dg;
    check_candidate(ws, w0, merged.rho);
    for (int r = 0; r < restarts; ++r) {
      const SearchOutcome out =
          esq_search(ws, w0, restart_rng(seed, candidate_index * 1000 + r));
      if (out.value < best - 1e-12) {
        best = out.value;
        best_w = out.v;
        best_dg = dg;
        est.converged = out.converged;
      }
      if (best <= kZeroValue)
        break;
    }
    ++candidate_index;
    if (best <= kZeroValue)
      break;
  }

  ws.dg = best_dg;
  Matrix rho_abe;
  est.value = esq_value(ws, best_w, &rho_abe);
  est.extension = MultipartiteState{std::move(rho_abe), ws.abe_layout};
  return est;
}

// ---- formation-derived constructions ------------------------------------

namespace {

void check_reconstruction(const Matrix &rho, const PureDecomposition &dec) {
  if (dec.weights.size() != dec.kets.size() || dec.weights.empty())
    throw BadDecomposition("malformed decomposition");
  Matrix acc = Matrix::Zero(rho.rows(), rho.cols());
  for (std::size_t i = 0; i < dec.weights.size(); ++i)
    acc.noalias() += dec.weights[i] * dec.kets[i] * dec.kets[i].adjoint();
  if (max_abs(acc - rho) > 1e-9)
    throw BadDecomposition("decomposition does not reconstruct the state");
}

} // namespace

double formation_extension_cmi(const MultipartiteState &rho,
                               const std::vector<std::string> &a,
                               const std::vector<std::string> &b,
                               const PureDecomposition &decomposition) {
  const MergedBipartite merged = merge_bipartite(rho, a, b);
  check_reconstruction(merged.rho, decomposition);
  const Eigen::Index m = static_cast<Eigen::Index>(decomposition.weights.size());
  const Eigen::Index dab = merged.da * merged.db;
  Matrix rho_abe = Matrix::Zero(dab * m, dab * m);
  for (Eigen::Index e = 0; e < m; ++e)
    for (Eigen::Index i = 0; i < dab; ++i)
      for (Eigen::Index j = 0; j < dab; ++j)
        rho_abe(i * m + e, j * m + e) =
            decomposition.weights[e] * decomposition.kets[e][i] *
            std::conj(decomposition.kets[e][j]);
  const MultipartiteState state{
      std::move(rho_abe),
      {{"A", "B", "E"},
       {static_cast<int>(merged.da), static_cast<int>(merged.db),
        static_cast<int>(m)}}};
  return 0.5 * conditional_mutual_information(state, {"A"}, {"B"}, {"E"});
}

SeparableApproximation separable_from_formation(const MultipartiteState &rho,
                                                const std::vector<std::string> &a,
                                                const std::vector<std::string> &b,
                                                const PureDecomposition &decomposition) {
  const MergedBipartite merged = merge_bipartite(rho, a, b);
  check_reconstruction(merged.rho, decomposition);
  const SubsystemLayout ab_layout{
      {"A", "B"}, {static_cast<int>(merged.da), static_cast<int>(merged.db)}};
  Matrix sigma = Matrix::Zero(merged.rho.rows(), merged.rho.cols());
  double eps = 0;
  for (std::size_t i = 0; i < decomposition.weights.size(); ++i) {
    const Matrix phi = decomposition.kets[i] * decomposition.kets[i].adjoint();
    const Matrix rho_a = partial_trace(phi, ab_layout, {"A"}).first;
    const Matrix rho_b = partial_trace(phi, ab_layout, {"B"}).first;
    sigma.noalias() += decomposition.weights[i] * tensor(rho_a, rho_b);
    eps += decomposition.weights[i] * plain_entropy(rho_a);
  }
  SeparableApproximation out{{std::move(sigma), ab_layout}, 0, 0};
  out.distance = trace_distance(out.sigma.matrix, merged.rho);
  out.bound = std::sqrt(4.0 * kLn2) * std::sqrt(std::max(eps, 0.0));
  if (out.distance > out.bound + 1e-8)
    throw InvalidState("separable approximation violates its bound");
  return out;
}

double nielsen_bound(double delta, int dim_a, int dim_b) {
  const double e2 = std::exp(-2.0);
  if (delta <= 0 || delta > e2 + 1e-15)
    throw DomainError("delta outside (0, 1/e^2]");
  return 5.0 * std::log2(double(dim_a) * dim_b) * std::sqrt(delta) +
         std::sqrt(delta) * std::log2(delta);
}

} // namespace qrecover
