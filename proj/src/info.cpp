/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qrecover/info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace qrecover {

namespace {

const double kLog2 = std::log(2.0);

double xlog2x(double x) { return x * std::log(x) / kLog2; }

void check_disjoint(const std::vector<std::vector<std::string>> &groups) {
  std::set<std::string> seen;
  for (const auto &g : groups)
    for (const auto &l : g)
      if (!seen.insert(l).second)
        throw OverlappingLabels("label '" + l + "' appears in two groups");
}

} // namespace

EntropyReport entropy_report(const Matrix &rho) {
  auto eig = hermitian_eig(rho);
  const double lam_max =
      eig.eigenvalues.size() > 0 ? std::max(0.0, eig.eigenvalues.maxCoeff()) : 0.0;
  EntropyReport rep;
  rep.cutoff_used = 1e-12 * lam_max;
  double s = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lam = eig.eigenvalues[i];
    if (lam > rep.cutoff_used) {
      s -= xlog2x(lam);
      ++rep.support_rank;
    }
  }
  rep.value = s;
  return rep;
}

double entropy(const MultipartiteState &rho,
               const std::vector<std::string> &subsystems) {
  return entropy_report(marginal(rho, subsystems).matrix).value;
}

double conditional_mutual_information(const MultipartiteState &rho,
                                      const std::vector<std::string> &a,
                                      const std::vector<std::string> &b,
                                      const std::vector<std::string> &e) {
  check_disjoint({a, b, e});
  std::vector<std::string> abe;
  for (const auto *g : {&a, &b, &e})
    abe.insert(abe.end(), g->begin(), g->end());
  MultipartiteState reduced = marginal(rho, abe);

  std::vector<std::string> ae(a), be(b);
  ae.insert(ae.end(), e.begin(), e.end());
  be.insert(be.end(), e.begin(), e.end());
  const double s_ae = entropy(reduced, ae);
  const double s_be = entropy(reduced, be);
  const double s_e = e.empty() ? 0.0 : entropy(reduced, e);
  const double s_abe = entropy_report(reduced.matrix).value;
  return s_ae + s_be - s_e - s_abe;
}

double conditional_multi_information(
    const MultipartiteState &rho, const std::vector<std::vector<std::string>> &parts,
    const std::vector<std::string> &e) {
  auto groups = parts;
  groups.push_back(e);
  check_disjoint(groups);
  std::vector<std::string> all;
  for (const auto &g : groups) all.insert(all.end(), g.begin(), g.end());
  MultipartiteState reduced = marginal(rho, all);

  const double s_e = e.empty() ? 0.0 : entropy(reduced, e);
  double total = 0;
  for (const auto &part : parts) {
    std::vector<std::string> pe(part);
    pe.insert(pe.end(), e.begin(), e.end());
    total += entropy(reduced, pe) - s_e;
  }
  total -= entropy_report(reduced.matrix).value - s_e;
  return total;
}

double relative_entropy(const Matrix &rho, const Matrix &sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw DimensionMismatch("relative entropy needs equal dimensions");
  auto eig_s = hermitian_eig(sigma);
  const double cut_s = 1e-12 * std::max(0.0, eig_s.eigenvalues.maxCoeff());

  // Mass of rho outside sigma's support decides finiteness qualitatively.
  double outside = 0;
  for (Eigen::Index j = 0; j < eig_s.eigenvalues.size(); ++j) {
    if (eig_s.eigenvalues[j] <= cut_s) {
      const Vector v = eig_s.eigenvectors.col(j);
      outside += std::real(v.dot(rho * v));
    }
  }
  if (outside > 1e-9) return std::numeric_limits<double>::infinity();

  auto eig_r = hermitian_eig(rho);
  const double cut_r = 1e-12 * std::max(0.0, eig_r.eigenvalues.maxCoeff());
  double d = 0;
  for (Eigen::Index i = 0; i < eig_r.eigenvalues.size(); ++i)
    if (eig_r.eigenvalues[i] > cut_r) d += xlog2x(eig_r.eigenvalues[i]);
  for (Eigen::Index j = 0; j < eig_s.eigenvalues.size(); ++j) {
    const double s = eig_s.eigenvalues[j];
    if (s > cut_s) {
      const Vector v = eig_s.eigenvectors.col(j);
      d -= std::real(v.dot(rho * v)) * std::log(s) / kLog2;
    }
  }
  return d;
}

double relative_entropy(const MultipartiteState &rho, const MultipartiteState &sigma) {
  return relative_entropy(rho.matrix, sigma.matrix);
}

double fidelity(const Matrix &alpha, const Matrix &beta) {
  const double f = nuclear_norm(Matrix(msqrt(alpha) * msqrt(beta)));
  return std::clamp(f, 0.0, 1.0);
}

double fidelity(const MultipartiteState &alpha, const MultipartiteState &beta) {
  return fidelity(alpha.matrix, beta.matrix);
}

double trace_distance(const MultipartiteState &alpha, const MultipartiteState &beta) {
  return trace_distance(alpha.matrix, beta.matrix);
}

FvdGReport check_fuchs_van_de_graaf(const MultipartiteState &alpha,
                                    const MultipartiteState &beta) {
  const double f = fidelity(alpha, beta);
  FvdGReport rep;
  rep.lhs = 1.0 - f;
  rep.mid = 0.5 * trace_distance(alpha, beta);
  rep.rhs = std::sqrt(std::max(0.0, 1.0 - f * f));
  rep.holds = rep.lhs <= rep.mid + 1e-9 && rep.mid <= rep.rhs + 1e-9;
  return rep;
}

double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0) throw DomainError("binary entropy defined on [0, 1]");
  double s = 0;
  if (x > 0) s -= xlog2x(x);
  if (x < 1) s -= xlog2x(1.0 - x);
  return s;
}

double alicki_fannes_bound(double eps, int dim_a) {
  if (eps < 0.0 || eps > 1.0) throw DomainError("eps must lie in [0, 1]");
  return 8.0 * eps * std::log2(static_cast<double>(dim_a)) +
         4.0 * binary_entropy(eps);
}

} // namespace qrecover
