/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef QRECOVER_INFO_HPP_
#define QRECOVER_INFO_HPP_

#include <string>
#include <vector>

#include "qrecover/state.hpp"

// Entropic and distance functionals. Every entropic quantity is in bits
// (log2); natural-log constants appear explicitly inside bound formulas.

namespace qrecover {

struct EntropyReport {
  double value = 0;      // bits
  int support_rank = 0;  // eigenvalues above the cutoff
  double cutoff_used = 0;
};

EntropyReport entropy_report(const Matrix &rho);

// Von Neumann entropy of the marginal on `subsystems`, in bits.
double entropy(const MultipartiteState &rho,
               const std::vector<std::string> &subsystems);

// S(AE) + S(BE) - S(E) - S(ABE); raw value (strong subadditivity makes it
// >= -1e-8 numerically, negative dust is NOT clamped here -- reports clamp).
// Labels outside a, b, e are traced out first.
double conditional_mutual_information(const MultipartiteState &rho,
                                      const std::vector<std::string> &a,
                                      const std::vector<std::string> &b,
                                      const std::vector<std::string> &e);

// sum_i S(A_i|E) - S(A_1..A_n|E); the n-party generalization of the above.
double conditional_multi_information(const MultipartiteState &rho,
                                     const std::vector<std::vector<std::string>> &parts,
                                     const std::vector<std::string> &e);

// D(rho||sigma) in bits; +infinity when rho has more than 1e-9 eigenvector
// mass outside sigma's support.
double relative_entropy(const Matrix &rho, const Matrix &sigma);
double relative_entropy(const MultipartiteState &rho, const MultipartiteState &sigma);

// Uhlmann fidelity ||sqrt(alpha) sqrt(beta)||_1 in [0, 1].
double fidelity(const Matrix &alpha, const Matrix &beta);
double fidelity(const MultipartiteState &alpha, const MultipartiteState &beta);

// 1-norm of the difference, in [0, 2].
double trace_distance(const MultipartiteState &alpha, const MultipartiteState &beta);

struct FvdGReport {
  double lhs = 0; // 1 - F
  double mid = 0; // (1/2) ||alpha - beta||_1
  double rhs = 0; // sqrt(1 - F^2)
  bool holds = false;
};

// The two-sided fidelity / trace-distance sandwich, checked with 1e-9 slack.
FvdGReport check_fuchs_van_de_graaf(const MultipartiteState &alpha,
                                    const MultipartiteState &beta);

double binary_entropy(double x); // bits; DomainError outside [0, 1]

// Continuity bound 8 eps log2|A| + 4 H2(eps).
double alicki_fannes_bound(double eps, int dim_a);

} // namespace qrecover

#endif // QRECOVER_INFO_HPP_
