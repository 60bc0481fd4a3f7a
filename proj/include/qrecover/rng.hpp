/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef QRECOVER_RNG_HPP_
#define QRECOVER_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

#include "qrecover/linalg.hpp"

namespace qrecover {

// All randomness in the library flows through this generator so that reports
// are reproducible across platforms and standard-library implementations:
//  - engine: std::mt19937_64 (bit-exact by the standard),
//  - uniforms: top 53 bits scaled to [0,1),
//  - normals: Box-Muller on those uniforms (std::normal_distribution is NOT
//    portable across implementations, so it is never used here),
//  - campaign trial i uses seed (base_seed + i).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection-free modulo is biased for huge n; all n used here are tiny,
    // still, do the textbook rejection to keep the stream well defined.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  // Standard normal via Box-Muller; generates pairs, caches the second.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  // Complex standard normal: independent N(0,1) real and imaginary parts.
  Complex cnormal() {
    const double re = normal();
    return Complex(re, normal());
  }

  // Matrix of iid complex standard normals, filled row by row.
  Matrix ginibre(int rows, int cols) {
    Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) g(i, j) = cnormal();
    return g;
  }

  // Haar-random unitary: QR of a Ginibre matrix with the R-diagonal phases
  // folded back in (otherwise the distribution is not Haar).
  Matrix haar_unitary(int n) {
    Matrix g = ginibre(n, n);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Vector diag = qr.matrixQR().diagonal();
    for (int i = 0; i < n; ++i) {
      const double a = std::abs(diag[i]);
      q.col(i) *= a > 0 ? diag[i] / a : Complex(1, 0);
    }
    return q;
  }

  // Haar-random pure state vector.
  Vector haar_ket(int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = cnormal();
    return v / v.norm();
  }

  // Point on the probability simplex, uniform in the Dirichlet(1,..,1) sense.
  RealVector simplex(int n) {
    RealVector w(n);
    for (int i = 0; i < n; ++i) w[i] = -std::log(1.0 - uniform());
    return w / w.sum();
  }

private:
  std::mt19937_64 gen_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

} // namespace qrecover

#endif // QRECOVER_RNG_HPP_
