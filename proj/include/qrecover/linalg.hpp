/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef QRECOVER_LINALG_HPP_
#define QRECOVER_LINALG_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "qrecover/errors.hpp"
#include "qrecover/layout.hpp"

// Dense complex linear-algebra kernel. Free functions over Eigen expressions,
// templated on the scalar through MatrixBase; the rest of the library
// instantiates them at std::complex<double>.

namespace qrecover {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kHermTol = 1e-10;

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived> &m) {
  return m.derived().cwiseAbs().maxCoeff();
}

template <class Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived> &m, double tol = kHermTol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.derived() - m.derived().adjoint()) <= tol;
}

template <class Scalar>
struct HermitianEigT {
  Eigen::VectorXd eigenvalues; // descending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> eigenvectors; // columns
};

using HermitianEig = HermitianEigT<Complex>;

// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
// Symmetrizes (m + m^dagger)/2 first; inputs further than kHermTol from
// Hermitian are rejected rather than silently symmetrized.
template <class Derived>
HermitianEigT<typename Derived::Scalar>
hermitian_eig(const Eigen::MatrixBase<Derived> &m) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.rows() != m.cols())
    throw NotHermitian("matrix is not square");
  if (max_abs(m.derived() - m.derived().adjoint()) > kHermTol)
    throw NotHermitian("max-abs deviation of m - m^dagger exceeds 1e-10");
  Mat sym = (m.derived() + m.derived().adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym);
  if (solver.info() != Eigen::Success)
    throw NoConvergence("self-adjoint eigensolver failed");
  HermitianEigT<Scalar> out;
  const auto n = m.rows();
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = Mat(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  return out;
}

// f applied to the spectrum on the support: eigenvalues <= cutoff map to 0,
// others to f(lambda). cutoff < 0 selects the default 1e-12 * lambda_max
// (relative, so nearly rank-deficient inputs stay well conditioned).
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
matrix_function_on_support(const Eigen::MatrixBase<Derived> &m,
                           const std::function<double(double)> &f,
                           double support_cutoff = -1.0) {
  auto eig = hermitian_eig(m);
  const auto &lam = eig.eigenvalues;
  if (lam.size() > 0 && lam.minCoeff() < -1e-8)
    throw NotPSD("eigenvalue below -1e-8");
  const double lam_max = lam.size() > 0 ? std::max(0.0, lam.maxCoeff()) : 0.0;
  const double cutoff = support_cutoff < 0 ? 1e-12 * lam_max : support_cutoff;
  Eigen::VectorXd mapped(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    mapped[i] = lam[i] <= cutoff ? 0.0 : f(lam[i]);
  return eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
}

template <class Derived>
auto msqrt(const Eigen::MatrixBase<Derived> &m) {
  return matrix_function_on_support(m, [](double x) { return std::sqrt(x); });
}

// Pseudo-inverse square root: zero on the kernel.
template <class Derived>
auto minv_sqrt(const Eigen::MatrixBase<Derived> &m) {
  return matrix_function_on_support(m, [](double x) { return 1.0 / std::sqrt(x); });
}

// exp(i t H) for Hermitian H; no support cutoff (the kernel gets phase 1).
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
mexp_i(const Eigen::MatrixBase<Derived> &h, double t) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  auto eig = hermitian_eig(h);
  Eigen::VectorXcd phases(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases[i] = std::exp(Complex(0.0, t * eig.eigenvalues[i]));
  return Mat(eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint());
}

// Kronecker product, first factor most significant.
template <class DerivedA, class DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
tensor(const Eigen::MatrixBase<DerivedA> &a, const Eigen::MatrixBase<DerivedB> &b) {
  using Mat = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          a.derived()(i, j) * b.derived();
  return out;
}

template <class Derived>
auto tensor(const Eigen::MatrixBase<Derived> &a, const Eigen::MatrixBase<Derived> &b,
            const Eigen::MatrixBase<Derived> &c) {
  return tensor(tensor(a, b), c);
}

namespace detail {

// full_index = keep_base[k] + rest_base[r] for the mixed-radix split of the
// layout into kept and traced positions.
inline void index_bases(const SubsystemLayout &layout,
                        const std::vector<int> &positions,
                        std::vector<long long> &bases) {
  const auto strides = layout.strides();
  long long count = 1;
  for (int p : positions) count *= layout.dims[p];
  bases.assign(static_cast<std::size_t>(count), 0);
  for (long long idx = 0; idx < count; ++idx) {
    long long rem = idx, base = 0;
    for (int i = static_cast<int>(positions.size()) - 1; i >= 0; --i) {
      const int p = positions[i];
      base += (rem % layout.dims[p]) * strides[p];
      rem /= layout.dims[p];
    }
    bases[static_cast<std::size_t>(idx)] = base;
  }
}

} // namespace detail

// Partial trace onto the `keep` subsystems (kept in layout order).
template <class Derived>
std::pair<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>,
          SubsystemLayout>
partial_trace(const Eigen::MatrixBase<Derived> &m, const SubsystemLayout &layout,
              const std::vector<std::string> &keep) {
  using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.rows() != m.cols() || m.rows() != layout.total_dim())
    throw DimensionMismatch("matrix does not match layout");
  for (const auto &l : keep) (void)layout.index_of(l);

  std::vector<int> keep_pos, rest_pos;
  for (int i = 0; i < layout.size(); ++i) {
    const bool kept = std::find(keep.begin(), keep.end(), layout.labels[i]) != keep.end();
    (kept ? keep_pos : rest_pos).push_back(i);
  }
  std::vector<long long> keep_base, rest_base;
  detail::index_bases(layout, keep_pos, keep_base);
  detail::index_bases(layout, rest_pos, rest_base);

  const auto nk = static_cast<Eigen::Index>(keep_base.size());
  Mat out = Mat::Zero(nk, nk);
  for (Eigen::Index i = 0; i < nk; ++i)
    for (Eigen::Index j = 0; j < nk; ++j) {
      typename Derived::Scalar acc{};
      for (long long r : rest_base)
        acc += m.derived()(keep_base[i] + r, keep_base[j] + r);
      out(i, j) = acc;
    }
  SubsystemLayout out_layout = sublayout(layout, keep);
  return {std::move(out), std::move(out_layout)};
}

// Conjugation by the permutation unitary that reorders the tensor factors to
// `new_order` (a permutation of the layout's labels). The result is indexed by
// the new order; pair it with sublayout(layout, new_order) when tracking labels.
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
permute_subsystems(const Eigen::MatrixBase<Derived> &m, const SubsystemLayout &layout,
                   const std::vector<std::string> &new_order) {
  using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.rows() != m.cols() || m.rows() != layout.total_dim())
    throw DimensionMismatch("matrix does not match layout");
  if (static_cast<int>(new_order.size()) != layout.size())
    throw DimensionMismatch("permutation must mention every label exactly once");
  std::vector<int> positions; // positions[i] = old position of new factor i
  positions.reserve(new_order.size());
  for (const auto &l : new_order) positions.push_back(layout.index_of(l));
  {
    auto sorted = positions;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != static_cast<int>(i))
        throw DimensionMismatch("permutation must mention every label exactly once");
  }

  const auto strides = layout.strides();
  const long long n = layout.total_dim();
  std::vector<long long> map(static_cast<std::size_t>(n));
  for (long long out_idx = 0; out_idx < n; ++out_idx) {
    long long rem = out_idx, in_idx = 0;
    for (int i = static_cast<int>(positions.size()) - 1; i >= 0; --i) {
      const int p = positions[i];
      in_idx += (rem % layout.dims[p]) * strides[p];
      rem /= layout.dims[p];
    }
    map[static_cast<std::size_t>(out_idx)] = in_idx;
  }
  Mat out(n, n);
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j)
      out(i, j) = m.derived()(map[static_cast<std::size_t>(i)],
                              map[static_cast<std::size_t>(j)]);
  return out;
}

// Trace norm of a Hermitian matrix (sum of |eigenvalues|).
template <class Derived>
double trace_norm_hermitian(const Eigen::MatrixBase<Derived> &m) {
  return hermitian_eig(m).eigenvalues.cwiseAbs().sum();
}

// Nuclear norm (sum of singular values) of an arbitrary matrix.
template <class Derived>
double nuclear_norm(const Eigen::MatrixBase<Derived> &m) {
  using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.rows() >= 32) {
    Eigen::BDCSVD<Mat> svd(m.derived());
    return svd.singularValues().sum();
  }
  Eigen::JacobiSVD<Mat> svd(m.derived());
  return svd.singularValues().sum();
}

} // namespace qrecover

#endif // QRECOVER_LINALG_HPP_
