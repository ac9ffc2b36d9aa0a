#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace procstar {

/// Largest singular value of a dense matrix.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real spectral_norm(
    const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (m.size() == 0) return Real(0);
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  using Plain = typename Derived::PlainObject;
  Eigen::BDCSVD<Plain> svd(m.eval());
  return svd.singularValues()(0);
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m, double tol) {
  if (m.rows() != m.cols()) return false;
  using Plain = typename Derived::PlainObject;
  const Plain id = Plain::Identity(m.rows(), m.cols());
  return ((m.adjoint() * m) - id).cwiseAbs().maxCoeff() <= tol;
}

/// Max-entry distance; the comparison metric for algebraic identities.
template <typename A, typename B>
double max_abs_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.size() == 0) return 0.0;
  return static_cast<double>((a - b).cwiseAbs().maxCoeff());
}

/// Distance from a scalar multiple of the identity (best scalar = trace/dim).
template <typename Derived>
double distance_from_scalar(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  using Scalar = typename Derived::Scalar;
  const Scalar lambda = m.trace() / Scalar(static_cast<double>(m.rows()));
  using Plain = typename Derived::PlainObject;
  return static_cast<double>(
      (m - lambda * Plain::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff());
}

/// Integer power by repeated squaring; negative exponents use the adjoint (unitary input).
template <typename Derived>
typename Derived::PlainObject unitary_power(const Eigen::MatrixBase<Derived>& m,
                                            std::int64_t e) {
  using Plain = typename Derived::PlainObject;
  Plain base = e < 0 ? Plain(m.adjoint()) : Plain(m);
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  Plain acc = Plain::Identity(m.rows(), m.cols());
  while (n) {
    if (n & 1u) acc = acc * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return acc;
}

/// Random complex matrix with i.i.d. standard normal parts.
inline Eigen::MatrixXcd random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = {n01(rng), n01(rng)};
  return m;
}

}  // namespace procstar
