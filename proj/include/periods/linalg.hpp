#pragma once

// Dense floating-point helpers shared by the exterior, torus and real-structure
// modules.

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "periods/intlat.hpp"

namespace periods {

template <class Real>
using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

template <class Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <class Real>
RealMatrix<Real> to_real_matrix(const IntegerMatrix& a) {
  RealMatrix<Real> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(i, j) = a(i, j).template convert_to<Real>();
  return out;
}

/// Ratio of largest to smallest singular value.
template <class Real>
Real condition_number(const RealMatrix<Real>& a) {
  if (a.size() == 0) return Real(1);
  const Eigen::JacobiSVD<RealMatrix<Real>> svd(a);
  const auto& sv = svd.singularValues();
  return sv(0) / sv(sv.size() - 1);
}

/// Singular when det is zero or non-finite, or when the smallest singular
/// value is below 1e-12 times the largest.
template <class Real>
bool is_numerically_singular(const RealMatrix<Real>& a, Real det) {
  if (!(std::abs(det) > Real(0)) || !std::isfinite(double(det))) return true;
  if (a.size() == 0) return false;
  const Eigen::JacobiSVD<RealMatrix<Real>> svd(a);
  const auto& sv = svd.singularValues();
  return !(sv(sv.size() - 1) >= Real(1e-12) * sv(0));
}

template <class Real>
Real relative_error(Real lhs, Real rhs) {
  const Real diff = std::abs(lhs - rhs);
  const Real scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == Real(0) ? Real(0) : diff / scale;
}

}  // namespace periods
