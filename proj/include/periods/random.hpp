#pragma once

// Seeded generators for test instances. Output depends only on the seed:
// raw mt19937_64 words are mapped to numbers by fixed arithmetic rather than
// the implementation-defined std distributions.

#include <complex>
#include <cstdint>
#include <random>
#include <utility>

#include "periods/intlat.hpp"
#include "periods/linalg.hpp"

namespace periods {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) {
    const double u = double(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  /// Uniform in [lo, hi], by rejection.
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = std::uint64_t(hi - lo) + 1;
    const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t(0) / span) * span;
    std::uint64_t x;
    do x = engine_();
    while (limit != 0 && x >= limit);
    return lo + std::int64_t(span == 0 ? x : x % span);
  }

  std::complex<double> complex_uniform(double lo, double hi) {
    const double re = uniform(lo, hi);
    return {re, uniform(lo, hi)};
  }

 private:
  std::mt19937_64 engine_;
};

struct UnimodularPair {
  IntegerMatrix U;
  IntegerMatrix inverse;
};

/// Product of random elementary column operations (shears with multipliers in
/// [-2, 2], swaps, sign flips), together with its exact inverse.
inline UnimodularPair random_unimodular(std::size_t n, Rng& rng, int steps = -1) {
  UnimodularPair p{IntegerMatrix::identity(n), IntegerMatrix::identity(n)};
  if (n == 0) return p;
  if (steps < 0) steps = int(3 * n);
  for (int s = 0; s < steps; ++s) {
    const auto i = std::size_t(rng.integer(0, std::int64_t(n) - 1));
    const auto j = std::size_t(rng.integer(0, std::int64_t(n) - 1));
    const auto kind = rng.integer(0, 5);
    if (kind == 0) {
      p.U.swap_columns(i, j);
      p.inverse.swap_rows(i, j);
    } else if (kind == 1) {
      p.U.negate_column(i);
      p.inverse.negate_row(i);
    } else if (i != j) {
      // U <- U E with E = I + k e_j e_i^T; E^{-1} = I - k e_j e_i^T
      const Integer k = rng.integer(-2, 2);
      p.U.add_column_multiple(i, j, k);
      p.inverse.add_row_multiple(j, i, -k);
    }
  }
  return p;
}

template <class Real = double>
RealMatrix<Real> random_real_matrix(Eigen::Index rows, Eigen::Index cols, double lo, double hi,
                                    Rng& rng) {
  RealMatrix<Real> A(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) A(i, j) = Real(rng.uniform(lo, hi));
  return A;
}

/// Square matrix with entries in [lo, hi), redrawn until |det| >= min_abs_det.
template <class Real = double>
RealMatrix<Real> random_invertible_real(Eigen::Index n, double lo, double hi, double min_abs_det,
                                        Rng& rng) {
  while (true) {
    RealMatrix<Real> A = random_real_matrix<Real>(n, n, lo, hi, rng);
    if (std::abs(A.determinant()) >= Real(min_abs_det)) return A;
  }
}

/// Complex square matrix with real and imaginary parts in [lo, hi), redrawn
/// until |det| >= min_abs_det.
template <class Real = double>
ComplexMatrix<Real> random_invertible_complex(Eigen::Index n, double lo, double hi,
                                              double min_abs_det, Rng& rng) {
  while (true) {
    ComplexMatrix<Real> A(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        auto z = rng.complex_uniform(lo, hi);
        A(i, j) = {Real(z.real()), Real(z.imag())};
      }
    if (std::abs(A.determinant()) >= Real(min_abs_det)) return A;
  }
}

}  // namespace periods
