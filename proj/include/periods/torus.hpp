#pragma once

// Complex tori C^g / M Z^{2g}, their duals, and the hermitian (Faltings)
// metric on the line of top holomorphic forms.
//
// A top form is stored as the coefficient lambda of dz_1 ^ ... ^ dz_g in the
// torus's own standard coordinates. Forms on different tori are only related
// through duality_transport or reparametrize.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "periods/errors.hpp"
#include "periods/exterior.hpp"
#include "periods/intlat.hpp"
#include "periods/linalg.hpp"
#include "periods/report.hpp"

namespace periods {

template <class Real = double>
class ComplexTorus {
 public:
  static constexpr Real default_tolerance = Real(1e-9);

  ComplexTorus(int g, RealMatrix<Real> M, Real tol = default_tolerance)
      : g_(g), M_(std::move(M)), tol_(tol) {
    if (g < 1) raise(ErrorKind::DimensionMismatch, "g must be at least 1");
    if (M_.rows() != 2 * g || M_.cols() != 2 * g)
      raise(ErrorKind::DimensionMismatch, "period matrix must be " + std::to_string(2 * g) + "x" +
                                              std::to_string(2 * g));
    if (!(tol > Real(0))) raise(ErrorKind::DimensionMismatch, "tolerance must be positive");
    det_ = M_.determinant();
    if (!std::isfinite(double(det_)) || is_numerically_singular<Real>(M_, det_))
      raise(ErrorKind::SingularPeriodMatrix, "period matrix is (numerically) singular");
  }

  int g() const noexcept { return g_; }
  const RealMatrix<Real>& period_matrix() const noexcept { return M_; }
  Real det() const noexcept { return det_; }
  Real tolerance() const noexcept { return tol_; }
  CoordinateConvention convention() const { return CoordinateConvention(g_); }

 private:
  int g_;
  RealMatrix<Real> M_;
  Real tol_;
  Real det_;
};

template <class Real>
ComplexTorus<Real> make_torus(int g, RealMatrix<Real> M,
                              Real tol = ComplexTorus<Real>::default_tolerance) {
  return ComplexTorus<Real>(g, std::move(M), tol);
}

/// lambda * dz_1 ^ ... ^ dz_g on a torus of dimension g.
template <class Real = double>
struct HodgeForm {
  int g = 1;
  std::complex<Real> lambda = 1;
};

template <class Real = double>
class NormalizationConstant {
 public:
  explicit NormalizationConstant(Real value = Real(1)) : value_(value) {
    if (!(value > Real(0))) raise(ErrorKind::DimensionMismatch, "C(g) must be positive");
  }
  Real value() const noexcept { return value_; }

 private:
  Real value_;
};

namespace detail {

template <class Real>
void check_form(const ComplexTorus<Real>& T, const HodgeForm<Real>& omega) {
  if (omega.g != T.g())
    raise(ErrorKind::DimensionMismatch, "form of dimension " + std::to_string(omega.g) +
                                            " on a torus of dimension " + std::to_string(T.g()));
}

inline int sign_pow(long exponent) { return exponent % 2 == 0 ? 1 : -1; }

}  // namespace detail

/// (-1)^{g(g+1)/2}
inline int transport_sign(int g) { return detail::sign_pow(long(g) * (g + 1) / 2); }

/// Determinant of M measured against the complex orientation
/// dx_1 ^ dy_1 ^ ... ^ dx_g ^ dy_g. Our coordinate order (x..., y...) differs
/// from the interleaved one by a permutation of sign (-1)^{g(g-1)/2}.
template <class Real>
Real complex_oriented_det(const ComplexTorus<Real>& T) {
  return Real(detail::sign_pow(long(T.g()) * (T.g() - 1) / 2)) * T.det();
}

template <class Real>
ComplexTorus<Real> dual_torus(const ComplexTorus<Real>& T) {
  return ComplexTorus<Real>(T.g(), T.period_matrix().transpose().inverse(), T.tolerance());
}

/// Closed form |lambda|^2 C(g) 2^g |det M|.
template <class Real>
Real faltings_norm_sq(const ComplexTorus<Real>& T, const HodgeForm<Real>& omega,
                      const NormalizationConstant<Real>& C = NormalizationConstant<Real>()) {
  detail::check_form(T, omega);
  return std::norm(omega.lambda) * C.value() * std::ldexp(Real(1), T.g()) * std::abs(T.det());
}

template <class Real>
AlternatingForm<Real> holomorphic_top_form(const CoordinateConvention& conv,
                                           std::complex<Real> lambda) {
  std::vector<AlternatingForm<Real>> factors;
  for (int n = 1; n <= conv.g(); ++n) factors.push_back(basis_dz<Real>(conv, n));
  return lambda * wedge_all(factors, conv.real_dim());
}

template <class Real>
AlternatingForm<Real> antiholomorphic_top_form(const CoordinateConvention& conv,
                                               std::complex<Real> coefficient) {
  std::vector<AlternatingForm<Real>> factors;
  for (int n = 1; n <= conv.g(); ++n) factors.push_back(basis_dzbar<Real>(conv, n));
  return coefficient * wedge_all(factors, conv.real_dim());
}

/// C(g) |integral of omega ^ conj(omega)|, computed symbolically.
template <class Real>
Real faltings_norm_sq_oracle(const ComplexTorus<Real>& T, const HodgeForm<Real>& omega,
                             const NormalizationConstant<Real>& C = NormalizationConstant<Real>()) {
  detail::check_form(T, omega);
  const auto conv = T.convention();
  auto top = wedge(holomorphic_top_form(conv, omega.lambda),
                   antiholomorphic_top_form(conv, std::conj(omega.lambda)));
  return C.value() * std::abs(integrate_top(top, T.period_matrix()));
}

/// The form on dual_torus(T) corresponding to omega:
/// lambda -> lambda * (-1)^{g(g+1)/2} * det M (complex-oriented).
template <class Real>
HodgeForm<Real> duality_transport(const ComplexTorus<Real>& T, const HodgeForm<Real>& omega) {
  detail::check_form(T, omega);
  return {T.g(), omega.lambda * Real(transport_sign(T.g())) * complex_oriented_det(T)};
}

/// (2 pi i)^{-g} * integral of omega ^ (eta * pi^g dzbar_1 ^ ... ^ dzbar_g),
/// evaluated through the exterior algebra.
template <class Real>
std::complex<Real> serre_pairing(const ComplexTorus<Real>& T, const HodgeForm<Real>& omega,
                                 std::complex<Real> eta_bar_coeff) {
  detail::check_form(T, omega);
  const auto conv = T.convention();
  const Real pi = std::numbers::pi_v<Real>;
  const std::complex<Real> eta_scale = eta_bar_coeff * std::pow(pi, Real(T.g()));
  auto top = wedge(holomorphic_top_form(conv, omega.lambda), antiholomorphic_top_form(conv, eta_scale));
  const std::complex<Real> two_pi_i(0, 2 * pi);
  return integrate_top(top, T.period_matrix()) / std::pow(two_pi_i, T.g());
}

template <class Real>
struct Reparametrization {
  ComplexTorus<Real> torus;
  std::complex<Real> coefficient_map;  // lambda_new = coefficient_map * lambda_old
};

/// Change complex coordinates by z -> G z.
template <class Real>
Reparametrization<Real> reparametrize(const ComplexTorus<Real>& T, const ComplexMatrix<Real>& G) {
  if (G.rows() != T.g() || G.cols() != T.g())
    raise(ErrorKind::DimensionMismatch, "coordinate change must be g x g");
  const std::complex<Real> det = G.determinant();
  if (is_numerically_singular<Real>(realify(G), std::norm(det)))
    raise(ErrorKind::SingularMatrix, "coordinate change is singular");
  return {ComplexTorus<Real>(T.g(), realify(G) * T.period_matrix(), T.tolerance()),
          std::complex<Real>(1) / det};
}

/// Change lattice basis by M -> M U, U unimodular.
template <class Real>
ComplexTorus<Real> rebase_lattice(const ComplexTorus<Real>& T, const IntegerMatrix& U) {
  if (U.rows() != std::size_t(2 * T.g()) || U.cols() != std::size_t(2 * T.g()))
    raise(ErrorKind::DimensionMismatch, "lattice change must be 2g x 2g");
  if (!is_unimodular(U)) raise(ErrorKind::NotUnimodular, "lattice change has determinant != +-1");
  return ComplexTorus<Real>(T.g(), T.period_matrix() * to_real_matrix<Real>(U), T.tolerance());
}

/// Hermitian metric duality: norm of omega on T against norm of its transport
/// on the dual, plus the closed form against the symbolic integral when
/// `with_oracle` is set.
template <class Real>
Report verify_hermitian_duality(const ComplexTorus<Real>& T, const HodgeForm<Real>& omega,
                                const NormalizationConstant<Real>& C, bool with_oracle) {
  Report report;
  const Real tol = T.tolerance();
  const auto dual = dual_torus(T);
  report.add_close("faltings_duality", faltings_norm_sq(T, omega, C),
                   faltings_norm_sq(dual, duality_transport(T, omega), C), tol);
  if (with_oracle) {
    report.add_close("faltings_oracle", faltings_norm_sq(T, omega, C),
                     faltings_norm_sq_oracle(T, omega, C), tol);
    report.add_close("serre_pairing",
                     serre_pairing(T, HodgeForm<Real>{T.g(), 1}, std::complex<Real>(1)).real(),
                     Real(transport_sign(T.g())) * complex_oriented_det(T), tol);
  }
  return report;
}

}  // namespace periods
