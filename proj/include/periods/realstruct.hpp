#pragma once

// Real structures on complex tori: an integer involution C of the lattice
// whose real extension S = M C M^{-1} is antilinear. Component groups of the
// real points come from the lattice Tate cohomology
//   pi_0(A(R)) = ker(C + 1) / im(C - 1),
// and real (BSD) periods integrate |omega| over A(R).

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "periods/errors.hpp"
#include "periods/exterior.hpp"
#include "periods/intlat.hpp"
#include "periods/linalg.hpp"
#include "periods/random.hpp"
#include "periods/report.hpp"
#include "periods/torus.hpp"

namespace periods {

template <class Real = double>
class RealStructure {
 public:
  RealStructure(ComplexTorus<Real> torus, IntegerMatrix C, RealMatrix<Real> S)
      : torus_(std::move(torus)), C_(std::move(C)), S_(std::move(S)) {}

  const ComplexTorus<Real>& torus() const noexcept { return torus_; }
  const IntegerMatrix& conjugation() const noexcept { return C_; }
  /// Action on R^{2g}: M C M^{-1}.
  const RealMatrix<Real>& real_action() const noexcept { return S_; }
  int g() const noexcept { return torus_.g(); }

 private:
  ComplexTorus<Real> torus_;
  IntegerMatrix C_;
  RealMatrix<Real> S_;
};

/// All violated invariants, in the order NotInvolution, WrongFixedRank,
/// NotAntilinear. Empty for a valid structure.
template <class Real>
std::vector<ErrorKind> real_structure_violations(const ComplexTorus<Real>& T,
                                                 const IntegerMatrix& C) {
  const std::size_t n = std::size_t(2 * T.g());
  if (C.rows() != n || C.cols() != n)
    raise(ErrorKind::DimensionMismatch, "conjugation must be " + std::to_string(n) + "x" +
                                            std::to_string(n) + ", got " + C.shape());
  std::vector<ErrorKind> violations;
  const IntegerMatrix I = IntegerMatrix::identity(n);
  if (C * C != I) violations.push_back(ErrorKind::NotInvolution);
  if (kernel_basis(C - I).cols() != std::size_t(T.g()))
    violations.push_back(ErrorKind::WrongFixedRank);
  const RealMatrix<Real>& M = T.period_matrix();
  const RealMatrix<Real> Minv = M.inverse();
  const RealMatrix<Real> Cr = to_real_matrix<Real>(C);
  const RealMatrix<Real> S = M * Cr * Minv;
  const RealMatrix<Real> J = T.convention().template complex_structure<Real>();
  auto inf_norm = [](const RealMatrix<Real>& a) { return a.cwiseAbs().rowwise().sum().maxCoeff(); };
  // rounding in M C M^{-1} grows with the condition of M, not with |S|
  const Real defect = inf_norm(S * J + J * S);
  const Real scale = inf_norm(M) * inf_norm(Cr) * inf_norm(Minv);
  if (!(defect <= T.tolerance() * scale)) violations.push_back(ErrorKind::NotAntilinear);
  return violations;
}

template <class Real>
RealStructure<Real> make_real_structure(const ComplexTorus<Real>& T, const IntegerMatrix& C) {
  auto violations = real_structure_violations(T, C);
  if (!violations.empty()) {
    std::string detail = "conjugation violates";
    for (auto v : violations) detail += std::string(" ") + std::string(to_string(v));
    raise(violations.front(), detail);
  }
  const RealMatrix<Real>& M = T.period_matrix();
  return RealStructure<Real>(T, C, M * to_real_matrix<Real>(C) * M.inverse());
}

/// HNF-canonical basis of ker(C - sign), sign = +1 or -1.
template <class Real>
IntegerMatrix fixed_lattice(const RealStructure<Real>& rs, int sign) {
  if (sign != 1 && sign != -1) raise(ErrorKind::IndexOutOfRange, "sign must be +1 or -1");
  const auto& C = rs.conjugation();
  return kernel_basis(C - Integer(sign) * IntegerMatrix::identity(C.rows()));
}

/// Tate cohomology H^1(<c>, Lambda) = ker(C + 1) / im(C - 1).
template <class Real>
FiniteAbelianGroup tate_h1(const RealStructure<Real>& rs) {
  const auto& C = rs.conjugation();
  const IntegerMatrix I = IntegerMatrix::identity(C.rows());
  return finite_quotient(C - I, fixed_lattice(rs, -1));
}

/// Number of connected components of the real points.
template <class Real>
std::uint64_t component_count(const RealStructure<Real>& rs) {
  return tate_h1(rs).order().template convert_to<std::uint64_t>();
}

/// The conjugation of the dual torus acts by -C^T on Hom(Lambda, Z).
template <class Real>
RealStructure<Real> dual_real_structure(const RealStructure<Real>& rs) {
  const auto dual = dual_torus(rs.torus());
  const IntegerMatrix Cd = -rs.conjugation().transpose();
  try {
    return make_real_structure(dual, Cd);
  } catch (const Error& e) {
    throw std::logic_error(std::string("dual real structure failed validation: ") + e.what());
  }
}

struct IndexFormula {
  Integer index;                // #(Lambda / (Lambda^{c=1} + Lambda^{c=-1}))
  std::uint64_t components = 0;  // #pi_0
  bool holds = false;           // index * #pi_0 == 2^g
};

template <class Real>
IndexFormula index_formula_check(const RealStructure<Real>& rs) {
  const std::size_t n = rs.conjugation().rows();
  const IntegerMatrix sum = hstack(fixed_lattice(rs, 1), fixed_lattice(rs, -1));
  IndexFormula out;
  out.index = finite_quotient(sum, IntegerMatrix::identity(n)).order();
  out.components = component_count(rs);
  out.holds = out.index * out.components == Integer(1) << rs.g();
  return out;
}

namespace detail {

// Images in R^{2g} of the Lambda^{c=sign} basis, one column per vector.
template <class Real>
RealMatrix<Real> fixed_vectors(const RealStructure<Real>& rs, int sign) {
  return rs.torus().period_matrix() * to_real_matrix<Real>(fixed_lattice(rs, sign));
}

// A_z: standard complex coordinates of the Lambda^{c=1} basis, checked to be a
// C-basis of C^g.
template <class Real>
ComplexMatrix<Real> fixed_basis_coordinates(const RealStructure<Real>& rs) {
  const ComplexMatrix<Real> Az = complexify_columns(fixed_vectors(rs, 1));
  Real scale = 1;
  for (Eigen::Index j = 0; j < Az.cols(); ++j) scale *= Az.col(j).norm();
  if (!(std::abs(Az.determinant()) > rs.torus().tolerance() * scale))
    raise(ErrorKind::DegenerateFixedLattice, "fixed lattice does not span C^g over C");
  return Az;
}

}  // namespace detail

/// Integral of |omega| over A(R): |lambda det A_z| * #pi_0.
template <class Real>
Real real_period(const RealStructure<Real>& rs, const HodgeForm<Real>& omega) {
  detail::check_form(rs.torus(), omega);
  const ComplexMatrix<Real> Az = detail::fixed_basis_coordinates(rs);
  return std::abs(omega.lambda * Az.determinant()) * Real(component_count(rs));
}

/// Same quantity through the exterior algebra: pull omega back along the real
/// parametrisation t -> sum t_j z_j and read off the coefficient of dt_1..dt_g.
template <class Real>
Real real_period_oracle(const RealStructure<Real>& rs, const HodgeForm<Real>& omega) {
  detail::check_form(rs.torus(), omega);
  detail::fixed_basis_coordinates(rs);  // precondition only
  const int g = rs.g();
  RealMatrix<Real> L = RealMatrix<Real>::Zero(2 * g, 2 * g);
  L.leftCols(g) = detail::fixed_vectors(rs, 1);
  const auto conv = rs.torus().convention();
  const auto pulled = pullback(holomorphic_top_form(conv, omega.lambda), L);
  IndexSet first(g);
  for (int i = 0; i < g; ++i) first[i] = i + 1;
  return std::abs(pulled.coeff(first)) * Real(component_count(rs));
}

/// BSD metric on the line of top forms; same as the real period.
template <class Real>
Real bsd_norm(const RealStructure<Real>& rs, const HodgeForm<Real>& omega) {
  return real_period(rs, omega);
}

template <class Real = double>
struct DetQRelation {
  Real det_q = 0;            // signed det Q, w = P + iQ in z-coordinates
  Real det_m_tilde = 0;      // signed det of the lattice matrix in z-coordinates
  Real lhs = 0;              // |det Q|
  Real rhs = 0;              // 2^g / #pi_0 * |det M~|
  Real max_abs_p = 0;        // P vanishes up to rounding
  bool holds = false;
};

template <class Real>
DetQRelation<Real> det_q_relation_check(const RealStructure<Real>& rs) {
  const int g = rs.g();
  const ComplexMatrix<Real> Az = detail::fixed_basis_coordinates(rs);
  const ComplexMatrix<Real> Az_inv = Az.inverse();
  const ComplexMatrix<Real> W = Az_inv * complexify_columns(detail::fixed_vectors(rs, -1));
  const RealMatrix<Real> Mt = realify(Az_inv) * rs.torus().period_matrix();

  DetQRelation<Real> out;
  out.det_q = RealMatrix<Real>(W.imag()).determinant();
  out.det_m_tilde = Mt.determinant();
  out.max_abs_p = W.real().cwiseAbs().maxCoeff();
  out.lhs = std::abs(out.det_q);
  out.rhs = std::ldexp(Real(1), g) / Real(component_count(rs)) * std::abs(out.det_m_tilde);
  out.holds = std::abs(out.lhs - out.rhs) <= rs.torus().tolerance() * std::abs(out.rhs);
  return out;
}

/// Real-period duality: component counts of A(R) and B(R) agree, and the BSD
/// norm of omega equals that of its transport to the dual.
template <class Real>
Report verify_real_duality(const RealStructure<Real>& rs, const HodgeForm<Real>& omega) {
  Report report;
  const auto dual = dual_real_structure(rs);
  report.add_exact("component_count", component_count(rs), component_count(dual));
  report.add_close("bsd_duality", bsd_norm(rs, omega),
                   bsd_norm(dual, duality_transport(rs.torus(), omega)), rs.torus().tolerance());
  return report;
}

template <class Real = double>
struct RandomRealTorus {
  ComplexTorus<Real> torus;
  RealStructure<Real> structure;
};

/// Random torus with conjugation, built from a ones of sign +1, b of sign -1
/// and r swap blocks [[0,1],[1,0]], conjugated by a random unimodular matrix.
/// The resulting component count is 2^b, and cond(M) <= 1e4.
template <class Real = double>
RandomRealTorus<Real> random_real_torus(int g, int a, int b, int r, std::uint64_t seed,
                                        Real tol = ComplexTorus<Real>::default_tolerance) {
  if (g < 1 || a < 0 || b < 0 || r < 0 || a + r != g || b + r != g)
    raise(ErrorKind::InvalidCounts, "need a + r = g and b + r = g with a, b, r >= 0 and g >= 1");
  const std::size_t n = std::size_t(2 * g);
  Rng rng(seed);

  IntegerMatrix C0(n, n);
  std::size_t k = 0;
  for (int i = 0; i < a; ++i, ++k) C0(k, k) = 1;
  for (int i = 0; i < b; ++i, ++k) C0(k, k) = -1;
  for (int i = 0; i < r; ++i, k += 2) C0(k, k + 1) = C0(k + 1, k) = 1;

  // Redraw until M is reasonably conditioned; the unimodular twist can
  // otherwise make the lattice nearly degenerate.
  while (true) {
    const auto U = random_unimodular(n, rng);
    const IntegerMatrix C = U.inverse * C0 * U.U;
    const IntegerMatrix I = IntegerMatrix::identity(n);

    // Complex structure J' = [phi on E+, -phi^{-1} on E-] anticommutes with C.
    // Choosing the E+ basis as the real directions and phi of it as the
    // imaginary ones gives M^{-1} = [E+ | E- Phi].
    const RealMatrix<Real> Phi = random_invertible_real<Real>(g, -2, 2, 0.1, rng);
    RealMatrix<Real> Minv(n, n);
    Minv.leftCols(g) = to_real_matrix<Real>(kernel_basis(C - I));
    Minv.rightCols(g) = to_real_matrix<Real>(kernel_basis(C + I)) * Phi;
    const ComplexMatrix<Real> G = random_invertible_complex<Real>(g, -1, 1, 0.1, rng);
    const RealMatrix<Real> M = realify(G) * Minv.inverse();
    if (condition_number(M) > Real(1e4)) continue;

    ComplexTorus<Real> T(g, M, tol);
    auto rs = make_real_structure(T, C);
    return {std::move(T), std::move(rs)};
  }
}

}  // namespace periods
