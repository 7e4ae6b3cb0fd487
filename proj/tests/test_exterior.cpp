#include <gtest/gtest.h>

#include <complex>

#include "oracles.hpp"
#include "periods/exterior.hpp"
#include "periods/random.hpp"

using namespace periods;
using periods::testing::evaluate_form;
using periods::testing::evaluate_wedge;
using Form = AlternatingForm<double>;
using cd = std::complex<double>;

namespace {

const cd I1(0, 1);

Form random_form(int n, int k, Rng& rng, bool gaussian_integers = true) {
  Form f(n, k);
  if (k > n) return f;
  for (const auto& s : periods::testing::subsets(std::size_t(n), std::size_t(k))) {
    if (rng.integer(0, 2) == 0) continue;
    IndexSet idx;
    for (auto i : s) idx.push_back(int(i) + 1);
    cd c = gaussian_integers ? cd(double(rng.integer(-3, 3)), double(rng.integer(-3, 3)))
                             : rng.complex_uniform(-1, 1);
    f.add(idx, c);
  }
  return f;
}

void expect_forms_near(const Form& a, const Form& b, double tol) {
  ASSERT_EQ(a.degree(), b.degree());
  for (const auto& [idx, c] : a.terms()) EXPECT_NEAR(std::abs(c - b.coeff(idx)), 0, tol);
  for (const auto& [idx, c] : b.terms()) EXPECT_NEAR(std::abs(c - a.coeff(idx)), 0, tol);
}

IndexSet all_indices(int n) {
  IndexSet s(n);
  for (int i = 0; i < n; ++i) s[i] = i + 1;
  return s;
}

}  // namespace

TEST(BasisForms, OneDimensional) {
  const CoordinateConvention conv(1);
  const auto dz = basis_dz(conv, 1);
  EXPECT_EQ(dz.coeff({1}), cd(1));
  EXPECT_EQ(dz.coeff({2}), I1);
  const auto dzbar = basis_dzbar(conv, 1);
  EXPECT_EQ(dzbar.coeff({1}), cd(1));
  EXPECT_EQ(dzbar.coeff({2}), -I1);
}

TEST(BasisForms, CoordinateOrdering) {
  const auto dz2 = basis_dz(CoordinateConvention(2), 2);
  EXPECT_EQ(dz2.terms().size(), 2u);
  EXPECT_EQ(dz2.coeff({2}), cd(1));
  EXPECT_EQ(dz2.coeff({4}), I1);
}

TEST(BasisForms, IndexOutOfRange) {
  const CoordinateConvention conv(2);
  for (int n : {0, 3}) {
    try {
      basis_dz(conv, n);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::IndexOutOfRange);
    }
  }
}

TEST(Convention, ComplexStructureSquaresToMinusOne) {
  for (int g = 1; g <= 4; ++g) {
    const auto J = CoordinateConvention(g).complex_structure();
    EXPECT_EQ(J * J, -RealMatrix<double>::Identity(2 * g, 2 * g));
  }
}

TEST(Wedge, AreaForm) {
  const auto w = wedge(Form::monomial(2, {1}), Form::monomial(2, {2}));
  EXPECT_EQ(w.terms().size(), 1u);
  EXPECT_EQ(w.coeff({1, 2}), cd(1));
}

TEST(Wedge, DzWedgeDzbar) {
  const CoordinateConvention conv(1);
  const auto w = wedge(basis_dz(conv, 1), basis_dzbar(conv, 1));
  EXPECT_EQ(w.coeff({1, 2}), cd(0, -2));
}

TEST(Wedge, OddFormSquaresToZero) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = int(rng.integer(2, 6));
    const int k = 2 * int(rng.integer(0, 2)) + 1;
    const auto a = random_form(n, k, rng);
    EXPECT_TRUE(wedge(a, a).is_zero());
  }
}

TEST(Wedge, DimensionMismatch) {
  try {
    wedge(Form::monomial(2, {1}), Form::monomial(4, {1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(Wedge, AssociativeAndGradedCommutative) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 * int(rng.integer(1, 3));
    const auto a = random_form(n, int(rng.integer(0, 4)), rng);
    const auto b = random_form(n, int(rng.integer(0, 4)), rng);
    const auto c = random_form(n, int(rng.integer(0, 2)), rng);
    // Gaussian-integer coefficients: exact equality
    EXPECT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));
    const double sign = (a.degree() * b.degree()) % 2 ? -1.0 : 1.0;
    EXPECT_EQ(wedge(a, b), cd(sign) * wedge(b, a));
  }
}

TEST(Wedge, AssociativeWithRealCoefficients) {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_form(6, 2, rng, false);
    const auto b = random_form(6, 1, rng, false);
    const auto c = random_form(6, 2, rng, false);
    expect_forms_near(wedge(wedge(a, b), c), wedge(a, wedge(b, c)), 1e-12);
  }
}

TEST(Wedge, AgreesWithShuffleEvaluation) {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 * int(rng.integer(1, 3));
    const int k = int(rng.integer(1, 3)), l = int(rng.integer(1, 3));
    if (k + l > n) continue;
    const auto a = random_form(n, k, rng), b = random_form(n, l, rng);
    const auto V = random_real_matrix(n, k + l, -1, 1, rng);
    const cd direct = evaluate_form<double>(wedge(a, b), V);
    EXPECT_NEAR(std::abs(direct - evaluate_wedge<double>(a, b, V)), 0, 1e-11);
  }
}

TEST(Pullback, IdentityIsNoOp) {
  Rng rng(8);
  const auto a = random_form(4, 2, rng);
  EXPECT_EQ(pullback(a, RealMatrix<double>(RealMatrix<double>::Identity(4, 4))), a);
}

TEST(Pullback, TopFormScalesByDeterminant) {
  RealMatrix<double> L(2, 2);
  L << 2, 0, 0, 1;
  EXPECT_EQ(pullback(Form::monomial(2, {1, 2}), L).coeff({1, 2}), cd(2));
}

TEST(Pullback, DxUnderComplexStructure) {
  const auto J = CoordinateConvention(1).complex_structure();
  const auto p = pullback(Form::monomial(2, {1}), J);
  EXPECT_EQ(p.coeff({1}), cd(0));
  EXPECT_EQ(p.coeff({2}), cd(-1));
  // brute force: (J^* dx)(e_j) = dx(J e_j)
  for (int j = 0; j < 2; ++j) {
    RealMatrix<double> e = RealMatrix<double>(RealMatrix<double>::Zero(2, 1));
    e(j, 0) = 1;
    EXPECT_EQ(evaluate_form<double>(p, e), evaluate_form<double>(Form::monomial(2, {1}), J * e));
  }
}

TEST(Pullback, AgreesWithDirectEvaluation) {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 * int(rng.integer(1, 3));
    const int k = int(rng.integer(1, n));
    const auto a = random_form(n, k, rng);
    const auto L = random_real_matrix(n, n, -2, 2, rng);
    const auto V = random_real_matrix(n, k, -1, 1, rng);
    EXPECT_NEAR(std::abs(evaluate_form<double>(pullback(a, L), V) - evaluate_form<double>(a, L * V)),
                0, 1e-10);
  }
}

TEST(Pullback, CommutesWithWedge) {
  Rng rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 * int(rng.integer(1, 3));
    const auto a = random_form(n, int(rng.integer(0, 2)), rng);
    const auto b = random_form(n, int(rng.integer(0, 2)), rng);
    const auto L = random_real_matrix(n, n, -2, 2, rng);
    expect_forms_near(pullback(wedge(a, b), L), wedge(pullback(a, L), pullback(b, L)), 1e-10);
  }
}

TEST(Pullback, DimensionMismatch) {
  EXPECT_THROW(pullback(Form::monomial(2, {1}), RealMatrix<double>(RealMatrix<double>::Identity(4, 4))), Error);
}

TEST(IntegrateTop, UnitSquare) {
  EXPECT_EQ(integrate_top(Form::monomial(2, {1, 2}), RealMatrix<double>(RealMatrix<double>::Identity(2, 2))), cd(1));
}

TEST(IntegrateTop, DzWedgeDzbarOverUnitSquare) {
  const CoordinateConvention conv(1);
  const auto top = wedge(basis_dz(conv, 1), basis_dzbar(conv, 1));
  EXPECT_EQ(integrate_top(top, RealMatrix<double>(RealMatrix<double>::Identity(2, 2))), cd(0, -2));
}

TEST(IntegrateTop, DeterminantScaling) {
  const cd c(1.5, -0.25);
  RealMatrix<double> M(2, 2);
  M << 3, 0, 0, 1;
  EXPECT_EQ(integrate_top(Form::monomial(2, {1, 2}, c), M), 3.0 * c);
}

TEST(IntegrateTop, Errors) {
  try {
    integrate_top(Form::monomial(2, {1}), RealMatrix<double>(RealMatrix<double>::Identity(2, 2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegreeMismatch);
  }
  try {
    integrate_top(Form::monomial(2, {1, 2}), RealMatrix<double>(RealMatrix<double>::Zero(2, 2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularMatrix);
  }
}

TEST(IntegrateTop, UnimodularRebasingChangesSignOnly) {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 * int(rng.integer(1, 4));
    const auto a = Form::monomial(n, all_indices(n), rng.complex_uniform(-1, 1));
    const auto M = random_invertible_real(n, -3, 3, 0.1, rng);
    const auto U = random_unimodular(std::size_t(n), rng).U;
    const double detU = determinant(U).convert_to<double>();
    const cd lhs = integrate_top(a, RealMatrix<double>(M * to_real_matrix<double>(U)));
    const cd rhs = integrate_top(a, M) * detU;
    EXPECT_NEAR(std::abs(lhs - rhs), 0, 1e-9 * std::abs(rhs));
  }
}

TEST(TopForms, HolomorphicTimesAntiholomorphic) {
  // dz_1..dz_g ^ dzbar_1..dzbar_g = (-2i)^g dx_1..dx_g dy_1..dy_g: each dz^dzbar
  // pair is -2i dx^dy, and regrouping both sides costs the same permutation sign.
  for (int g = 1; g <= 4; ++g) {
    const CoordinateConvention conv(g);
    std::vector<Form> factors;
    for (int n = 1; n <= g; ++n) factors.push_back(basis_dz(conv, n));
    for (int n = 1; n <= g; ++n) factors.push_back(basis_dzbar(conv, n));
    const auto top = wedge_all(factors, 2 * g);
    EXPECT_EQ(top.terms().size(), 1u);
    const cd c = top.coeff(all_indices(2 * g));
    EXPECT_EQ(std::abs(c), std::ldexp(1.0, g));
    EXPECT_EQ(c, std::pow(cd(0, -2), g));
  }
}

TEST(Realify, Identity) {
  EXPECT_EQ(realify(ComplexMatrix<double>(ComplexMatrix<double>::Identity(3, 3))), (RealMatrix<double>(RealMatrix<double>::Identity(6, 6))));
}

TEST(Realify, MultiplicationByI) {
  ComplexMatrix<double> T(1, 1);
  T(0, 0) = I1;
  EXPECT_EQ(realify(T), CoordinateConvention(1).complex_structure());
}

TEST(Realify, DeterminantIsSquaredModulus) {
  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const int g = int(rng.integer(1, 4));
    ComplexMatrix<double> T(g, g);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) T(i, j) = rng.complex_uniform(-2, 2);
    const RealMatrix<double> R = realify(T);
    const double expected = std::norm(T.determinant());
    EXPECT_NEAR(R.determinant(), expected, 1e-10 * std::max(1.0, expected));
    const auto J = CoordinateConvention(g).complex_structure();
    EXPECT_LE((R * J - J * R).cwiseAbs().maxCoeff(), 1e-15);
  }
}
