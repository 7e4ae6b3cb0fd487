// Hexagonal elliptic curve: component group, real period and both dualities.

#include <cmath>
#include <iostream>

#include "periods/periods.hpp"

int main() {
  using namespace periods;

  RealMatrix<double> M(2, 2);
  M << 1, 0.5, 0, std::sqrt(3.0) / 2;
  const auto T = make_torus(1, M);
  const auto rs = make_real_structure(T, IntegerMatrix{{1, 1}, {0, -1}});
  const HodgeForm<double> omega{1, 1.0};

  std::cout << "pi_0(A(R))     = " << component_count(rs) << '\n'
            << "H^1(<c>, L)    = " << tate_h1(rs) << '\n'
            << "real period    = " << real_period(rs, omega) << '\n'
            << "||omega||^2    = " << faltings_norm_sq(T, omega) << '\n'
            << "transported    = " << duality_transport(T, omega).lambda << '\n';

  Report report = verify_hermitian_duality(T, omega, NormalizationConstant<double>(1.0), true);
  report.append(verify_real_duality(rs, omega));
  report.write(std::cout);
  return report.passed() ? 0 : 1;
}
