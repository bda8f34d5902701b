#pragma once

#include <random>

#include "qpc/cocycle.hpp"

namespace qpc::test {

// Real trigonometric polynomial of the given degree, coefficients of cos/sin in [-bound, bound].
inline TorusFunction random_real_poly(std::mt19937_64& rng, int degree, double bound = 2.0) {
  std::uniform_real_distribution<double> U(-bound, bound);
  std::map<int, cplx> m{{0, 0.0}};
  for (int k = 1; k <= degree; ++k) {
    const double a = U(rng), b = U(rng);
    m[k] = cplx(a, -b) / 2.0;
    m[-k] = cplx(a, b) / 2.0;
  }
  return TorusFunction::from_modes(m);
}

inline TorusFunction random_complex_poly(std::mt19937_64& rng, int degree, double bound = 1.0) {
  std::uniform_real_distribution<double> U(-bound, bound);
  std::vector<cplx> c(2 * degree + 1);
  for (auto& z : c) z = cplx(U(rng), U(rng));
  return TorusFunction(c);
}

// A generic SL(2,C)-valued analytic map: a product of two elementary shears
// and a Schrodinger factor, so det = 1 exactly as trigonometric polynomials.
inline CocycleMap random_sl2_map(std::mt19937_64& rng, int degree) {
  const TorusFunction f = random_complex_poly(rng, degree, 0.7);
  const TorusFunction g = random_complex_poly(rng, degree, 0.7);
  const TorusFunction one = TorusFunction::constant(1.0);
  const TorusFunction zero = TorusFunction::constant(0.0);
  // (1 f; 0 1)(1 0; g 1) = (1 + fg, f; g, 1)
  return CocycleMap(one + f * g, f, g, one);
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace qpc::test
