#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpc/cocycle.hpp"

namespace qpc::oracles {

/// 2 lambda cos(2 pi x)
TorusFunction amo_potential(double lambda);

/// Complexified almost Mathieu exponent: max{L0, ln lambda + 2 pi eps} for eps >= 0,
/// where L0 is the exponent at eps = 0 (max{0, ln lambda} on the spectrum).
double amo_L(double lambda, double eps, double L0);

/// x -> rotation by 2 pi k x. Acceleration |k|, exponent 0 on the real line and
/// 2 pi |k| |eps| off it.
CocycleMap rotation_cocycle(int k);

/// x -> diag(e^{l(x)}, e^{-l(x)}) with l(x) = e^{2 pi i q0 x}; the exponentials are
/// expanded to 30 terms of their power series.
CocycleMap diagonal_exponential(int q0);

/// Exponent of diagonal_exponential(q0) at frequency p/q: (2/pi) e^{-2 pi q0 eps} when
/// q divides q0, else 0.
double diagonal_exponential_L(int q0, long q, double eps);

/// Free Laplacian: max{0, ln((|E| + sqrt(E^2 - 4)) / 2)}.
double free_laplacian_L(double E);

struct OracleCase {
  std::string name;
  std::string closed_form;
  Cocycle cocycle;
  std::vector<double> eps;
  std::vector<double> expected_L;
  std::optional<int> expected_omega;  ///< empty where acceleration is not quantized
  double tolerance = 0.0;
};

/// Reference cocycles with exactly known exponents. AMO cases need an energy in
/// the spectrum, which the caller supplies.
std::vector<OracleCase> reference_cases(double amo_supercritical_energy);

}  // namespace qpc::oracles
