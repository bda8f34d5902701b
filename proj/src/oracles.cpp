#include "qpc/oracles.hpp"

#include <cmath>
#include <map>

#include "qpc/error.hpp"

namespace qpc::oracles {

TorusFunction amo_potential(double lambda) { return TorusFunction::cosine(1, 2.0 * lambda); }

double amo_L(double lambda, double eps, double L0) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::InvalidArgument, "lambda must be positive");
  return std::max(L0, std::log(lambda) + kTwoPi * eps);
}

CocycleMap rotation_cocycle(int k) {
  const auto c = TorusFunction::cosine(k);
  const auto s = TorusFunction::sine(k);
  return CocycleMap(c, -s, s, c, k);
}

CocycleMap diagonal_exponential(int q0) {
  if (q0 <= 0) throw Error(ErrorKind::InvalidArgument, "q0 must be positive");
  constexpr int kTerms = 30;
  std::map<int, cplx> plus, minus;
  double factorial = 1.0;
  for (int n = 0; n < kTerms; ++n) {
    if (n > 0) factorial *= n;
    plus[n * q0] = 1.0 / factorial;
    minus[n * q0] = ((n % 2) ? -1.0 : 1.0) / factorial;
  }
  return CocycleMap(TorusFunction::from_modes(plus), TorusFunction::constant(0.0),
                    TorusFunction::constant(0.0), TorusFunction::from_modes(minus));
}

double diagonal_exponential_L(int q0, long q, double eps) {
  if (q <= 0) throw Error(ErrorKind::InvalidArgument, "q must be positive");
  if (q0 % q != 0) return 0.0;
  return (2.0 / M_PI) * std::exp(-kTwoPi * q0 * eps);
}

double free_laplacian_L(double E) {
  const double a = std::abs(E);
  if (a <= 2.0) return 0.0;
  return std::log(0.5 * (a + std::sqrt(a * a - 4.0)));
}

std::vector<OracleCase> reference_cases(double amo_supercritical_energy) {
  std::vector<OracleCase> out;
  const Frequency golden = Frequency::golden();

  {
    OracleCase c{"free-laplacian-E3", "max{0, ln((E + sqrt(E^2 - 4))/2)}",
                 {golden, schrodinger(TorusFunction::constant(0.0), 3.0)}, {0.0, 0.1}, {}, 0,
                 1e-6};
    c.expected_L = {free_laplacian_L(3.0), free_laplacian_L(3.0)};
    out.push_back(std::move(c));
  }
  {
    OracleCase c{"amo-lambda2", "max{ln 2, ln 2 + 2 pi eps}",
                 {golden, schrodinger(amo_potential(2.0), amo_supercritical_energy)},
                 {0.0, 0.1, 0.2}, {}, 1, 2e-2};
    for (double e : c.eps) c.expected_L.push_back(amo_L(2.0, e, std::log(2.0)));
    out.push_back(std::move(c));
  }
  for (int k : {0, 1, 2, 3}) {
    OracleCase c{"rotation-" + std::to_string(k), "2 pi |k| eps", {golden, rotation_cocycle(k)},
                 {0.0, 0.1, 0.2}, {}, k, 1e-6};
    for (double e : c.eps) c.expected_L.push_back(kTwoPi * k * e);
    out.push_back(std::move(c));
  }
  {
    OracleCase c{"diagonal-exponential-q0-2", "(2/pi) e^{-4 pi eps} at alpha = 1/2",
                 {Frequency::rational(1, 2), diagonal_exponential(2)}, {0.0, 0.1, 0.25}, {}, std::nullopt,
                 1e-6};
    for (double e : c.eps) c.expected_L.push_back(diagonal_exponential_L(2, 2, e));
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace qpc::oracles
