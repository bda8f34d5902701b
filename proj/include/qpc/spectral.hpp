#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpc/acceleration.hpp"
#include "qpc/frequency.hpp"
#include "qpc/torus_function.hpp"

namespace qpc {

/// Sorted eigenvalues of the N x N Dirichlet truncation of
/// (Hu)_n = u_{n+1} + u_{n-1} + v(theta + n alpha) u_n.
struct IdsTable {
  std::vector<double> energies;
  int N = 0;
};

IdsTable finite_spectrum(const TorusFunction& v, double alpha, double theta, int N);

/// Fraction of eigenvalues <= E.
double ids(const IdsTable& table, double E);

/// Distance from E to the nearest eigenvalue of the table.
double spectrum_distance(const IdsTable& table, double E);

/// An eigenvalue of the theta = 0 truncation near `target` that is confirmed
/// (within `tol`) by two other phases, which rules out boundary-localized states.
double spectrum_energy_near(const TorusFunction& v, double alpha, double target, int N = 4096,
                            double tol = 1e-3);

struct ThoulessResult {
  double max_residual = 0.0;
  std::vector<double> residuals;  ///< per energy
};

/// max over E of |L(E) - (1/N) sum_j ln|lambda_j - E||. Energies closer than
/// 1e-9 to an eigenvalue are rejected.
ThoulessResult thouless_residual(const TorusFunction& v, const Frequency& alpha,
                                 const std::vector<double>& energies, int N,
                                 const LyapunovOptions& opts = {});

enum class EnergyTag { UniformlyHyperbolic, Supercritical, Subcritical, Critical };

const char* to_string(EnergyTag tag);

struct ClassifyOptions {
  LyapunovOptions lyapunov{};
  AccelerationOptions acceleration{};
  double L_threshold = 1e-3;
  double borderline_lo = 5e-4;
  double borderline_hi = 2e-3;
};

struct EnergyClass {
  EnergyTag tag = EnergyTag::UniformlyHyperbolic;
  int omega = 0;
  double L = 0.0;
  double defect = 0.0;
  bool borderline = false;
  double spread = 0.0;      ///< spread of L over the convergents used
  AccelerationFit evidence; ///< eps samples behind omega
};

/// L at eps = 0 and the acceleration there, mapped onto the four classes.
EnergyClass classify_energy(const TorusFunction& v, const Frequency& alpha, double E,
                            const ClassifyOptions& opts = {});

struct ScanRow {
  double E = 0.0;
  EnergyClass cls;
  double stratum_residual = 0.0;  ///< |L_{delta,omega} - L|, NaN when no piece was found
  bool boundary = false;          ///< class differs from a neighbour
};

struct ScanOptions {
  ClassifyOptions classify{};
  double stratum_delta = 0.1;
  int stratum_samples = 5;
};

std::vector<ScanRow> scan(const TorusFunction& v, const Frequency& alpha,
                          const std::vector<double>& energies, const ScanOptions& opts = {});

/// CSV with header `E,L,omega,defect,class,stratumL_fit_residual,boundary,borderline`.
std::string scan_csv(const std::vector<ScanRow>& rows);

}  // namespace qpc
