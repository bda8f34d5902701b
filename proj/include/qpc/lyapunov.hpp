#pragma once

#include <vector>

#include "qpc/cocycle.hpp"

namespace qpc {

/// Knobs shared by the convergent-based estimators.
struct LyapunovOptions {
  int grid = 4096;        ///< quadrature points on [0, 1/q)
  long q_max = 1000;      ///< largest convergent denominator used
  int convergents = 3;    ///< how many of the largest convergents to evaluate
  bool refine = false;    ///< double the grid until successive means agree
  double refine_tol = 1e-6;
  int max_grid = 1 << 16;
};

/// L(p/q, A_eps) = (1/q) * mean over x_j in [0, 1/q) of ln rho(A_(p/q)(x_j + i eps)),
/// where A_(p/q)(x) = A(x + (q-1)p/q) ... A(x). Requires gcd(p, q) = 1 and grid >= 256.
double lyapunov_rational(const CocycleMap& map, long p, long q, double eps, int grid = 4096);
double lyapunov_rational(const Cocycle& c, double eps, int grid = 4096);
/// Same, with optional grid doubling per `opts`.
double lyapunov_rational(const CocycleMap& map, long p, long q, double eps,
                         const LyapunovOptions& opts);

/// Mean of (1/n) ln ||A_n(x_j + i eps)|| over `phases` equidistributed x_j.
/// Uses the operator norm; results within 1e-6 of zero are clamped to 0.
double lyapunov_ergodic(const Cocycle& c, double eps, long n, int phases);

struct IrrationalEstimate {
  double value = 0.0;   ///< estimate at the largest convergent used
  double spread = 0.0;  ///< max - min over the convergents used
  std::vector<RationalApprox> used;
  std::vector<double> values;
};

/// Evaluates lyapunov_rational at the largest available convergents of alpha.
/// Throws NoConvergents when none has q <= opts.q_max.
IrrationalEstimate lyapunov_irrational(const Cocycle& c, double eps,
                                       const LyapunovOptions& opts = {});

/// Dispatches on the frequency: exact formula for rational alpha, convergents otherwise.
double lyapunov(const Cocycle& c, double eps, const LyapunovOptions& opts = {});

struct TraceMode {
  int k = 0;
  double value = 0.0;  ///< (1/q) ln |a_k|
};

/// Fourier modes of tr A_(p/q)(x) = sum_k a_k e^{2 pi i k q x}.
struct TraceProfile {
  long q = 1;
  std::vector<TraceMode> modes;
};

/// Samples the 1/q-periodic trace and extracts its modes in the variable qx.
/// `grid` counts points on [0, 1) and must be >= 4 q (entry degree).
/// Modes below 1e-15 of the largest are dropped.
TraceProfile trace_fourier_profile(const CocycleMap& map, long p, long q, int grid);
TraceProfile trace_fourier_profile(const Cocycle& c, int grid);

/// max over modes of max{value_k - 2 pi k delta, 0}. Throws EmptyProfile.
double lyapunov_from_trace(const TraceProfile& profile, double delta);

}  // namespace qpc
