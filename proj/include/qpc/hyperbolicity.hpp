#pragma once

#include <vector>

#include "qpc/acceleration.hpp"
#include "qpc/cocycle.hpp"
#include "qpc/mat2.hpp"
#include "qpc/torus_function.hpp"

namespace qpc {

struct SplittingOptions {
  int grid = 256;
  long n_start = 64;
  long n_max = 1L << 14;
  double residual_tol = 1e-6;
  double min_angle = 1e-6;  ///< fields closer than this are not a splitting
  /// Largest projective distance allowed between a field at adjacent grid points.
  /// Measurable but discontinuous (Oseledets) fields also converge pointwise.
  double max_jump = 0.2;
};

/// Unstable/stable direction fields of (alpha, A_eps) sampled on x_j = j/M.
struct Splitting {
  double eps = 0.0;
  double alpha = 0.0;
  long n = 0;                       ///< product length that was accepted
  std::vector<double> grid;
  std::vector<Vec2> u, s;           ///< unit vectors at x_j
  std::vector<Vec2> u_next, s_next; ///< unit vectors at x_j + alpha
  std::vector<Mat2> A;              ///< A_eps(x_j)
  double min_angle = 0.0;           ///< min_j of the projective distance between u and s
  double inv_residual = 0.0;        ///< invariance defect of both fields
  double max_jump = 0.0;            ///< largest change of a field between neighbours
};

/// s(x): most contracted right singular direction of A_n(x + i eps).
/// u(x): image of the least contracted direction of A_n(x - n alpha + i eps).
/// n doubles from opts.n_start until the fields are invariant to residual_tol, stop
/// moving, vary continuously over the grid and stay opts.min_angle apart;
/// NotHyperbolic if that does not happen by opts.n_max.
Splitting splitting(const Cocycle& c, double eps, const SplittingOptions& opts = {});

struct HyperbolicityCertificate {
  bool by_splitting = false;
  bool by_regularity = false;  ///< L > 1e-3 and (alpha, A_eps) regular
  bool agree = false;
  double L = 0.0;
  int omega = 0;
};

/// Both characterizations of uniform hyperbolicity. Throws Inconclusive when
/// L <= 1e-3.
HyperbolicityCertificate is_uniformly_hyperbolic(const Cocycle& c, double eps,
                                                 const AccelerationOptions& accel = {},
                                                 const SplittingOptions& split = {});

/// B(x) with det 1 and columns along u and s, and the diagonal entry lambda(x) of
/// B(x + alpha)^{-1} A(x) B(x).
struct Conjugation {
  std::vector<Mat2> B;
  std::vector<cplx> lambda;
  TorusFunction lambda_fit;
  double mean_log_abs_lambda = 0.0;  ///< integral of Re ln lambda
  int winding = 0;                   ///< turns of lambda around 0
};

/// Throws DegenerateSplitting when min_angle < 1e-8.
Conjugation conjugation(const Splitting& sp);

/// q1 = ad + bc, q2 = cd, q3 = -ab for B = ((a, b), (c, d)).
struct DerivativeCoefficients {
  double eps = 0.0;
  double alpha = 0.0;
  std::vector<double> grid;
  std::vector<cplx> q1, q2, q3;
  TorusFunction f1, f2, f3;
};

DerivativeCoefficients derivative_coefficients(const Splitting& sp);
/// Coefficients from an explicit conjugation, for gauge checks.
DerivativeCoefficients derivative_coefficients(const Splitting& sp, std::span<const Mat2> B);

/// d/dt L(alpha, A e^{t w}) at t = 0 for w = ((w1, w2), (w3, -w1)).
double directional_derivative(const DerivativeCoefficients& dc, const TorusFunction& w1,
                              const TorusFunction& w2, const TorusFunction& w3);

struct GradientEntry {
  int k = 0;
  double d_cos = 0.0;  ///< along w = cos(2 pi k x)
  double d_sin = 0.0;  ///< along w = sin(2 pi k x)
};

struct PotentialGradient {
  int j = 0;
  double eps = 0.0;
  std::vector<GradientEntry> entries;
  double witness = 0.0;         ///< max |entry|
  double pairing_defect = 0.0;  ///< max_k |c_k(q3) + conj(c_{-k}(q3))|
};

/// Derivatives of L_{delta,j} with respect to the potential, v -> v + t w, at a
/// Schrodinger cocycle whose complexification at eps is uniformly hyperbolic with
/// acceleration j. Throws WrongStratum or NotHyperbolic.
PotentialGradient potential_gradient(const TorusFunction& v, double E, const Frequency& alpha,
                                     int j, double eps, int K,
                                     const AccelerationOptions& accel = {},
                                     const SplittingOptions& split = {});

}  // namespace qpc
