#pragma once

#include <optional>
#include <vector>

#include "qpc/lyapunov.hpp"

namespace qpc {

/// Samples of eps -> L(alpha, A_eps) and their slopes in units of 2 pi.
struct LyapunovProfile {
  std::vector<double> eps;
  std::vector<double> L;
  std::vector<double> interval_slopes;  ///< (L[i+1] - L[i]) / (2 pi (eps[i+1] - eps[i]))
  std::vector<double> point_slopes;     ///< centered differences, one-sided at the ends
  int omega = 0;                        ///< nearest integer to the first interval slope
  double defect = 0.0;                  ///< |first interval slope - omega|

  /// Most negative discrete second difference (0 for a convex profile).
  double convexity_defect() const;
};

struct AccelerationOptions {
  LyapunovOptions lyapunov{.convergents = 1};
  double h0 = 0.02;           ///< initial one-sided step
  int max_halvings = 6;
  double agree_tol = 0.02;    ///< consecutive slope fits must agree this well
  double nonquantized = 0.2;  ///< defects above this are flagged
  double regular_tol = 3e-3;  ///< |L(h) + L(-h) - 2 L(0)| bound for two-sided regularity
};

/// Builds a profile from already computed samples (eps strictly increasing).
LyapunovProfile make_profile(std::vector<double> eps, std::vector<double> L);

/// L on n_pts uniform points of [eps_min, eps_max].
LyapunovProfile epsilon_profile(const Cocycle& c, double eps_min, double eps_max, int n_pts,
                                const LyapunovOptions& opts = {.convergents = 1});

struct AccelerationFit {
  int omega = 0;
  double defect = 0.0;
  double slope = 0.0;      ///< last one-sided slope / 2 pi
  double h = 0.0;          ///< step that produced `slope`
  double L0 = 0.0;         ///< L at eps0
  bool quantized = true;   ///< false marks the NonQuantized flag
  std::vector<double> eps; ///< every eps evaluated, eps0 first
  std::vector<double> L;
};

/// One-sided slope of L on [eps0, eps0 + h] with h halving from h0 until two
/// consecutive fits agree; omega is the nearest integer.
/// A known value of L at eps0 may be passed to skip recomputing it.
AccelerationFit acceleration_at(const Cocycle& c, double eps0,
                                const AccelerationOptions& opts = {},
                                std::optional<double> known_L0 = std::nullopt);

/// Real-symmetric maps: omega at 0 is zero. Otherwise L must be affine on [-h0, h0].
bool is_regular(const Cocycle& c, const AccelerationOptions& opts = {});

struct StratifiedValue {
  double value = 0.0;        ///< L(A_{delta'}) - 2 pi j delta'
  double delta_prime = 0.0;  ///< midpoint of the detected slope-j piece
  double piece_lo = 0.0;
  double piece_hi = 0.0;
  double alternate = 0.0;    ///< same quantity at a second point of the piece
};

/// L_{delta,j}: evaluated inside an affine piece of slope j contained in (0, delta).
/// Throws WrongStratum when no such piece is found on a `samples`-point grid.
StratifiedValue stratified_L(const Cocycle& c, int j, double delta,
                             const LyapunovOptions& opts = {.convergents = 1}, int samples = 9);

/// Locations where the integer slope of a profile changes. Adjacent integer
/// pieces are extended and intersected when an interval straddles the change.
std::vector<double> slope_breakpoints(const LyapunovProfile& profile, double integer_tol = 0.1);

}  // namespace qpc
