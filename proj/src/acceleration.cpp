#include "qpc/acceleration.hpp"

#include <algorithm>
#include <cmath>

#include "qpc/error.hpp"

namespace qpc {

double LyapunovProfile::convexity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < interval_slopes.size(); ++i)
    worst = std::min(worst, kTwoPi * (interval_slopes[i + 1] - interval_slopes[i]));
  return worst;
}

LyapunovProfile make_profile(std::vector<double> eps, std::vector<double> L) {
  if (eps.size() != L.size() || eps.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "profile needs at least two matching samples");
  for (std::size_t i = 0; i + 1 < eps.size(); ++i)
    if (!(eps[i + 1] > eps[i]))
      throw Error(ErrorKind::InvalidArgument, "profile grid must be strictly increasing");

  LyapunovProfile p;
  p.eps = std::move(eps);
  p.L = std::move(L);
  const std::size_t n = p.eps.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    p.interval_slopes.push_back((p.L[i + 1] - p.L[i]) / (kTwoPi * (p.eps[i + 1] - p.eps[i])));
  p.point_slopes.resize(n);
  p.point_slopes.front() = p.interval_slopes.front();
  p.point_slopes.back() = p.interval_slopes.back();
  for (std::size_t i = 1; i + 1 < n; ++i)
    p.point_slopes[i] = (p.L[i + 1] - p.L[i - 1]) / (kTwoPi * (p.eps[i + 1] - p.eps[i - 1]));
  const double first = p.interval_slopes.front();
  p.omega = static_cast<int>(std::lround(first));
  p.defect = std::abs(first - p.omega);
  return p;
}

LyapunovProfile epsilon_profile(const Cocycle& c, double eps_min, double eps_max, int n_pts,
                                const LyapunovOptions& opts) {
  if (n_pts < 5) throw Error(ErrorKind::InvalidArgument, "profile needs n_pts >= 5");
  if (!(eps_max > eps_min)) throw Error(ErrorKind::InvalidArgument, "empty eps range");
  std::vector<double> eps(n_pts), L(n_pts);
  for (int i = 0; i < n_pts; ++i) {
    eps[i] = eps_min + (eps_max - eps_min) * i / (n_pts - 1);
    L[i] = lyapunov(c, eps[i], opts);
  }
  return make_profile(std::move(eps), std::move(L));
}

AccelerationFit acceleration_at(const Cocycle& c, double eps0, const AccelerationOptions& opts,
                                std::optional<double> known_L0) {
  AccelerationFit fit;
  fit.L0 = known_L0 ? *known_L0 : lyapunov(c, eps0, opts.lyapunov);
  fit.eps.push_back(eps0);
  fit.L.push_back(fit.L0);
  auto slope_at = [&](double h) {
    const double Lh = lyapunov(c, eps0 + h, opts.lyapunov);
    fit.eps.push_back(eps0 + h);
    fit.L.push_back(Lh);
    return (Lh - fit.L0) / (kTwoPi * h);
  };

  double h = opts.h0;
  double previous = slope_at(h);
  double current = previous;
  for (int i = 0; i < opts.max_halvings; ++i) {
    h *= 0.5;
    current = slope_at(h);
    if (std::abs(current - previous) <= opts.agree_tol) break;
    previous = current;
  }
  fit.slope = current;
  fit.h = h;
  fit.omega = static_cast<int>(std::lround(current));
  fit.defect = std::abs(current - fit.omega);
  fit.quantized = fit.defect <= opts.nonquantized;
  return fit;
}

bool is_regular(const Cocycle& c, const AccelerationOptions& opts) {
  if (c.map.real_symmetric()) return acceleration_at(c, 0.0, opts).omega == 0;
  const double h = opts.h0;
  const double mid = lyapunov(c, 0.0, opts.lyapunov);
  const double right = lyapunov(c, h, opts.lyapunov);
  const double left = lyapunov(c, -h, opts.lyapunov);
  return std::abs(right + left - 2.0 * mid) <= opts.regular_tol;
}

StratifiedValue stratified_L(const Cocycle& c, int j, double delta, const LyapunovOptions& opts,
                             int samples) {
  if (!(delta > 0.0)) throw Error(ErrorKind::InvalidArgument, "delta must be positive");
  if (samples < 3) throw Error(ErrorKind::InvalidArgument, "stratified_L needs >= 3 samples");
  std::vector<double> eps(samples), L(samples);
  for (int i = 0; i < samples; ++i) {
    eps[i] = delta * i / (samples - 1);
    L[i] = lyapunov(c, eps[i], opts);
  }
  const LyapunovProfile profile = make_profile(eps, L);

  // Longest run of intervals whose slope is j.
  int best_start = -1, best_len = 0;
  for (int i = 0; i < samples - 1;) {
    if (std::abs(profile.interval_slopes[i] - j) > 0.1) {
      ++i;
      continue;
    }
    int k = i;
    while (k < samples - 1 && std::abs(profile.interval_slopes[k] - j) <= 0.1) ++k;
    if (k - i > best_len) {
      best_len = k - i;
      best_start = i;
    }
    i = k;
  }
  if (best_start < 0)
    throw Error(ErrorKind::WrongStratum,
                "no affine piece with acceleration " + std::to_string(j) + " in (0, " +
                    std::to_string(delta) + ")");

  StratifiedValue out;
  out.piece_lo = eps[best_start];
  out.piece_hi = eps[best_start + best_len];
  out.delta_prime = 0.5 * (out.piece_lo + out.piece_hi);
  if (out.delta_prime <= 0.0) out.delta_prime = 0.5 * out.piece_hi;
  out.value = lyapunov(c, out.delta_prime, opts) - kTwoPi * j * out.delta_prime;
  const double other = out.piece_lo + 0.75 * (out.piece_hi - out.piece_lo);
  out.alternate = lyapunov(c, other, opts) - kTwoPi * j * other;
  return out;
}

std::vector<double> slope_breakpoints(const LyapunovProfile& profile, double integer_tol) {
  std::vector<double> out;
  const auto& s = profile.interval_slopes;
  const auto& e = profile.eps;
  const auto& L = profile.L;
  int prev = -1;
  for (int i = 0; i < static_cast<int>(s.size()); ++i) {
    const double r = std::round(s[i]);
    if (std::abs(s[i] - r) > integer_tol) continue;
    if (prev >= 0 && std::round(s[prev]) != r) {
      // Intersect the affine extensions of the two integer pieces.
      const double m1 = kTwoPi * s[prev], m2 = kTwoPi * s[i];
      double x = (L[i] - L[prev] + m1 * e[prev] - m2 * e[i]) / (m1 - m2);
      x = std::clamp(x, e[prev], e[i + 1]);
      out.push_back(x);
    }
    prev = i;
  }
  return out;
}

}  // namespace qpc
