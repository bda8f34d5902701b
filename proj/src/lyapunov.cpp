#include "qpc/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qpc/error.hpp"

namespace qpc {

namespace {

void require_coprime(long p, long q) {
  if (q <= 0 || std::gcd(p, q) != 1)
    throw Error(ErrorKind::NonCoprime, std::to_string(p) + "/" + std::to_string(q));
}

void require_strip(const CocycleMap& map, double eps) {
  if (std::abs(eps) > map.delta_max())
    throw Error(ErrorKind::StripExceeded, "eps = " + std::to_string(eps) + " outside strip");
}

ScaledMatrix periodic_product(const CocycleMap& map, const Frequency& f, cplx z) {
  ScaledMatrix out;
  OrbitWalker walk(map, f, z);
  for (long j = 0; j < f.q(); ++j) {
    out.left_multiply(walk.current());
    walk.advance();
  }
  return out;
}

// Sum of ln rho(A_(p/q)(x + i eps)) at x = (offset + j * stride) / (q * denom),
// j = 0..count-1. Summed in index order so the result does not depend on threads.
double log_rho_sum(const CocycleMap& map, const Frequency& f, double eps, long offset,
                   long stride, long count, long denom) {
  std::vector<double> values(count);
  const double q = static_cast<double>(f.q());
#pragma omp parallel for schedule(static)
  for (long j = 0; j < count; ++j) {
    const double x = static_cast<double>(offset + j * stride) / (q * static_cast<double>(denom));
    values[j] = log_spectral_radius(periodic_product(map, f, cplx(x, eps)));
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

double operator_norm(const Mat2& m) {
  // Largest singular value from the Hermitian Gram matrix.
  const double p = std::norm(m.a) + std::norm(m.c);
  const double r = std::norm(m.b) + std::norm(m.d);
  const cplx off = std::conj(m.a) * m.b + std::conj(m.c) * m.d;
  const double mean = 0.5 * (p + r);
  const double dev = std::sqrt(0.25 * (p - r) * (p - r) + std::norm(off));
  return std::sqrt(mean + dev);
}

}  // namespace

double lyapunov_rational(const CocycleMap& map, long p, long q, double eps, int grid) {
  require_coprime(p, q);
  require_strip(map, eps);
  if (grid < 256) throw Error(ErrorKind::InvalidArgument, "quadrature grid must be >= 256");
  const Frequency f = Frequency::rational(p, q);
  const double mean = log_rho_sum(map, f, eps, 0, 1, grid, grid) / grid;
  return std::max(0.0, mean / static_cast<double>(q));
}

double lyapunov_rational(const CocycleMap& map, long p, long q, double eps,
                         const LyapunovOptions& opts) {
  if (!opts.refine) return lyapunov_rational(map, p, q, eps, opts.grid);
  require_coprime(p, q);
  require_strip(map, eps);
  if (opts.grid < 256) throw Error(ErrorKind::InvalidArgument, "quadrature grid must be >= 256");
  const Frequency f = Frequency::rational(p, q);
  long M = opts.grid;
  double sum = log_rho_sum(map, f, eps, 0, 1, M, M);
  double current = sum / M;
  while (2 * M <= opts.max_grid) {
    // The doubled grid reuses every previous point; only odd points are new.
    const double odd = log_rho_sum(map, f, eps, 1, 2, M, 2 * M);
    sum += odd;
    M *= 2;
    const double next = sum / M;
    const bool converged = std::abs(next - current) / q <= opts.refine_tol;
    current = next;
    if (converged) break;
  }
  return std::max(0.0, current / static_cast<double>(q));
}

double lyapunov_rational(const Cocycle& c, double eps, int grid) {
  if (!c.alpha.is_rational())
    throw Error(ErrorKind::InvalidArgument, "lyapunov_rational needs a rational frequency");
  return lyapunov_rational(c.map, c.alpha.p(), c.alpha.q(), eps, grid);
}

double lyapunov_ergodic(const Cocycle& c, double eps, long n, int phases) {
  require_strip(c.map, eps);
  if (n < 1 || phases < 1) throw Error(ErrorKind::InvalidArgument, "n and phases must be >= 1");
  std::vector<double> values(phases);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < phases; ++j) {
    const ScaledMatrix s =
        iterate(c.map, c.alpha, n, cplx(static_cast<double>(j) / phases, eps));
    values[j] = (s.logscale + std::log(operator_norm(s.m))) / static_cast<double>(n);
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= phases;
  return std::abs(mean) <= 1e-6 ? 0.0 : std::max(mean, 0.0);
}

IrrationalEstimate lyapunov_irrational(const Cocycle& c, double eps, const LyapunovOptions& opts) {
  IrrationalEstimate est;
  est.used = c.alpha.best_convergents(opts.q_max, std::max(1, opts.convergents));
  for (const auto& pq : est.used) est.values.push_back(lyapunov_rational(c.map, pq.p, pq.q, eps, opts));
  est.value = est.values.back();
  const auto [lo, hi] = std::minmax_element(est.values.begin(), est.values.end());
  est.spread = *hi - *lo;
  return est;
}

double lyapunov(const Cocycle& c, double eps, const LyapunovOptions& opts) {
  if (c.alpha.is_rational()) return lyapunov_rational(c.map, c.alpha.p(), c.alpha.q(), eps, opts);
  return lyapunov_irrational(c, eps, opts).value;
}

TraceProfile trace_fourier_profile(const CocycleMap& map, long p, long q, int grid) {
  require_coprime(p, q);
  const int degree = std::max(1, map.trig_degree());
  if (static_cast<long>(grid) < 4L * q * degree)
    throw Error(ErrorKind::InvalidArgument, "trace grid must be >= 4 q (entry degree)");
  const Frequency f = Frequency::rational(p, q);
  // Points on one period of the trace, uniform in y = q x.
  const long samples = std::max<long>(4L * degree + 1, (grid + q - 1) / q);
  std::vector<cplx> trace(samples);
  std::vector<double> logscale(samples);
#pragma omp parallel for schedule(static)
  for (long j = 0; j < samples; ++j) {
    const double x = static_cast<double>(j) / (static_cast<double>(samples) * q);
    const ScaledMatrix s = periodic_product(map, f, cplx(x, 0.0));
    trace[j] = s.m.trace();
    logscale[j] = s.logscale;
  }
  const double top = *std::max_element(logscale.begin(), logscale.end());
  for (long j = 0; j < samples; ++j) trace[j] *= std::exp(logscale[j] - top);

  const TorusFunction coeffs = from_samples(trace);
  double largest = 0.0;
  for (const auto& a : coeffs.coeffs()) largest = std::max(largest, std::abs(a));
  TraceProfile out;
  out.q = q;
  if (largest == 0.0) return out;
  // The trace is a polynomial of degree <= entry degree in e^{2 pi i q x}; anything
  // beyond is rounding noise, which the -2 pi k delta slopes would amplify.
  const int kmax = std::min(coeffs.degree(), map.trig_degree());
  for (int k = -kmax; k <= kmax; ++k) {
    const double mag = std::abs(coeffs.coeff(k));
    if (mag < 1e-15 * largest) continue;
    out.modes.push_back({k, (top + std::log(mag)) / static_cast<double>(q)});
  }
  return out;
}

TraceProfile trace_fourier_profile(const Cocycle& c, int grid) {
  if (!c.alpha.is_rational())
    throw Error(ErrorKind::InvalidArgument, "trace profile needs a rational frequency");
  return trace_fourier_profile(c.map, c.alpha.p(), c.alpha.q(), grid);
}

double lyapunov_from_trace(const TraceProfile& profile, double delta) {
  if (profile.modes.empty()) throw Error(ErrorKind::EmptyProfile, "trace profile has no modes");
  double best = 0.0;
  for (const auto& mode : profile.modes)
    best = std::max(best, mode.value - kTwoPi * mode.k * delta);
  return best;
}

}  // namespace qpc
