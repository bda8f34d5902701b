#include "qpc/hyperbolicity.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qpc/error.hpp"
#include "qpc/lyapunov.hpp"

namespace qpc {

namespace {

// Eigenvector for the largest eigenvalue of the Hermitian matrix ((p, off), (conj off, r)).
Vec2 top_eigenvector(double p, double r, cplx off) {
  const double mean = 0.5 * (p + r);
  const double dev = std::sqrt(0.25 * (p - r) * (p - r) + std::norm(off));
  const double mu = mean + dev;
  const Vec2 v1{off, mu - p};
  const Vec2 v2{mu - r, std::conj(off)};
  const Vec2 v = v1.norm() >= v2.norm() ? v1 : v2;
  if (v.norm() == 0.0) return {1.0, 0.0};  // multiple of the identity
  return v.normalized();
}

Vec2 top_right_singular(const Mat2& m) {
  return top_eigenvector(std::norm(m.a) + std::norm(m.c), std::norm(m.b) + std::norm(m.d),
                         std::conj(m.a) * m.b + std::conj(m.c) * m.d);
}

Vec2 top_left_singular(const Mat2& m) {
  return top_eigenvector(std::norm(m.a) + std::norm(m.b), std::norm(m.c) + std::norm(m.d),
                         m.a * std::conj(m.c) + m.b * std::conj(m.d));
}

Vec2 orthogonal(const Vec2& v) { return {-std::conj(v.y), std::conj(v.x)}; }

struct Fields {
  std::vector<Vec2> u, s, u_next, s_next;
};

Fields direction_fields(const CocycleMap& map, const Frequency& alpha, long n,
                        const std::vector<double>& grid) {
  const int M = static_cast<int>(grid.size());
  Fields f;
  f.u.resize(M);
  f.s.resize(M);
  f.u_next.resize(M);
  f.s_next.resize(M);
  const double back = alpha.orbit_phase(-n);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < M; ++j) {
    const double x = grid[j];
    const double x1 = x + alpha.value();
    f.s[j] = orthogonal(top_right_singular(iterate(map, alpha, n, cplx(x, 0)).m));
    f.s_next[j] = orthogonal(top_right_singular(iterate(map, alpha, n, cplx(x1, 0)).m));
    f.u[j] = top_left_singular(iterate(map, alpha, n, cplx(x + back, 0)).m);
    f.u_next[j] = top_left_singular(iterate(map, alpha, n, cplx(x1 + back, 0)).m);
  }
  return f;
}

double field_change(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, projective_distance(a[j], b[j]));
  return worst;
}

double mean_re(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const auto& x : v) s += x.real();
  return s / static_cast<double>(v.size());
}

}  // namespace

Splitting splitting(const Cocycle& c, double eps, const SplittingOptions& opts) {
  if (opts.n_start < 50) throw Error(ErrorKind::InvalidArgument, "splitting needs n >= 50");
  if (opts.grid < 8) throw Error(ErrorKind::InvalidArgument, "splitting grid too small");
  const CocycleMap map = c.map.complexified(eps);
  Splitting sp;
  sp.eps = eps;
  sp.alpha = c.alpha.value();
  sp.grid.resize(opts.grid);
  sp.A.resize(opts.grid);
  for (int j = 0; j < opts.grid; ++j) {
    sp.grid[j] = static_cast<double>(j) / opts.grid;
    sp.A[j] = map(cplx(sp.grid[j], 0));
  }

  Fields previous;
  bool have_previous = false;
  double last_residual = 0.0, last_change = 0.0, last_angle = 0.0, last_jump = 0.0;
  for (long n = opts.n_start; n <= opts.n_max; n *= 2) {
    Fields f = direction_fields(map, c.alpha, n, sp.grid);
    double residual = 0.0, angle = 1.0, jump = 0.0;
    for (int j = 0; j < opts.grid; ++j) {
      const int next = (j + 1) % opts.grid;
      residual = std::max(residual, projective_distance(sp.A[j] * f.u[j], f.u_next[j]));
      residual = std::max(residual, projective_distance(sp.A[j] * f.s[j], f.s_next[j]));
      angle = std::min(angle, projective_distance(f.u[j], f.s[j]));
      jump = std::max({jump, projective_distance(f.u[j], f.u[next]),
                       projective_distance(f.s[j], f.s[next])});
    }
    const double change =
        have_previous ? std::max(field_change(f.u, previous.u), field_change(f.s, previous.s))
                      : 1.0;
    last_residual = residual;
    last_change = change;
    last_angle = angle;
    last_jump = jump;
    if (residual <= opts.residual_tol && change <= opts.residual_tol &&
        angle >= opts.min_angle && jump <= opts.max_jump) {
      sp.max_jump = jump;
      sp.n = n;
      sp.u = std::move(f.u);
      sp.s = std::move(f.s);
      sp.u_next = std::move(f.u_next);
      sp.s_next = std::move(f.s_next);
      sp.min_angle = angle;
      sp.inv_residual = residual;
      return sp;
    }
    previous = std::move(f);
    have_previous = true;
  }
  throw Error(ErrorKind::NotHyperbolic,
              "direction fields did not converge by n = " + std::to_string(opts.n_max) +
                  " (residual " + std::to_string(last_residual) + ", drift " +
                  std::to_string(last_change) + ", min angle " + std::to_string(last_angle) +
                  ", largest jump " + std::to_string(last_jump) + ")");
}

HyperbolicityCertificate is_uniformly_hyperbolic(const Cocycle& c, double eps,
                                                 const AccelerationOptions& accel,
                                                 const SplittingOptions& split) {
  HyperbolicityCertificate cert;
  const AccelerationFit fit = acceleration_at(c, eps, accel);
  cert.L = fit.L0;
  cert.omega = fit.omega;
  if (cert.L <= 1e-3)
    throw Error(ErrorKind::Inconclusive, "L = " + std::to_string(cert.L) + " is below 1e-3");

  if (eps == 0.0 && c.map.real_symmetric()) {
    cert.by_regularity = fit.omega == 0;
  } else {
    const Cocycle shifted = complexify(c, eps);
    AccelerationOptions two_sided = accel;
    cert.by_regularity = is_regular(Cocycle{shifted.alpha, shifted.map}, two_sided);
  }
  try {
    splitting(c, eps, split);
    cert.by_splitting = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotHyperbolic) throw;
    cert.by_splitting = false;
  }
  cert.agree = cert.by_splitting == cert.by_regularity;
  return cert;
}

Conjugation conjugation(const Splitting& sp) {
  if (sp.min_angle < 1e-8)
    throw Error(ErrorKind::DegenerateSplitting, "min angle " + std::to_string(sp.min_angle));
  const int M = static_cast<int>(sp.grid.size());

  // Gauge b1 = u / <f, u> with f chosen so that <f, u> stays away from zero;
  // this makes b1 and lambda continuous in x.
  const std::array<Vec2, 6> candidates{Vec2{1.0, 0.0}, Vec2{0.0, 1.0},
                                       Vec2{1.0, 1.0}, Vec2{1.0, -1.0},
                                       Vec2{1.0, cplx(0, 1)}, Vec2{1.0, cplx(0, -1)}};
  auto pairing = [](const Vec2& f, const Vec2& v) {
    const Vec2 g = f.normalized();
    return std::conj(g.x) * v.x + std::conj(g.y) * v.y;
  };
  Vec2 chart = candidates[0];
  double best = -1.0;
  for (const auto& f : candidates) {
    double worst = 1.0;
    for (int j = 0; j < M; ++j)
      worst = std::min({worst, std::abs(pairing(f, sp.u[j])), std::abs(pairing(f, sp.u_next[j]))});
    if (worst > best) {
      best = worst;
      chart = f;
    }
  }

  Conjugation out;
  out.B.resize(M);
  out.lambda.resize(M);
  double log_sum = 0.0;
  for (int j = 0; j < M; ++j) {
    const cplx scale = pairing(chart, sp.u[j]);
    const Vec2 b1{sp.u[j].x / scale, sp.u[j].y / scale};
    const cplx det = b1.x * sp.s[j].y - b1.y * sp.s[j].x;
    const Vec2 b2{sp.s[j].x / det, sp.s[j].y / det};
    out.B[j] = Mat2{b1.x, b2.x, b1.y, b2.y};
    // <chart, b1(x + alpha)> = 1, so lambda is the chart coordinate of A b1.
    out.lambda[j] = pairing(chart, sp.A[j] * b1);
    log_sum += std::log(std::abs(out.lambda[j]));
  }
  out.mean_log_abs_lambda = log_sum / M;
  out.lambda_fit = from_samples(out.lambda).trimmed(1e-16);

  double turns = 0.0;
  for (int j = 0; j < M; ++j) turns += std::arg(out.lambda[(j + 1) % M] / out.lambda[j]);
  out.winding = static_cast<int>(std::lround(turns / kTwoPi));
  return out;
}

DerivativeCoefficients derivative_coefficients(const Splitting& sp, std::span<const Mat2> B) {
  if (sp.min_angle < 1e-8)
    throw Error(ErrorKind::DegenerateSplitting, "min angle " + std::to_string(sp.min_angle));
  DerivativeCoefficients dc;
  dc.eps = sp.eps;
  dc.alpha = sp.alpha;
  dc.grid = sp.grid;
  const std::size_t M = sp.grid.size();
  dc.q1.resize(M);
  dc.q2.resize(M);
  dc.q3.resize(M);
  for (std::size_t j = 0; j < M; ++j) {
    const Mat2& b = B[j];
    dc.q1[j] = b.a * b.d + b.b * b.c;
    dc.q2[j] = b.c * b.d;
    dc.q3[j] = -b.b * b.a;
  }
  dc.f1 = from_samples(dc.q1);
  dc.f2 = from_samples(dc.q2);
  dc.f3 = from_samples(dc.q3);
  return dc;
}

DerivativeCoefficients derivative_coefficients(const Splitting& sp) {
  if (sp.min_angle < 1e-8)
    throw Error(ErrorKind::DegenerateSplitting, "min angle " + std::to_string(sp.min_angle));
  // Unit u column, s column scaled to det 1.
  std::vector<Mat2> B(sp.grid.size());
  for (std::size_t j = 0; j < B.size(); ++j) {
    const Vec2& u = sp.u[j];
    const Vec2& s = sp.s[j];
    const cplx det = u.x * s.y - u.y * s.x;
    B[j] = Mat2{u.x, s.x / det, u.y, s.y / det};
  }
  return derivative_coefficients(sp, B);
}

double directional_derivative(const DerivativeCoefficients& dc, const TorusFunction& w1,
                              const TorusFunction& w2, const TorusFunction& w3) {
  std::vector<cplx> terms(dc.grid.size());
  for (std::size_t j = 0; j < dc.grid.size(); ++j) {
    const cplx x(dc.grid[j], 0.0);
    terms[j] = dc.q1[j] * w1(x) + dc.q2[j] * w2(x) + dc.q3[j] * w3(x);
  }
  return mean_re(terms);
}

PotentialGradient potential_gradient(const TorusFunction& v, double E, const Frequency& alpha,
                                     int j, double eps, int K, const AccelerationOptions& accel,
                                     const SplittingOptions& split) {
  if (K < 0) throw Error(ErrorKind::InvalidArgument, "K must be >= 0");
  const Cocycle c{alpha, schrodinger(v, E)};
  const AccelerationFit fit = acceleration_at(c, eps, accel);
  if (fit.omega != j || !fit.quantized)
    throw Error(ErrorKind::WrongStratum, "acceleration at eps = " + std::to_string(eps) + " is " +
                                             std::to_string(fit.slope) + ", not " +
                                             std::to_string(j));
  const Splitting sp = splitting(c, eps, split);
  const DerivativeCoefficients dc = derivative_coefficients(sp);

  PotentialGradient out;
  out.j = j;
  out.eps = eps;
  const std::size_t M = dc.grid.size();
  std::vector<cplx> along_cos(M), along_sin(M);
  for (int k = -K; k <= K; ++k) {
    const TorusFunction wc = TorusFunction::cosine(k).complexified(eps);
    const TorusFunction ws = TorusFunction::sine(k).complexified(eps);
    for (std::size_t i = 0; i < M; ++i) {
      const cplx x(dc.grid[i], 0.0);
      along_cos[i] = dc.q3[i] * wc(x);
      along_sin[i] = dc.q3[i] * ws(x);
    }
    GradientEntry entry{k, mean_re(along_cos), mean_re(along_sin)};
    out.witness = std::max({out.witness, std::abs(entry.d_cos), std::abs(entry.d_sin)});
    out.entries.push_back(entry);
  }
  for (int k = 0; k <= dc.f3.degree(); ++k)
    out.pairing_defect =
        std::max(out.pairing_defect, std::abs(dc.f3.coeff(k) + std::conj(dc.f3.coeff(-k))));
  return out;
}

}  // namespace qpc
