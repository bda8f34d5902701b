// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "cli.hpp"
#include "qpc/acceleration.hpp"
#include "qpc/error.hpp"
#include "qpc/hyperbolicity.hpp"
#include "qpc/oracles.hpp"
#include "qpc/spectral.hpp"
#include "support.hpp"

using namespace qpc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

char buf[512];

template <class... Args>
std::string say(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const Frequency kGolden = Frequency::golden();

// Fitting options: the largest convergent only.
const LyapunovOptions kFit{.grid = 1024, .q_max = 1000, .convergents = 1};

AccelerationOptions fit_options() {
  AccelerationOptions o;
  o.lyapunov = kFit;
  return o;
}

double in_spectrum(double lambda, double target = 0.0) {
  return spectrum_energy_near(oracles::amo_potential(lambda), kGolden.value(), target);
}

struct RandomCase {
  int degree;
  TorusFunction v;
  double E;
  double eps0;
};

// The random suite: Schrodinger cocycles with real potentials of degree 1..3.
const std::vector<RandomCase>& random_suite() {
  static const std::vector<RandomCase> suite = [] {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> D(1, 3);
    std::uniform_real_distribution<double> U(-3.0, 3.0), e0(0.05, 0.2);
    std::vector<RandomCase> out;
    for (int i = 0; i < 50; ++i) {
      const int d = D(rng);
      TorusFunction v = test::random_real_poly(rng, d);
      const double E = U(rng);
      out.push_back({d, std::move(v), E, e0(rng)});
    }
    return out;
  }();
  return suite;
}

// A e^{t W} for constant W = ((w1, w2), (w3, -w1)).
CocycleMap perturbed(const CocycleMap& A, cplx w1, cplx w2, cplx w3, double t) {
  const cplx mu = std::sqrt(t * t * (w1 * w1 + w2 * w3));
  const cplx ch = std::cosh(mu);
  const cplx sh = std::abs(mu) < 1e-300 ? cplx(t) : std::sinh(mu) / mu * t;
  const Mat2 E{ch + sh * w1, sh * w2, sh * w3, ch - sh * w1};
  auto C = [](cplx z) { return TorusFunction::constant(z); };
  return CocycleMap(A.a() * C(E.a) + A.b() * C(E.c), A.a() * C(E.b) + A.b() * C(E.d),
                    A.c() * C(E.a) + A.d() * C(E.c), A.c() * C(E.b) + A.d() * C(E.d));
}

// Ten cocycles that are uniformly hyperbolic by construction: |E - v| > 3.
std::vector<Cocycle> uh_suite() {
  std::mt19937_64 rng(77);
  std::vector<Cocycle> out;
  for (int i = 0; i < 10; ++i) {
    const auto v = test::random_real_poly(rng, 1 + i % 3, 0.5);
    double sup = 0.0;
    for (int j = 0; j < 512; ++j) sup = std::max(sup, std::abs(eval(v, j / 512.0)));
    const double E = (i % 2 ? -1.0 : 1.0) * (sup + 3.0 + 0.1 * i);
    out.push_back({kGolden, schrodinger(v, E)});
  }
  return out;
}

Outcome free_laplacian() {
  const auto zero = TorusFunction::constant(0.0);
  const LyapunovOptions o{.grid = 256};
  const double L3 = lyapunov_irrational({kGolden, schrodinger(zero, 3.0)}, 0.0, o).value;
  const double e3 = std::abs(L3 - std::log((3 + std::sqrt(5.0)) / 2));
  double sup = 0.0;
  for (int i = 0; i <= 39; ++i) {
    const double E = 2.1 + (6.0 - 2.1) * i / 39;
    const double L = lyapunov_irrational({kGolden, schrodinger(zero, E)}, 0.0, o).value;
    sup = std::max(sup, std::abs(L - oracles::free_laplacian_L(E)));
  }
  return {e3 <= 1e-6 && sup <= 1e-5, say("|L(3) - ln((3+sqrt5)/2)| = %.2e, sup on [2.1, 6] = %.2e", e3, sup)};
}

Outcome amo_supercritical() {
  const double E = in_spectrum(2.0);
  const Cocycle c{kGolden, schrodinger(oracles::amo_potential(2.0), E)};
  const double L = lyapunov(c, 0.0);
  const auto p = epsilon_profile(c, 0.0, 0.3, 13, kFit);
  double prof = 0.0;
  for (std::size_t i = 0; i < p.eps.size(); ++i)
    prof = std::max(prof, std::abs(p.L[i] - oracles::amo_L(2.0, p.eps[i], std::log(2.0))));
  const auto fit = acceleration_at(c, 0.0, fit_options());
  const bool ok = std::abs(L - std::log(2.0)) <= 2e-2 && prof <= 2e-2 && fit.omega == 1 && fit.defect < 0.05;
  return {ok, say("E = %.6f, L = %.6f, profile error %.2e, omega = %d, defect %.2e", E, L, prof,
                  fit.omega, fit.defect)};
}

Outcome amo_sub_and_critical() {
  const double Es = in_spectrum(0.5), Ec = in_spectrum(1.0);
  const Cocycle sub{kGolden, schrodinger(oracles::amo_potential(0.5), Es)};
  const Cocycle crit{kGolden, schrodinger(oracles::amo_potential(1.0), Ec)};
  const double Ls = lyapunov(sub, 0.0), Lc = lyapunov(crit, 0.0);
  const auto fs = acceleration_at(sub, 0.0, fit_options());
  const auto fc = acceleration_at(crit, 0.0, fit_options());
  const bool ok = Ls <= 2e-3 && fs.omega == 0 && Lc <= 5e-3 && fc.omega == 1;
  return {ok, say("lambda 1/2: L = %.2e, omega = %d; lambda 1: L = %.2e, omega = %d", Ls, fs.omega, Lc,
                  fc.omega)};
}

Outcome quantization() {
  int good = 0, flagged = 0, near_break = 0;
  for (const auto& rc : random_suite()) {
    const Cocycle c{kGolden, schrodinger(rc.v, rc.E)};
    const auto fit = acceleration_at(c, rc.eps0, fit_options());
    if (fit.defect <= 0.05) ++good;
    if (fit.defect <= 0.05 && fit.quantized) continue;
    ++flagged;
    const auto p = epsilon_profile(c, std::max(0.0, rc.eps0 - 0.1), rc.eps0 + 0.1, 41, kFit);
    for (double b : slope_breakpoints(p))
      if (std::abs(b - rc.eps0) <= 0.02) {
        ++near_break;
        break;
      }
  }
  const bool ok = good >= 45 && near_break == flagged;
  return {ok, say("%d/50 with defect <= 0.05, %d flagged, %d of them near a breakpoint", good, flagged,
                  near_break)};
}

Outcome rotations() {
  std::string d;
  bool ok = true;
  for (int k = 0; k <= 3; ++k) {
    const auto fit = acceleration_at({kGolden, oracles::rotation_cocycle(k)}, 0.0, fit_options());
    ok = ok && fit.omega == k && fit.defect < 0.05;
    d += say("k=%d: omega %d defect %.1e  ", k, fit.omega, fit.defect);
  }
  return {ok, d};
}

Outcome diagonal_exponential() {
  const auto m = oracles::diagonal_exponential(2);
  const Cocycle half{Frequency::rational(1, 2), m}, other{Frequency::rational(3, 5), m};
  double worst = 0.0, off = 0.0;
  for (double eps : {0.0, 0.1, 0.25}) {
    worst = std::max(worst, std::abs(lyapunov(half, eps) - 2 / M_PI * std::exp(-kTwoPi * 2 * eps)));
    off = std::max(off, std::abs(lyapunov(other, eps)));
  }
  return {worst <= 1e-6 && off <= 1e-6, say("alpha 1/2 error %.2e, alpha 3/5 |L| %.2e", worst, off)};
}

Outcome derivative_formula() {
  std::mt19937_64 rng(78);
  std::uniform_real_distribution<double> U(-0.5, 0.5);
  double fd_rel = 0.0, gauge = 0.0, conj = 0.0;
  for (const Cocycle& c : uh_suite()) {
    const auto sp = splitting(c, 0.0);
    const auto dc = derivative_coefficients(sp);
    const cplx w1(U(rng), U(rng)), w2(U(rng), U(rng)), w3(U(rng), U(rng));
    const double d = directional_derivative(dc, TorusFunction::constant(w1), TorusFunction::constant(w2),
                                            TorusFunction::constant(w3));
    const double t = 1e-4;
    const double fd = (lyapunov({c.alpha, perturbed(c.map, w1, w2, w3, t)}, 0.0, kFit) -
                       lyapunov({c.alpha, perturbed(c.map, w1, w2, w3, -t)}, 0.0, kFit)) /
                      (2 * t);
    fd_rel = std::max(fd_rel, std::abs(d - fd) / std::max(std::abs(fd), 1e-3));

    const auto cj = conjugation(sp);
    conj = std::max(conj, std::abs(cj.mean_log_abs_lambda - lyapunov(c, 0.0, kFit)));
    std::vector<Mat2> B = cj.B;
    for (auto& b : B) {
      const cplx s = std::polar(1.0 + U(rng) * 1.8, U(rng) * kTwoPi);
      b = Mat2{s * b.a, b.b / s, s * b.c, b.d / s};
    }
    const auto other = derivative_coefficients(sp, B);
    for (std::size_t j = 0; j < B.size(); ++j)
      gauge = std::max({gauge, std::abs(other.q1[j] - dc.q1[j]), std::abs(other.q2[j] - dc.q2[j]),
                        std::abs(other.q3[j] - dc.q3[j])});
  }
  const bool ok = fd_rel <= 1e-4 && gauge <= 1e-12 && conj <= 1e-5;
  return {ok, say("FD relative error %.2e, gauge defect %.2e, |int Re ln lambda - L| %.2e", fd_rel, gauge,
                  conj)};
}

Outcome schrodinger_symmetry() {
  std::vector<std::pair<Cocycle, double>> cases;
  for (const Cocycle& c : uh_suite()) cases.emplace_back(c, 0.0);
  const Cocycle gap{kGolden, schrodinger(oracles::amo_potential(2.0), 5.0)};
  cases.emplace_back(gap, 0.0);
  cases.emplace_back(gap, 0.07);
  cases.emplace_back(Cocycle{kGolden, schrodinger(oracles::amo_potential(2.0), in_spectrum(2.0))}, 0.1);
  double worst = 0.0;
  for (const auto& [c, eps] : cases) {
    const auto sp = splitting(c, eps);
    const auto dc = derivative_coefficients(sp);
    for (std::size_t j = 0; j < dc.grid.size(); ++j) {
      const Vec2 &un = sp.u_next[j], &sn = sp.s_next[j];
      const cplx q2_next = un.y * sn.y / (un.x * sn.y - un.y * sn.x);
      worst = std::max(worst, std::abs(q2_next + dc.q3[j]));
    }
  }
  return {worst <= 1e-8, say("max |q2(x + alpha) + q3(x)| = %.2e over %zu splittings", worst, cases.size())};
}

Outcome submersion_witness() {
  // regression anchor from the first run
  const double kAnchor = 0.25;
  const auto g = potential_gradient(oracles::amo_potential(2.0), in_spectrum(2.0), kGolden, 1, 0.1, 2,
                                    fit_options());
  const bool ok = g.witness > 0.01 && std::abs(g.witness - kAnchor) <= 1e-6;
  return {ok, say("witness %.12f (anchor %.12f)", g.witness, kAnchor)};
}

Outcome thouless() {
  const auto zero = TorusFunction::constant(0.0);
  std::vector<double> Es;
  for (int i = 0; i < 10; ++i) {
    Es.push_back(2.2 + 0.4 * i);
    Es.push_back(-2.2 - 0.4 * i);
  }
  const LyapunovOptions o{.grid = 256};
  const double r4 = thouless_residual(zero, kGolden, Es, 4096, o).max_residual;
  const double r8 = thouless_residual(zero, kGolden, Es, 8192, o).max_residual;
  const double ratio = r4 / r8;
  return {r4 <= 5e-3 && ratio >= 1.0 && ratio <= 4.0,
          say("residual %.2e at N = 4096, %.2e at N = 8192, ratio %.2f", r4, r8, ratio)};
}

Outcome cross_estimator() {
  const long F[] = {13, 21, 34, 55, 89, 144, 233, 377, 610, 987};
  double worst_all = 0.0, worst_q21 = 0.0;
  long holds_from = 0;
  bool suffix = true;
  int fails = 0;
  for (int j = 9; j >= 1; --j) {
    const long p = F[j - 1], q = F[j];
    const double tol = std::max(5e-3, 10 * std::exp(-double(q)));
    bool all = true;
    for (const auto& rc : random_suite()) {
      const auto map = schrodinger(rc.v, rc.E);
      const double lr = lyapunov_rational(map, p, q, 0.0, 1024);
      const double lt = lyapunov_from_trace(trace_fourier_profile(map, p, q, 16 * q * rc.degree), 0.0);
      const double e = std::abs(lr - lt);
      worst_all = std::max(worst_all, e);
      if (q == 21) worst_q21 = std::max(worst_q21, e);
      if (e > tol) {
        all = false;
        ++fails;
      }
    }
    suffix = suffix && all;
    if (suffix) holds_from = q;
  }

  double erg = 0.0;
  const LyapunovOptions o{.grid = 1024};
  for (const auto& rc : random_suite()) {
    const Cocycle c{kGolden, schrodinger(rc.v, rc.E)};
    erg = std::max(erg, std::abs(lyapunov_ergodic(c, 0.0, 100000, 8) - lyapunov_irrational(c, 0.0, o).value));
  }
  const bool ok = fails == 0 && erg <= 1e-2;
  std::string d = say("rational vs trace: %d failures over q = 21..987, worst %.2e (q = 21: %.2e); ", fails,
                      worst_all, worst_q21);
  d += holds_from ? say("holds for all q >= %ld; ", holds_from) : std::string("fails at q = 987; ");
  d += say("ergodic vs irrational: %.2e", erg);
  return {ok, d};
}

Outcome determinism() {
  cli::RunConfig cfg;
  cfg.command = "classify";
  cfg.potential = "amo:2";
  cfg.E_min = -5;
  cfg.E_max = 5;
  cfg.E_count = 11;
  cfg.grid = 512;
  cfg.q_max = 233;
  omp_set_num_threads(1);
  const std::string one = cli::cmd_classify(cfg);
  omp_set_num_threads(3);
  const std::string three = cli::cmd_classify(cfg);
  omp_set_num_threads(omp_get_num_procs());
  return {one == three && !one.empty(), say("%zu bytes, %s", one.size(), one == three ? "identical" : "differ")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"free Laplacian exponent", free_laplacian},
      {"supercritical almost Mathieu", amo_supercritical},
      {"subcritical and critical almost Mathieu", amo_sub_and_critical},
      {"acceleration quantization on random cocycles", quantization},
      {"rotation degrees", rotations},
      {"diagonal exponential at rationals", diagonal_exponential},
      {"derivative formula", derivative_formula},
      {"Schrodinger symmetry of q2 and q3", schrodinger_symmetry},
      {"submersion witness", submersion_witness},
      {"Thouless formula", thouless},
      {"cross-estimator agreement", cross_estimator},
      {"classification determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!r.pass) ++failed;
    std::printf("[%s] %2zu %s: %s (%.1f s)\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                r.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
