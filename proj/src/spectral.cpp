#include "qpc/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qpc/error.hpp"

namespace qpc {

IdsTable finite_spectrum(const TorusFunction& v, double alpha, double theta, int N) {
  if (N < 16) throw Error(ErrorKind::InvalidArgument, "finite_spectrum needs N >= 16");
  std::vector<double> diag(N), off(N - 1, 1.0);
  for (int n = 0; n < N; ++n) {
    const long double x = static_cast<long double>(theta) + n * static_cast<long double>(alpha);
    diag[n] = v(cplx(static_cast<double>(x - std::floor(x)), 0.0)).real();
  }
  const lapack_int info = LAPACKE_dsterf(N, diag.data(), off.data());
  if (info != 0)
    throw Error(ErrorKind::InvalidArgument, "dsterf failed with info " + std::to_string(info));
  return IdsTable{std::move(diag), N};
}

double ids(const IdsTable& table, double E) {
  if (table.energies.empty()) return 0.0;
  const auto it = std::upper_bound(table.energies.begin(), table.energies.end(), E);
  return static_cast<double>(it - table.energies.begin()) / table.energies.size();
}

double spectrum_distance(const IdsTable& table, double E) {
  const auto& ev = table.energies;
  if (ev.empty()) return std::numeric_limits<double>::infinity();
  const auto it = std::lower_bound(ev.begin(), ev.end(), E);
  double best = std::numeric_limits<double>::infinity();
  if (it != ev.end()) best = *it - E;
  if (it != ev.begin()) best = std::min(best, E - *(it - 1));
  return best;
}

double spectrum_energy_near(const TorusFunction& v, double alpha, double target, int N,
                            double tol) {
  const IdsTable main = finite_spectrum(v, alpha, 0.0, N);
  // Boundary states move with the phase; bulk spectrum does not. Half-integer
  // phases alone are not enough for potentials of period 1/2.
  const IdsTable check1 = finite_spectrum(v, alpha, 0.5, N);
  const IdsTable check2 = finite_spectrum(v, alpha, std::sqrt(2.0) - 1.0, N);
  double best = std::numeric_limits<double>::quiet_NaN();
  double best_gap = std::numeric_limits<double>::infinity();
  for (double e : main.energies) {
    if (std::abs(e - target) < best_gap && spectrum_distance(check1, e) <= tol &&
        spectrum_distance(check2, e) <= tol) {
      best_gap = std::abs(e - target);
      best = e;
    }
  }
  if (std::isnan(best)) throw Error(ErrorKind::InvalidArgument, "no confirmed eigenvalue found");
  return best;
}

ThoulessResult thouless_residual(const TorusFunction& v, const Frequency& alpha,
                                 const std::vector<double>& energies, int N,
                                 const LyapunovOptions& opts) {
  const IdsTable table = finite_spectrum(v, alpha.value(), 0.0, N);
  ThoulessResult out;
  for (double E : energies) {
    if (spectrum_distance(table, E) < 1e-9)
      throw Error(ErrorKind::InvalidArgument, "energy " + std::to_string(E) + " hits an eigenvalue");
    double log_sum = 0.0;
    for (double e : table.energies) log_sum += std::log(std::abs(e - E));
    const Cocycle c{alpha, schrodinger(v, E)};
    const double r = std::abs(lyapunov(c, 0.0, opts) - log_sum / N);
    out.residuals.push_back(r);
    out.max_residual = std::max(out.max_residual, r);
  }
  return out;
}

namespace {

// The slope fits must use the same convergent and grid as L itself.
AccelerationOptions aligned(const ClassifyOptions& opts) {
  AccelerationOptions accel = opts.acceleration;
  accel.lyapunov.q_max = opts.lyapunov.q_max;
  accel.lyapunov.grid = opts.lyapunov.grid;
  accel.lyapunov.refine = opts.lyapunov.refine;
  return accel;
}

}  // namespace

const char* to_string(EnergyTag tag) {
  switch (tag) {
    case EnergyTag::UniformlyHyperbolic: return "UniformlyHyperbolic";
    case EnergyTag::Supercritical: return "Supercritical";
    case EnergyTag::Subcritical: return "Subcritical";
    case EnergyTag::Critical: return "Critical";
  }
  return "Unknown";
}

EnergyClass classify_energy(const TorusFunction& v, const Frequency& alpha, double E,
                            const ClassifyOptions& opts) {
  const Cocycle c{alpha, schrodinger(v, E)};
  EnergyClass out;
  if (alpha.is_rational()) {
    out.L = lyapunov(c, 0.0, opts.lyapunov);
  } else {
    const IrrationalEstimate est = lyapunov_irrational(c, 0.0, opts.lyapunov);
    out.L = est.value;
    out.spread = est.spread;
  }
  const AccelerationOptions accel = aligned(opts);
  out.evidence = acceleration_at(c, 0.0, accel, out.L);
  out.omega = out.evidence.omega;
  out.defect = out.evidence.defect;
  const bool positive = out.L > opts.L_threshold;
  if (positive)
    out.tag = out.omega == 0 ? EnergyTag::UniformlyHyperbolic : EnergyTag::Supercritical;
  else
    out.tag = out.omega == 0 ? EnergyTag::Subcritical : EnergyTag::Critical;
  out.borderline = out.L >= opts.borderline_lo && out.L <= opts.borderline_hi;
  return out;
}

std::vector<ScanRow> scan(const TorusFunction& v, const Frequency& alpha,
                          const std::vector<double>& energies, const ScanOptions& opts) {
  std::vector<ScanRow> rows;
  rows.reserve(energies.size());
  for (double E : energies) {
    ScanRow row;
    row.E = E;
    row.cls = classify_energy(v, alpha, E, opts.classify);
    try {
      const Cocycle c{alpha, schrodinger(v, E)};
      const StratifiedValue sv =
          stratified_L(c, row.cls.omega, opts.stratum_delta, aligned(opts.classify).lyapunov,
                       opts.stratum_samples);
      row.stratum_residual = std::abs(sv.value - row.cls.L);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::WrongStratum) throw;
      row.stratum_residual = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const bool left = i > 0 && rows[i - 1].cls.tag != rows[i].cls.tag;
    const bool right = i + 1 < rows.size() && rows[i + 1].cls.tag != rows[i].cls.tag;
    rows[i].boundary = left || right;
  }
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::string out = "E,L,omega,defect,class,stratumL_fit_residual,boundary,borderline\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%.17g,%s,%.17g,%d,%d\n", r.E, r.cls.L,
                  r.cls.omega, r.cls.defect, to_string(r.cls.tag), r.stratum_residual,
                  r.boundary ? 1 : 0, r.cls.borderline ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace qpc
