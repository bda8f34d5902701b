#include "qpc/mat2.hpp"

#include "qpc/error.hpp"

namespace qpc {

double log_spectral_radius_from_trace(cplx t) {
  if (std::abs(t) > 1e8) return std::log(std::abs(t));
  const cplx half = 0.5 * t;
  const cplx root = std::sqrt(half * half - 1.0);
  const double r = std::max(std::abs(half + root), std::abs(half - root));
  return r <= 1.0 ? 0.0 : std::log(r);
}

double spectral_radius(const Mat2& m) {
  if (std::abs(m.det() - 1.0) > 1e-6) throw Error(ErrorKind::NotUnimodular, "|det - 1| > 1e-6");
  return std::exp(log_spectral_radius_from_trace(m.trace()));
}

double log_spectral_radius(const ScaledMatrix& s) {
  const double tr_abs = std::abs(s.m.trace());
  if (tr_abs == 0.0) return 0.0;
  const double log_tr = s.logscale + std::log(tr_abs);
  // For |t| > e^20 the correction ln|1/2 + sqrt(1/4 - 1/t^2)| is below 1e-17.
  if (log_tr > 20.0) return log_tr;
  return log_spectral_radius_from_trace(std::exp(s.logscale) * s.m.trace());
}

}  // namespace qpc
