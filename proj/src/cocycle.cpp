#include "qpc/cocycle.hpp"

#include <algorithm>
#include <cmath>

#include "qpc/error.hpp"

namespace qpc {

CocycleMap::CocycleMap(TorusFunction a, TorusFunction b, TorusFunction c, TorusFunction d,
                       std::optional<int> topological_degree)
    : entries_{std::move(a), std::move(b), std::move(c), std::move(d)},
      degree_(topological_degree) {
  real_symmetric_ = std::all_of(entries_.begin(), entries_.end(),
                                [](const TorusFunction& f) { return f.real_symmetric(); });
  constexpr int kGrid = 256;
  for (int j = 0; j < kGrid; ++j) {
    const Mat2 m = (*this)(cplx(static_cast<double>(j) / kGrid, 0.0));
    const double err = std::abs(m.det() - 1.0);
    if (!(err <= 1e-8))
      throw Error(ErrorKind::NotUnimodular,
                  "det A(x) deviates from 1 by " + std::to_string(err) + " at x = " +
                      std::to_string(static_cast<double>(j) / kGrid));
  }
}

CocycleMap CocycleMap::constant(const Mat2& m) {
  return CocycleMap(TorusFunction::constant(m.a), TorusFunction::constant(m.b),
                    TorusFunction::constant(m.c), TorusFunction::constant(m.d));
}

int CocycleMap::trig_degree() const noexcept {
  int K = 0;
  for (const auto& f : entries_) K = std::max(K, f.degree());
  return K;
}

double CocycleMap::delta_max() const noexcept {
  double d = entries_[0].delta_max();
  for (const auto& f : entries_) d = std::min(d, f.delta_max());
  return d;
}

Mat2 CocycleMap::operator()(cplx z) const {
  return {entries_[0](z), entries_[1](z), entries_[2](z), entries_[3](z)};
}

Mat2 CocycleMap::eval_phasor(cplx w, cplx w_inv) const noexcept {
  return {entries_[0].eval_phasor(w, w_inv), entries_[1].eval_phasor(w, w_inv),
          entries_[2].eval_phasor(w, w_inv), entries_[3].eval_phasor(w, w_inv)};
}

CocycleMap CocycleMap::complexified(double eps) const {
  if (std::abs(eps) > delta_max())
    throw Error(ErrorKind::StripExceeded, "complexification beyond strip");
  return CocycleMap(entries_[0].complexified(eps), entries_[1].complexified(eps),
                    entries_[2].complexified(eps), entries_[3].complexified(eps), degree_);
}

CocycleMap schrodinger(const TorusFunction& v, double E) {
  if (!v.real_symmetric())
    throw Error(ErrorKind::InvalidArgument, "Schrodinger potential must be real-symmetric");
  return CocycleMap(TorusFunction::constant(E) - v, TorusFunction::constant(-1.0),
                    TorusFunction::constant(1.0), TorusFunction::constant(0.0));
}

namespace {
constexpr long kResyncInterval = 32;
}

OrbitWalker::OrbitWalker(const CocycleMap& map, const Frequency& alpha, cplx z0)
    : map_(&map), alpha_(&alpha), z0_(z0) {
  if (std::abs(z0.imag()) > map.delta_max() * (1 + 1e-15))
    throw Error(ErrorKind::StripExceeded, "orbit start outside strip");
  step_ = std::exp(cplx(0, kTwoPi * alpha.value()));
  step_inv_ = std::conj(step_);
  resync();
}

void OrbitWalker::resync() noexcept {
  const cplx z = z0_ + alpha_->orbit_phase(j_);
  w_ = std::exp(cplx(0, kTwoPi) * z);
  w_inv_ = std::exp(cplx(0, -kTwoPi) * z);
}

void OrbitWalker::advance() noexcept {
  ++j_;
  if (j_ % kResyncInterval == 0) {
    resync();
  } else {
    w_ *= step_;
    w_inv_ *= step_inv_;
  }
}

ScaledMatrix iterate(const CocycleMap& map, const Frequency& alpha, long n, cplx z) {
  if (n < 0) {
    const cplx start = z + alpha.orbit_phase(n);  // z - |n| alpha mod 1
    return iterate(map, alpha, -n, start).sl_inverse();
  }
  ScaledMatrix out;
  if (n == 0) {
    if (std::abs(z.imag()) > map.delta_max() * (1 + 1e-15))
      throw Error(ErrorKind::StripExceeded, "phase outside strip");
    return out;
  }
  OrbitWalker walk(map, alpha, z);
  for (long j = 0; j < n; ++j) {
    out.left_multiply(walk.current());
    walk.advance();
  }
  return out;
}

ScaledMatrix iterate(const Cocycle& c, long n, cplx z) { return iterate(c.map, c.alpha, n, z); }

Cocycle complexify(const Cocycle& c, double eps) { return {c.alpha, c.map.complexified(eps)}; }

}  // namespace qpc
