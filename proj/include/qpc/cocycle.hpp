#pragma once

#include <array>
#include <optional>

#include "qpc/frequency.hpp"
#include "qpc/mat2.hpp"
#include "qpc/torus_function.hpp"

namespace qpc {

/// x -> ((a(x), b(x)), (c(x), d(x))) with unit determinant.
class CocycleMap {
 public:
  /// Checks det = 1 on a 256-point real grid to 1e-8 (NotUnimodular otherwise).
  CocycleMap(TorusFunction a, TorusFunction b, TorusFunction c, TorusFunction d,
             std::optional<int> topological_degree = std::nullopt);

  static CocycleMap constant(const Mat2& m);

  const TorusFunction& a() const noexcept { return entries_[0]; }
  const TorusFunction& b() const noexcept { return entries_[1]; }
  const TorusFunction& c() const noexcept { return entries_[2]; }
  const TorusFunction& d() const noexcept { return entries_[3]; }
  const std::array<TorusFunction, 4>& entries() const noexcept { return entries_; }

  bool real_symmetric() const noexcept { return real_symmetric_; }
  std::optional<int> topological_degree() const noexcept { return degree_; }
  /// Largest Fourier degree among the entries.
  int trig_degree() const noexcept;
  double delta_max() const noexcept;

  Mat2 operator()(cplx z) const;
  Mat2 eval_phasor(cplx w, cplx w_inv) const noexcept;

  /// x -> A(x + i eps)
  CocycleMap complexified(double eps) const;

 private:
  std::array<TorusFunction, 4> entries_;
  bool real_symmetric_ = false;
  std::optional<int> degree_;
};

struct Cocycle {
  Frequency alpha;
  CocycleMap map;
};

/// x -> ((E - v(x), -1), (1, 0)). Requires a real-symmetric potential.
CocycleMap schrodinger(const TorusFunction& v, double E);

/// Walks the orbit z, z + alpha, z + 2 alpha, ... producing A at each point.
/// Phasors are advanced multiplicatively and resynchronized from the exact
/// orbit phase every few steps.
class OrbitWalker {
 public:
  OrbitWalker(const CocycleMap& map, const Frequency& alpha, cplx z0);

  Mat2 current() const noexcept { return map_->eval_phasor(w_, w_inv_); }
  void advance() noexcept;

 private:
  void resync() noexcept;

  const CocycleMap* map_;
  const Frequency* alpha_;
  cplx z0_;
  long j_ = 0;
  cplx w_, w_inv_, step_, step_inv_;
};

/// n-step transfer matrix A_n(z) = A(z + (n-1) alpha) ... A(z); for negative n,
/// A_n(z) = A_{-n}(z + n alpha)^{-1}. Throws StripExceeded outside the strip.
ScaledMatrix iterate(const Cocycle& c, long n, cplx z);
ScaledMatrix iterate(const CocycleMap& map, const Frequency& alpha, long n, cplx z);

/// (alpha, x -> A(x + i eps))
Cocycle complexify(const Cocycle& c, double eps);

}  // namespace qpc
