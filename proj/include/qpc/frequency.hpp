#pragma once

#include <span>
#include <vector>

namespace qpc {

/// A reduced fraction p/q together with its distance to the target frequency.
struct RationalApprox {
  long p = 0;
  long q = 1;
  double err = 0.0;
};

/// Continued-fraction convergents of alpha with q <= q_max, strictly increasing
/// in q (for equal denominators the later, better one is kept). The expansion is
/// exact integer arithmetic on the binary value of alpha.
/// Throws RationalInput when some p/q with q <= q_max matches alpha within 1e-15.
std::vector<RationalApprox> convergents(double alpha, long q_max);

/// Rotation number of the base dynamics x -> x + alpha, normalized to [0, 1).
class Frequency {
 public:
  static constexpr long kMaxDenominator = 1'000'000;

  /// Throws NonCoprime unless gcd(p, q) = 1.
  static Frequency rational(long p, long q);
  /// Stores convergents up to kMaxDenominator.
  static Frequency irrational(double alpha);
  /// (sqrt(5) - 1) / 2
  static Frequency golden();

  bool is_rational() const noexcept { return q_ > 0; }
  double value() const noexcept { return value_; }
  long p() const noexcept { return p_; }
  long q() const noexcept { return q_; }
  std::span<const RationalApprox> convergents() const noexcept { return convergents_; }
  /// The largest `count` convergents with q <= q_max, in increasing q.
  std::vector<RationalApprox> best_convergents(long q_max, int count) const;

  /// Fractional part of j * alpha, exact for rational frequencies.
  double orbit_phase(long j) const noexcept;

 private:
  double value_ = 0.0;
  long p_ = 0;
  long q_ = 0;
  std::vector<RationalApprox> convergents_;
};

}  // namespace qpc
