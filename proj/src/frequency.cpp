#include "qpc/frequency.hpp"

#include <cmath>
#include <numeric>

#include "qpc/error.hpp"

namespace qpc {

std::vector<RationalApprox> convergents(double alpha, long q_max) {
  if (!std::isfinite(alpha)) throw Error(ErrorKind::InvalidArgument, "alpha must be finite");
  if (q_max < 1) throw Error(ErrorKind::InvalidArgument, "q_max must be >= 1");

  // alpha = num / den exactly, den a power of two.
  int exponent = 0;
  const double mantissa = std::frexp(alpha, &exponent);
  const auto mant = static_cast<__int128>(std::ldexp(mantissa, 53));
  const int shift = 53 - exponent;
  __int128 num = 0, den = 1;
  if (shift <= 0) {
    num = mant << (-shift);
  } else if (shift <= 120) {
    num = mant;
    den = static_cast<__int128>(1) << shift;
  }
  // else |alpha| < 2^-67: indistinguishable from 0/1 at any admissible q_max.

  std::vector<RationalApprox> out;
  // Standard recurrence seeded with h_{-2}/k_{-2} = 0/1 and h_{-1}/k_{-1} = 1/0.
  __int128 h_prev = 0, h = 1;
  __int128 k_prev = 1, k = 0;
  __int128 a_num = num, a_den = den;
  while (true) {
    __int128 a = a_num / a_den;
    if (a_num < 0 && a_num % a_den != 0) --a;  // floor for negatives
    const __int128 h_next = a * h + h_prev;
    const __int128 k_next = a * k + k_prev;
    if (k_next > q_max) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    const long p = static_cast<long>(h), q = static_cast<long>(k);
    const double err = std::abs(alpha - static_cast<double>(p) / static_cast<double>(q));
    if (err < 1e-15)
      throw Error(ErrorKind::RationalInput,
                  "alpha is rational " + std::to_string(p) + "/" + std::to_string(q));
    RationalApprox approx{p, q, err};
    if (!out.empty() && out.back().q == q)
      out.back() = approx;
    else
      out.push_back(approx);
    const __int128 rem = a_num - a * a_den;
    if (rem == 0) break;
    a_num = a_den;
    a_den = rem;
  }
  return out;
}

Frequency Frequency::rational(long p, long q) {
  if (q <= 0) throw Error(ErrorKind::InvalidArgument, "denominator must be positive");
  if (std::gcd(p, q) != 1)
    throw Error(ErrorKind::NonCoprime, std::to_string(p) + "/" + std::to_string(q));
  Frequency f;
  f.p_ = ((p % q) + q) % q;
  f.q_ = q;
  f.value_ = static_cast<double>(f.p_) / static_cast<double>(q);
  f.convergents_ = {RationalApprox{f.p_, q, 0.0}};
  return f;
}

Frequency Frequency::irrational(double alpha) {
  Frequency f;
  f.value_ = alpha - std::floor(alpha);
  f.convergents_ = qpc::convergents(f.value_, kMaxDenominator);
  return f;
}

Frequency Frequency::golden() { return irrational((std::sqrt(5.0) - 1.0) / 2.0); }

std::vector<RationalApprox> Frequency::best_convergents(long q_max, int count) const {
  std::vector<RationalApprox> usable;
  for (const auto& c : convergents_)
    if (c.q <= q_max) usable.push_back(c);
  if (usable.empty())
    throw Error(ErrorKind::NoConvergents, "no convergent with q <= " + std::to_string(q_max));
  if (static_cast<int>(usable.size()) > count)
    usable.erase(usable.begin(), usable.end() - count);
  return usable;
}

double Frequency::orbit_phase(long j) const noexcept {
  if (q_ > 0) {
    const long r = static_cast<long>((static_cast<__int128>(j) * p_) % q_);
    return static_cast<double>((r + q_) % q_) / static_cast<double>(q_);
  }
  const long double x = static_cast<long double>(j) * static_cast<long double>(value_);
  const long double frac = x - std::floor(x);
  return static_cast<double>(frac);
}

}  // namespace qpc
