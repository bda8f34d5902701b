#pragma once

#include <complex>
#include <iosfwd>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qpc {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Truncated Fourier series f(z) = sum_{|k|<=K} c_k e^{2 pi i k z}, evaluable on
/// the strip |Im z| <= delta_max. Immutable after construction.
class TorusFunction {
 public:
  TorusFunction();
  /// `coeffs` holds modes -K..K in ascending order, so its size must be odd.
  explicit TorusFunction(std::vector<cplx> coeffs,
                         double delta_max = std::numeric_limits<double>::infinity());

  static TorusFunction constant(cplx value);
  static TorusFunction from_modes(const std::map<int, cplx>& modes,
                                  double delta_max = std::numeric_limits<double>::infinity());
  /// amplitude * cos(2 pi k x)
  static TorusFunction cosine(int k, double amplitude = 1.0);
  /// amplitude * sin(2 pi k x)
  static TorusFunction sine(int k, double amplitude = 1.0);
  /// e^{2 pi i k x}
  static TorusFunction exponential(int k);

  int degree() const noexcept { return degree_; }
  cplx coeff(int k) const noexcept;
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  double delta_max() const noexcept { return delta_max_; }
  bool real_symmetric() const noexcept { return real_symmetric_; }
  double l1_norm() const noexcept;

  /// Throws StripExceeded when |Im z| > delta_max.
  cplx operator()(cplx z) const;
  /// Evaluation from the phasor w = e^{2 pi i z}; no strip check.
  cplx eval_phasor(cplx w, cplx w_inv) const noexcept;

  /// x -> f(x + a). A complex shift moves the strip accordingly.
  TorusFunction shifted(cplx a) const;
  /// x -> f(x + i eps).
  TorusFunction complexified(double eps) const;
  /// Drops trailing modes whose modulus is below rel_tol * l1_norm().
  TorusFunction trimmed(double rel_tol = 1e-17) const;

  TorusFunction operator-() const;
  friend TorusFunction operator+(const TorusFunction& f, const TorusFunction& g);
  friend TorusFunction operator-(const TorusFunction& f, const TorusFunction& g);
  friend TorusFunction operator*(const TorusFunction& f, const TorusFunction& g);
  friend TorusFunction operator*(cplx s, const TorusFunction& f);

 private:
  std::vector<cplx> coeffs_;
  int degree_ = 0;
  double delta_max_ = std::numeric_limits<double>::infinity();
  bool real_symmetric_ = true;
};

cplx eval(const TorusFunction& f, cplx z);

/// Discrete Fourier analysis of samples at x_j = j/M. Modes are folded to
/// [-floor(M/2), floor(M/2)]; for even M the Nyquist term is split evenly
/// between +M/2 and -M/2 so that real samples give a real-symmetric result.
TorusFunction from_samples(std::span<const cplx> samples);

/// max |f| over a 1024-point grid on Im z = +delta and Im z = -delta.
/// Grid approximation, not a certified bound.
double sup_band_norm(const TorusFunction& f, double delta);

/// Mode-list text format: one `k re im` line per mode, any order.
/// Blank lines and `#` comments are ignored; a `# delta_max = <value>` comment
/// sets the strip width.
TorusFunction parse_modes(std::istream& in);
TorusFunction load_modes(const std::string& path);
void write_modes(std::ostream& out, const TorusFunction& f);

}  // namespace qpc
