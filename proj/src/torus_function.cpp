#include "qpc/torus_function.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

#include "qpc/error.hpp"

namespace qpc {

namespace {

bool check_real_symmetric(const std::vector<cplx>& c, int K) {
  double scale = 0.0;
  for (const auto& v : c) scale += std::abs(v);
  const double tol = 1e-14 * scale + 1e-300;
  for (int k = 0; k <= K; ++k) {
    if (std::abs(c[K + k] - std::conj(c[K - k])) > tol) return false;
  }
  return true;
}

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

TorusFunction::TorusFunction() : coeffs_{cplx{0.0}} {}

TorusFunction::TorusFunction(std::vector<cplx> coeffs, double delta_max)
    : coeffs_(std::move(coeffs)), delta_max_(delta_max) {
  if (coeffs_.empty() || coeffs_.size() % 2 == 0)
    throw Error(ErrorKind::InvalidArgument, "coefficient vector must have odd length 2K+1");
  if (!(delta_max_ >= 0.0)) throw Error(ErrorKind::InvalidArgument, "delta_max must be >= 0");
  degree_ = static_cast<int>(coeffs_.size() / 2);
  real_symmetric_ = check_real_symmetric(coeffs_, degree_);
}

TorusFunction TorusFunction::constant(cplx value) { return TorusFunction({value}); }

TorusFunction TorusFunction::from_modes(const std::map<int, cplx>& modes, double delta_max) {
  int K = 0;
  for (const auto& [k, _] : modes) K = std::max(K, std::abs(k));
  std::vector<cplx> c(2 * K + 1, cplx{0.0});
  for (const auto& [k, v] : modes) c[K + k] = v;
  return TorusFunction(std::move(c), delta_max);
}

TorusFunction TorusFunction::cosine(int k, double amplitude) {
  if (k == 0) return constant(amplitude);
  return from_modes({{k, amplitude / 2}, {-k, amplitude / 2}});
}

TorusFunction TorusFunction::sine(int k, double amplitude) {
  if (k == 0) return constant(0.0);
  return from_modes({{k, cplx(0, -amplitude / 2)}, {-k, cplx(0, amplitude / 2)}});
}

TorusFunction TorusFunction::exponential(int k) { return from_modes({{k, 1.0}}); }

cplx TorusFunction::coeff(int k) const noexcept {
  if (std::abs(k) > degree_) return 0.0;
  return coeffs_[degree_ + k];
}

double TorusFunction::l1_norm() const noexcept {
  double s = 0.0;
  for (const auto& v : coeffs_) s += std::abs(v);
  return s;
}

cplx TorusFunction::operator()(cplx z) const {
  if (std::abs(z.imag()) > delta_max_ * (1 + 1e-15))
    throw Error(ErrorKind::StripExceeded, "|Im z| = " + std::to_string(std::abs(z.imag())) +
                                              " exceeds delta_max = " + std::to_string(delta_max_));
  const cplx w = std::exp(cplx(0, kTwoPi) * z);
  const cplx w_inv = std::exp(cplx(0, -kTwoPi) * z);
  return eval_phasor(w, w_inv);
}

cplx TorusFunction::eval_phasor(cplx w, cplx w_inv) const noexcept {
  const int K = degree_;
  cplx sum = coeffs_[K];
  cplx up = 1.0, down = 1.0;
  for (int k = 1; k <= K; ++k) {
    up *= w;
    down *= w_inv;
    sum += coeffs_[K + k] * up + coeffs_[K - k] * down;
  }
  return sum;
}

TorusFunction TorusFunction::shifted(cplx a) const {
  std::vector<cplx> c(coeffs_.size());
  for (int k = -degree_; k <= degree_; ++k)
    c[degree_ + k] = coeffs_[degree_ + k] * std::exp(cplx(0, kTwoPi * k) * a);
  return TorusFunction(std::move(c), std::max(0.0, delta_max_ - std::abs(a.imag())));
}

TorusFunction TorusFunction::complexified(double eps) const {
  if (std::abs(eps) > delta_max_)
    throw Error(ErrorKind::StripExceeded, "complexification beyond strip");
  return shifted(cplx(0, eps));
}

TorusFunction TorusFunction::trimmed(double rel_tol) const {
  const double tol = rel_tol * l1_norm();
  int K = degree_;
  while (K > 0 && std::abs(coeffs_[degree_ + K]) <= tol && std::abs(coeffs_[degree_ - K]) <= tol)
    --K;
  return TorusFunction(std::vector<cplx>(coeffs_.begin() + (degree_ - K),
                                         coeffs_.begin() + (degree_ + K + 1)),
                       delta_max_);
}

TorusFunction TorusFunction::operator-() const { return cplx(-1.0) * *this; }

TorusFunction operator+(const TorusFunction& f, const TorusFunction& g) {
  const int K = std::max(f.degree_, g.degree_);
  std::vector<cplx> c(2 * K + 1, cplx{0.0});
  for (int k = -K; k <= K; ++k) c[K + k] = f.coeff(k) + g.coeff(k);
  return TorusFunction(std::move(c), std::min(f.delta_max_, g.delta_max_));
}

TorusFunction operator-(const TorusFunction& f, const TorusFunction& g) { return f + (-g); }

TorusFunction operator*(const TorusFunction& f, const TorusFunction& g) {
  const int K = f.degree_ + g.degree_;
  std::vector<cplx> c(2 * K + 1, cplx{0.0});
  for (int i = -f.degree_; i <= f.degree_; ++i)
    for (int j = -g.degree_; j <= g.degree_; ++j) c[K + i + j] += f.coeff(i) * g.coeff(j);
  return TorusFunction(std::move(c), std::min(f.delta_max_, g.delta_max_));
}

TorusFunction operator*(cplx s, const TorusFunction& f) {
  std::vector<cplx> c(f.coeffs_);
  for (auto& v : c) v *= s;
  return TorusFunction(std::move(c), f.delta_max_);
}

cplx eval(const TorusFunction& f, cplx z) { return f(z); }

TorusFunction from_samples(std::span<const cplx> samples) {
  const int M = static_cast<int>(samples.size());
  if (M == 0) throw Error(ErrorKind::EmptyInput, "no samples");

  std::vector<cplx> spectrum(M);
  {
    std::vector<cplx> input(samples.begin(), samples.end());
    fftw_plan plan;
    {
      std::lock_guard lock(planner_mutex());
      plan = fftw_plan_dft_1d(M, reinterpret_cast<fftw_complex*>(input.data()),
                              reinterpret_cast<fftw_complex*>(spectrum.data()), FFTW_FORWARD,
                              FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  const int K = M / 2;
  std::vector<cplx> c(2 * K + 1, cplx{0.0});
  for (int j = 0; j < M; ++j) {
    const cplx v = spectrum[j] / static_cast<double>(M);
    if (M % 2 == 0 && j == K) {
      c[K + K] += 0.5 * v;
      c[K - K] += 0.5 * v;
    } else {
      const int k = (j <= K) ? j : j - M;
      c[K + k] += v;
    }
  }
  return TorusFunction(std::move(c));
}

double sup_band_norm(const TorusFunction& f, double delta) {
  if (std::abs(delta) > f.delta_max())
    throw Error(ErrorKind::StripExceeded, "sup_band_norm beyond strip");
  constexpr int kGrid = 1024;
  double best = 0.0;
  for (double im : {delta, -delta}) {
    for (int j = 0; j < kGrid; ++j) {
      best = std::max(best, std::abs(f(cplx(static_cast<double>(j) / kGrid, im))));
    }
  }
  return best;
}

TorusFunction parse_modes(std::istream& in) {
  std::map<int, cplx> modes;
  double delta_max = std::numeric_limits<double>::infinity();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::string body = line.substr(first + 1);
      const auto eq = body.find('=');
      if (eq != std::string::npos) {
        std::istringstream key_in(body.substr(0, eq));
        std::string key;
        key_in >> key;
        if (key == "delta_max") {
          std::istringstream value_in(body.substr(eq + 1));
          if (!(value_in >> delta_max))
            throw Error(ErrorKind::ParseError, "bad delta_max on line " + std::to_string(line_no));
        }
      }
      continue;
    }
    std::istringstream fields(line);
    long k = 0;
    double re = 0, im = 0;
    std::string rest;
    if (!(fields >> k >> re >> im) || (fields >> rest))
      throw Error(ErrorKind::ParseError, "expected `k re im` on line " + std::to_string(line_no));
    if (!modes.emplace(static_cast<int>(k), cplx(re, im)).second)
      throw Error(ErrorKind::DuplicateMode, "mode " + std::to_string(k) + " repeated on line " +
                                                std::to_string(line_no));
  }
  if (modes.empty()) throw Error(ErrorKind::EmptyInput, "no modes in potential file");
  return TorusFunction::from_modes(modes, delta_max);
}

TorusFunction load_modes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  return parse_modes(in);
}

void write_modes(std::ostream& out, const TorusFunction& f) {
  char buf[128];
  if (std::isfinite(f.delta_max())) {
    std::snprintf(buf, sizeof buf, "# delta_max = %.17g\n", f.delta_max());
    out << buf;
  }
  bool wrote = false;
  for (int k = -f.degree(); k <= f.degree(); ++k) {
    const cplx c = f.coeff(k);
    if (c == cplx{0.0}) continue;
    std::snprintf(buf, sizeof buf, "%d %.17g %.17g\n", k, c.real(), c.imag());
    out << buf;
    wrote = true;
  }
  if (!wrote) out << "0 0 0\n";
}

}  // namespace qpc
