#include <doctest.h>

#include <cmath>
#include <set>

#include "qpc/acceleration.hpp"
#include "qpc/error.hpp"
#include "qpc/oracles.hpp"
#include "qpc/spectral.hpp"
#include "support.hpp"

using namespace qpc;

namespace {

const LyapunovOptions kFast{.grid = 512, .q_max = 233, .convergents = 1};

AccelerationOptions fast_accel() {
  AccelerationOptions o;
  o.lyapunov = kFast;
  return o;
}

Cocycle amo(double lambda, double target = 0.0) {
  const auto v = oracles::amo_potential(lambda);
  const double E = spectrum_energy_near(v, Frequency::golden().value(), target);
  return {Frequency::golden(), schrodinger(v, E)};
}

// Sup distance from the profile to a convex integer-slope fit built from the
// rounded interval slopes; an upper bound for the best such fit.
double integer_fit_error(const LyapunovProfile& p, std::size_t* pieces) {
  std::set<long> slopes;
  for (double s : p.interval_slopes) slopes.insert(std::lround(s));
  *pieces = slopes.size();
  std::vector<std::pair<long, double>> lines;
  for (long s : slopes) {
    double a = -1e300;
    for (std::size_t i = 0; i < p.interval_slopes.size(); ++i) {
      if (std::lround(p.interval_slopes[i]) != s) continue;
      a = std::max({a, p.L[i] - kTwoPi * s * p.eps[i], p.L[i + 1] - kTwoPi * s * p.eps[i + 1]});
    }
    lines.emplace_back(s, a);
  }
  double err = 0.0;
  for (std::size_t i = 0; i < p.eps.size(); ++i) {
    double f = -1e300;
    for (auto [s, a] : lines) f = std::max(f, a + kTwoPi * s * p.eps[i]);
    err = std::max(err, std::abs(f - p.L[i]));
  }
  return err;
}

}  // namespace

TEST_SUITE("acceleration") {

TEST_CASE("identity has zero acceleration") {
  const Cocycle id{Frequency::golden(), CocycleMap::constant(Mat2::identity())};
  const auto fit = acceleration_at(id, 0.0, fast_accel());
  CHECK(fit.omega == 0);
  CHECK(fit.defect == 0.0);
  CHECK(fit.quantized);
}

TEST_CASE("constant hyperbolic profile is flat") {
  const Cocycle d{Frequency::golden(), CocycleMap::constant(Mat2::diagonal(2.0, 0.5))};
  const auto p = epsilon_profile(d, 0.0, 0.3, 7, kFast);
  for (double L : p.L) CHECK(L == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  for (double s : p.point_slopes) CHECK(std::abs(s) < 1e-10);
  CHECK(p.omega == 0);
  CHECK(is_regular(d, fast_accel()));
}

TEST_CASE("supercritical almost Mathieu profile has slope one") {
  const Cocycle c = amo(2.0);
  const auto p = epsilon_profile(c, 0.0, 0.3, 7, kFast);
  for (double s : p.point_slopes) CHECK(std::abs(s - 1.0) < 0.05);
  CHECK(p.omega == 1);
  CHECK(p.convexity_defect() >= -1e-5);
  std::size_t pieces = 0;
  CHECK(integer_fit_error(p, &pieces) <= 5e-3);
  CHECK(pieces <= 4);
  for (std::size_t i = 0; i < p.eps.size(); ++i)
    CHECK(std::abs(p.L[i] - oracles::amo_L(2.0, p.eps[i], std::log(2.0))) < 2e-2);

  const auto fit = acceleration_at(c, 0.0, fast_accel());
  CHECK(fit.omega == 1);
  CHECK(fit.defect < 0.05);
  CHECK_FALSE(is_regular(c, fast_accel()));
}

TEST_CASE("higher harmonic potential has acceleration n") {
  const auto v = TorusFunction::cosine(2, 4.0);
  const double E = spectrum_energy_near(v, Frequency::golden().value(), 0.3);
  const Cocycle c{Frequency::golden(), schrodinger(v, E)};
  const auto fit = acceleration_at(c, 0.0, fast_accel());
  CHECK(fit.omega == 2);
  CHECK(fit.defect < 0.05);
}

TEST_CASE("rotation cocycles") {
  for (int k : {1, 2, 3}) {
    const Cocycle c{Frequency::golden(), oracles::rotation_cocycle(k)};
    const auto p = epsilon_profile(c, 0.05, 0.3, 6, kFast);
    for (double s : p.point_slopes) CHECK(std::abs(s - k) < 1e-3);
    std::size_t pieces = 0;
    CHECK(integer_fit_error(p, &pieces) <= 5e-3);
  }
}

TEST_CASE("subcritical and critical almost Mathieu") {
  const Cocycle sub = amo(0.5);
  CHECK(is_regular(sub, fast_accel()));
  const Cocycle crit = amo(1.0);
  const auto fit = acceleration_at(crit, 0.0, fast_accel());
  CHECK(fit.L0 <= 5e-3);
  CHECK(fit.omega == 1);
}

TEST_CASE("two-sided regularity on non-symmetric maps") {
  const Cocycle c = amo(2.0);
  // inside the slope-one piece the complexified cocycle is regular
  CHECK(is_regular(complexify(c, 0.1), fast_accel()));
  // a barely complexified copy still has the kink at 0
  const Cocycle kink = complexify(c, 1e-12);
  REQUIRE_FALSE(kink.map.real_symmetric());
  CHECK_FALSE(is_regular(kink, fast_accel()));
  const Cocycle free3 = complexify({Frequency::golden(), schrodinger(TorusFunction::constant(0.0), 3.0)}, 0.05);
  CHECK(is_regular(free3, fast_accel()));
}

TEST_CASE("degree bound and quantization on random cocycles") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> E(-3.0, 3.0), eps0(0.05, 0.2);
  for (int i = 0; i < 6; ++i) {
    const int d = 1 + i % 3;
    const Cocycle c{Frequency::golden(), schrodinger(test::random_real_poly(rng, d), E(rng))};
    const auto fit = acceleration_at(c, eps0(rng), fast_accel());
    CHECK(std::abs(fit.omega) <= d);
    CHECK(fit.defect <= 0.05);
  }
}

TEST_CASE("stratified L") {
  const Cocycle c = amo(2.0);
  const auto s = stratified_L(c, 1, 0.3, kFast);
  CHECK(std::abs(s.value - std::log(2.0)) < 2e-2);
  CHECK(std::abs(s.value - s.alternate) < 1e-4);
  CHECK(s.delta_prime > 0.0);
  CHECK(s.delta_prime < 0.3);

  const Cocycle d{Frequency::golden(), CocycleMap::constant(Mat2::diagonal(2.0, 0.5))};
  CHECK(stratified_L(d, 0, 0.2, kFast).value == doctest::Approx(std::log(2.0)));

  try {
    stratified_L(c, 2, 0.3, kFast);
    FAIL("expected WrongStratum");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WrongStratum);
  }
}

TEST_CASE("breakpoints of a synthetic profile") {
  std::vector<double> eps, L;
  for (int i = 0; i <= 10; ++i) {
    eps.push_back(0.03 * i);
    L.push_back(std::max(0.1, -0.5 + kTwoPi * eps.back()));
  }
  const auto p = make_profile(eps, L);
  const auto b = slope_breakpoints(p);
  REQUIRE(b.size() == 1);
  CHECK(b[0] == doctest::Approx(0.6 / kTwoPi).epsilon(1e-9));
  CHECK_THROWS_AS(make_profile({0.0, 0.0}, {1.0, 1.0}), Error);
  CHECK_THROWS_AS(make_profile({0.0}, {1.0}), Error);
}

}
