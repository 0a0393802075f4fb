#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sse/potentials.hpp"
#include "sse/quadrature.hpp"

using namespace sse;

namespace {
double fd_deriv(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2 * h);
}
}  // namespace

TEST_CASE("semicircle amplitude and branches") {
  auto f = semicircle_family(1.0, -1.0, 1.0);
  CHECK(amplitude(f, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(amplitude(f, 1.0) == 0.0);
  CHECK(amplitude(f, -1.0) == 0.0);
  CHECK(amplitude(f, 2.0) == 0.0);
  CHECK(std::abs(amplitude(f, 0.6) - 0.8) < 1e-14);
  auto [xm, xp] = inverse_branches(f, 0.6);
  CHECK(std::abs(xm + 0.8) < 1e-14);
  CHECK(std::abs(xp - 0.8) < 1e-14);
}

TEST_CASE("semicircle curves") {
  auto f = semicircle_family(1.0, -0.5, 0.5);
  CHECK(std::abs(f.Phi0 - M_PI / 4) < 1e-15);
  for (double s : {0.1, 0.5, 0.9}) {
    CHECK(std::abs(phase_integral(f, s) - M_PI / 4 * (1 - s * s)) < 1e-14);
    CHECK(std::abs(tail_integral(f, s)) < 1e-15);
    CHECK(std::abs(density(f, s) - s / 2) < 1e-14);
  }
  CHECK(std::abs(phase_integral_hp(f, BigFloat(0.3)).convert_to<double>() -
                 phase_integral(f, 0.3)) < 1e-15);
}

TEST_CASE("hirota family") {
  auto f = hirota_family(1.0, -0.5, 0.5, 2.0 / 3.0);
  CHECK(std::abs(f.XiH[0] - 2.0 / 9.0) < 1e-15);
  CHECK(std::abs(f.x0 - 1.0 / 6.0) < 1e-15);
  CHECK(std::abs(amplitude(f, f.x0) - 1.0) < 1e-12);
  double s = 1 / std::sqrt(2.0);
  CHECK(std::abs(tail_integral(f, s) - (2.0 / 9.0) * s * s * s) < 1e-15);
  // tilt -> 0 recovers the semicircle
  auto g0 = hirota_family(1.0, -1.0, 1.0, 1e-12);
  auto sc = semicircle_family(1.0, -1.0, 1.0);
  for (double x : {-0.9, -0.3, 0.0, 0.4, 0.8})
    CHECK(std::abs(amplitude(g0, x) - amplitude(sc, x)) < 1e-10);
  CHECK_THROWS_AS(hirota_family(1, -1, 1, 1.0), ConfigError);
}

TEST_CASE("lpd family") {
  auto f = lpd_family(1.0, -0.5, 0.5, 4.0 / 7.0);
  CHECK(std::abs(f.b1 - 0.5) < 1e-15);
  CHECK(std::abs(f.Phi0 - 3 * M_PI / 14) < 1e-15);
  // implicit amplitude equation satisfied to solver tolerance
  for (double x : {-0.49, -0.3, -0.1, 0.05, 0.2, 0.42}) {
    double y = (2 * x - f.X_plus - f.X_minus) / (f.X_plus - f.X_minus);
    double a = std::pow(amplitude(f, x) / f.A_max, 2);
    double t = 1 - f.gamma * a;
    CHECK(std::abs((1 - a) * t * t - y * y) < 1e-13);
  }
  CHECK(amplitude(f, -0.5) == 0.0);
  CHECK(amplitude(f, 0.5) == 0.0);
  CHECK_THROWS_AS(lpd_family(1, -1, 1, 1.0), ConfigError);
  CHECK_THROWS_AS(lpd_family(1, -1, 1, -0.5), ConfigError);
  // negative gamma branch works too
  auto g = lpd_family(1.0, -0.5, 0.5, -0.4);
  CHECK(std::abs(amplitude(g, 0.0) - 1.0) < 1e-12);
}

TEST_CASE("polynomial family reproduces the named kinds") {
  auto sc = semicircle_family(1.0, -0.5, 0.5);
  auto p_sc = polynomial_family(sc.Phi0, 1.0, {}, sc.Xi1, {});
  auto hi = hirota_family(1.0, -0.5, 0.5, 2.0 / 3.0);
  auto p_hi = polynomial_family(hi.Phi0, 1.0, {}, hi.Xi1, {hi.XiH[0]});
  auto lp = lpd_family(1.0, -0.5, 0.5, 4.0 / 7.0);
  auto p_lp = polynomial_family(lp.Phi0, 1.0, {lp.b1}, lp.Xi1, {});

  CHECK(std::abs(p_sc.X_minus + 0.5) < 1e-14);
  CHECK(std::abs(p_sc.X_plus - 0.5) < 1e-14);
  CHECK(std::abs(p_hi.x0 - 1.0 / 6.0) < 1e-14);
  CHECK(std::abs(p_lp.X_plus - 0.5) < 1e-13);

  for (int j = 0; j < 30; ++j) {
    double x = -0.49 + 0.98 * j / 29;
    CHECK(std::abs(amplitude(p_sc, x) - amplitude(sc, x)) < 1e-11);
    CHECK(std::abs(amplitude(p_hi, x) - amplitude(hi, x)) < 1e-11);
    CHECK(std::abs(amplitude(p_lp, x) - amplitude(lp, x)) < 1e-11);
  }
  for (int j = 0; j < 10; ++j) {
    double s = (j + 0.5) / 10;
    auto a = inverse_branches(p_hi, s), b = inverse_branches(hi, s);
    CHECK(std::abs(a.first - b.first) < 1e-13);
    CHECK(std::abs(a.second - b.second) < 1e-13);
  }
  CHECK_THROWS_AS(polynomial_family(1.0, 1.0, {5.0}, 0.0, {}), ConfigError);
  CHECK_THROWS_AS(polynomial_family(1.0, 1.0, {}, 0.0, {10.0}), ConfigError);
}

TEST_CASE("branch monotonicity and support") {
  auto families = {semicircle_family(1.0, -0.5, 0.5),
                   hirota_family(1.0, -0.5, 0.5, 2.0 / 3.0),
                   lpd_family(1.0, -0.5, 0.5, 4.0 / 7.0),
                   lpd_family(1.0, -0.5, 0.5, -0.3),
                   interpolation_family(0.5)};
  for (const auto& f : families) {
    double h = 1e-6;
    for (int j = 1; j <= 18; ++j) {
      double s = f.A_max * j / 19.0;
      auto lo = inverse_branches(f, s - h), hi2 = inverse_branches(f, s + h);
      CHECK(lo.first < lo.second);
      CHECK((hi2.first - lo.first) / (2 * h) > 0);   // x_minus increasing
      CHECK((hi2.second - lo.second) / (2 * h) < 0);  // x_plus decreasing
    }
  }
}

TEST_CASE("phase integral monotone, vanishing at the top") {
  for (const auto& f : {semicircle_family(1.0, -0.5, 0.5),
                        hirota_family(1.0, -0.5, 0.5, 0.4),
                        lpd_family(1.0, -0.5, 0.5, 0.7),
                        interpolation_family(0.8)}) {
    double prev = phase_integral(f, 1e-9);
    for (int j = 1; j <= 20; ++j) {
      double cur = phase_integral(f, f.A_max * j / 20.0 * (1 - 1e-12));
      CHECK(cur < prev);
      prev = cur;
    }
    CHECK(std::abs(phase_integral(f, f.A_max)) < 1e-10);
    // density is -(1/pi) d/ds Phi
    for (double s : {0.2 * f.A_max, 0.6 * f.A_max}) {
      double fd = fd_deriv([&](double t) { return phase_integral(f, t); }, s, 1e-6);
      CHECK(std::abs(density(f, s) + fd / M_PI) < 1e-8);
    }
  }
}

TEST_CASE("tail integral odd, slope at zero") {
  auto f = hirota_family(1.2, -0.3, 0.9, -0.5);
  for (double s : {0.1, 0.4, 0.8})
    CHECK(std::abs(tail_integral(f, s) + tail_integral(f, -s)) < 1e-15);
  double slope = fd_deriv([&](double t) { return tail_integral(f, t); }, 0.0, 1e-6);
  CHECK(std::abs(slope - (f.X_plus + f.X_minus)) < 1e-8);
}

TEST_CASE("closed curves match the defining x-integrals") {
  auto hi = hirota_family(1.0, -0.5, 0.5, 2.0 / 3.0);
  auto lp = lpd_family(1.0, -0.5, 0.5, 4.0 / 7.0);
  for (const auto& f : {hi, lp}) {
    for (int j = 1; j <= 9; ++j) {
      double s = f.A_max * j / 10.0;
      CHECK(std::abs(phase_integral_direct(f, s) - phase_integral(f, s)) < 1e-10);
      CHECK(std::abs(tail_integral_direct(f, s) - tail_integral(f, s)) < 1e-10);
    }
  }
}

TEST_CASE("abel reconstruction round trip") {
  auto check_family = [](const PotentialFamily& f, double tol) {
    auto phase = [&](double m) { return phase_integral(f, m); };
    auto tail = [&](double m) { return tail_integral(f, m); };
    for (int j = 0; j < 20; ++j) {
      double s = f.A_max * (j + 0.5) / 20;
      auto got = recover_branches(phase, tail, f.A_max, s);
      auto want = inverse_branches(f, s);
      CHECK(std::abs(got.first - want.first) < tol);
      CHECK(std::abs(got.second - want.second) < tol);
    }
  };
  check_family(semicircle_family(1.0, -1.0, 1.0), 1e-8);
  check_family(semicircle_family(1.0, -0.5, 0.5), 1e-8);
  check_family(hirota_family(1.0, -0.5, 0.5, 2.0 / 3.0), 1e-8);
  check_family(lpd_family(1.0, -0.5, 0.5, 4.0 / 7.0), 1e-8);
  check_family(interpolation_family(0.5), 1e-8);
  check_family(polynomial_family(0.8, 1.0, {0.2}, 0.3, {0.05}), 1e-8);
}

TEST_CASE("interpolation family mass is conserved") {
  for (double d : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    auto f = interpolation_family(d);
    CHECK(std::abs(amplitude_mass(f) - M_PI / 2) < 1e-8);
    CHECK(std::abs(f.Phi0 - M_PI / 2) < 1e-14);
    CHECK(std::abs(amplitude(f, 0.0) - (1 - d / 2)) < 1e-14);
  }
  // every compact family: mass equals Phi(i*0)
  for (const auto& f : {semicircle_family(1.0, -0.5, 0.5),
                        hirota_family(1.0, -0.5, 0.5, 2.0 / 3.0),
                        lpd_family(1.0, -0.5, 0.5, 4.0 / 7.0)})
    CHECK(std::abs(amplitude_mass(f) - f.Phi0) < 1e-8);
}

TEST_CASE("interpolation branch inversion") {
  auto f = interpolation_family(1.0);
  CHECK(std::abs(f.A_max - 0.5) < 1e-15);
  CHECK(std::abs(f.ib) < 1e-15);
  CHECK(std::abs(f.ia - 1.0) < 1e-15);
  for (double s : {0.05, 0.2, 0.4, 0.49}) {
    auto [xm, xp] = inverse_branches(f, s);
    CHECK(std::abs(xm + xp) < 1e-14);
    CHECK(std::abs(amplitude(f, xp) - s) < 1e-11);
  }
}
