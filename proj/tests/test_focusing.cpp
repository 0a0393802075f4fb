#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "sse/focusing.hpp"

using namespace sse;

TEST_CASE("curve coefficients of the named families") {
  auto f = semicircle_family(1.0, -0.5, 0.5);
  auto cc = curve_coefficients(f);
  CHECK(cc.P() == 1);
  CHECK(cc.Q() == 1);
  CHECK(cc.M() == 2);
  CHECK(cc.phi[0] == doctest::Approx(M_PI / 4).epsilon(1e-14));
  CHECK(cc.phi[1] == doctest::Approx(M_PI / 4).epsilon(1e-14));
  CHECK(cc.xi[0] == 0.0);

  auto h = hirota_family(1.0, 0.0, 1.0, 2.0 / 3);
  auto ch = curve_coefficients(h);
  CHECK(ch.M() == 3);
  CHECK(ch.xi[0] == doctest::Approx(-1.0).epsilon(1e-14));  // -(X+ + X-)
  CHECK(ch.xi[1] == doctest::Approx(2.0 / 9).epsilon(1e-14));

  auto l = lpd_family(1.0, -0.5, 0.5, 4.0 / 7);
  auto cl = curve_coefficients(l);
  CHECK(cl.P() == 2);
  CHECK(cl.M() == 4);
  // Phi_1 = pi (2+gamma) dX / (8 A); Phi_2 = Phi_0 b1 / A^4
  CHECK(cl.phi[1] == doctest::Approx(9 * M_PI / 28).epsilon(1e-13));
  CHECK(cl.phi[2] == doctest::Approx(3 * M_PI / 28).epsilon(1e-13));

  CHECK_THROWS_AS(curve_coefficients(interpolation_family(0.5)), ConfigError);
}

TEST_CASE("scale constant by quadrature against the closed forms") {
  // semicircle and hirota share A^2 (X+ - X-) / 12
  CHECK(nu(semicircle_family(1.0, -0.5, 0.5)) ==
        doctest::Approx(1.0 / 12).epsilon(1e-10));
  CHECK(nu(hirota_family(1.0, -0.5, 0.5, 2.0 / 3)) ==
        doctest::Approx(1.0 / 12).epsilon(1e-10));
  CHECK(nu(semicircle_family(1.2, -0.3, 0.5)) ==
        doctest::Approx(1.2 * 1.2 * 0.8 / 12).epsilon(1e-10));

  // lpd integrates to (5 - 2 gamma)(X+ - X-) A^2 / 60; the square power on
  // A_max is what the defining integral produces
  double g = 4.0 / 7;
  CHECK(nu(lpd_family(1.0, -0.5, 0.5, g)) ==
        doctest::Approx(9.0 / 140).epsilon(1e-10));
  CHECK(nu(lpd_family(1.3, -0.5, 0.5, g)) ==
        doctest::Approx((5 - 2 * g) * 1.3 * 1.3 / 60).epsilon(1e-10));
  CHECK(nu(lpd_family(1.0, -0.5, 0.5, -0.3)) ==
        doctest::Approx(5.6 / 60).epsilon(1e-10));
}

TEST_CASE("focus points interleave the curve coefficients") {
  auto f = semicircle_family(1.0, -0.5, 0.5);
  auto ev = focus_point(f, -1);
  CHECK(ev.M == 2);
  CHECK(ev.x0 == 0.0);
  CHECK(ev.t0[0] == doctest::Approx(M_PI / 8).epsilon(1e-12));
  CHECK(ev.nu == doctest::Approx(1.0 / 12).epsilon(1e-10));

  // consecutive K spacing is -pi (X+ - X-) / (4 A_max)
  auto ev0 = focus_point(f, 0);
  CHECK(ev0.t0[0] - ev.t0[0] == doctest::Approx(-M_PI / 4).epsilon(1e-12));

  // x-coordinate is the support midpoint for every family
  CHECK(focus_point(semicircle_family(0.9, 0.2, 1.0), 3).x0 ==
        doctest::Approx(0.6).epsilon(1e-13));
  CHECK(focus_point(hirota_family(1.0, 0.0, 1.0, 0.5), -2).x0 ==
        doctest::Approx(0.5).epsilon(1e-13));
  CHECK(focus_point(lpd_family(1.1, -0.4, 0.8, 0.3), 1).x0 ==
        doctest::Approx(0.2).epsilon(1e-13));

  auto h = hirota_family(1.0, -0.5, 0.5, 2.0 / 3);
  auto evh = focus_point(h, 0);
  CHECK(evh.M == 3);
  CHECK(evh.t0[0] == doctest::Approx(-M_PI / 8).epsilon(1e-12));
  CHECK(evh.t0[1] == doctest::Approx(-1.0 / 9).epsilon(1e-12));  // -Xi_2/2

  double g = 4.0 / 7;
  auto evl = focus_point(lpd_family(1.0, -0.5, 0.5, g), -1);
  CHECK(evl.M == 4);
  CHECK(evl.t0[0] == doctest::Approx(M_PI * (2 + g) / 16).epsilon(1e-12));
  CHECK(evl.t0[1] == 0.0);
  CHECK(evl.t0[2] == doctest::Approx(3 * M_PI * g / 32).epsilon(1e-12));

  CHECK_THROWS_AS(focus_point(interpolation_family(1.0), 0), ConfigError);
}

TEST_CASE("mixtures pass through the focus times") {
  // in every case a_m * t_focus must reproduce the focus time vector
  auto consistent = [](const PotentialFamily& fam, int K, double alpha) {
    auto ev = focus_point(fam, K);
    auto mix = mixture_coefficients(fam, K, alpha);
    REQUIRE(mix.a.size() == ev.t0.size());
    for (size_t i = 0; i < mix.a.size(); ++i)
      CHECK(mix.a[i] * mix.t_focus ==
            doctest::Approx(ev.t0[i]).epsilon(1e-12));
  };
  consistent(semicircle_family(1.0, -0.5, 0.5), -1, 2.0);
  consistent(semicircle_family(1.2, -0.3, 0.5), 0, -0.7);
  consistent(hirota_family(1.0, -0.5, 0.5, 2.0 / 3), 0, 1.3);
  consistent(hirota_family(1.0, 0.0, 1.0, -0.4), 2, 0.5);
  consistent(lpd_family(1.0, -0.5, 0.5, 4.0 / 7), -1, 1.0);

  // even-about-midpoint families give periodic even-flow mixtures
  auto ms = mixture_coefficients(semicircle_family(1.0, -0.5, 0.5), 0, 2.0);
  CHECK(ms.periodic);
  CHECK(ms.t_focus == doctest::Approx(0.5).epsilon(1e-14));  // (2K+1)/alpha
  auto ml = mixture_coefficients(lpd_family(1.0, -0.5, 0.5, 4.0 / 7), 0, 1.0);
  CHECK(ml.periodic);
  CHECK(ml.a[1] == 0.0);  // odd-flow component absent
  // and the lpd mixture satisfies its own quantization condition
  CHECK(std::fabs(lpd_condition_residual(ml.a[0], ml.a[2], 4.0 / 7, 1.0)) <
        1e-12);

  // cubic tail makes the mixture K-specific and single-event
  auto h = hirota_family(1.0, -0.5, 0.5, 2.0 / 3);
  auto mh = mixture_coefficients(h, 0, 1.0);
  CHECK(!mh.periodic);
  CHECK(mh.t_focus == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::fabs(hirota_condition_residual(mh.a[0], mh.a[1], 2.0 / 3, 1.0,
                                            0)) < 1e-12);

  CHECK_THROWS_AS(mixture_coefficients(h, 0, 0.0), ConfigError);
  CHECK_THROWS_AS(mixture_coefficients(interpolation_family(0.2), 0, 1.0),
                  ConfigError);
}

TEST_CASE("quantization conditions for the single-event flows") {
  CHECK(hirota_tuned_a3(1.0, 2.0 / 3, 1.0, 0) ==
        doctest::Approx(8 / (9 * M_PI)).epsilon(1e-14));
  CHECK(lpd_tuned_a4(1.0, 4.0 / 7, 1.0) ==
        doctest::Approx(1.0 / 3).epsilon(1e-14));

  double a3 = hirota_tuned_a3(1.0, 2.0 / 3, 1.0, 0);
  CHECK(check_condition(
      hirota_condition_residual(1.0, a3, 2.0 / 3, 1.0, 0)));
  CHECK(!check_condition(
      hirota_condition_residual(1.0, 1.5 * a3, 2.0 / 3, 1.0, 0)));
  // a different K re-tunes the coefficient
  CHECK(!check_condition(
      hirota_condition_residual(1.0, a3, 2.0 / 3, 1.0, 1)));
  CHECK(check_condition(hirota_condition_residual(
      1.0, hirota_tuned_a3(1.0, 2.0 / 3, 1.0, 1), 2.0 / 3, 1.0, 1)));

  double a4 = lpd_tuned_a4(2.0, 0.3, 1.2);
  CHECK(check_condition(lpd_condition_residual(2.0, a4, 0.3, 1.2)));
  CHECK(!check_condition(lpd_condition_residual(2.0, 1.1 * a4, 0.3, 1.2)));
}

TEST_CASE("local window scalings") {
  auto f = semicircle_family(1.0, -0.5, 0.5);
  auto ev = focus_point(f, -1);
  double eps = 1.0 / 40;

  auto origin = local_window(ev, eps, 0.0, {0.0});
  CHECK(origin.x == ev.x0);
  CHECK(origin.times[0] == ev.t0[0]);

  // unit offsets reproduce 12 eps^2 / (A^2 dX) and 144 eps^3 / (A^4 dX^2)
  auto unit = local_window(ev, eps, 1.0, {1.0});
  CHECK(unit.x - origin.x == doctest::Approx(12 * eps * eps).epsilon(1e-10));
  CHECK(unit.times[0] - origin.times[0] ==
        doctest::Approx(144 * eps * eps * eps).epsilon(1e-10));

  // scaling down eps shrinks the window quadratically / cubically
  auto half = local_window(ev, eps / 2, 1.0, {1.0});
  CHECK((half.x - origin.x) / (unit.x - origin.x) ==
        doctest::Approx(0.25).epsilon(1e-10));
  CHECK((half.times[0] - origin.times[0]) /
            (unit.times[0] - origin.times[0]) ==
        doctest::Approx(0.125).epsilon(1e-10));

  CHECK_THROWS_AS(local_window(ev, 0.0, 1.0, {1.0}), ConfigError);
}

TEST_CASE("pure flow initial-data shifts") {
  auto h = hirota_family(1.0, -0.5, 0.5, 2.0 / 3);
  auto ev = focus_point(h, 0);

  auto un = pure_flow_shift(h, 0, 3, 0.0);
  CHECK(un[0] == ev.t0[0]);
  CHECK(un[1] == ev.t0[1]);

  auto sh = pure_flow_shift(h, 0, 3, 0.25);
  CHECK(sh[0] == ev.t0[0]);
  CHECK(sh[1] == doctest::Approx(ev.t0[1] - 0.25).epsilon(1e-14));

  auto s2 = pure_flow_shift(h, 0, 2, -0.5);
  CHECK(s2[0] == doctest::Approx(ev.t0[0] + 0.5).epsilon(1e-14));
  CHECK(s2[1] == ev.t0[1]);

  CHECK_THROWS_AS(pure_flow_shift(h, 0, 4, 0.1), ConfigError);
  CHECK_THROWS_AS(pure_flow_shift(h, 0, 1, 0.1), ConfigError);

  // the time-2 flow evaluated at its focus time makes the field purely
  // imaginary (real residues), which is what the third flow then preserves
  auto sd = wkb_spectrum(h, 4);
  auto init = pure_flow_shift(h, 0, 3, ev.t0[1]);  // (t2_0, 0)
  CHECK(init[1] == 0.0);
  for (double x : {-0.6, -0.2, 0.1, 0.45, 0.9}) {
    auto smp = evaluate(sd, x, init);
    CHECK(std::fabs(smp.psi.real()) <= 1e-8 * (1 + std::abs(smp.psi)));
  }
}

TEST_CASE("measured peak against the predicted amplitude and phase") {
  auto f = semicircle_family(1.0, -0.5, 0.5);
  auto ev = focus_point(f, -1);
  auto sd0 = wkb_spectrum(f, 6);
  auto sd = wkb_spectrum(f, 6, recommended_bits(sd0, ev.x0, ev.t0));

  auto rep = peak_check(sd, ev, 2, 3.0, 21, 4);
  CHECK(rep.failures == 0);
  CHECK(rep.r > 0.98);
  CHECK(rep.r < 1.03);
  CHECK(rep.X_arg == 0.0);
  CHECK(rep.T_arg == 0.0);
  // K + N = 5 odd: field at the focus is -i * (positive amplitude)
  CHECK(std::fabs(rep.phase_center + M_PI / 2) < 0.01);
  CHECK(std::fabs(rep.phase_error) < 0.01);

  // time-reflection partner K=0 peaks with the same ratio and opposite phase
  auto ev0 = focus_point(f, 0);
  auto sd2 = wkb_spectrum(f, 6, recommended_bits(sd0, ev0.x0, ev0.t0));
  auto rep0 = peak_check(sd2, ev0, 2, 3.0, 21, 4);
  CHECK(std::fabs(rep.r - rep0.r) < 0.1 * rep0.r);
  CHECK(std::fabs(rep0.phase_center - M_PI / 2) < 0.01);

  CHECK_THROWS_AS(peak_check(sd, ev, 3, 3.0, 21, 1), ConfigError);
  CHECK_THROWS_AS(peak_check(sd, ev, 2, 3.0, 0, 1), ConfigError);
}

TEST_CASE("mixture scan finds the same peak") {
  auto h = hirota_family(1.0, -0.5, 0.5, 2.0 / 3);
  auto cc = curve_coefficients(h);
  int K = 0;
  double alpha = -2.0 / ((2 * K + 1) * cc.phi[1]);  // normalizes a2 to 1
  auto mix = mixture_coefficients(h, K, alpha);
  CHECK(mix.a[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(mix.a[1] ==
        doctest::Approx(hirota_tuned_a3(1.0, 2.0 / 3, 1.0, 0)).epsilon(1e-13));

  auto ev = focus_point(h, K);
  auto sd0 = wkb_spectrum(h, 6);
  auto sd = wkb_spectrum(h, 6, recommended_bits(sd0, ev.x0, ev.t0));
  auto rep = peak_check_mixture(sd, ev, mix, 3.0, 21, 4);
  CHECK(rep.failures == 0);
  CHECK(rep.r > 0.98);
  CHECK(rep.r < 1.03);
  CHECK(std::fabs(rep.phase_error) < 0.01);

  // detuning the cubic coefficient removes the event
  auto det = mix;
  det.a[1] *= 1.5;
  auto repd = peak_check_mixture(sd, ev, det, 3.0, 21, 4);
  CHECK(rep.max_abs / repd.max_abs > 2.0);

  auto bad = mix;
  bad.a.back() = 0.0;
  CHECK_THROWS_AS(peak_check_mixture(sd, ev, bad, 3.0, 21, 1), ConfigError);
}
