// Go/no-go criteria for the whole pipeline.  Each criterion re-derives its
// expected values from closed forms or independent constructions and pins its
// tolerances here; nothing is read from disk.  Criteria that scan fields are
// sized to finish on a laptop core in minutes.

#include "sse/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <vector>

#include "sse/dispersionless.hpp"
#include "sse/ensemble.hpp"
#include "sse/fitting.hpp"
#include "sse/focusing.hpp"
#include "sse/potentials.hpp"
#include "sse/scattering.hpp"

namespace sse {
namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// accumulates clause verdicts into one pass flag and a readable detail line
struct Clauses {
  bool pass = true;
  std::string detail;
  void check(bool ok, const std::string& msg) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += msg;
    if (!ok) detail += " [FAIL]";
  }
};

std::mt19937_64 rng_for(std::uint64_t seed, int id) {
  return std::mt19937_64(seed ^ (0x9E3779B97F4A7C15ull * std::uint64_t(id)));
}

// ---------------------------------------------------------------- criterion 1
// One-soliton ensemble against the closed form.  For N = 1 the residue system
// is 2x2 and solvable by hand: |psi~(x,0)| = 2 sigma sech(l(x) - ln 2 sigma)
// with l(x) = log|c0| - 2 sigma x / eps, and the sign carried by the residue
// phase.  For the unit semicircle this collapses to 2 sigma sech(2 sigma x/eps).
Clauses c1_one_soliton(std::uint64_t, int) {
  Clauses c;
  auto f = semicircle_family(1.0, -0.5, 0.5);
  auto sd = wkb_spectrum(f, 1);
  const double sg = sd.s[0], eps = sd.epsilon, L = sd.log_c0[0];
  const double sign = sd.c0_phase[0] > 0 ? -1.0 : 1.0;
  double max_rel = 0;
  for (int i = 0; i < 200; ++i) {
    double x = -2.0 + 4.0 * i / 199.0;
    double oracle =
        sign * 2 * sg / std::cosh(L - 2 * sg * x / eps - std::log(2 * sg));
    auto smp = evaluate(sd, x, {});
    if (!smp.ok) {
      c.check(false, fmt("evaluation failed at x=%g", x));
      return c;
    }
    max_rel = std::max(
        max_rel, std::abs(smp.psi - std::complex<double>(oracle, 0)) /
                     std::fabs(oracle));
  }
  c.check(max_rel <= 1e-10,
          fmt("200 points, max relative error %.2e (tol 1e-10)", max_rel));
  return c;
}

// ---------------------------------------------------------------- criterion 2
// Bohr-Sommerfeld roots of the unit semicircle against the analytic inversion
// s_n = sqrt(1 - (2n+1)/(2N)).
Clauses c2_eigenvalues(std::uint64_t, int) {
  Clauses c;
  auto f = semicircle_family(1.0, -0.5, 0.5);
  for (int N : {1, 2, 20}) {
    auto sd = wkb_spectrum(f, N);
    double worst = 0;
    for (int n = 0; n < N; ++n)
      worst = std::max(worst, std::fabs(sd.s[n] - std::sqrt(1.0 - (2.0 * n + 1) /
                                                                      (2.0 * N))));
    c.check(worst <= 1e-12, fmt("N=%d max deviation %.2e (tol 1e-12)", N, worst));
  }
  return c;
}

// ---------------------------------------------------------------- criterion 3
// Trace formula: 4 sum eps s_n approximates the squared L2 mass 2/3 of the
// unit semicircle.  Second clause demands the error drop by ~4x from N=20 to
// N=40; the square-root vanishing of the density at the band edge actually
// caps the Riemann-sum rate at N^(-3/2) (halving ratio 2^1.5 ~ 2.83), so the
// bracket is expected to fail and the failure is reported as measured.
Clauses c3_trace(std::uint64_t, int) {
  Clauses c;
  auto f = semicircle_family(1.0, -0.5, 0.5);
  double e20 = std::fabs(trace_l2(wkb_spectrum(f, 20)) - 2.0 / 3);
  double e40 = std::fabs(trace_l2(wkb_spectrum(f, 40)) - 2.0 / 3);
  c.check(e20 <= 1e-3, fmt("N=20 mass error %.3e (tol 1e-3)", e20));
  double ratio = e20 / e40;
  c.check(ratio >= 3.5 && ratio <= 4.5,
          fmt("halving ratio %.3f vs [3.5, 4.5]; edge sqrt-vanishing caps the "
              "rate at N^-1.5 (ratio ~2.83)",
              ratio));
  return c;
}

// ---------------------------------------------------------------- criterion 4
// Reconstruction rate brackets for the shifted-maximizer family: sup-error
// power fits across N in {20,30,40} inside and outside the support.  The
// interior sup needs a dense grid (the error oscillates on the scale
// pi*eps/s); 321 points is enough that doubling moves the fit by < 0.01.
// Outside, the error is the soliton tail ~ s_min exp(-2 s_min d/eps), a
// stretched exponential whose log-log slope at these eps is ~1.3-1.5 and
// approaches 2 only for far smaller eps, so the [1.6, 2.5] bracket is
// expected to fail at this scale; reported as measured.
Clauses c4_rates(std::uint64_t, int threads) {
  Clauses c;
  auto f = hirota_family(1.0, -0.5, 0.5, 2.0 / 3);
  std::vector<int> Ns = {20, 30, 40};
  RegionSpec interior;
  interior.lo = -0.45;
  interior.hi = 0.45;
  interior.two_sided = false;
  interior.points = 321;
  RegionSpec exterior;
  exterior.lo = 0.55;
  exterior.hi = 0.65;
  exterior.two_sided = true;
  exterior.points = 21;
  FitReport fi = converge_fit(f, Ns, interior, threads);
  FitReport fe = converge_fit(f, Ns, exterior, threads);
  c.check(fi.exponent >= 0.35 && fi.exponent <= 0.65,
          fmt("interior exponent %.4f vs [0.35, 0.65]", fi.exponent));
  c.check(fe.exponent >= 1.6 && fe.exponent <= 2.5,
          fmt("exterior exponent %.4f vs [1.6, 2.5]", fe.exponent));
  return c;
}

// ---------------------------------------------------------------- criterion 5
// Peak amplitude at a focus point: r = eps max|psi~| / (4 nu) near 1 over the
// default window, improving from N=10 to N=20, with the argmax within one
// window unit of the prediction.
Clauses c5_focus_amplitude(std::uint64_t, int threads) {
  Clauses c;
  auto f = semicircle_family(1.0, -0.5, 0.5);
  auto ev = focus_point(f, -1);
  double r[2];
  int i = 0;
  for (int N : {10, 20}) {
    auto sd0 = wkb_spectrum(f, N);
    auto sd = wkb_spectrum(f, N, recommended_bits(sd0, ev.x0, ev.t0));
    auto rep = peak_check(sd, ev, 2, 3.0, 41, threads);
    if (rep.failures) {
      c.check(false, fmt("N=%d: %d window points failed", N, rep.failures));
      return c;
    }
    r[i++] = rep.r;
    c.check(std::fabs(rep.X_arg) <= 1.0 && std::fabs(rep.T_arg) <= 1.0,
            fmt("N=%d argmax (%.2f, %.2f) within one window unit", N, rep.X_arg,
                rep.T_arg));
  }
  c.check(r[0] >= 0.8 && r[0] <= 1.2, fmt("r(N=10)=%.6f vs [0.8, 1.2]", r[0]));
  c.check(std::fabs(r[1] - 1) < std::fabs(r[0] - 1),
          fmt("|r(N=20)-1|=%.2e < |r(N=10)-1|=%.2e", std::fabs(r[1] - 1),
              std::fabs(r[0] - 1)));
  return c;
}

// ---------------------------------------------------------------- criterion 6
// Quantization contrast: the tuned (a2, a3) mixture focuses, the same mixture
// with a3 scaled by 1.5 does not, and the window maxima differ by >= 2x.
Clauses c6_contrast(std::uint64_t, int threads) {
  Clauses c;
  auto h = hirota_family(1.0, -0.5, 0.5, 2.0 / 3);
  auto cc = curve_coefficients(h);
  const int K = 0, N = 12;
  double alpha = -2.0 / ((2 * K + 1) * cc.phi[1]);  // normalizes a2 to 1
  auto mix = mixture_coefficients(h, K, alpha);
  auto det = mix;
  det.a[1] *= 1.5;
  auto ev = focus_point(h, K);
  auto sd0 = wkb_spectrum(h, N);
  auto sd = wkb_spectrum(h, N, recommended_bits(sd0, ev.x0, ev.t0));
  auto tuned = peak_check_mixture(sd, ev, mix, 3.0, 41, threads);
  auto detuned = peak_check_mixture(sd, ev, det, 3.0, 41, threads);
  if (tuned.failures || detuned.failures) {
    c.check(false, fmt("window failures: tuned %d, detuned %d", tuned.failures,
                       detuned.failures));
    return c;
  }
  double contrast = tuned.max_abs / detuned.max_abs;
  c.check(contrast >= 2.0,
          fmt("a2=1, a3 tuned %.6f: max %.2f vs detuned %.2f, contrast %.2f "
              "(need >= 2)",
              mix.a[1], tuned.max_abs, detuned.max_abs, contrast));
  return c;
}

// ---------------------------------------------------------------- criterion 7
// Reality and symmetry: psi~ is real at t=0, purely imaginary on the odd-flow
// slice t2 = pi/8, and the pole-swapped formulation agrees with the primary
// one wherever both converge.
Clauses c7_symmetry(std::uint64_t seed, int) {
  Clauses c;
  auto rng = rng_for(seed, 7);
  auto f = semicircle_family(1.0, -0.5, 0.5);
  std::uniform_real_distribution<double> ux(-1.0, 1.0);

  double worst_im = 0;
  for (int N : {3, 8, 14, 20}) {
    auto sd0 = wkb_spectrum(f, N);
    std::vector<double> xs(25);
    int bits = 0;
    for (double& x : xs) {
      x = ux(rng);
      bits = std::max(bits, recommended_bits(sd0, x, {}));
    }
    auto sd = wkb_spectrum(f, N, bits);
    for (double x : xs) {
      auto smp = evaluate(sd, x, {});
      if (!smp.ok) {
        c.check(false, fmt("t=0 evaluation failed, N=%d x=%g", N, x));
        return c;
      }
      worst_im = std::max(worst_im,
                          std::fabs(smp.psi.imag()) / (1 + std::abs(smp.psi)));
    }
  }
  c.check(worst_im <= 1e-8,
          fmt("t=0: max |Im|/(1+|psi|) = %.2e over 100 x (tol 1e-8)", worst_im));

  {
    const std::vector<double> slice = {M_PI / 8, 0.0};
    auto sd0 = wkb_spectrum(f, 12);
    std::vector<double> xs(25);
    int bits = 0;
    for (double& x : xs) {
      x = ux(rng);
      bits = std::max(bits, recommended_bits(sd0, x, slice));
    }
    auto sd = wkb_spectrum(f, 12, bits);
    double worst_re = 0;
    for (double x : xs) {
      auto smp = evaluate(sd, x, slice);
      if (!smp.ok) {
        c.check(false, fmt("slice evaluation failed at x=%g", x));
        return c;
      }
      worst_re = std::max(worst_re,
                          std::fabs(smp.psi.real()) / (1 + std::abs(smp.psi)));
    }
    c.check(worst_re <= 1e-8,
            fmt("t2=pi/8 slice: max |Re|/(1+|psi|) = %.2e over 25 x (tol 1e-8)",
                worst_re));
  }

  {
    std::uniform_real_distribution<double> ut(-0.2, 0.2);
    auto sd0 = wkb_spectrum(f, 10);
    std::vector<std::pair<double, double>> pts(50);
    int bits = 0;
    for (auto& p : pts) {
      p = {ux(rng), ut(rng)};
      bits = std::max(bits,
                      recommended_bits(sd0, p.first, {p.second},
                                       Formulation::Primary));
      bits = std::max(bits,
                      recommended_bits(sd0, p.first, {p.second},
                                       Formulation::Renormalized));
    }
    auto sd = wkb_spectrum(f, 10, bits);
    EvalOptions prim, renorm;
    prim.formulation = Formulation::Primary;
    renorm.formulation = Formulation::Renormalized;
    double worst = 0;
    for (auto& p : pts) {
      auto a = evaluate(sd, p.first, {p.second}, prim);
      auto b = evaluate(sd, p.first, {p.second}, renorm);
      if (!a.ok || !b.ok) {
        c.check(false, fmt("formulation pair failed at x=%g t=%g", p.first,
                           p.second));
        return c;
      }
      worst = std::max(worst, std::abs(a.psi - b.psi) / (1 + std::abs(a.psi)));
    }
    c.check(worst <= 1e-8,
            fmt("formulations: max |diff|/(1+|psi|) = %.2e over 50 points "
                "(tol 1e-8)",
                worst));
  }
  return c;
}

// ---------------------------------------------------------------- criterion 8
// Dispersionless closed forms: width inverse, ODE round trip, lifetime, hump
// axis density at the catastrophe, and the interpolation locus endpoint.
Clauses c8_dispersionless(std::uint64_t, int) {
  Clauses c;
  double tinv = talanov_inverse_T(0.5);
  c.check(std::fabs(tinv - (0.5 + M_PI / 4)) <= 1e-10,
          fmt("T(1/2) = %.12f vs 1/2 + pi/4 (tol 1e-10)", tinv));

  auto p = talanov_from_amplitude(1.0, 2.0);  // rescaling trivial: t=T, w=2W
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    double W = 0.05 + 0.95 * i / 19.0;
    auto [w, wp] = width_solve(p, talanov_inverse_T(W));
    worst = std::max(worst, std::fabs(w - 2 * W));
  }
  c.check(worst <= 1e-8,
          fmt("ODE vs inverse on W in [0.05,1]: max %.2e (tol 1e-8)", worst));

  double dur = talanov_duration(p);
  c.check(std::fabs(dur - M_PI) <= 1e-10,
          fmt("lifetime %.12f vs pi (tol 1e-10)", dur));

  double axis = ask_axis(1.0, 0.5);
  c.check(std::fabs(axis - 2.0) <= 1e-8,
          fmt("hump axis rho(0, 1/2) = %.10f vs 2 (tol 1e-8)", axis));

  auto cat = interpolation_catastrophe(1.0);
  c.check(std::fabs(cat.rho_c - 0.5) <= 1e-10 &&
              std::fabs(cat.t_c - 1.0) <= 1e-10,
          fmt("locus at delta=1: (%.12f, %.12f) vs (1/2, 1) (tol 1e-10)",
              cat.rho_c, cat.t_c));
  return c;
}

// ---------------------------------------------------------------- criterion 9
// Abel-inversion round trip: rebuild the amplitude branches from the curve
// handles alone and compare with the closed-form inverses.
Clauses c9_branches(std::uint64_t, int) {
  Clauses c;
  const PotentialFamily fams[] = {semicircle_family(1.0, -0.5, 0.5),
                                  hirota_family(1.0, -0.5, 0.5, 2.0 / 3)};
  for (const auto& f : fams) {
    double worst = 0;
    for (int j = 0; j < 20; ++j) {
      double s = (j + 0.5) / 20.0;
      auto rec = recover_branches(
          [&](double u) { return phase_integral(f, u); },
          [&](double u) { return tail_integral(f, u); }, 1.0, s);
      auto exact = inverse_branches(f, s);
      worst = std::max({worst, std::fabs(rec.first - exact.first),
                        std::fabs(rec.second - exact.second)});
    }
    c.check(worst <= 1e-8, fmt("%s: max branch error %.2e over 20 s (tol 1e-8)",
                               f.kind_name().c_str(), worst));
  }
  return c;
}

// --------------------------------------------------------------- criterion 10
// Second-order flow residual: the centered-step defect of the N=5 ensemble
// under the cubic flow drops ~4x per halving of the step.
Clauses c10_pde(std::uint64_t seed, int) {
  Clauses c;
  auto rng = rng_for(seed, 10);
  std::uniform_real_distribution<double> ux(-0.6, 0.6), ut(-0.1, 0.1);
  auto f = semicircle_family(1.0, -0.5, 0.5);
  auto sd0 = wkb_spectrum(f, 5);
  const double h0 = sd0.epsilon / 8;
  std::vector<std::pair<double, double>> pts(5);
  int bits = 0;
  for (auto& p : pts) {
    p = {ux(rng), ut(rng)};
    bits = std::max(bits, recommended_bits(sd0, p.first, {p.second}));
  }
  auto sd = wkb_spectrum(f, 5, bits);
  FlowSpec flow;  // cubic flow
  for (auto& p : pts) {
    double r1 = pde_residual(sd, p.first, {p.second}, flow, h0);
    double r2 = pde_residual(sd, p.first, {p.second}, flow, h0 / 2);
    double ratio = r1 / r2;
    c.check(ratio >= 3.5 && ratio <= 4.5,
            fmt("(%.3f, %.3f): ratio %.3f", p.first, p.second, ratio));
  }
  return c;
}

struct Entry {
  int id;
  const char* name;
  Clauses (*run)(std::uint64_t, int);
};

const Entry kTable[] = {
    {1, "one-soliton closed form", c1_one_soliton},
    {2, "eigenvalue closed form", c2_eigenvalues},
    {3, "trace-formula mass", c3_trace},
    {4, "reconstruction rate brackets", c4_rates},
    {5, "focus peak amplitude", c5_focus_amplitude},
    {6, "quantization contrast", c6_contrast},
    {7, "reality and formulation symmetry", c7_symmetry},
    {8, "dispersionless closed forms", c8_dispersionless},
    {9, "branch recovery round trip", c9_branches},
    {10, "flow residual halving order", c10_pde},
};

}  // namespace

std::vector<int> all_criteria() {
  std::vector<int> ids;
  for (const auto& e : kTable) ids.push_back(e.id);
  return ids;
}

CriterionResult run_criterion(int id, std::uint64_t seed, int threads) {
  for (const auto& e : kTable) {
    if (e.id != id) continue;
    CriterionResult r;
    r.id = id;
    r.name = e.name;
    auto start = std::chrono::steady_clock::now();
    try {
      Clauses c = e.run(seed, threads < 1 ? 1 : threads);
      r.pass = c.pass;
      r.detail = c.detail;
    } catch (const std::exception& ex) {
      r.pass = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return r;
  }
  throw ConfigError("unknown criterion id " + std::to_string(id));
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids,
                                            std::uint64_t seed, int threads) {
  std::vector<CriterionResult> out;
  for (int id : ids) out.push_back(run_criterion(id, seed, threads));
  return out;
}

}  // namespace sse
