#include "sse/focusing.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

#include "sse/quadrature.hpp"

namespace sse {

namespace {

void require_polynomial(const PotentialFamily& f, const char* who) {
  if (!f.even_polynomial_curves())
    throw ConfigError(std::string(who) +
                      ": the interpolation family has transcendental curves");
}

double wrap_angle(double d) {
  double e = std::fmod(d + M_PI, 2 * M_PI);
  if (e <= 0) e += 2 * M_PI;
  return e - M_PI;
}

int parity_sign(int k) { return (k % 2 + 2) % 2 == 0 ? 1 : -1; }

}  // namespace

int CurveCoefficients::M() const { return std::max(2 * P(), 2 * Q() - 1); }

CurveCoefficients curve_coefficients(const PotentialFamily& f) {
  require_polynomial(f, "curve_coefficients");
  double A2 = f.A_max * f.A_max;
  // second factor of Phi: 1 + sum_k B_k lambda^{2k}, with B_0 = 1
  auto Bc = [&](int k) -> double {
    if (k == 0) return 1.0;
    if (k < 0 || k > static_cast<int>(f.B.size())) return 0.0;
    return f.B[k - 1];
  };
  int P = static_cast<int>(f.B.size()) + 1;
  CurveCoefficients cc;
  cc.phi.resize(P + 1);
  for (int p = 0; p <= P; ++p) cc.phi[p] = f.Phi0 * (Bc(p) + Bc(p - 1) / A2);
  cc.xi.resize(f.XiH.size() + 1);
  cc.xi[0] = f.Xi1;
  for (size_t j = 0; j < f.XiH.size(); ++j) cc.xi[j + 1] = f.XiH[j];
  return cc;
}

double nu(const PotentialFamily& f) {
  double v = integrate([&](double s) { return phase_integral(f, s); }, 0.0,
                       f.A_max, 1e-12);
  return v / (2 * M_PI);
}

FocusEvent focus_point(const PotentialFamily& f, int K) {
  require_polynomial(f, "focus_point");
  auto cc = curve_coefficients(f);
  FocusEvent ev;
  ev.K = K;
  ev.M = cc.M();
  ev.nu = nu(f);
  ev.x0 = -0.5 * cc.xi[0];
  ev.t0.assign(ev.M - 1, 0.0);
  for (int m = 2; m <= ev.M; ++m) {
    if (m % 2 == 0) {
      ev.t0[m - 2] = -0.5 * (2 * K + 1) * cc.phi[m / 2];
    } else {
      int q = (m + 1) / 2;
      ev.t0[m - 2] = q <= cc.Q() ? -0.5 * cc.xi[q - 1] : 0.0;
    }
  }
  return ev;
}

FlowMixture mixture_coefficients(const PotentialFamily& f, int K,
                                 double alpha) {
  require_polynomial(f, "mixture_coefficients");
  if (alpha == 0) throw ConfigError("mixture_coefficients: alpha must be nonzero");
  auto cc = curve_coefficients(f);
  FlowMixture mix;
  mix.alpha = alpha;
  mix.periodic = cc.Q() == 1;  // Xi is a linear monomial
  int M = cc.M();
  mix.a.assign(M - 1, 0.0);
  for (int m = 2; m <= M; ++m) {
    if (m % 2 == 0) {
      double phi = cc.phi[m / 2];
      mix.a[m - 2] = -0.5 * alpha * (mix.periodic ? phi : (2 * K + 1) * phi);
    } else if (!mix.periodic) {
      int q = (m + 1) / 2;
      mix.a[m - 2] = q <= cc.Q() ? -0.5 * alpha * cc.xi[q - 1] : 0.0;
    }
  }
  mix.t_focus = (mix.periodic ? 2 * K + 1 : 1.0) / alpha;
  return mix;
}

double hirota_condition_residual(double a2, double a3, double xi, double A_max,
                                 int K) {
  return 4 * a2 * xi - 3 * M_PI * (2 * K + 1) * a3 * A_max;
}

double lpd_condition_residual(double a2, double a4, double gamma,
                              double A_max) {
  return (4 + 2 * gamma) * a4 * A_max * A_max - 3 * gamma * a2;
}

bool check_condition(double residual, double tol) {
  return std::fabs(residual) <= tol;
}

double hirota_tuned_a3(double a2, double xi, double A_max, int K) {
  return 4 * a2 * xi / (3 * M_PI * (2 * K + 1) * A_max);
}

double lpd_tuned_a4(double a2, double gamma, double A_max) {
  return 3 * gamma * a2 / ((4 + 2 * gamma) * A_max * A_max);
}

WindowPoint local_window(const FocusEvent& ev, double eps, double X,
                         const std::vector<double>& T) {
  if (eps <= 0) throw ConfigError("local_window: eps must be positive");
  WindowPoint w;
  w.x = ev.x0 + eps * eps / ev.nu * X;
  w.times = ev.t0;
  double scale = eps * eps / ev.nu;  // ramps to eps^{m+1}/nu^m below
  for (int m = 2; m <= ev.M; ++m) {
    scale *= eps / ev.nu;
    if (m - 2 < static_cast<int>(T.size())) w.times[m - 2] += scale * T[m - 2];
  }
  return w;
}

std::vector<double> pure_flow_shift(const PotentialFamily& f, int K, int n,
                                    double t_shift) {
  auto ev = focus_point(f, K);
  if (n < 2 || n > ev.M)
    throw ConfigError("pure_flow_shift: flow index out of range");
  auto t = ev.t0;
  t[n - 2] -= t_shift;
  return t;
}

namespace {

PeakReport scan_window(const SpectralData& sd, const FocusEvent& ev,
                       const std::vector<double>& xs,
                       const std::vector<std::vector<double>>& time_list,
                       const std::vector<double>& Xcoord,
                       const std::vector<double>& Tcoord, int threads,
                       const EvalOptions& opts) {
  PeakReport rep;
  FieldGrid g = evaluate_grid(sd, xs, time_list, opts, threads);
  for (size_t i = 0; i < g.nx; ++i) {
    for (size_t j = 0; j < g.nt; ++j) {
      const auto& smp = g.pts[i * g.nt + j];
      if (!smp.ok) {
        ++rep.failures;
        continue;
      }
      double a = std::abs(smp.psi);
      if (a > rep.max_abs) {
        rep.max_abs = a;
        rep.X_arg = Xcoord[i];
        rep.T_arg = Tcoord[j];
      }
    }
  }
  rep.r = sd.epsilon * rep.max_abs / (4 * ev.nu);
  rep.X = Xcoord;
  rep.T = Tcoord;
  rep.grid = std::move(g);
  // phase is compared at the focus point itself, not at the measured argmax
  auto center = evaluate(sd, ev.x0, ev.t0, opts);
  rep.phase_center = std::arg(center.psi);
  double target = parity_sign(ev.K + sd.N) > 0 ? M_PI / 2 : -M_PI / 2;
  rep.phase_error = wrap_angle(rep.phase_center - target);
  return rep;
}

std::vector<double> linspace_window(double halfwidth, int grid) {
  std::vector<double> v(grid);
  for (int i = 0; i < grid; ++i)
    v[i] = grid == 1 ? 0.0 : -halfwidth + 2 * halfwidth * i / (grid - 1);
  return v;
}

}  // namespace

PeakReport peak_check(const SpectralData& sd, const FocusEvent& ev, int m,
                      double halfwidth, int grid, int threads,
                      const EvalOptions& opts) {
  if (m < 2 || m > ev.M) throw ConfigError("peak_check: time index out of range");
  if (grid < 1 || halfwidth < 0) throw ConfigError("peak_check: bad window");
  auto Xs = linspace_window(halfwidth, grid);
  auto Ts = linspace_window(halfwidth, grid);
  std::vector<double> xs(grid);
  std::vector<std::vector<double>> times(grid);
  for (int i = 0; i < grid; ++i) {
    std::vector<double> T(ev.M - 1, 0.0);
    T[m - 2] = Ts[i];
    auto w = local_window(ev, sd.epsilon, Xs[i], T);
    xs[i] = w.x;
    times[i] = w.times;
  }
  return scan_window(sd, ev, xs, times, Xs, Ts, threads, opts);
}

PeakReport peak_check_mixture(const SpectralData& sd, const FocusEvent& ev,
                              const FlowMixture& mix, double halfwidth,
                              int grid, int threads,
                              const EvalOptions& opts) {
  if (static_cast<int>(mix.a.size()) != ev.M - 1)
    throw ConfigError("peak_check_mixture: mixture length does not match M");
  double aM = mix.a.back();
  if (aM == 0) throw ConfigError("peak_check_mixture: top coefficient is zero");
  if (grid < 1 || halfwidth < 0)
    throw ConfigError("peak_check_mixture: bad window");
  double scale = std::pow(sd.epsilon, ev.M + 1) /
                 (aM * std::pow(ev.nu, ev.M));
  auto Xs = linspace_window(halfwidth, grid);
  auto Ts = linspace_window(halfwidth, grid);
  std::vector<double> xs(grid);
  std::vector<std::vector<double>> times(grid);
  for (int i = 0; i < grid; ++i) {
    xs[i] = ev.x0 + sd.epsilon * sd.epsilon / ev.nu * Xs[i];
    times[i] = mixture_times(mix.a, mix.t_focus + scale * Ts[i]);
  }
  return scan_window(sd, ev, xs, times, Xs, Ts, threads, opts);
}

}  // namespace sse
