#include "sse/dispersionless.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace sse {

namespace {

std::string collapse_msg(double t) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "width collapsed; solution ends at t = %.12g", t);
  return buf;
}

}  // namespace

CollapseError::CollapseError(double t)
    : std::runtime_error(collapse_msg(t)), t_collapse(t) {}

TalanovParams talanov_from_amplitude(double A_max, double w0) {
  if (!(A_max > 0) || !(w0 > 0))
    throw ConfigError("talanov_from_amplitude: need A_max > 0 and w0 > 0");
  TalanovParams p;
  p.A_max = A_max;
  p.w0 = w0;
  p.E = -2 * A_max * A_max;
  p.F = A_max * A_max * w0;
  return p;
}

TalanovParams talanov_selfsimilar(double F, double t_collapse) {
  if (!(F > 0)) throw ConfigError("talanov_selfsimilar: need F > 0");
  TalanovParams p;
  p.E = 0;
  p.F = F;
  p.t_collapse = t_collapse;
  p.w0 = 0;
  p.A_max = 0;
  return p;
}

double talanov_duration(const TalanovParams& p) {
  if (!(p.E < 0)) throw ConfigError("talanov_duration: defined for E < 0 only");
  return M_SQRT2 * M_PI * p.F * std::pow(-p.E, -1.5);
}

double talanov_inverse_T(double W) {
  if (!(W > 0) || W > 1)
    throw ConfigError("talanov_inverse_T: need W in (0, 1]");
  double g = std::sqrt((1 - W) * W);
  if (W == 1) return 0;
  return g + M_PI / 4 + 0.5 * std::atan((1 - 2 * W) / (2 * g));
}

namespace {

// one adaptive embedded Runge-Kutta trajectory of w'' = -2F/w^2 from the
// width maximum (w0, 0) out to |t|; the orbit is even in t.  The first
// integral is re-checked at every accepted step.
std::pair<double, double> integrate_width(const TalanovParams& p, double t) {
  double tt = std::fabs(t);
  if (tt == 0) return {p.w0, 0.0};
  const double F = p.F, E = p.E;
  const double floor_w = 1e-6 * p.w0;
  // 1e-12 keeps the first-integral drift two orders below its 1e-9|E| budget
  // over the whole pre-collapse range (1e-10 leaves no margin once 2F/w
  // reaches ~20|E|)
  const double rtol = 1e-12, atol = 1e-14 * p.w0;

  // Dormand-Prince 5(4) tableau
  static const double A21 = 1.0 / 5;
  static const double A31 = 3.0 / 40, A32 = 9.0 / 40;
  static const double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
  static const double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187,
                      A53 = 64448.0 / 6561, A54 = -212.0 / 729;
  static const double A61 = 9017.0 / 3168, A62 = -355.0 / 33,
                      A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                      A65 = -5103.0 / 18656;
  static const double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                      B5 = -2187.0 / 6784, B6 = 11.0 / 84;
  static const double E1 = 35.0 / 384 - 5179.0 / 57600,
                      E3 = 500.0 / 1113 - 7571.0 / 16695,
                      E4 = 125.0 / 192 - 393.0 / 640,
                      E5 = -2187.0 / 6784 + 92097.0 / 339200,
                      E6 = 11.0 / 84 - 187.0 / 2100, E7 = -1.0 / 40;

  auto acc = [&](double w) { return -2 * F / (w * w); };

  double s = 0, w = p.w0, v = 0;
  double h = std::min(tt, 1e-3 * p.w0 / std::sqrt(-E > 0 ? -E : 1.0));
  int guard = 0;
  while (s < tt) {
    if (++guard > 2000000) throw std::runtime_error("width_solve: step limit");
    h = std::min(h, tt - s);
    if (w <= floor_w) throw CollapseError(t < 0 ? -s : s);
    double k1w = v, k1v = acc(w);
    double w2 = w + h * A21 * k1w, v2 = v + h * A21 * k1v;
    if (w2 <= 0) { h *= 0.5; continue; }
    double k2w = v2, k2v = acc(w2);
    double w3 = w + h * (A31 * k1w + A32 * k2w),
           v3 = v + h * (A31 * k1v + A32 * k2v);
    if (w3 <= 0) { h *= 0.5; continue; }
    double k3w = v3, k3v = acc(w3);
    double w4 = w + h * (A41 * k1w + A42 * k2w + A43 * k3w),
           v4 = v + h * (A41 * k1v + A42 * k2v + A43 * k3v);
    if (w4 <= 0) { h *= 0.5; continue; }
    double k4w = v4, k4v = acc(w4);
    double w5 = w + h * (A51 * k1w + A52 * k2w + A53 * k3w + A54 * k4w),
           v5 = v + h * (A51 * k1v + A52 * k2v + A53 * k3v + A54 * k4v);
    if (w5 <= 0) { h *= 0.5; continue; }
    double k5w = v5, k5v = acc(w5);
    double w6 = w + h * (A61 * k1w + A62 * k2w + A63 * k3w + A64 * k4w + A65 * k5w),
           v6 = v + h * (A61 * k1v + A62 * k2v + A63 * k3v + A64 * k4v + A65 * k5v);
    if (w6 <= 0) { h *= 0.5; continue; }
    double k6w = v6, k6v = acc(w6);
    double wn = w + h * (B1 * k1w + B3 * k3w + B4 * k4w + B5 * k5w + B6 * k6w);
    double vn = v + h * (B1 * k1v + B3 * k3v + B4 * k4v + B5 * k5v + B6 * k6v);
    if (wn <= 0) { h *= 0.5; continue; }
    double k7w = vn, k7v = acc(wn);
    double ew = h * (E1 * k1w + E3 * k3w + E4 * k4w + E5 * k5w + E6 * k6w + E7 * k7w);
    double ev = h * (E1 * k1v + E3 * k3v + E4 * k4v + E5 * k5v + E6 * k6v + E7 * k7v);
    double err = std::max(std::fabs(ew) / (atol + rtol * std::fabs(wn)),
                          std::fabs(ev) / (atol + rtol * (std::fabs(vn) + 1)));
    if (err <= 1) {
      s += h;
      w = wn;
      v = vn;
      // near collapse the integral is a difference of huge terms, so the
      // monitor scales with the dominant one; away from collapse it reduces
      // to the plain 1e-9|E| bound
      double drift = std::fabs(0.5 * v * v - 2 * F / w - E);
      if (drift > 1e-9 * std::max(std::fabs(E), 2 * F / w))
        throw std::runtime_error("width_solve: first-integral drift");
      if (w <= floor_w) throw CollapseError(t < 0 ? -s : s);
    }
    double fac = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::clamp(fac, 0.2, 5.0);
    if (h < 1e-15 * std::max(1.0, tt)) throw CollapseError(t < 0 ? -s : s);
  }
  // orbit is even in t: w(-t) = w(t), w'(-t) = -w'(t)
  return {w, t < 0 ? -v : v};
}

}  // namespace

std::pair<double, double> width_solve(const TalanovParams& p, double t) {
  if (p.E == 0) {
    // collapsing self-similar branch, defined for t < t_collapse
    if (!(t < p.t_collapse)) throw CollapseError(p.t_collapse);
    double g = std::cbrt(9 * p.F);
    double u = p.t_collapse - t;
    double w = g * std::pow(u, 2.0 / 3.0);
    double wp = -(2.0 / 3.0) * g * std::pow(u, -1.0 / 3.0);
    return {w, wp};
  }
  if (p.E > 0)
    throw ConfigError("width_solve: E > 0 orbits are not constructed here");
  return integrate_width(p, t);
}

DispersionlessState talanov_profile(const TalanovParams& p, double x, double t) {
  auto [w, wp] = width_solve(p, t);
  return talanov_profile_at(p, x, w, wp);
}

DispersionlessState talanov_profile_at(const TalanovParams& p, double x,
                                       double w, double wp) {
  DispersionlessState st;
  if (std::fabs(x) >= w) return st;
  double q = w * w - x * x;
  st.rho = p.F * q / (w * w * w);
  st.mu = p.F * wp * x * q / (w * w * w * w);
  return st;
}

double ask_axis(double A_max, double t) {
  if (!(A_max > 0)) throw ConfigError("ask_axis: need A_max > 0");
  double u = 4 * A_max * A_max * t * t;
  if (u > 1 + 1e-14)
    throw ConfigError("ask_axis: defined for |t| <= 1/(2 A_max)");
  u = std::min(u, 1.0);
  if (u < 1e-8) {
    // (1 - sqrt(1-u)) / (2 t^2) without the 0/0; series in u
    double A2 = A_max * A_max;
    return A2 * (1 + u / 4 + u * u / 8);
  }
  return (1 - std::sqrt(1 - u)) / (2 * t * t);
}

DispersionlessState ask_solve(double A_max, double x, double t) {
  if (!(A_max > 0)) throw ConfigError("ask_solve: need A_max > 0");
  double A2 = A_max * A_max;
  DispersionlessState st;
  st.rho = A2 / std::pow(std::cosh(x), 2);
  st.mu = 0;
  if (t == 0) return st;

  // continuation in time keeps the Newton iteration on the pre-breaking branch
  int steps = 64;
  for (int k = 1; k <= steps; ++k) {
    double tk = t * k / steps;
    double rho = st.rho, mu = st.mu;
    double fn = HUGE_VAL;
    bool ok = false;
    for (int it = 0; it < 60; ++it) {
      double z = x - mu * tk / rho;
      double th = std::tanh(z), se2 = 1 / std::pow(std::cosh(z), 2);
      double f1 = mu + 2 * tk * rho * rho * th;
      double f2 = rho - (A2 + tk * tk * rho * rho) * se2;
      fn = std::max(std::fabs(f1), std::fabs(f2));
      if (fn < 1e-13 * A2) { ok = true; break; }
      double dz_drho = mu * tk / (rho * rho), dz_dmu = -tk / rho;
      double j11 = 4 * tk * rho * th + 2 * tk * rho * rho * se2 * dz_drho;
      double j12 = 1 + 2 * tk * rho * rho * se2 * dz_dmu;
      double j21 = 1 - 2 * tk * tk * rho * se2 +
                   2 * (A2 + tk * tk * rho * rho) * se2 * th * dz_drho;
      double j22 = 2 * (A2 + tk * tk * rho * rho) * se2 * th * dz_dmu;
      double det = j11 * j22 - j12 * j21;
      if (det == 0 || !std::isfinite(det)) break;
      double dr = (f1 * j22 - f2 * j12) / det;
      double dm = (j11 * f2 - j21 * f1) / det;
      double lam = 1;
      while (rho - lam * dr <= 0 && lam > 1e-6) lam *= 0.5;
      rho -= lam * dr;
      mu -= lam * dm;
    }
    if (!ok)
      throw std::runtime_error(
          "ask_solve: iteration did not converge (at or past the gradient "
          "catastrophe)");
    st.rho = rho;
    st.mu = mu;
  }
  return st;
}

double interpolation_a(double delta) {
  if (delta < 0 || delta > 1)
    throw ConfigError("interpolation family: need delta in [0, 1]");
  double A = 1 - delta / 2;
  return 0.5 / A - A * A + 0.5 * A;
}

double interpolation_b(double delta) {
  if (delta < 0 || delta > 1)
    throw ConfigError("interpolation family: need delta in [0, 1]");
  return 1 - delta;
}

double interpolation_axis_time(double delta, double rho) {
  double a = interpolation_a(delta), b = interpolation_b(delta);
  double A = 1 - delta / 2, A2 = A * A;
  if (rho < A2 * (1 - 1e-14))
    throw ConfigError("interpolation_axis_time: need rho >= A_max^2");
  double g = std::sqrt(std::max(0.0, rho - A2));
  if (g == 0) return 0;
  return M_PI / 4 * b + (a + b / 2 * A) * g / rho -
         b / 2 * std::atan(A / g);
}

CatastrophePoint interpolation_catastrophe(double delta) {
  double a = interpolation_a(delta), b = interpolation_b(delta);
  CatastrophePoint c;
  if (delta == 0) {
    // a(0) = 0: the axis density is unbounded and the profile collapses
    c.rho_c = HUGE_VAL;
    c.t_c = M_PI / 4;
    c.blowup = true;
    return c;
  }
  double A = 1 - delta / 2;
  c.rho_c = A * A * (2 + A * b / a);
  c.t_c = interpolation_axis_time(delta, c.rho_c);
  return c;
}

}  // namespace sse
