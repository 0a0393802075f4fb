#include "sse/potentials.hpp"

#include <cmath>
#include <limits>

#include "sse/quadrature.hpp"

namespace sse {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// I_j(w) = int_0^1 (w + beta z^2)^j dz with beta = A^2 - w, expanded exactly
double poly_I(int j, double w, double beta) {
  double s = 0;
  for (int i = 0; i <= j; ++i)
    s += binom(j, i) / (2 * i + 1) * std::pow(w, j - i) * std::pow(beta, i);
  return s;
}

double poly_I_dw(int j, double w, double beta) {
  // d/dw with beta = A^2 - w, so d beta/dw = -1
  double s = 0;
  for (int i = 0; i <= j; ++i) {
    double c = binom(j, i) / (2 * i + 1);
    if (j - i > 0) s += c * (j - i) * std::pow(w, j - i - 1) * std::pow(beta, i);
    if (i > 0) s -= c * i * std::pow(w, j - i) * std::pow(beta, i - 1);
  }
  return s;
}

// P_k(w) = (k+1) I_k - A^2 k I_{k-1}
double poly_P(int k, double w, double A2) {
  return (k + 1) * poly_I(k, w, A2 - w) - A2 * k * poly_I(k - 1, w, A2 - w);
}

double poly_P_dw(int k, double w, double A2) {
  return (k + 1) * poly_I_dw(k, w, A2 - w) - A2 * k * poly_I_dw(k - 1, w, A2 - w);
}

// q(w) = 1 + sum_k B_k (-w)^k  so that Phi(is) = Phi0 (1 - w/A^2) q(w)
template <class R>
R curve_q(const std::vector<double>& B, const R& w) {
  R acc(0);
  for (size_t k = B.size(); k-- > 0;) acc = (acc + B[k]) * (-w);
  return 1 + acc;
}

template <class R>
R curve_q_dw(const std::vector<double>& B, const R& w) {
  R acc(0);
  for (size_t j = B.size(); j-- > 0;) {
    int k = static_cast<int>(j) + 1;
    acc = acc * w + (k % 2 == 0 ? 1.0 : -1.0) * B[j] * k;
  }
  return acc;
}

// r(w) = -Xi1 + sum_{q>=2} (-1)^q Xi_q w^{q-1}  so that Xi(is) = s r(s^2)
template <class R>
R curve_r(double Xi1, const std::vector<double>& XiH, const R& w) {
  R acc(0);
  for (size_t j = XiH.size(); j-- > 0;) {
    int q = static_cast<int>(j) + 2;
    acc = acc * w + (q % 2 == 0 ? XiH[j] : -XiH[j]);
  }
  return acc * w - Xi1;
}

// (2q-1)!!/(2q-2)!!
double semifactorial_ratio(int q) {
  double r = 1;
  for (int m = 1; m <= q - 1; ++m) r *= (2.0 * m + 1) / (2.0 * m);
  return r;
}

// centered part x_pm(s) = T(s) +- G(s) for the even-polynomial kinds
struct BranchParts {
  double T, G, dT, dG;
};

BranchParts branch_parts(const PotentialFamily& f, double s, bool want_deriv) {
  double A2 = f.A_max * f.A_max, w = s * s;
  double T = -f.Xi1 / 2, dT = 0;
  for (size_t j = 0; j < f.XiH.size(); ++j) {
    int q = static_cast<int>(j) + 2;
    double c = (q % 2 == 0 ? 1.0 : -1.0) * f.XiH[j] / 2 * semifactorial_ratio(q);
    T += c * std::pow(s, 2 * q - 2);
    if (want_deriv) dT += c * (2 * q - 2) * std::pow(s, 2 * q - 3);
  }
  double R = 1, dR = 0;
  for (size_t j = 0; j < f.B.size(); ++j) {
    int k = static_cast<int>(j) + 1;
    double sgn = (k % 2 == 0 ? 1.0 : -1.0);
    R += sgn * f.B[j] * poly_P(k, w, A2);
    if (want_deriv) dR += sgn * f.B[j] * poly_P_dw(k, w, A2);
  }
  double c0 = 2 * f.Phi0 / (M_PI * A2);
  double root = std::sqrt(std::max(0.0, A2 - w));
  double G = c0 * root * R;
  double dG = 0;
  if (want_deriv && root > 0)
    dG = c0 * (-s / root * R + root * dR * 2 * s);
  return {T, G, dT, dG};
}

double interp_xplus(const PotentialFamily& f, double s) {
  double A = f.A_max;
  double sig = std::sqrt(std::max(0.0, (A - s) * (A + s)));
  // (A+sig)/(A-sig) = ((A+sig)/s)^2, stable down to tiny s
  double lg = (s >= A) ? 0.0 : std::log((A + sig) / s);
  return f.ia * lg + f.ib * sig;
}

double interp_xplus_deriv(const PotentialFamily& f, double s) {
  double A = f.A_max;
  double sig = std::sqrt(std::max(0.0, (A - s) * (A + s)));
  return -(f.ia * A / (s * sig) + f.ib * s / sig);
}

// invert the decreasing map s -> interp_xplus on (0, A) for given x > 0
double interp_amplitude_positive_x(const PotentialFamily& f, double x) {
  double A = f.A_max;
  if (f.ia == 0) {  // delta = 0: pure semicircle on [-1, 1]
    return (x >= A) ? 0.0 : std::sqrt((A - x) * (A + x));
  }
  double lo = A / 2;
  while (interp_xplus(f, lo) < x) {
    lo /= 2;
    if (lo < 1e-300) return 0.0;
  }
  double hi = A;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (interp_xplus(f, mid) >= x) lo = mid; else hi = mid;
    if (hi - lo < 1e-16 * A) break;
  }
  double s = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    double d = interp_xplus_deriv(f, s);
    if (!std::isfinite(d) || d == 0) break;
    double step = (interp_xplus(f, s) - x) / d;
    double sn = s - step;
    if (sn > 0 && sn < A) s = sn;
  }
  return s;
}

// invert x_minus (x < x0) or x_plus (x > x0) for the even-polynomial kinds
double poly_amplitude(const PotentialFamily& f, double x) {
  if (x <= f.X_minus || x >= f.X_plus) return 0.0;
  if (x == f.x0) return f.A_max;
  bool left = x < f.x0;
  double A = f.A_max, lo = 0, hi = A;
  auto fx = [&](double s) {
    BranchParts p = branch_parts(f, s, false);
    return (left ? p.T - p.G : p.T + p.G) - x;
  };
  // x_minus increases from X_minus to x0; x_plus decreases from X_plus to x0
  for (int it = 0; it < 100; ++it) {
    double mid = 0.5 * (lo + hi);
    double v = fx(mid);
    if ((left && v < 0) || (!left && v > 0)) lo = mid; else hi = mid;
    if (hi - lo < 1e-15 * A) break;
  }
  double s = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    BranchParts p = branch_parts(f, s, true);
    double d = left ? p.dT - p.dG : p.dT + p.dG;
    if (!std::isfinite(d) || d == 0) break;
    double sn = s - ((left ? p.T - p.G : p.T + p.G) - x) / d;
    if (sn > 0 && sn < A) s = sn;
  }
  return s;
}

void require(bool ok, const char* msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

std::string PotentialFamily::kind_name() const {
  switch (kind) {
    case FamilyKind::Semicircle: return "semicircle";
    case FamilyKind::Hirota: return "hirota";
    case FamilyKind::Lpd: return "lpd";
    case FamilyKind::Interpolation: return "interpolation";
    case FamilyKind::Polynomial: return "polynomial";
  }
  return "?";
}

PotentialFamily semicircle_family(double A_max, double X_minus, double X_plus) {
  require(A_max > 0 && X_minus < X_plus, "semicircle: need A_max > 0 and X_minus < X_plus");
  PotentialFamily f;
  f.kind = FamilyKind::Semicircle;
  f.A_max = A_max;
  f.X_minus = X_minus;
  f.X_plus = X_plus;
  f.Phi0 = M_PI * A_max * (X_plus - X_minus) / 4;
  f.Xi1 = -(X_plus + X_minus);
  f.x0 = (X_plus + X_minus) / 2;
  return f;
}

PotentialFamily hirota_family(double A_max, double X_minus, double X_plus, double xi) {
  require(A_max > 0 && X_minus < X_plus, "hirota: need A_max > 0 and X_minus < X_plus");
  require(std::abs(xi) < 1, "hirota: need |xi| < 1");
  PotentialFamily f = semicircle_family(A_max, X_minus, X_plus);
  f.kind = FamilyKind::Hirota;
  f.xi = xi;
  f.XiH = {(X_plus - X_minus) * xi / (3 * A_max * A_max)};
  f.x0 = (X_plus + X_minus) / 2 + 0.75 * f.XiH[0] * A_max * A_max;
  return f;
}

PotentialFamily lpd_family(double A_max, double X_minus, double X_plus, double gamma) {
  require(A_max > 0 && X_minus < X_plus, "lpd: need A_max > 0 and X_minus < X_plus");
  require(gamma > -0.5 && gamma < 1, "lpd: need gamma in (-1/2, 1)");
  PotentialFamily f;
  f.kind = FamilyKind::Lpd;
  f.A_max = A_max;
  f.X_minus = X_minus;
  f.X_plus = X_plus;
  f.gamma = gamma;
  f.b1 = 3 * gamma / (4 - gamma);
  f.Phi0 = 3 * M_PI * A_max * (X_plus - X_minus) / (4 * (3 + f.b1));
  f.B = {f.b1 / (A_max * A_max)};
  f.Xi1 = -(X_plus + X_minus);
  f.x0 = (X_plus + X_minus) / 2;
  return f;
}

PotentialFamily interpolation_family(double delta) {
  require(delta >= 0 && delta <= 1, "interpolation: need delta in [0, 1]");
  PotentialFamily f;
  f.kind = FamilyKind::Interpolation;
  f.delta = delta;
  double A = 1 - delta / 2;
  f.A_max = A;
  f.ib = 1 - delta;
  f.ia = 0.5 / A - A * A + A / 2;
  f.x0 = 0;
  if (delta == 0) {
    f.X_minus = -1;
    f.X_plus = 1;
  } else {
    f.X_minus = -kInf;
    f.X_plus = kInf;
  }
  f.Phi0 = M_PI * (f.ia * A + f.ib * A * A / 2);  // = pi/2 for every delta
  f.Xi1 = 0;
  return f;
}

PotentialFamily polynomial_family(double Phi0, double A_max, std::vector<double> B,
                                  double Xi1, std::vector<double> Xi_higher) {
  require(Phi0 > 0 && A_max > 0, "polynomial: need Phi0 > 0 and A_max > 0");
  PotentialFamily f;
  f.kind = FamilyKind::Polynomial;
  f.A_max = A_max;
  f.Phi0 = Phi0;
  f.B = std::move(B);
  f.Xi1 = Xi1;
  f.XiH = std::move(Xi_higher);
  // support endpoints and maximizer from the branch limits s -> 0, s -> A_max
  BranchParts p0 = branch_parts(f, 0, false);
  f.X_minus = p0.T - p0.G;
  f.X_plus = p0.T + p0.G;
  BranchParts pA = branch_parts(f, A_max, false);
  f.x0 = pA.T;
  require(f.X_minus < f.X_plus, "polynomial: degenerate support");
  // admissibility: x_minus strictly increasing and x_plus strictly decreasing
  for (int j = 0; j < 64; ++j) {
    double s = A_max * (j + 0.5) / 64;
    BranchParts p = branch_parts(f, s, true);
    if (!(p.dT - p.dG > 0) || !(p.dT + p.dG < 0))
      throw ConfigError("polynomial: branch monotonicity fails (coefficients too large)");
  }
  return f;
}

double amplitude(const PotentialFamily& f, double x) {
  double A = f.A_max;
  switch (f.kind) {
    case FamilyKind::Semicircle: {
      double y = (2 * x - f.X_plus - f.X_minus) / (f.X_plus - f.X_minus);
      if (std::abs(y) >= 1) return 0.0;
      return A * std::sqrt(1 - y * y);
    }
    case FamilyKind::Hirota: {
      double y = (2 * x - f.X_plus - f.X_minus) / (f.X_plus - f.X_minus);
      if (std::abs(y) >= 1) return 0.0;
      double xi = f.xi;
      double D = std::sqrt(1 - 2 * y * xi + xi * xi) + 1 - y * xi;
      return A * std::sqrt(2 * (1 - y * y) / D);
    }
    case FamilyKind::Lpd: {
      double y = (2 * x - f.X_plus - f.X_minus) / (f.X_plus - f.X_minus);
      if (std::abs(y) >= 1) return 0.0;
      double y2 = y * y, g = f.gamma;
      // solve (1-a)(1-g a)^2 = y^2 on [0, 1]; g(a) is strictly decreasing
      double lo = 0, hi = 1;
      auto gg = [&](double a) { double t = 1 - g * a; return (1 - a) * t * t - y2; };
      while (hi - lo > 1e-14) {
        double mid = 0.5 * (lo + hi);
        if (gg(mid) >= 0) lo = mid; else hi = mid;
      }
      double a = 0.5 * (lo + hi);
      for (int it = 0; it < 3; ++it) {
        double t = 1 - g * a;
        double d = -t * (t + 2 * g * (1 - a));
        if (d == 0) break;
        double an = a - gg(a) / d;
        if (an >= 0 && an <= 1) a = an;
      }
      return A * std::sqrt(a);
    }
    case FamilyKind::Interpolation: {
      double ax = std::abs(x);
      if (f.delta == 0 && ax >= f.X_plus) return 0.0;
      if (ax == 0) return A;
      return interp_amplitude_positive_x(f, ax);
    }
    case FamilyKind::Polynomial:
      return poly_amplitude(f, x);
  }
  return 0.0;
}

std::pair<double, double> inverse_branches(const PotentialFamily& f, double s) {
  require(s > 0 && s < f.A_max, "inverse_branches: need s in (0, A_max)");
  if (f.kind == FamilyKind::Interpolation) {
    double xp = interp_xplus(f, s);
    return {-xp, xp};
  }
  BranchParts p = branch_parts(f, s, false);
  return {p.T - p.G, p.T + p.G};
}

double phase_integral(const PotentialFamily& f, double s) {
  double A2 = f.A_max * f.A_max, w = s * s;
  if (f.kind == FamilyKind::Interpolation)
    return M_PI * (f.ia * (f.A_max - s) + f.ib * (A2 - w) / 2);
  return f.Phi0 * (1 - w / A2) * curve_q(f.B, w);
}

BigFloat phase_integral_hp(const PotentialFamily& f, const BigFloat& s) {
  // caller is expected to have set the thread precision
  BigFloat w = s * s;
  BigFloat A2 = BigFloat(f.A_max) * BigFloat(f.A_max);
  if (f.kind == FamilyKind::Interpolation) {
    BigFloat pi = 4 * atan(BigFloat(1));
    return pi * (BigFloat(f.ia) * (BigFloat(f.A_max) - s) + BigFloat(f.ib) * (A2 - w) / 2);
  }
  return BigFloat(f.Phi0) * (1 - w / A2) * curve_q(f.B, w);
}

double tail_integral(const PotentialFamily& f, double s) {
  if (f.kind == FamilyKind::Interpolation) return 0.0;
  return s * curve_r(f.Xi1, f.XiH, s * s);
}

BigFloat tail_integral_hp(const PotentialFamily& f, const BigFloat& s) {
  if (f.kind == FamilyKind::Interpolation) return BigFloat(0);
  return s * curve_r(f.Xi1, f.XiH, s * s);
}

BigFloat phase_slope_hp(const PotentialFamily& f, const BigFloat& s) {
  if (f.kind == FamilyKind::Interpolation) {
    BigFloat pi = 4 * atan(BigFloat(1));
    return -pi * (BigFloat(f.ia) + BigFloat(f.ib) * s);
  }
  BigFloat A2 = BigFloat(f.A_max) * BigFloat(f.A_max);
  BigFloat w = s * s;
  return BigFloat(f.Phi0) * 2 * s *
         ((1 - w / A2) * curve_q_dw(f.B, w) - curve_q(f.B, w) / A2);
}

double density(const PotentialFamily& f, double s) {
  if (f.kind == FamilyKind::Interpolation) return f.ia + f.ib * s;
  double A2 = f.A_max * f.A_max, w = s * s;
  double q = curve_q(f.B, w), dq = curve_q_dw(f.B, w);
  return 2 * s * f.Phi0 / M_PI * (q / A2 - (1 - w / A2) * dq);
}

std::pair<double, double> recover_branches(const std::function<double(double)>& phase,
                                           const std::function<double(double)>& tail,
                                           double A_max, double s) {
  require(s > 0 && s < A_max, "recover_branches: need s in (0, A_max)");
  double h = A_max / 1024;
  // 4th-order first derivative; phase is even and tail is odd about 0, and
  // near A_max a one-sided stencil keeps all evaluations inside [0, A_max]
  auto deriv = [&](const std::function<double(double)>& fn, bool odd, double m) {
    if (m > A_max - 2 * h) {
      return (25 * fn(m) - 48 * fn(m - h) + 36 * fn(m - 2 * h) -
              16 * fn(m - 3 * h) + 3 * fn(m - 4 * h)) / (12 * h);
    }
    auto val = [&](double t) {
      if (t >= 0) return fn(t);
      return odd ? -fn(-t) : fn(-t);
    };
    return (-val(m + 2 * h) + 8 * val(m + h) - 8 * val(m - h) + val(m - 2 * h)) /
           (12 * h);
  };
  double mid = integrate([&](double th) { return deriv(tail, true, s * std::sin(th)); },
                         0, M_PI / 2, 1e-11) / M_PI;
  double beta = std::sqrt((A_max - s) * (A_max + s));
  double half = -integrate(
      [&](double z) {
        double m = std::sqrt(s * s + beta * beta * z * z);
        return deriv(phase, false, m) / m;
      },
      0, 1, 1e-11) * beta / M_PI;
  return {mid - half, mid + half};
}

double phase_integral_direct(const PotentialFamily& f, double s) {
  require(s > 0 && s < f.A_max, "phase_integral_direct: need s in (0, A_max)");
  auto [xm, xp] = inverse_branches(f, s);
  double mid = 0.5 * (xm + xp), half = 0.5 * (xp - xm);
  return integrate(
      [&](double th) {
        double a = amplitude(f, mid + half * std::sin(th));
        double v = (a - s) * (a + s);
        return std::sqrt(std::max(0.0, v)) * half * std::cos(th);
      },
      -M_PI / 2, M_PI / 2, 1e-12);
}

double tail_integral_direct(const PotentialFamily& f, double s) {
  require(s > 0 && s < f.A_max, "tail_integral_direct: need s in (0, A_max)");
  require(std::isfinite(f.X_minus) && std::isfinite(f.X_plus),
          "tail_integral_direct: compact support required");
  auto [xm, xp] = inverse_branches(f, s);
  auto seg = [&](double edge, double turn) {
    // integral of sqrt(s^2 - A(x)^2) between the support edge and the turning
    // point; x = turn - (turn - edge) v^2 removes the root at the turn
    double len = turn - edge;
    return integrate(
        [&](double v) {
          double x = turn - len * v * v;
          double a = amplitude(f, x);
          double val = (s - a) * (s + a);
          return std::sqrt(std::max(0.0, val)) * 2 * std::abs(len) * v;
        },
        0, 1, 1e-12);
  };
  return (f.X_plus + f.X_minus) * s + seg(f.X_minus, xm) - seg(f.X_plus, xp);
}

double amplitude_mass(const PotentialFamily& f) {
  if (f.kind == FamilyKind::Interpolation && f.delta > 0) {
    double xcut = interp_xplus(f, f.A_max * 1e-12);
    return 2 * integrate([&](double x) { return amplitude(f, x); }, 0, xcut, 1e-10);
  }
  double mid = 0.5 * (f.X_minus + f.X_plus), half = 0.5 * (f.X_plus - f.X_minus);
  return integrate(
      [&](double th) {
        return amplitude(f, mid + half * std::sin(th)) * half * std::cos(th);
      },
      -M_PI / 2, M_PI / 2, 1e-11);
}

}  // namespace sse
