#include "sse/quadrature.hpp"

#include <array>
#include <cmath>

namespace sse {
namespace {

constexpr int kOrder = 15;

struct GlRule {
  std::array<double, kOrder> x{}, w{};
  GlRule() {
    // nodes = roots of the Legendre polynomial, found by Newton from the
    // Chebyshev-angle estimate; weights 2/((1-x^2) P'^2)
    for (int i = 0; i < kOrder; ++i) {
      double t = std::cos(M_PI * (i + 0.75) / (kOrder + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= kOrder; ++k) {
          double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        double dp = kOrder * (t * p1 - p0) / (t * t - 1.0);
        double dt = p1 / dp;
        t -= dt;
        if (std::abs(dt) < 1e-16) break;
      }
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= kOrder; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = kOrder * (t * p1 - p0) / (t * t - 1.0);
      x[i] = t;
      w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
  }
};

double panel(const std::function<double(double)>& f, double a, double b) {
  static const GlRule rule;
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0;
  for (int i = 0; i < kOrder; ++i) s += rule.w[i] * f(mid + half * rule.x[i]);
  return s * half;
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double whole, double tol, int depth) {
  double mid = 0.5 * (a + b);
  double left = panel(f, a, mid), right = panel(f, mid, b);
  double delta = left + right - whole;
  if (!std::isfinite(delta))
    throw QuadratureError("non-finite integrand");
  if (std::abs(delta) <= tol || depth > 48) {
    if (depth > 48 && std::abs(delta) > 64 * tol)
      throw QuadratureError("quadrature tolerance not met");
    return left + right;
  }
  return adapt(f, a, mid, left, 0.5 * tol, depth + 1) +
         adapt(f, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
  if (a == b) return 0.0;
  return adapt(f, a, b, panel(f, a, b), abs_tol, 0);
}

}  // namespace sse
