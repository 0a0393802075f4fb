#pragma once
// Adaptive Gauss-Legendre quadrature (double precision).
// All integrands in this project are smooth after the endpoint substitutions
// done by the callers, so a 15-point rule with bisection refinement converges
// quickly; the default absolute tolerance is 1e-12.

#include <functional>
#include <stdexcept>

namespace sse {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12);

}  // namespace sse
