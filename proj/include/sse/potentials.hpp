#pragma once
// Bell-shaped initial amplitudes with semicircular edge behaviour, and the two
// spectral curves attached to each of them:
//   Phi(is) = integral of sqrt(A(x)^2 - s^2) over {A > s}   (phase integral)
//   Xi(is)  = limit form of the momentum integral           (tail integral)
// Four named families (semicircle, hirota, lpd, interpolation) carry closed
// forms; the generic polynomial family is defined by curve coefficients and
// inverted numerically.

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sse/bigfloat.hpp"

namespace sse {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class FamilyKind { Semicircle, Hirota, Lpd, Interpolation, Polynomial };

struct PotentialFamily {
  FamilyKind kind = FamilyKind::Semicircle;
  double A_max = 1.0;
  // support endpoints; interpolation with delta > 0 has unbounded support and
  // stores +-infinity here
  double X_minus = -1.0, X_plus = 1.0;

  double xi = 0.0;     // hirota tilt
  double gamma = 0.0;  // lpd shape, in (-1/2, 1)
  double b1 = 0.0;     // lpd curve coefficient 3*gamma/(4-gamma)
  double delta = 0.0;  // interpolation parameter in [0, 1]
  double ia = 0.0, ib = 0.0;  // interpolation density rho(s) = ia + ib*s

  // even-polynomial curve data (every kind except interpolation):
  //   Phi(lambda) = Phi0 (1 + lambda^2/A^2) (1 + sum_k B_k lambda^{2k})
  //   Xi(lambda)  = i sum_q Xi_q lambda^{2q-1},  stored as Xi1 and Xi_{q>=2}
  double Phi0 = 0.0;
  std::vector<double> B;
  double Xi1 = 0.0;
  std::vector<double> XiH;  // XiH[0] = Xi_2, ...

  double x0 = 0.0;  // maximizer of the amplitude

  bool even_polynomial_curves() const { return kind != FamilyKind::Interpolation; }
  std::string kind_name() const;
};

PotentialFamily semicircle_family(double A_max, double X_minus, double X_plus);
PotentialFamily hirota_family(double A_max, double X_minus, double X_plus, double xi);
PotentialFamily lpd_family(double A_max, double X_minus, double X_plus, double gamma);
PotentialFamily interpolation_family(double delta);
// Phi0 > 0; B = {B_1..B_{P-1}}; Xi_higher = {Xi_2..Xi_Q}. Branch monotonicity
// is validated by sampling; failure throws ConfigError.
PotentialFamily polynomial_family(double Phi0, double A_max, std::vector<double> B,
                                  double Xi1, std::vector<double> Xi_higher);

double amplitude(const PotentialFamily& f, double x);
// x_minus(s) < x_plus(s), the two preimages of s in (0, A_max)
std::pair<double, double> inverse_branches(const PotentialFamily& f, double s);
double phase_integral(const PotentialFamily& f, double s);  // Phi(is)
double tail_integral(const PotentialFamily& f, double s);   // Xi(is)
double density(const PotentialFamily& f, double s);         // -(1/pi) d/ds Phi(is)

// same curves evaluated in extended precision (used by the spectral solver)
BigFloat phase_integral_hp(const PotentialFamily& f, const BigFloat& s);
BigFloat tail_integral_hp(const PotentialFamily& f, const BigFloat& s);
BigFloat phase_slope_hp(const PotentialFamily& f, const BigFloat& s);  // d/ds Phi(is)

// Abel-transform reconstruction of the branches from curve handles alone;
// derivatives of the handles are taken by high-order finite differences.
std::pair<double, double> recover_branches(const std::function<double(double)>& phase,
                                           const std::function<double(double)>& tail,
                                           double A_max, double s);

// direct quadratures of the defining x-integrals (validation oracles;
// closed forms above are the production path)
double phase_integral_direct(const PotentialFamily& f, double s);
double tail_integral_direct(const PotentialFamily& f, double s);

// L1 mass of the amplitude = Phi(i*0); computed by quadrature of amplitude()
double amplitude_mass(const PotentialFamily& f);

}  // namespace sse
