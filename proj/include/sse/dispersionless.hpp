#pragma once
// Exact solutions of the dispersionless focusing NLS system
//   rho_t + mu_x = 0,  mu_t + (mu^2/rho - rho^2/2)_x = 0
// in the three forms used here: parabolic-density Talanov profiles with a
// width w(t) obeying w'' = -2F/w^2, the sech^2 Akhmanov-Sukhorukov-Khokhlov
// solution, and the axis catastrophe locus of the family interpolating
// between the two.

#include <stdexcept>
#include <utility>

#include "sse/potentials.hpp"

namespace sse {

// thrown when a width/profile query lands at or beyond the collapse time;
// carries the best estimate of that time
struct CollapseError : std::runtime_error {
  double t_collapse;
  explicit CollapseError(double t);
};

struct TalanovParams {
  double E = 0;           // first-integral constant, <= 0 here
  double F = 1;           // mass-like constant, > 0
  double w0 = 1;          // half-width at the width maximum (E < 0)
  double A_max = 1;
  double t_collapse = 0;  // E = 0 branch only
};

// E = -2 A_max^2, F = A_max^2 w0; width maximum w0 at t = 0
TalanovParams talanov_from_amplitude(double A_max, double w0);
// E = 0 self-similar branch, w(t) = (9F)^{1/3} (t_collapse - t)^{2/3}
TalanovParams talanov_selfsimilar(double F, double t_collapse);

struct DispersionlessState {
  double rho = 0, mu = 0;
};

// (w, w') at time t: closed form for E = 0, adaptive embedded Runge-Kutta
// for E < 0 with the first integral 1/2 w'^2 - 2F/w = E checked along the way
std::pair<double, double> width_solve(const TalanovParams& p, double t);

// rho = F w^{-3} (w^2 - x^2), mu = F w^{-4} w' x (w^2 - x^2) on |x| <= w
DispersionlessState talanov_profile(const TalanovParams& p, double x, double t);
// same profile from an already-solved (w, w') pair; batch drivers solve the
// width once per t and sweep x through this
DispersionlessState talanov_profile_at(const TalanovParams& p, double x,
                                       double w, double wp);

// full lifetime of the E < 0 orbit: sqrt(2) pi F (-E)^{-3/2} = pi w0 / (2 A_max)
double talanov_duration(const TalanovParams& p);

// closed-form inverse of the rescaled width W(T), E < 0: T(W) on (0, 1]
double talanov_inverse_T(double W);

// sech^2 solution: rho(x,0) = A_max^2 sech^2 x, mu(x,0) = 0
double ask_axis(double A_max, double t);  // rho(0, t), |t| <= 1/(2 A_max)
DispersionlessState ask_solve(double A_max, double x, double t);

// interpolation family (delta in [0,1]): density a(delta) + b(delta) s
double interpolation_a(double delta);
double interpolation_b(double delta);

// time at which the axis density reaches rho (>= A_max^2); t(A_max^2) = 0
double interpolation_axis_time(double delta, double rho);

struct CatastrophePoint {
  double rho_c = 0, t_c = 0;
  bool blowup = false;  // delta = 0: infinite-amplitude collapse at t_c
};
CatastrophePoint interpolation_catastrophe(double delta);

}  // namespace sse
