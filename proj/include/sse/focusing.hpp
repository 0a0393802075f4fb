#pragma once
// Focus-event prediction for semiclassical soliton ensembles: where and when
// the field forms an O(1/eps) peak, which flow mixtures reach that point, the
// rescaled local window around it, and a measured peak report against the
// predicted amplitude 4*nu/eps and phase i*(-1)^(K+N).

#include <vector>

#include "sse/ensemble.hpp"
#include "sse/potentials.hpp"
#include "sse/scattering.hpp"

namespace sse {

// polynomial coefficients of the spectral curves,
//   Phi(lambda) = sum_p phi[p] lambda^{2p},        p = 0..P
//   Xi(lambda)  = i sum_q xi[q-1] lambda^{2q-1},   q = 1..Q
// valid for every family except interpolation (transcendental curves)
struct CurveCoefficients {
  std::vector<double> phi;
  std::vector<double> xi;
  int P() const { return static_cast<int>(phi.size()) - 1; }
  int Q() const { return static_cast<int>(xi.size()); }
  int M() const;  // max(2P, 2Q-1)
};
CurveCoefficients curve_coefficients(const PotentialFamily& f);

// (1/2pi) * integral_0^{A_max} Phi(is) ds, always by quadrature; the closed
// forms A_max^2(X+ - X-)/12 (semicircle, hirota) and
// (5-2*gamma)(X+ - X-)A_max^2/60 (lpd) are test oracles, not sources
double nu(const PotentialFamily& f);

struct FocusEvent {
  int K = 0;
  double x0 = 0;           // always (X+ + X-)/2
  std::vector<double> t0;  // t_2 .. t_M
  double nu = 0;
  int M = 2;
};

// interleaves -Xi_q/2 and -(2K+1)Phi_p/2 into (x0, t2, ..., tM)
FocusEvent focus_point(const PotentialFamily& f, int K);

// single-time reductions t_m = a_m * t that pass through the focus points
struct FlowMixture {
  std::vector<double> a;  // a_2 .. a_M
  double alpha = 1;
  bool periodic = false;  // even-flow combination (Xi linear): every K focuses
  double t_focus = 0;     // (2K+1)/alpha when periodic, else 1/alpha
};
FlowMixture mixture_coefficients(const PotentialFamily& f, int K, double alpha);

// quantization conditions for the named single-event flows; zero residual
// means the (a2, a_higher) mixture focuses
double hirota_condition_residual(double a2, double a3, double xi, double A_max,
                                 int K);
double lpd_condition_residual(double a2, double a4, double gamma, double A_max);
bool check_condition(double residual, double tol = 1e-12);
double hirota_tuned_a3(double a2, double xi, double A_max, int K);
double lpd_tuned_a4(double a2, double gamma, double A_max);

// window map: x = x0 + (eps^2/nu) X, t_m = t0_m + (eps^{m+1}/nu^m) T_m
struct WindowPoint {
  double x = 0;
  std::vector<double> times;
};
WindowPoint local_window(const FocusEvent& ev, double eps, double X,
                         const std::vector<double>& T);

// initial-data times for the n-th pure flow: the focus vector with slot n
// shifted back by t_shift (the pure flow then refocuses at t = t_shift)
std::vector<double> pure_flow_shift(const PotentialFamily& f, int K, int n,
                                    double t_shift);

struct PeakReport {
  double max_abs = 0;  // max |psi~| over the window grid
  double X_arg = 0;    // argmax in window coordinates
  double T_arg = 0;
  double r = 0;            // eps * max_abs / (4 nu)
  double phase_center = 0; // arg psi~ at the focus point itself
  double phase_error = 0;  // wrapped distance from the predicted i(-1)^(K+N)
  int failures = 0;        // grid points whose evaluation did not converge
  std::vector<double> X, T;  // window axes
  FieldGrid grid;            // scanned samples, row-major on (X, T)
};

// scans |psi~| over a grid-point-per-axis window with X, T_m in
// [-halfwidth, halfwidth], all other window times zero.  The spectral data
// must carry enough precision for the focus neighbourhood; provision it with
// wkb_spectrum(f, N, recommended_bits(...)).
PeakReport peak_check(const SpectralData& sd, const FocusEvent& ev, int m,
                      double halfwidth = 3.0, int grid = 41, int threads = 1,
                      const EvalOptions& opts = {});

// same scan along the single time axis of a mixture, t = t_focus + scale*T
// with scale = eps^{M+1}/(a_M nu^M)
PeakReport peak_check_mixture(const SpectralData& sd, const FocusEvent& ev,
                              const FlowMixture& mix, double halfwidth = 3.0,
                              int grid = 41, int threads = 1,
                              const EvalOptions& opts = {});

}  // namespace sse
