#pragma once

#include <array>
#include <complex>
#include <vector>

#include "sse/bigfloat.hpp"
#include "sse/scattering.hpp"

namespace sse {

enum class Formulation { Auto, Primary, Renormalized };

const char* formulation_name(Formulation f);

struct EvalOptions {
  Formulation formulation = Formulation::Auto;
  int forced_bits = 0;          // 0: pick by exponent spread
  double residual_tol = 1e-20;  // scaled linear-system residual
  int max_bits = 8192;
};

struct FieldSample {
  double x = 0;
  std::vector<double> times;    // t_2 .. t_M
  std::complex<double> psi{0, 0};
  Formulation used = Formulation::Primary;
  int bits = 0;
  double residual = 0;
  bool ok = true;
};

struct FieldGrid {
  std::vector<FieldSample> pts;  // row-major: x outer, time tuple inner
  size_t nx = 0, nt = 0;
};

// Q(lambda; x, t) = lambda x + sum_{m>=2} lambda^m t_m, times[i] = t_{i+2}
std::complex<double> time_phase(std::complex<double> lambda, double x,
                                const std::vector<double>& times);

// expand mixture coefficients a = (a_2..a_M) at scalar t into t_m = a_m t
std::vector<double> mixture_times(const std::vector<double>& a, double t);

// log-magnitude / phase of the modulated residues c_n(x,t); the renormalized
// variant applies c_n -> -e^{2 S_n}/c_n.  Double precision (policy input).
void modulated_residues(const SpectralData& sd, double x,
                        const std::vector<double>& times,
                        std::vector<double>& ell, std::vector<double>& phi);
void renormalized_residues(const SpectralData& sd, double x,
                           const std::vector<double>& times,
                           std::vector<double>& ell, std::vector<double>& phi);

// working precision for a given exponent spread max_n |ell_n|
int policy_bits(double exponent_spread);

// solver precision the policy would pick at (x, times); experiments pass this
// back into wkb_spectrum as data_bits so the pole data match the solve
int recommended_bits(const SpectralData& sd, double x,
                     const std::vector<double>& times,
                     Formulation f = Formulation::Auto);

FieldSample evaluate(const SpectralData& sd, double x,
                     const std::vector<double>& times,
                     const EvalOptions& opts = {});

// solved residue vectors, enough to rebuild M(lambda) off the poles
struct ResidueSolution {
  std::vector<std::complex<double>> u, v;
  std::vector<double> sigma;
  Formulation used = Formulation::Primary;
  int bits = 0;
  double residual = 0;
  std::complex<double> psi{0, 0};
};

ResidueSolution evaluate_detail(const SpectralData& sd, double x,
                                const std::vector<double>& times,
                                const EvalOptions& opts = {});

// row-major {m11, m12, m21, m22} at lambda (off the poles)
std::array<std::complex<double>, 4> m_matrix(const ResidueSolution& rs,
                                             std::complex<double> lambda);

// per-point failures are flagged (ok = false), never abort the grid
FieldGrid evaluate_grid(const SpectralData& sd, const std::vector<double>& xs,
                        const std::vector<std::vector<double>>& time_list,
                        const EvalOptions& opts = {}, int threads = 1);

enum class Flow { NLS2, NLS3, Hirota };

struct FlowSpec {
  Flow kind = Flow::NLS2;
  double a2 = 1, a3 = 0;  // mixture weights, used by Hirota
};

// |eps psi_t - sum_m a_m N_m[psi]| with 4th-order x-stencils and a 2nd-order
// centered step in the flow direction; all differencing in big floats
double pde_residual(const SpectralData& sd, double x,
                    const std::vector<double>& times, const FlowSpec& flow,
                    double h, const EvalOptions& opts = {});

}  // namespace sse
