#pragma once

#include <utility>
#include <vector>

#include "sse/potentials.hpp"

namespace sse {

// WKB discrete data for one family at one N.  Connection coefficients and
// residue constants live in log form: exponents scale like 1/epsilon and
// leave the double range almost immediately.
//   tau_n = tau_sign[n] * exp(log_tau[n])
//   c0_n  = exp(log_c0[n]) * e^{i c0_phase[n]},  purely imaginary by construction
struct SpectralData {
  int N = 0;
  double epsilon = 0;
  std::vector<double> s;         // eigenvalue ordinates, descending
  std::vector<double> log_tau;
  std::vector<int> tau_sign;
  std::vector<double> log_c0;
  std::vector<double> c0_phase;

  // Optional extended-precision columns (data_bits > 0); the double members
  // above are then rounded views of these.  Near a focus the field depends on
  // the pole data with sensitivity ~ e^{exponent spread}, so the data must
  // carry the same precision as the solver or the constructive alignment is
  // lost in the rounding of the inputs themselves.
  int data_bits = 0;
  std::vector<BigFloat> s_hp, log_tau_hp, log_c0_hp;
};

double epsilon_for(const PotentialFamily& f, int N);

// roots of Phi(is) = (n + 1/2) * eps * pi, descending
std::vector<double> eigenvalues(const PotentialFamily& f, int N);

// log|tau_n| = Xi(i s_n)/eps with sign (-1)^{n+1}
std::pair<std::vector<double>, std::vector<int>> connection_coefficients(
    const PotentialFamily& f, double eps, const std::vector<double>& s);

// c0_n = tau_n * prod_j(i s_n + i s_j) / prod_{j!=n}(i s_n - i s_j), via log sums;
// warns on stderr when the smallest eigenvalue gap drops below 1e-10 * A_max
std::pair<std::vector<double>, std::vector<double>> residue_constants(
    const std::vector<double>& s, const std::vector<double>& log_tau,
    const std::vector<int>& tau_sign, double A_max);

// data_bits > 0 also fills the extended-precision columns: eigenvalues are
// polished by Newton iteration on the closed-form curves at that precision and
// the log-product sums are redone in extended arithmetic
SpectralData wkb_spectrum(const PotentialFamily& f, int N, int data_bits = 0);

// trace formula: ||psi||^2_{L2} = 4 sum_n eps * s_n, independent of time
double trace_l2(const SpectralData& sd);

}  // namespace sse
