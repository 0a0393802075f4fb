#include "sse/scattering.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sse {

double epsilon_for(const PotentialFamily& f, int N) {
  if (N < 1) throw ConfigError("epsilon_for: need N >= 1");
  return f.Phi0 / (M_PI * N);
}

std::vector<double> eigenvalues(const PotentialFamily& f, int N) {
  double eps = epsilon_for(f, N);
  double A = f.A_max;
  std::vector<double> s(N);
  for (int n = 0; n < N; ++n) {
    // Phi(is) falls from Phi0 to 0 on [0, A]; bracket the level set
    double target = (n + 0.5) * eps * M_PI;
    double lo = 0, hi = A;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      if (phase_integral(f, mid) > target) lo = mid; else hi = mid;
    }
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
      double d = -M_PI * density(f, r);  // d/ds Phi(is)
      if (!std::isfinite(d) || d == 0) break;
      double rn = r - (phase_integral(f, r) - target) / d;
      if (rn > lo && rn < hi) r = rn;
    }
    if (!(r > 0 && r < A) || std::abs(phase_integral(f, r) - target) > 1e-12 * f.Phi0)
      throw std::runtime_error("eigenvalues: root solve did not converge");
    s[n] = r;
  }
  for (int n = 0; n + 1 < N; ++n)
    if (!(s[n] > s[n + 1]))
      throw std::runtime_error("eigenvalues: ordinates not strictly descending");
  return s;
}

std::pair<std::vector<double>, std::vector<int>> connection_coefficients(
    const PotentialFamily& f, double eps, const std::vector<double>& s) {
  std::vector<double> lt(s.size());
  std::vector<int> sg(s.size());
  for (size_t n = 0; n < s.size(); ++n) {
    lt[n] = tail_integral(f, s[n]) / eps;
    sg[n] = (n % 2 == 0) ? -1 : 1;  // (-1)^{n+1}
  }
  return {std::move(lt), std::move(sg)};
}

std::pair<std::vector<double>, std::vector<double>> residue_constants(
    const std::vector<double>& s, const std::vector<double>& log_tau,
    const std::vector<int>& tau_sign, double A_max) {
  int N = static_cast<int>(s.size());
  std::vector<double> lc(N), ph(N);
  double min_gap = HUGE_VAL;
  for (int n = 0; n + 1 < N; ++n) min_gap = std::min(min_gap, s[n] - s[n + 1]);
  if (N > 1 && min_gap < 1e-10 * A_max)
    std::fprintf(stderr,
                 "residue_constants: eigenvalue gap %.3e below 1e-10 * A_max; "
                 "products are ill-conditioned\n", min_gap);
  for (int n = 0; n < N; ++n) {
    double acc = 0;
    int neg = 0;  // negative real factors in the denominator
    for (int j = 0; j < N; ++j) {
      acc += std::log(s[n] + s[j]);
      if (j != n) {
        acc -= std::log(std::abs(s[n] - s[j]));
        if (s[n] < s[j]) ++neg;
      }
    }
    // i^N / i^{N-1} = i; combined real sign decides which imaginary half-axis
    int sign = tau_sign[n] * ((neg % 2 == 0) ? 1 : -1);
    lc[n] = log_tau[n] + acc;
    ph[n] = (sign > 0) ? M_PI / 2 : -M_PI / 2;
  }
  return {std::move(lc), std::move(ph)};
}

namespace {

// Newton polish of the quantization roots at extended precision, then the
// log-product sums in the same arithmetic.  The double pipeline supplies the
// seeds and every discrete sign.
void refine_spectrum(const PotentialFamily& f, int data_bits, SpectralData& sd) {
  set_thread_precision(data_bits);
  int N = sd.N;
  BigFloat pi = 4 * atan(BigFloat(1));
  BigFloat inv_eps = pi * N / BigFloat(f.Phi0);
  BigFloat step_tol = ldexp(BigFloat(f.A_max), -(data_bits + 8));
  sd.s_hp.resize(N);
  sd.log_tau_hp.resize(N);
  sd.log_c0_hp.resize(N);
  for (int n = 0; n < N; ++n) {
    // (n + 1/2) eps pi with eps = Phi0/(pi N); the pi factors cancel
    BigFloat target = BigFloat(f.Phi0) * (2 * n + 1) / (2 * N);
    BigFloat r(sd.s[n]);
    for (int it = 0; it < 24; ++it) {
      BigFloat step = (phase_integral_hp(f, r) - target) / phase_slope_hp(f, r);
      r = r - step;
      if (abs(step) <= step_tol) break;
    }
    sd.s_hp[n] = r;
    sd.log_tau_hp[n] = tail_integral_hp(f, r) * inv_eps;
  }
  for (int n = 0; n < N; ++n) {
    BigFloat acc = sd.log_tau_hp[n];
    for (int j = 0; j < N; ++j) {
      acc += log(sd.s_hp[n] + sd.s_hp[j]);
      if (j != n) acc -= log(abs(sd.s_hp[n] - sd.s_hp[j]));
    }
    sd.log_c0_hp[n] = acc;
  }
  sd.data_bits = data_bits;
  // keep the double members as views of the refined values
  for (int n = 0; n < N; ++n) {
    sd.s[n] = sd.s_hp[n].convert_to<double>();
    sd.log_tau[n] = sd.log_tau_hp[n].convert_to<double>();
    sd.log_c0[n] = sd.log_c0_hp[n].convert_to<double>();
  }
}

}  // namespace

SpectralData wkb_spectrum(const PotentialFamily& f, int N, int data_bits) {
  SpectralData sd;
  sd.N = N;
  sd.epsilon = epsilon_for(f, N);
  sd.s = eigenvalues(f, N);
  auto [lt, sg] = connection_coefficients(f, sd.epsilon, sd.s);
  sd.log_tau = std::move(lt);
  sd.tau_sign = std::move(sg);
  auto [lc, ph] = residue_constants(sd.s, sd.log_tau, sd.tau_sign, f.A_max);
  sd.log_c0 = std::move(lc);
  sd.c0_phase = std::move(ph);
  if (data_bits > 0) refine_spectrum(f, data_bits, sd);
  return sd;
}

double trace_l2(const SpectralData& sd) {
  double sum = 0;
  for (double v : sd.s) sum += v;
  return 4 * sd.epsilon * sum;
}

}  // namespace sse
