#include "sse/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

namespace sse {

namespace {

template <typename T>
T pi_of();
template <>
double pi_of<double>() { return M_PI; }
template <>
BigFloat pi_of<BigFloat>() { return 4 * atan(BigFloat(1)); }

// log-magnitude / phase of c_n(x,t) = c_n0 exp(2iQ(i s_n; x, t)/eps).
// At lambda = i s, the term 2i (i s)^m t_m is real for odd m and imaginary
// for even m, with alternating signs; the x term contributes -2 s x / eps.
// The renormalized route replaces c_n by -e^{2 S_n}/c_n with
// S_n = log|c_n0| - log|tau_n|.
template <typename T>
void modulation_t(const SpectralData& sd, const T& x, const std::vector<T>& times,
                  bool renorm, std::vector<T>& ell, std::vector<T>& phi) {
  int N = sd.N;
  ell.assign(N, T(0));
  phi.assign(N, T(0));
  T eps(sd.epsilon);
  for (int n = 0; n < N; ++n) {
    T sig(sd.s[n]);
    T R = -2 * sig * x / eps;
    T th(0);
    T pw = sig;
    for (size_t i = 0; i < times.size(); ++i) {
      int m = static_cast<int>(i) + 2;
      pw = pw * sig;
      T contrib = 2 * pw * times[i] / eps;
      switch (m % 4) {
        case 2: th = th - contrib; break;
        case 3: R = R + contrib; break;
        case 0: th = th + contrib; break;
        default: R = R - contrib; break;
      }
    }
    T l = T(sd.log_c0[n]) + R;
    T p = T(sd.c0_phase[n]) + th;
    if (renorm) {
      T S = T(sd.log_c0[n]) - T(sd.log_tau[n]);
      l = 2 * S - l;
      p = pi_of<T>() - p;
    }
    ell[n] = l;
    phi[n] = p;
  }
}

// As modulation_t, but sourcing the pole data from the extended-precision
// columns when the spectrum carries them.  The c0 phase is an exact quarter
// turn (c0 purely imaginary), so it is rebuilt from the stored sign instead of
// the rounded +-pi/2 view: a double-rounded phase differs per pole by ~1e-16,
// which is already enough to break the constructive alignment at a focus.
void modulation_big(const SpectralData& sd, const BigFloat& x,
                    const std::vector<BigFloat>& times, bool renorm,
                    std::vector<BigFloat>& ell, std::vector<BigFloat>& phi) {
  if (sd.data_bits <= 0) {
    modulation_t<BigFloat>(sd, x, times, renorm, ell, phi);
    return;
  }
  int N = sd.N;
  ell.assign(N, BigFloat(0));
  phi.assign(N, BigFloat(0));
  BigFloat eps(sd.epsilon);
  BigFloat half_pi = 2 * atan(BigFloat(1));
  for (int n = 0; n < N; ++n) {
    const BigFloat& sig = sd.s_hp[n];
    BigFloat R = -2 * sig * x / eps;
    BigFloat th(0);
    BigFloat pw = sig;
    for (size_t i = 0; i < times.size(); ++i) {
      int m = static_cast<int>(i) + 2;
      pw = pw * sig;
      BigFloat contrib = 2 * pw * times[i] / eps;
      switch (m % 4) {
        case 2: th = th - contrib; break;
        case 3: R = R + contrib; break;
        case 0: th = th + contrib; break;
        default: R = R - contrib; break;
      }
    }
    BigFloat l = sd.log_c0_hp[n] + R;
    BigFloat p = (sd.c0_phase[n] > 0 ? half_pi : -half_pi) + th;
    if (renorm) {
      BigFloat S = sd.log_c0_hp[n] - sd.log_tau_hp[n];
      l = 2 * S - l;
      p = 2 * half_pi - p;
    }
    ell[n] = l;
    phi[n] = p;
  }
}

struct CoreResult {
  BigComplex psi;
  double residual = 0;
};

// Solve the residue system at one (x, t) in the chosen formulation.
// Unknowns are the second-column residue components (u_n, v_n) at the poles
// +i s_n / -i s_n; with W_{nj} = -i/(s_n + s_j) the conditions are
//   u_n - c_n sum_j W_{nj} v_j = c_n,   v_n - conj(c_n) sum_j W_{nj} u_j = 0,
// and psi = -2i conj(sum u_n) (primary) or +2i sum u_n (renormalized).
CoreResult eval_core(const SpectralData& sd, const BigFloat& x,
                     const std::vector<BigFloat>& times, bool renorm, int bits,
                     std::vector<std::complex<double>>* u_out = nullptr,
                     std::vector<std::complex<double>>* v_out = nullptr) {
  set_thread_precision(bits);
  int N = sd.N;
  bool hp = sd.data_bits > 0;
  std::vector<BigFloat> ell, phi;
  modulation_big(sd, x, times, renorm, ell, phi);
  std::vector<BigComplex> c(N);
  for (int n = 0; n < N; ++n) c[n] = bc_exp_polar(ell[n], phi[n]);

  int dim = 2 * N;
  std::vector<BigComplex> A(static_cast<size_t>(dim) * dim, bc_make(0, 0, bits));
  std::vector<BigComplex> rhs(dim, bc_make(0, 0, bits));
  std::vector<BigComplex> z;
  for (int n = 0; n < N; ++n) {
    A[static_cast<size_t>(n) * dim + n] = bc_make(1, 0, bits);
    A[static_cast<size_t>(N + n) * dim + (N + n)] = bc_make(1, 0, bits);
    rhs[n] = c[n];
    BigComplex cb = conj(c[n]);
    for (int j = 0; j < N; ++j) {
      BigFloat den = hp ? sd.s_hp[n] + sd.s_hp[j]
                        : BigFloat(sd.s[n]) + BigFloat(sd.s[j]);
      // -c W = +i c / (s_n + s_j)
      A[static_cast<size_t>(n) * dim + (N + j)] =
          BigComplex{-c[n].im, c[n].re} / den;
      A[static_cast<size_t>(N + n) * dim + j] = BigComplex{-cb.im, cb.re} / den;
    }
  }
  CoreResult out;
  out.residual = solve_dense(A, rhs, dim, z);
  BigComplex sum = bc_make(0, 0, bits);
  for (int n = 0; n < N; ++n) sum = sum + z[n];
  if (!renorm) {
    BigComplex cs = conj(sum);  // psi = -2i * cs
    out.psi = BigComplex{2 * cs.im, -2 * cs.re};
  } else {  // psi = +2i * sum
    out.psi = BigComplex{-2 * sum.im, 2 * sum.re};
  }
  if (u_out) {
    u_out->resize(N);
    v_out->resize(N);
    for (int n = 0; n < N; ++n) {
      (*u_out)[n] = {z[n].re.convert_to<double>(), z[n].im.convert_to<double>()};
      (*v_out)[n] = {z[N + n].re.convert_to<double>(),
                     z[N + n].im.convert_to<double>()};
    }
  }
  return out;
}

double spread_of(const std::vector<double>& ell) {
  double d = 0;
  for (double v : ell) d = std::max(d, std::abs(v));
  return d;
}

// smaller exponent spread wins; exact tie keeps the primary route
bool pick_renormalized(const SpectralData& sd, double x,
                       const std::vector<double>& times, Formulation f,
                       double* spread_out) {
  if (f == Formulation::Primary || f == Formulation::Renormalized) {
    std::vector<double> l, p;
    bool rn = (f == Formulation::Renormalized);
    if (rn)
      renormalized_residues(sd, x, times, l, p);
    else
      modulated_residues(sd, x, times, l, p);
    if (spread_out) *spread_out = spread_of(l);
    return rn;
  }
  std::vector<double> lp, pp, lr, pr;
  modulated_residues(sd, x, times, lp, pp);
  renormalized_residues(sd, x, times, lr, pr);
  double dp = spread_of(lp), dr = spread_of(lr);
  bool rn = dr < dp;
  if (spread_out) *spread_out = rn ? dr : dp;
  return rn;
}

[[noreturn]] void throw_residual(double res, double tol, int bits, double spread) {
  char buf[192];
  std::snprintf(buf, sizeof buf,
                "evaluate: scaled residual %.3e above %.3e at %d bits "
                "(condition ~ 10^%.0f)", res, tol, bits, spread / std::log(10.0));
  throw std::runtime_error(buf);
}

}  // namespace

const char* formulation_name(Formulation f) {
  switch (f) {
    case Formulation::Primary: return "primary";
    case Formulation::Renormalized: return "renormalized";
    default: return "auto";
  }
}

std::complex<double> time_phase(std::complex<double> lambda, double x,
                                const std::vector<double>& times) {
  // Horner in lambda over t_M, ..., t_2, then the x term
  std::complex<double> acc(0, 0);
  for (size_t i = times.size(); i-- > 0;)
    acc = (acc + times[i]) * lambda;
  return (acc + x) * lambda;
}

std::vector<double> mixture_times(const std::vector<double>& a, double t) {
  std::vector<double> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] * t;
  return out;
}

void modulated_residues(const SpectralData& sd, double x,
                        const std::vector<double>& times,
                        std::vector<double>& ell, std::vector<double>& phi) {
  modulation_t<double>(sd, x, times, false, ell, phi);
}

void renormalized_residues(const SpectralData& sd, double x,
                           const std::vector<double>& times,
                           std::vector<double>& ell, std::vector<double>& phi) {
  modulation_t<double>(sd, x, times, true, ell, phi);
}

int policy_bits(double exponent_spread) {
  double b = std::ceil(exponent_spread / std::log(2.0)) + 96;
  int bits = static_cast<int>(std::max(64.0, b));
  return (bits + 63) / 64 * 64;
}

int recommended_bits(const SpectralData& sd, double x,
                     const std::vector<double>& times, Formulation f) {
  if (sd.N == 0) return policy_bits(0);
  double spread = 0;
  pick_renormalized(sd, x, times, f, &spread);
  return policy_bits(spread);
}

FieldSample evaluate(const SpectralData& sd, double x,
                     const std::vector<double>& times, const EvalOptions& opts) {
  FieldSample out;
  out.x = x;
  out.times = times;
  if (sd.N == 0) {
    out.used = (opts.formulation == Formulation::Renormalized)
                   ? Formulation::Renormalized
                   : Formulation::Primary;
    return out;
  }
  double spread = 0;
  bool renorm = pick_renormalized(sd, x, times, opts.formulation, &spread);
  out.used = renorm ? Formulation::Renormalized : Formulation::Primary;
  int bits = opts.forced_bits > 0 ? opts.forced_bits : policy_bits(spread);
  for (;;) {
    set_thread_precision(bits);
    BigFloat X(x);
    std::vector<BigFloat> T(times.begin(), times.end());
    CoreResult cr = eval_core(sd, X, T, renorm, bits);
    out.bits = bits;
    out.residual = cr.residual;
    out.psi = {cr.psi.re.convert_to<double>(), cr.psi.im.convert_to<double>()};
    if (cr.residual <= opts.residual_tol) break;
    if (bits >= opts.max_bits)
      throw_residual(cr.residual, opts.residual_tol, bits, spread);
    bits = std::min(2 * bits, opts.max_bits);
  }
  return out;
}

ResidueSolution evaluate_detail(const SpectralData& sd, double x,
                                const std::vector<double>& times,
                                const EvalOptions& opts) {
  ResidueSolution rs;
  rs.sigma = sd.s;
  if (sd.N == 0) {
    rs.used = Formulation::Primary;
    return rs;
  }
  double spread = 0;
  bool renorm = pick_renormalized(sd, x, times, opts.formulation, &spread);
  rs.used = renorm ? Formulation::Renormalized : Formulation::Primary;
  int bits = opts.forced_bits > 0 ? opts.forced_bits : policy_bits(spread);
  for (;;) {
    set_thread_precision(bits);
    BigFloat X(x);
    std::vector<BigFloat> T(times.begin(), times.end());
    CoreResult cr = eval_core(sd, X, T, renorm, bits, &rs.u, &rs.v);
    rs.bits = bits;
    rs.residual = cr.residual;
    rs.psi = {cr.psi.re.convert_to<double>(), cr.psi.im.convert_to<double>()};
    if (cr.residual <= opts.residual_tol) break;
    if (bits >= opts.max_bits)
      throw_residual(cr.residual, opts.residual_tol, bits, spread);
    bits = std::min(2 * bits, opts.max_bits);
  }
  return rs;
}

std::array<std::complex<double>, 4> m_matrix(const ResidueSolution& rs,
                                             std::complex<double> lambda) {
  using C = std::complex<double>;
  C i(0, 1);
  C m11(1, 0), m12(0, 0), m21(0, 0), m22(1, 0);
  for (size_t n = 0; n < rs.sigma.size(); ++n) {
    C dp = lambda - i * rs.sigma[n];  // pole at +i s_n
    C dm = lambda + i * rs.sigma[n];  // pole at -i s_n
    C u = rs.u[n], v = rs.v[n];
    if (rs.used == Formulation::Primary) {
      // column 1 residue (conj v, u), column 2 residue (-conj u, v)
      m11 += std::conj(v) / dp;
      m21 += u / dp;
      m12 += -std::conj(u) / dm;
      m22 += v / dm;
    } else {
      // poles swap columns: column 2 residue (u, conj v) at +i s_n,
      // column 1 residue (v, -conj u) at -i s_n
      m12 += u / dp;
      m22 += std::conj(v) / dp;
      m11 += v / dm;
      m21 += -std::conj(u) / dm;
    }
  }
  return {m11, m12, m21, m22};
}

FieldGrid evaluate_grid(const SpectralData& sd, const std::vector<double>& xs,
                        const std::vector<std::vector<double>>& time_list,
                        const EvalOptions& opts, int threads) {
  if (xs.empty() || time_list.empty())
    throw ConfigError("evaluate_grid: empty grid");
  FieldGrid g;
  g.nx = xs.size();
  g.nt = time_list.size();
  g.pts.resize(g.nx * g.nt);
  auto work = [&](size_t idx) {
    size_t ix = idx / g.nt, it = idx % g.nt;
    try {
      g.pts[idx] = evaluate(sd, xs[ix], time_list[it], opts);
    } catch (const std::exception&) {
      FieldSample bad;
      bad.x = xs[ix];
      bad.times = time_list[it];
      bad.psi = {std::numeric_limits<double>::quiet_NaN(),
                 std::numeric_limits<double>::quiet_NaN()};
      bad.ok = false;
      g.pts[idx] = bad;
    }
  };
  size_t total = g.pts.size();
  unsigned nthreads = threads > 0 ? static_cast<unsigned>(threads)
                                  : std::max(1u, std::thread::hardware_concurrency());
  if (nthreads <= 1 || total <= 1) {
    for (size_t i = 0; i < total; ++i) work(i);
    return g;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<size_t>(nthreads, total); ++t)
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1))
        work(i);
    });
  for (auto& th : pool) th.join();
  return g;
}

double pde_residual(const SpectralData& sd, double x,
                    const std::vector<double>& times, const FlowSpec& flow,
                    double h, const EvalOptions& opts) {
  if (!(h > 0)) throw ConfigError("pde_residual: need h > 0");
  if (times.empty()) throw ConfigError("pde_residual: need at least t_2");
  double a2 = 0, a3 = 0;
  std::vector<double> dir(times.size(), 0.0);
  switch (flow.kind) {
    case Flow::NLS2:
      a2 = 1;
      dir[0] = 1;
      break;
    case Flow::NLS3:
      if (times.size() < 2) throw ConfigError("pde_residual: flow needs t_3");
      a3 = 1;
      dir[1] = 1;
      break;
    case Flow::Hirota:
      if (times.size() < 2) throw ConfigError("pde_residual: flow needs t_3");
      a2 = flow.a2;
      a3 = flow.a3;
      dir[0] = a2;
      dir[1] = a3;
      break;
  }
  if (sd.N == 0) return 0;

  // one formulation and one precision for the whole stencil
  bool renorm = pick_renormalized(sd, x, times, opts.formulation, nullptr);
  Formulation forced = renorm ? Formulation::Renormalized : Formulation::Primary;
  double spread = 0;
  for (int j = -3; j <= 3; ++j) {
    double sp;
    pick_renormalized(sd, x + j * h, times, forced, &sp);
    spread = std::max(spread, sp);
  }
  for (int sgn : {-1, 1}) {
    std::vector<double> ts(times);
    for (size_t i = 0; i < ts.size(); ++i) ts[i] += sgn * h * dir[i];
    double sp;
    pick_renormalized(sd, x, ts, forced, &sp);
    spread = std::max(spread, sp);
  }
  int bits = opts.forced_bits > 0 ? opts.forced_bits : policy_bits(spread) + 64;

  for (;;) {
    set_thread_precision(bits);
    BigFloat X(x), H(h), eps(sd.epsilon);
    std::vector<BigFloat> T(times.begin(), times.end());
    double worst = 0;
    BigComplex f[7];  // j = -3..3 at index j+3
    for (int j = -3; j <= 3; ++j) {
      CoreResult cr = eval_core(sd, X + j * H, T, renorm, bits);
      f[j + 3] = cr.psi;
      worst = std::max(worst, cr.residual);
    }
    BigComplex ftp, ftm;
    for (int sgn : {-1, 1}) {
      std::vector<BigFloat> ts(T);
      for (size_t i = 0; i < ts.size(); ++i)
        ts[i] = ts[i] + sgn * H * BigFloat(dir[i]);
      CoreResult cr = eval_core(sd, X, ts, renorm, bits);
      (sgn > 0 ? ftp : ftm) = cr.psi;
      worst = std::max(worst, cr.residual);
    }
    if (worst > opts.residual_tol) {
      if (bits >= opts.max_bits)
        throw_residual(worst, opts.residual_tol, bits, spread);
      bits = std::min(2 * bits, opts.max_bits);
      continue;
    }
    set_thread_precision(bits);
    const BigComplex &fm3 = f[0], &fm2 = f[1], &fm1 = f[2], &f0 = f[3],
                     &fp1 = f[4], &fp2 = f[5], &fp3 = f[6];
    BigComplex psi_x =
        (fm2 - BigFloat(8) * fm1 + BigFloat(8) * fp1 - fp2) / (BigFloat(12) * H);
    BigComplex psi_xx = (-fm2 + BigFloat(16) * fm1 - BigFloat(30) * f0 +
                         BigFloat(16) * fp1 - fp2) /
                        (BigFloat(12) * H * H);
    BigComplex psi_xxx = (fm3 - BigFloat(8) * fm2 + BigFloat(13) * fm1 -
                          BigFloat(13) * fp1 + BigFloat(8) * fp2 - fp3) /
                         (BigFloat(8) * H * H * H);
    BigComplex psi_t = (ftp - ftm) / (BigFloat(2) * H);
    BigFloat mag2 = abs2(f0);
    // N2 = i (eps^2/2 psi_xx + |psi|^2 psi)
    BigComplex b2 = (eps * eps / BigFloat(2)) * psi_xx + mag2 * f0;
    BigComplex n2{-b2.im, b2.re};
    // N3 = -( (3/2) eps |psi|^2 psi_x + eps^3/4 psi_xxx )
    BigComplex n3 = -((BigFloat(3) * eps / BigFloat(2)) * (mag2 * psi_x) +
                      (eps * eps * eps / BigFloat(4)) * psi_xxx);
    BigComplex r = eps * psi_t - (BigFloat(a2) * n2 + BigFloat(a3) * n3);
    return sqrt(abs2(r)).convert_to<double>();
  }
}

}  // namespace sse
