#include "sse/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "sse/ensemble.hpp"
#include "sse/scattering.hpp"

namespace sse {

FitReport fit_power_law(std::vector<FitSample> samples) {
  if (samples.size() < 3)
    throw ConfigError("fit_power_law: need at least 3 samples");
  for (const auto& s : samples)
    if (!(s.eps > 0) || !(s.error > 0))
      throw ConfigError("fit_power_law: eps and error must be positive");
  std::sort(samples.begin(), samples.end(),
            [](const FitSample& a, const FitSample& b) { return a.eps < b.eps; });

  const size_t n = samples.size();
  std::vector<double> lx(n), ly(n);
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    lx[i] = std::log(samples[i].eps);
    ly[i] = std::log(samples[i].error);
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0) throw ConfigError("fit_power_law: all eps coincide");

  FitReport rep;
  rep.exponent = sxy / sxx;
  rep.prefactor = std::exp(my - rep.exponent * mx);
  double ss = 0;
  for (size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (my + rep.exponent * (lx[i] - mx));
    ss += r * r;
  }
  rep.residual = std::sqrt(ss / static_cast<double>(n));
  rep.samples = std::move(samples);
  return rep;
}

namespace {

std::vector<double> region_points(const RegionSpec& region) {
  if (region.points < 2)
    throw ConfigError("converge_fit: region needs at least 2 points");
  if (!(region.hi > region.lo))
    throw ConfigError("converge_fit: region needs hi > lo");
  if (region.two_sided && region.lo < 0)
    throw ConfigError("converge_fit: two-sided region takes 0 <= lo < hi");

  std::vector<double> xs;
  const int m = region.points;
  xs.reserve(region.two_sided ? 2 * static_cast<size_t>(m) : m);
  for (int i = 0; i < m; ++i) {
    const double u =
        region.lo + (region.hi - region.lo) * i / static_cast<double>(m - 1);
    if (region.two_sided) {
      xs.push_back(-u);
      xs.push_back(u);
    } else {
      xs.push_back(u);
    }
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

}  // namespace

FitReport converge_fit(const PotentialFamily& f, const std::vector<int>& Ns,
                       const RegionSpec& region, int threads) {
  if (Ns.size() < 3)
    throw ConfigError("converge_fit: need at least 3 ensemble sizes");
  const std::vector<double> xs = region_points(region);
  const std::vector<std::vector<double>> t0 = {{}};

  std::vector<FitSample> samples;
  samples.reserve(Ns.size());
  for (int N : Ns) {
    if (N < 1) throw ConfigError("converge_fit: ensemble sizes must be >= 1");
    SpectralData sd = wkb_spectrum(f, N);
    int bits = 0;
    for (double x : xs) bits = std::max(bits, recommended_bits(sd, x, {}));
    sd = wkb_spectrum(f, N, bits);  // pole data at the solve's precision
    EvalOptions opts;
    opts.forced_bits = bits;
    const FieldGrid g = evaluate_grid(sd, xs, t0, opts, threads);

    double err = 0;
    for (const auto& p : g.pts) {
      if (!p.ok)
        throw std::runtime_error("converge_fit: field evaluation failed at x = " +
                                 std::to_string(p.x));
      err = std::max(err, std::abs(p.psi - std::complex<double>(
                                               amplitude(f, p.x), 0)));
    }
    samples.push_back({sd.epsilon, err});
  }
  return fit_power_law(std::move(samples));
}

}  // namespace sse
