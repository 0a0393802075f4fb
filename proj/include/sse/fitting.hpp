#pragma once
// Power-law fits of error-vs-epsilon data, and the t = 0 accuracy experiment
// measuring sup |psi~(x,0) - A(x)| over a sampled region per ensemble size.

#include <vector>

#include "sse/potentials.hpp"

namespace sse {

struct FitSample {
  double eps = 0;
  double error = 0;
};

struct FitReport {
  double exponent = 0;
  double prefactor = 0;  // error ~ prefactor * eps^exponent
  double residual = 0;   // rms residual of the log-log fit
  std::vector<FitSample> samples;
};

// ordinary least squares of log(error) against log(eps), unweighted;
// needs >= 3 samples with positive entries
FitReport fit_power_law(std::vector<FitSample> samples);

// sampled sup-norm region: the interval [lo, hi], or the symmetric pair
// {lo <= |x| <= hi} when two_sided (sampled on both signs)
struct RegionSpec {
  double lo = 0, hi = 0;
  bool two_sided = false;
  int points = 41;
};

// reconstruction error of the ensemble at time zero against the amplitude it
// was generated from, fitted across ensemble sizes
FitReport converge_fit(const PotentialFamily& f, const std::vector<int>& Ns,
                       const RegionSpec& region, int threads = 1);

}  // namespace sse
