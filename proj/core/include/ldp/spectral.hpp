#pragma once

#include <vector>

#include "ldp/density.hpp"
#include "ldp/distributions.hpp"
#include "ldp/empirical.hpp"
#include "ldp/rng.hpp"
#include "ldp/sampling.hpp"

namespace ldp {

// Coulomb-gas parameters: n particles at inverse temperature beta in the
// external potential |x|^p, with the self-adjoint gas on the line and the
// non-self-adjoint gas (squared singular values) on the half-line. The
// scaled variant carries e^{-n sum |x_i|^p}; the unscaled one drops the n
// and is the law appearing in the ball representations.
struct GasParams {
  int n = 1;
  double beta = 2;
  double p = 2;
  bool selfadjoint = true;
  bool scaled_by_n = true;
};

// One gas configuration: raw points plus their empirical measure, whose
// atoms may carry the n^{1/p} or n^{2/p} rescaling of the limit theorems.
struct SpectralSample {
  std::vector<double> points;
  EmpiricalMeasure measure;
};

// Unnormalized log density of the gas. Coincident points give -inf; the
// non-self-adjoint gas is -inf off the open positive orthant.
double gas_log_density(const std::vector<double>& x, const GasParams& par);

struct GasRun {
  std::vector<SpectralSample> samples;
  // Acceptance rate over the sampling phase, after step adaptation froze.
  double acceptance = 0;
  double step = 0;
};

// Adaptive Metropolis chain with single-coordinate Gaussian proposals. The
// step size is tuned toward 0.3 acceptance during burn-in and then frozen;
// one recorded sample is separated from the next by thin full sweeps.
// Negative burn_in or thin select the defaults max(400, 20 n) and 5.
GasRun gas_mcmc(const GasParams& par, int n_samples, Rng& rng,
                int burn_in = -1, int thin = -1);

// Split-Rhat of a scalar statistic over several chains: each chain is cut
// in half and the usual between/within variance ratio is formed. Values
// near 1 indicate the chains have forgotten their starting points.
double split_rhat(const std::vector<std::vector<double>>& chains);

// Eigenvalues of a uniform (or cone) draw from the self-adjoint Schatten
// p-ball, via the radial representation U^{1/(n+m)} X / |X|_p with X from
// the unscaled gas and m = beta n (n-1) / 2. Draws share one chain, so the
// count belongs to a single call. scale_measure puts the n^{1/p} atoms of
// the limit theorems into the empirical measure; points stay on the ball.
std::vector<SpectralSample> sample_schatten_eigs(Rng& rng, int n, double p,
                                                 double beta, BallMode mode,
                                                 int count = 1,
                                                 bool scale_measure = false);

// Squared singular values of a uniform (or cone) draw from the
// non-self-adjoint Schatten p-ball; the radial exponent picks up the extra
// n (beta/2 - 1) from the half-line interaction and the normalization uses
// the p/2 quasinorm. scale_measure applies n^{2/p} to the measure atoms.
std::vector<SpectralSample> sample_schatten_singular_sq(
    Rng& rng, int n, double p, double beta, BallMode mode, int count = 1,
    bool scale_measure = false);

// Sanov-type spectral rate at speed n^2: -(beta/2) log_energy(mu) plus a
// p-dependent constant, finite only under the moment constraint
// int |x|^p dmu <= 1 (self-adjoint) or int x^{p/2} dmu <= 1 on the
// half-line (non-self-adjoint). p = infinity replaces the constraint by
// support in [-1, 1] (or [0, 1]) and the constant by its p -> infinity
// limit.
double schatten_rate(const EmpiricalMeasure& mu, double p, double beta,
                     bool selfadjoint = true);
double schatten_rate(const Density1D& mu, double p, double beta,
                     bool selfadjoint = true);

enum class SpectralMetric { kolmogorov, wasserstein1 };

// Distance between pooled spectral points and an Ullman-type law, with the
// law's cdf tabulated by cumulative quadrature.
double spectral_distance(const std::vector<double>& pooled,
                         const UllmanLaw& law, SpectralMetric metric);
double spectral_distance(const SpectralSample& sample, const UllmanLaw& law,
                         SpectralMetric metric);

}  // namespace ldp
