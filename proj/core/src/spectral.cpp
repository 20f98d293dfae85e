#include "ldp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "ldp/orlicz.hpp"
#include "ldp/quad.hpp"
#include "ldp/ratecalc.hpp"

namespace ldp {

namespace {

void check_params(const GasParams& par) {
  if (par.n < 1)
    throw std::invalid_argument("gas: n must be positive");
  if (par.beta != 1.0 && par.beta != 2.0 && par.beta != 4.0)
    throw std::invalid_argument("gas: beta must be 1, 2, or 4");
  if (!(par.p > 0.0))
    throw std::invalid_argument("gas: p must be positive");
}

// Potential of one coordinate, -inf when the point is out of range. The
// p = infinity gas confines each point to [-1, 1] with zero potential.
double potential(double x, const GasParams& par) {
  if (!par.selfadjoint && x <= 0.0) return kInf;
  if (par.p == kInf) return std::abs(x) <= 1.0 ? 0.0 : kInf;
  const double exponent = par.selfadjoint ? par.p : 0.5 * par.p;
  return std::pow(std::abs(x), exponent);
}

double unit_uniform(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng);
}

// Change of log density when coordinate i moves to t, in O(n).
double move_log_ratio(const std::vector<double>& x, int i, double t,
                      const GasParams& par, double weight) {
  const double pot_new = potential(t, par);
  if (pot_new == kInf) return -kInf;
  double delta = -weight * (pot_new - potential(x[i], par));
  for (int j = 0; j < static_cast<int>(x.size()); ++j) {
    if (j == i) continue;
    const double dn = std::abs(t - x[j]);
    if (dn == 0.0) return -kInf;
    delta += par.beta * (std::log(dn) - std::log(std::abs(x[i] - x[j])));
  }
  if (!par.selfadjoint && par.beta != 2.0)
    delta += (0.5 * par.beta - 1.0) * (std::log(t) - std::log(x[i]));
  return delta;
}

std::vector<double> gas_init(const GasParams& par, Rng& rng) {
  // Unscaled equilibria live at scale n^{2/p} (n^{4/p} on the half-line
  // where the potential is x^{p/2}); starting there spares the adaptation
  // a long walk outward.
  double scale = 1.0;
  if (!par.scaled_by_n && par.p != kInf)
    scale = std::pow(par.n, (par.selfadjoint ? 2.0 : 4.0) / par.p);
  const double pg = par.p == kInf ? 2.0 : par.p;
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<double> x(par.n);
    for (double& v : x) {
      if (par.p == kInf)
        v = 2.0 * unit_uniform(rng) - 1.0;
      else
        v = scale * p_gaussian_sample(rng, par.selfadjoint ? pg : 0.5 * pg);
      if (!par.selfadjoint) v = std::abs(v);
    }
    std::sort(x.begin(), x.end());
    if (std::isfinite(gas_log_density(x, par))) return x;
  }
  throw std::runtime_error("gas_mcmc: could not find a finite starting state");
}

double quasinorm(const std::vector<double>& x, double q) {
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v), q);
  return std::pow(s, 1.0 / q);
}

EmpiricalMeasure scaled_empirical(const std::vector<double>& points,
                                  double scale) {
  std::vector<double> atoms(points);
  for (double& a : atoms) a *= scale;
  return make_empirical(std::move(atoms));
}

// Shared radial representation step for both Schatten samplers.
std::vector<SpectralSample> schatten_samples(Rng& rng, int n, double p,
                                             double beta, BallMode mode,
                                             int count, bool selfadjoint,
                                             bool scale_measure) {
  if (count < 1)
    throw std::invalid_argument("schatten sampler: count must be positive");
  if (!(p > 0.0) || p == kInf)
    throw std::invalid_argument("schatten sampler: p must be finite positive");
  GasParams par;
  par.n = n;
  par.beta = beta;
  par.p = p;
  par.selfadjoint = selfadjoint;
  par.scaled_by_n = false;
  check_params(par);

  const double q = selfadjoint ? p : 0.5 * p;
  const double m = selfadjoint
                       ? beta * n * (n - 1.0) / 2.0
                       : beta * n * (n - 1.0) / 2.0 + n * (0.5 * beta - 1.0);
  const double measure_scale =
      scale_measure ? std::pow(n, (selfadjoint ? 1.0 : 2.0) / p) : 1.0;

  GasRun run = gas_mcmc(par, count, rng);
  std::vector<SpectralSample> out;
  out.reserve(count);
  for (auto& sample : run.samples) {
    std::vector<double> y = std::move(sample.points);
    const double norm = quasinorm(y, q);
    double radial = 1.0;
    if (mode == BallMode::uniform)
      radial = std::pow(unit_uniform(rng), 1.0 / (n + m));
    for (double& v : y) v = radial * v / norm;
    double s = 0.0;
    for (double v : y) s += std::pow(std::abs(v), q);
    if (mode == BallMode::uniform && s > 1.0)
      for (double& v : y) v /= std::pow(s, 1.0 / q);
    SpectralSample ss;
    ss.points = std::move(y);
    ss.measure = scaled_empirical(ss.points, measure_scale);
    out.push_back(std::move(ss));
  }
  return out;
}

// Feasibility of the moment constraint, shared by both overloads through
// the orlicz moment map.
double abs_moment_density(const Density1D& mu, double q) {
  OrliczFunction M;
  M.eval = [q](double t) { return std::pow(std::abs(t), q); };
  M.name = "abs_pow";
  return moment_map(mu, M);
}

double mass_outside(const Density1D& mu, double lo, double hi) {
  const auto [a, b] = effective_bounds(mu);
  double outside = 0.0;
  if (a < lo)
    outside +=
        integrate([&](double x) { return mu.pdf(x); }, a, std::min(lo, b))
            .value;
  if (b > hi)
    outside +=
        integrate([&](double x) { return mu.pdf(x); }, std::max(hi, a), b)
            .value;
  return outside;
}

double rate_constant(double p, double beta, bool selfadjoint) {
  if (p == kInf) {
    // Limits of the finite-p constants: the half-line value is twice the
    // line value because the prefactor is beta/p instead of beta/2p.
    return selfadjoint ? -0.5 * beta * std::log(2.0) : -beta * std::log(2.0);
  }
  const double logc = 0.5 * std::log(M_PI) + std::log(p) +
                      std::lgamma(0.5 * p) - p * std::log(2.0) - 0.5 -
                      std::lgamma(0.5 * (p + 1.0));
  return (selfadjoint ? beta / (2.0 * p) : beta / p) * logc;
}

}  // namespace

double gas_log_density(const std::vector<double>& x, const GasParams& par) {
  check_params(par);
  if (static_cast<int>(x.size()) != par.n)
    throw std::invalid_argument("gas_log_density: configuration size " +
                                std::to_string(x.size()) +
                                " does not match n = " +
                                std::to_string(par.n));
  const double weight = par.scaled_by_n ? par.n : 1.0;
  double value = 0.0;
  for (double v : x) {
    const double pot = potential(v, par);
    if (pot == kInf) return -kInf;
    value -= weight * pot;
    if (!par.selfadjoint) value += (0.5 * par.beta - 1.0) * std::log(v);
  }
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = i + 1; j < x.size(); ++j) {
      const double d = std::abs(x[i] - x[j]);
      if (d == 0.0) return -kInf;
      value += par.beta * std::log(d);
    }
  return value;
}

GasRun gas_mcmc(const GasParams& par, int n_samples, Rng& rng, int burn_in,
                int thin) {
  check_params(par);
  if (n_samples < 1)
    throw std::invalid_argument("gas_mcmc: n_samples must be positive");
  if (burn_in < 0) burn_in = std::max(400, 20 * par.n);
  if (thin < 0) thin = 5;

  const double weight = par.scaled_by_n ? par.n : 1.0;
  std::vector<double> x = gas_init(par, rng);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, par.n - 1);

  double spread = 0.0;
  for (double v : x) spread = std::max(spread, std::abs(v));
  double step = std::max(0.1, 0.5 * spread);

  long long tried = 0, taken = 0;
  auto sweep = [&](bool adapt) {
    for (int u = 0; u < par.n; ++u) {
      const int i = pick(rng);
      const double t = x[i] + step * gauss(rng);
      const double delta = move_log_ratio(x, i, t, par, weight);
      ++tried;
      if (delta > 0.0 || std::log(unit_uniform(rng)) < delta) {
        x[i] = t;
        ++taken;
      }
    }
    if (adapt && tried >= 25 * par.n) {
      const double rate = static_cast<double>(taken) / tried;
      step *= std::exp(rate - 0.3);
      tried = taken = 0;
    }
  };

  for (int s = 0; s < burn_in; ++s) sweep(true);
  tried = taken = 0;

  GasRun run;
  run.samples.reserve(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    for (int s = 0; s < thin; ++s) sweep(false);
    SpectralSample sample;
    sample.points = x;
    sample.measure = make_empirical(x);
    run.samples.push_back(std::move(sample));
  }
  run.acceptance =
      tried == 0 ? 0.0 : static_cast<double>(taken) / static_cast<double>(tried);
  run.step = step;
  return run;
}

double split_rhat(const std::vector<std::vector<double>>& chains) {
  if (chains.empty())
    throw std::invalid_argument("split_rhat: no chains given");
  size_t m = chains[0].size();
  for (const auto& c : chains) m = std::min(m, c.size());
  if (m < 4)
    throw std::invalid_argument("split_rhat: chains need at least 4 draws");
  m /= 2;
  std::vector<std::vector<double>> halves;
  for (const auto& c : chains) {
    halves.emplace_back(c.begin(), c.begin() + m);
    halves.emplace_back(c.begin() + m, c.begin() + 2 * m);
  }

  std::vector<double> means;
  double within = 0.0;
  for (const auto& h : halves) {
    double mu = 0.0;
    for (double v : h) mu += v;
    mu /= static_cast<double>(m);
    double var = 0.0;
    for (double v : h) var += (v - mu) * (v - mu);
    var /= static_cast<double>(m - 1);
    means.push_back(mu);
    within += var;
  }
  within /= static_cast<double>(halves.size());

  double grand = 0.0;
  for (double v : means) grand += v;
  grand /= static_cast<double>(means.size());
  double between = 0.0;
  for (double v : means) between += (v - grand) * (v - grand);
  between *= static_cast<double>(m) / static_cast<double>(means.size() - 1);

  const double pooled =
      (static_cast<double>(m - 1) * within + between) / static_cast<double>(m);
  return std::sqrt(pooled / within);
}

std::vector<SpectralSample> sample_schatten_eigs(Rng& rng, int n, double p,
                                                 double beta, BallMode mode,
                                                 int count,
                                                 bool scale_measure) {
  return schatten_samples(rng, n, p, beta, mode, count, true, scale_measure);
}

std::vector<SpectralSample> sample_schatten_singular_sq(
    Rng& rng, int n, double p, double beta, BallMode mode, int count,
    bool scale_measure) {
  return schatten_samples(rng, n, p, beta, mode, count, false, scale_measure);
}

double schatten_rate(const EmpiricalMeasure& mu, double p, double beta,
                     bool selfadjoint) {
  if (!(p > 0.0))
    throw std::invalid_argument("schatten_rate: p must be positive");
  for (size_t i = 0; i < mu.atoms.size(); ++i) {
    if (mu.weights[i] <= 0.0) continue;
    const double a = mu.atoms[i];
    if (!selfadjoint && a < -1e-12) return kInf;
    if (p == kInf && (a < (selfadjoint ? -1.0 : 0.0) - 1e-12 || a > 1.0 + 1e-12))
      return kInf;
  }
  if (p != kInf) {
    const double moment = mu.abs_moment(selfadjoint ? p : 0.5 * p);
    if (moment > 1.0 + 1e-6) return kInf;
  }
  const double energy = log_energy(mu);
  if (energy == -kInf) return kInf;
  return -0.5 * beta * energy + rate_constant(p, beta, selfadjoint);
}

double schatten_rate(const Density1D& mu, double p, double beta,
                     bool selfadjoint) {
  if (!(p > 0.0))
    throw std::invalid_argument("schatten_rate: p must be positive");
  const double lo_lim = selfadjoint ? (p == kInf ? -1.0 : -kInf) : 0.0;
  const double hi_lim = p == kInf ? 1.0 : kInf;
  if (std::isfinite(lo_lim) || std::isfinite(hi_lim)) {
    if (mass_outside(mu, lo_lim, hi_lim) > 1e-6) return kInf;
  }
  if (p != kInf) {
    const double moment = abs_moment_density(mu, selfadjoint ? p : 0.5 * p);
    if (moment > 1.0 + 1e-6) return kInf;
  }
  return -0.5 * beta * log_energy(mu) + rate_constant(p, beta, selfadjoint);
}

double spectral_distance(const std::vector<double>& pooled,
                         const UllmanLaw& law, SpectralMetric metric) {
  if (pooled.empty())
    throw std::invalid_argument("spectral_distance: empty sample");
  const CdfTable table(law.density, law.density.support_lo,
                       law.density.support_hi, 2048);
  if (metric == SpectralMetric::kolmogorov)
    return ks_distance(pooled, [&](double x) { return table.cdf(x); });
  return wasserstein1(pooled, table);
}

double spectral_distance(const SpectralSample& sample, const UllmanLaw& law,
                         SpectralMetric metric) {
  return spectral_distance(sample.measure.atoms, law, metric);
}

}  // namespace ldp
