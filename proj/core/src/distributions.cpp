#include "ldp/distributions.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ldp/quad.hpp"

namespace ldp {

namespace {

double p_gaussian_log_norm(double p) {
  return std::log(2.0) + std::lgamma(1.0 + 1.0 / p) + std::log(p) / p;
}

}  // namespace

double p_gaussian_log_pdf(double x, double p) {
  if (!std::isfinite(x)) throw std::invalid_argument("p_gaussian: non-finite x");
  if (!(p > 0)) throw std::invalid_argument("p_gaussian: p must be positive");
  return -std::pow(std::abs(x), p) / p - p_gaussian_log_norm(p);
}

double p_gaussian_pdf(double x, double p) {
  return std::exp(p_gaussian_log_pdf(x, p));
}

Density1D p_gaussian_density(double p) {
  Density1D f;
  f.log_pdf = [p](double x) { return p_gaussian_log_pdf(x, p); };
  f.name = "p_gaussian(" + std::to_string(p) + ")";
  return f;
}

double p_gaussian_sample(Rng& rng, double p) {
  if (p == 2.0) {
    std::normal_distribution<double> n(0.0, 1.0);
    return n(rng);
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double sign = u(rng) < 0.5 ? -1.0 : 1.0;
  if (p == 1.0) {
    std::exponential_distribution<double> e(1.0);
    return sign * e(rng);
  }
  std::gamma_distribution<double> g(1.0 / p, 1.0);
  return sign * std::pow(p * g(rng), 1.0 / p);
}

std::vector<double> p_gaussian_sample_vec(Rng& rng, int n, double p) {
  std::vector<double> out(static_cast<size_t>(n));
  for (double& x : out) x = p_gaussian_sample(rng, p);
  return out;
}

double moment_Mpq(double p, double q) {
  if (!(p > 0) || !(q > 0))
    throw std::invalid_argument("moment_Mpq: p, q must be positive");
  const double log_m = (q / p) * std::log(p) - std::log1p(q) +
                       std::lgamma(1.0 + (q + 1.0) / p) -
                       std::lgamma(1.0 + 1.0 / p);
  if (log_m > 700.0) throw std::range_error("moment_Mpq: overflow");
  return std::exp(log_m);
}

double ullman_density(double x, double p) {
  if (!(p > 0)) throw std::invalid_argument("ullman_density: p must be positive");
  const double ax = std::abs(x);
  if (ax > 1.0) return 0.0;
  if (std::isinf(p)) {
    if (ax == 1.0) return kInf;
    return 1.0 / (M_PI * std::sqrt(1.0 - ax * ax));
  }
  const double s1 = std::sqrt(std::max(0.0, 1.0 - ax * ax));
  if (p == 2.0) return (2.0 / M_PI) * s1;
  if (ax == 0.0) return p > 1.0 ? p / ((p - 1.0) * M_PI) : kInf;
  if (p == 1.0) return std::log((1.0 + s1) / ax) / M_PI;
  // General case via t = sqrt(x^2 + s^2), which removes the inner square
  // root singularity at t = |x|.
  const QuadResult q = integrate(
      [ax, p](double s) {
        return std::pow(ax * ax + s * s, 0.5 * (p - 2.0));
      },
      0.0, s1, 1e-11, 0.0);
  return (p / M_PI) * q.value;
}

double ullman_support_bp(double p) {
  if (!(p > 0)) throw std::invalid_argument("ullman_support_bp: p must be positive");
  if (std::isinf(p)) return 1.0;
  const double log_b = (std::log(p) + 0.5 * std::log(M_PI) +
                        std::lgamma(0.5 * p) - std::lgamma(0.5 * (p + 1.0))) / p;
  return std::exp(log_b);
}

UllmanLaw ullman_law(double p) {
  UllmanLaw law;
  law.p = p;
  law.b_p = ullman_support_bp(p);
  const double b = law.b_p;
  law.density.log_pdf = [p, b](double x) {
    const double h = ullman_density(x / b, p);
    return h > 0 ? std::log(h / b) : -kInf;
  };
  law.density.support_lo = -b;
  law.density.support_hi = b;
  law.density.name = "ullman(" + std::to_string(p) + ")";
  law.singular_variant = false;
  return law;
}

UllmanLaw ullman_singular_law(double p) {
  UllmanLaw law;
  law.p = p;
  law.b_p = ullman_support_bp(p);
  const double b = law.b_p;
  law.density.log_pdf = [p, b](double x) {
    if (x < 0) return -kInf;
    const double h = ullman_density(x / b, p);
    return h > 0 ? std::log(2.0 * h / b) : -kInf;
  };
  law.density.support_lo = 0;
  law.density.support_hi = b;
  law.density.name = "ullman_singular(" + std::to_string(p) + ")";
  law.singular_variant = true;
  return law;
}

Density1D gibbs_density(const OrliczFunction& M, double alpha) {
  const bool bounded = std::isfinite(M.domain_bound);
  if (alpha >= 0 && !bounded)
    throw std::domain_error("gibbs_density: alpha >= 0 needs a bounded domain");

  double hi;
  if (bounded) {
    hi = M.domain_bound;
  } else {
    // Walk out until the kernel is negligible. Failure to decay means the
    // kernel is not integrable for this M.
    hi = 1.0;
    while (alpha * M(hi) > -45.0) {
      hi *= 2.0;
      if (hi > 1e9)
        throw std::domain_error("gibbs_density: kernel e^{alpha M} not integrable");
    }
  }
  const QuadResult q = integrate(
      [&](double x) { return std::exp(alpha * M(x)); }, -hi, hi, 1e-12, 0.0);
  if (!q.converged || !(q.value > 0) || !std::isfinite(q.value))
    throw std::domain_error("gibbs_density: normalization integral diverges");
  const double log_z = std::log(q.value);

  Density1D f;
  const OrliczFunction m = M;
  f.log_pdf = [m, alpha, log_z](double x) {
    const double v = m(x);
    return std::isfinite(v) ? alpha * v - log_z : -kInf;
  };
  if (bounded) {
    f.support_lo = -M.domain_bound;
    f.support_hi = M.domain_bound;
  }
  f.name = "gibbs(" + M.name + ")";
  return f;
}

}  // namespace ldp
