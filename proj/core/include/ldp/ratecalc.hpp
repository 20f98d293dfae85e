#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ldp/density.hpp"
#include "ldp/empirical.hpp"
#include "ldp/legendre.hpp"

namespace ldp {

// Nonnegative extended-real rate function with speed metadata. Evaluation
// clamps quadrature-level negative noise so results stay in [0, inf].
struct RateFunction {
  std::function<double(const std::vector<double>&)> eval_raw;
  int dim = 1;
  std::string domain_hint;
  std::string speed;
  std::optional<std::vector<double>> minimizer;
  std::string name;

  double eval(const std::vector<double>& x) const;
  double operator()(double x) const { return eval({x}); }
};

// Value of an infimum or supremum together with how it was resolved.
struct FlaggedRate {
  double value = 0.0;
  SupFlag flag = SupFlag::attained;
};

// --- cumulants ---

// log E exp(t1 |S|^q + t2 |S|^p) for S p-Gaussian, by direct quadrature.
// +inf when t2 >= 1/p. Requires q < p.
double cumulant_lq_lp(double t1, double t2, double p, double q);

// Same function as a dim-2 CumulantFunction with an interpolant cache over
// the reduced one-dimensional profile, cheap enough for nested optimization.
CumulantFunction make_lq_lp_cumulant(double p, double q);

// Three-dimensional cumulant of (Z^2, Z U, |U|^p) for Z standard normal and
// U p-Gaussian, p > 2. Finite iff t0 < 1/2 and t2 < 1/p.
CumulantFunction make_projection_cumulant(double p);

// --- level-2 functionals ---

// Relative entropy H(nu | lambda). The empirical overload is +inf by
// convention; use smoothed_relative_entropy for a kernel estimate.
double relative_entropy(const Density1D& nu, const Density1D& lambda);
double relative_entropy(const EmpiricalMeasure& nu, const Density1D& lambda);
// Gaussian-kernel density estimate of nu, then the density formula.
// bandwidth <= 0 selects a standard n^{-1/5} rule.
double smoothed_relative_entropy(const EmpiricalMeasure& nu,
                                 const Density1D& lambda,
                                 double bandwidth = 0.0);

// Double logarithmic integral of a measure against itself. Empirical
// measures exclude the diagonal; coincident atoms give -inf.
double log_energy(const Density1D& mu);
double log_energy(const EmpiricalMeasure& mu);

// --- composition ---

struct SearchRegion {
  std::vector<double> lo, hi;
};

struct ContractResult {
  double value = 0.0;
  std::vector<double> arg;
  bool feasible = false;
  bool on_boundary = false;
};

using VectorMap =
    std::function<std::vector<double>(const std::vector<double>&)>;

// inf of base.eval(x) over x in the region with map(x) = y, by penalty
// minimization with an increasing weight ramp. Empty fiber gives +inf with
// feasible = false; a minimizer pressed against the region edge sets
// on_boundary.
ContractResult contract_rate(const RateFunction& base, const VectorMap& map,
                             const std::vector<double>& y,
                             const SearchRegion& region);

// inf over factorizations z = z1 z2 (z1, z2 >= 0) of r1(z1) + r2(z2).
// z = 0 is the infimum over all pairs with z1 z2 = 0.
double combine_independent_product(const RateFunction& r1,
                                   const RateFunction& r2, double z);

// --- closed-form catalog ---

// -log z on (0,1], +inf otherwise.
double rate_uniform_power(double z);
// a^2/2.
double rate_gaussian_sum(double a);
// ((1+x)/2)log(1+x) + ((1-x)/2)log(1-x) on [-1,1], +inf outside.
double rate_rademacher(double x);
// Upper-tail rate c (a-m)^r for a > m, 0 for a <= m.
double rate_stretched_cramer(double a, double c, double r, double m);
// |x|^{r_p}/r_p with r_p = 2p/(2+p), for p in [1,2).
double rate_projection_lowp(double x, double p);
// (1/p)(z^q - M_p(q))^{p/q} above the threshold M_p(q)^{1/q}, +inf below.
double rate_lqnorm_low(double z, double p, double q);

// Variance constant of the moderate-deviation regime for q < p; throws
// std::domain_error when the formula turns nonpositive.
double mdp_sigma2(double p, double q);
double mdp_rate(double t, double sigma2);

// --- numerical catalog ---

// Legendre transforms of the two cumulants above, exploiting their reduced
// form: the stationarity system collapses to one scalar root in the inner
// tilt, solved by bracketed bisection on the cached profile derivative.
// Orders of magnitude faster than legendre_nd on the same cumulant, which
// they match to optimizer accuracy; infeasible points fall back to
// legendre_nd for classification.
LegendreResult lq_lp_cumulant_transform(double x1, double x2, double p,
                                        double q);
LegendreResult projection_cumulant_transform(double tau0, double tau1,
                                             double tau2, double p);

// Projection rate for p >= 2: the closed form -(1/2)log(1-x^2) at p = 2, and
// for p > 2 the fiber infimum of the transform of the 3D cumulant.
FlaggedRate rate_projection_highp(double x, double p);

// Directional factor of the norm rate for q < p: the fiber infimum of the
// 2D transform over {x >= 0, y > 0 : x^{1/q} y^{-1/p} = z2}.
FlaggedRate rate_lqnorm_high_directional(double z2, double p, double q);

// Norm rate for q < p: radial factor -log on (0,1] combined with the
// directional factor over the product decomposition.
FlaggedRate rate_lqnorm_high(double z, double p, double q);

// --- catalog wrappers with metadata ---

RateFunction rate_fn_uniform_power();
RateFunction rate_fn_gaussian_sum();
RateFunction rate_fn_rademacher();
RateFunction rate_fn_stretched(double c, double r, double m);
RateFunction rate_fn_projection_lowp(double p);
RateFunction rate_fn_projection_highp(double p);
RateFunction rate_fn_lqnorm_low(double p, double q);
RateFunction rate_fn_lqnorm_high(double p, double q);
RateFunction rate_fn_mdp(double p, double q);

}  // namespace ldp
