#pragma once

#include <string>

#include "ldp/density.hpp"
#include "ldp/distributions.hpp"
#include "ldp/empirical.hpp"
#include "ldp/orlicz_function.hpp"

namespace ldp {

// Exponential tilt of Lebesgue measure by an Orlicz cost, solved so the
// tilted mean of M equals the level R.
struct TiltSolution {
  double alpha_star = 0.0;
  double phi_at = 0.0;
  double sigma2_star = 0.0;
  double R = 0.0;
};

// log of integral over R of e^{alpha M(x)} dx, with derivatives in alpha:
// the tilted mean and variance of M. Finite for alpha < 0 whenever M grows
// to +inf; costs confined to an interval admit any alpha. Throws
// std::domain_error when the integral diverges.
double phi(const OrliczFunction& M, double alpha);
double phi_prime(const OrliczFunction& M, double alpha);
double phi_doubleprime(const OrliczFunction& M, double alpha);

// Root of phi'(alpha) = R, bracketed in log|alpha| since the root slides to
// 0- as R grows. Throws std::domain_error naming the achievable range when
// a confined cost caps the attainable mean below R.
TiltSolution solve_alpha_star(const OrliczFunction& M, double R);

// Limit of (1/d) log vol of { x : sum M(x_i) <= d R }, equal to
// phi(alpha*) - alpha* R. Requires the tilt to be negative, which always
// holds for costs growing to +inf.
double log_volume_limit(const OrliczFunction& M, double R);

// Sharp volume asymptotic e^{d(phi - alpha R)} / (|alpha| sqrt(2 pi d s2)),
// returned alongside its logarithm since the plain value overflows quickly.
struct VolumeEstimate {
  double volume = 0.0;
  double log_volume = 0.0;
};
VolumeEstimate volume_estimate(const OrliczFunction& M, double R, int d);

// Limit of vol(B1 cap B2) / vol(B1) as the dimension grows. The deciding
// quantity is the mean of M2 under the Gibbs density of (M1, R1): above R2
// the ratio vanishes exponentially, below it (with finite second moment)
// the ratio tends to one. A narrow band around equality reports critical;
// a divergent second moment in the below case is inconclusive because the
// dichotomy needs it finite.
enum class IntersectionLimit { zero, one, critical, inconclusive };
IntersectionLimit intersection_ratio_limit(const OrliczFunction& M1,
                                           double R1, const OrliczFunction& M2,
                                           double R2);
const char* to_string(IntersectionLimit v);

// Integral of M against the measure; +inf when it diverges or the measure
// charges points outside a confined cost's interval.
double moment_map(const Density1D& mu, const OrliczFunction& M);
double moment_map(const EmpiricalMeasure& mu, const OrliczFunction& M);

// Level-2 rate for empirical measures of uniform draws from the ball at
// level R: H(mu | gibbs(alpha*)) + alpha* (moment_map(mu) - R) when the
// moment is at most R, +inf otherwise. The empirical overload inherits the
// +inf convention of relative_entropy against a density.
double orlicz_sanov_rate(const Density1D& mu, const OrliczFunction& M,
                         double R);
double orlicz_sanov_rate(const EmpiricalMeasure& mu, const OrliczFunction& M,
                         double R);

}  // namespace ldp
