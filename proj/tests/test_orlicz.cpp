#include "ldp/orlicz.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ldp/density.hpp"
#include "ldp/empirical.hpp"
#include "ldp/orlicz_function.hpp"
#include "ldp/ratecalc.hpp"
#include "ldp/rng.hpp"

using namespace ldp;

namespace {

// log(2 Gamma(1+1/p)) - (1/p) log(-alpha), the tilt integral of |x|^p.
double power_phi(double p, double alpha) {
  return std::log(2.0) + std::lgamma(1.0 + 1.0 / p) - std::log(-alpha) / p;
}

// Confinement of |t| to [-1, 1]; the tilt integral is 2(e^a - 1)/a.
OrliczFunction boxed_abs() { return orlicz_restrict(orlicz_power(1.0), 1.0); }

}  // namespace

TEST_CASE("orlicz function shape invariants") {
  const std::vector<std::pair<double, double>> knots = {
      {0.0, 0.0}, {1.0, 0.5}, {2.0, 2.0}};
  for (const auto& M :
       {orlicz_power(1.7), orlicz_exp_minus_one(), orlicz_piecewise(knots)}) {
    CHECK(M(0.0) == 0.0);
    for (double t : {0.3, 1.1, 2.7, 5.0}) {
      CHECK(M(t) == doctest::Approx(M(-t)).epsilon(1e-14));
      CHECK(M(t) > 0.0);
    }
    for (int i = 0; i < 40; ++i) {
      const double a = -4.0 + 8.0 * i / 40.0, b = a + 1.3;
      CHECK(M(0.5 * (a + b)) <= 0.5 * (M(a) + M(b)) + 1e-10);
    }
  }

  CHECK_THROWS_AS(orlicz_power(0.5), std::invalid_argument);
  CHECK_THROWS_AS(
      orlicz_piecewise({{0.0, 0.0}, {1.0, 2.0}, {2.0, 3.0}}),
      std::invalid_argument);
  CHECK_THROWS_AS(orlicz_piecewise({{0.5, 0.0}, {1.0, 1.0}}),
                  std::invalid_argument);

  const OrliczFunction boxed = boxed_abs();
  CHECK(boxed(0.5) == 0.5);
  CHECK(boxed(1.5) == kInf);
}

TEST_CASE("tilted cumulant of the cost") {
  CHECK(phi(orlicz_power(2.0), -0.5) ==
        doctest::Approx(0.9189385332046727).epsilon(1e-9));

  for (double p : {1.0, 2.0, 4.0})
    for (double a : {-0.3, -1.0, -2.0})
      CHECK(phi(orlicz_power(p), a) ==
            doctest::Approx(power_phi(p, a)).epsilon(1e-8));

  // Substituting s = e^t collapses the integral to 2e Gamma(1, 1) = 2.
  CHECK(phi(orlicz_exp_minus_one(), -1.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-8));

  const OrliczFunction cubic = orlicz_power(3.0);
  const double h = 1e-4;
  const double fd1 = (phi(cubic, -0.7 + h) - phi(cubic, -0.7 - h)) / (2.0 * h);
  CHECK(phi_prime(cubic, -0.7) == doctest::Approx(fd1).epsilon(1e-6));
  const double fd2 =
      (phi_prime(cubic, -0.7 + h) - phi_prime(cubic, -0.7 - h)) / (2.0 * h);
  CHECK(phi_doubleprime(cubic, -0.7) == doctest::Approx(fd2).epsilon(1e-5));

  // Confined costs admit tilts of either sign.
  CHECK(phi(boxed_abs(), 1.0) ==
        doctest::Approx(1.2344720351728634).epsilon(1e-9));
  CHECK(phi(boxed_abs(), -1.0) ==
        doctest::Approx(std::log(2.0 * (1.0 - std::exp(-1.0)))).epsilon(1e-9));

  CHECK_THROWS_AS(phi(orlicz_power(2.0), 0.1), std::domain_error);
  CHECK_THROWS_AS(phi(orlicz_power(2.0), 0.0), std::domain_error);
  OrliczFunction flat;
  flat.eval = [](double x) { return std::min(x * x, 1.0); };
  flat.name = "flat";
  CHECK_THROWS_AS(phi(flat, -1.0), std::domain_error);
}

TEST_CASE("tilt solving and the gibbs density") {
  for (double p : {1.0, 2.0, 4.0})
    for (double R : {0.5, 1.0, 2.0}) {
      const TiltSolution ts = solve_alpha_star(orlicz_power(p), R);
      CHECK(ts.alpha_star ==
            doctest::Approx(-1.0 / (p * R)).epsilon(1e-9));
      CHECK(ts.sigma2_star == doctest::Approx(p * R * R).epsilon(1e-7));
      CHECK(ts.phi_at ==
            doctest::Approx(power_phi(p, -1.0 / (p * R))).epsilon(1e-8));
      CHECK(std::abs(phi_prime(orlicz_power(p), ts.alpha_star) - R) <= 1e-8);
    }

  CHECK(solve_alpha_star(orlicz_power(1.0), 1.0).alpha_star ==
        doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(solve_alpha_star(orlicz_power(2.0), 1.0).sigma2_star ==
        doctest::Approx(2.0).epsilon(1e-8));

  Density1D g = gibbs_density(orlicz_power(2.0), -0.5);
  CHECK(check_normalization(g, 1e-8));
  CHECK(g.pdf(0.7) == doctest::Approx(std::exp(-0.245) /
                                      std::sqrt(2.0 * M_PI)).epsilon(1e-12));

  // Levels above the uniform mean of a confined cost need a positive tilt.
  CHECK(solve_alpha_star(boxed_abs(), 0.75).alpha_star ==
        doctest::Approx(3.5935119694474261).epsilon(1e-7));
  CHECK(solve_alpha_star(boxed_abs(), 0.30).alpha_star ==
        doctest::Approx(-2.6721038552733855).epsilon(1e-7));

  CHECK_THROWS_WITH_AS(solve_alpha_star(boxed_abs(), 1.5),
                       doctest::Contains("achievable"), std::domain_error);
  CHECK_THROWS_AS(solve_alpha_star(orlicz_power(2.0), -1.0),
                  std::invalid_argument);
}

TEST_CASE("log volume limits") {
  CHECK(log_volume_limit(orlicz_power(2.0), 1.0) ==
        doctest::Approx(1.4189385332046727).epsilon(1e-9));
  CHECK(log_volume_limit(orlicz_power(1.0), 1.0) ==
        doctest::Approx(1.0 + std::log(2.0)).epsilon(1e-9));

  for (double p : {1.0, 2.0, 4.0})
    for (double R : {0.5, 1.0, 2.0}) {
      const double closed = std::log(2.0) + std::lgamma(1.0 + 1.0 / p) +
                            std::log(M_E * p * R) / p;
      CHECK(log_volume_limit(orlicz_power(p), R) ==
            doctest::Approx(closed).epsilon(1e-7));
      const TiltSolution ts = solve_alpha_star(orlicz_power(p), R);
      CHECK(log_volume_limit(orlicz_power(p), R) ==
            doctest::Approx(ts.phi_at - ts.alpha_star * R).epsilon(1e-12));
    }

  CHECK(log_volume_limit(boxed_abs(), 0.30) ==
        doctest::Approx(0.44030161755575933).epsilon(1e-7));
  // Above the uniform mean the constraint is void and the box wins.
  CHECK(log_volume_limit(boxed_abs(), 0.75) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("sharp volume asymptotics") {
  // Exact log volume of { sum |x_i|^p <= d }.
  auto exact_lp = [](double p, int d) {
    return d * (std::log(2.0) + std::lgamma(1.0 + 1.0 / p)) +
           (d / p) * std::log(static_cast<double>(d)) -
           std::lgamma(1.0 + d / p);
  };

  for (double p : {1.0, 2.0, 4.0}) {
    double prev_gap = kInf;
    for (int d : {16, 32, 64, 128, 256}) {
      const VolumeEstimate est = volume_estimate(orlicz_power(p), 1.0, d);
      const double ratio = std::exp(est.log_volume - exact_lp(p, d));
      if (d == 64) CHECK((ratio > 0.9 && ratio < 1.1));
      if (d == 256) CHECK((ratio > 0.97 && ratio < 1.03));
      const double gap = std::abs(ratio - 1.0);
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
  }

  // The prefactor itself, pinned at one point.
  const VolumeEstimate e64 = volume_estimate(orlicz_power(2.0), 1.0, 64);
  CHECK(std::exp(e64.log_volume - exact_lp(2.0, 64)) ==
        doctest::Approx(1.0026074754856418).epsilon(1e-6));
  const VolumeEstimate e16 = volume_estimate(orlicz_power(2.0), 1.0, 16);
  CHECK(e16.volume ==
        doctest::Approx(std::exp(exact_lp(2.0, 16)) * 1.010465651061946)
            .epsilon(1e-6));

  const VolumeEstimate big = volume_estimate(orlicz_power(2.0), 1.0, 10000);
  CHECK(std::abs(big.log_volume / 10000.0 -
                 log_volume_limit(orlicz_power(2.0), 1.0)) < 2e-3);

  CHECK_THROWS_AS(volume_estimate(orlicz_power(2.0), 1.0, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(volume_estimate(boxed_abs(), 0.75, 32), std::domain_error);
}

TEST_CASE("intersection dichotomy") {
  const OrliczFunction sq = orlicz_power(2.0);
  const OrliczFunction ab = orlicz_power(1.0);

  // Gibbs density of (x^2, 1) is the standard normal, whose absolute first
  // moment is sqrt(2/pi).
  const double theta =
      moment_map(gibbs_density(sq, solve_alpha_star(sq, 1.0).alpha_star), ab);
  CHECK(theta == doctest::Approx(0.7978845608028654).epsilon(1e-9));

  CHECK(intersection_ratio_limit(sq, 1.0, ab, 1.0) == IntersectionLimit::one);
  CHECK(intersection_ratio_limit(sq, 1.0, ab, 0.5) == IntersectionLimit::zero);
  CHECK(intersection_ratio_limit(sq, 1.0, sq, 1.0) ==
        IntersectionLimit::critical);

  // Against the Laplace-type Gibbs density of (|x|, 1), a cost growing like
  // e^{|t|/2} has mean 1/2 but infinite second moment, which the one-branch
  // hypothesis needs.
  OrliczFunction half_exp;
  half_exp.eval = [](double x) {
    const double t = std::abs(x);
    return std::expm1(0.5 * t) - 0.5 * t;
  };
  half_exp.superquadratic = true;
  half_exp.name = "half_exp";
  const double theta2 =
      moment_map(gibbs_density(ab, solve_alpha_star(ab, 1.0).alpha_star),
                 half_exp);
  CHECK(theta2 == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(intersection_ratio_limit(ab, 1.0, half_exp, 0.8) ==
        IntersectionLimit::inconclusive);
  CHECK(intersection_ratio_limit(ab, 1.0, half_exp, 0.3) ==
        IntersectionLimit::zero);

  CHECK(std::string(to_string(IntersectionLimit::one)) == "one");
  CHECK(std::string(to_string(IntersectionLimit::inconclusive)) ==
        "inconclusive");

  // The deciding mean matches a Monte-Carlo average over Gibbs draws.
  const Density1D g = gibbs_density(sq, -0.5);
  const CdfTable table(g, -9.0, 9.0, 4096);
  Rng rng = make_stream(31, 0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int n = 20000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = table.inverse(unif(rng));
    const double v = ab(x);
    s += v;
    s2 += v * v;
  }
  const double mean = s / n;
  const double se = std::sqrt((s2 / n - mean * mean) / n);
  CHECK(std::abs(mean - theta) <= 3.0 * se);
}

TEST_CASE("orlicz moment map") {
  CHECK(moment_map(make_empirical({0.0}), orlicz_power(2.0)) == 0.0);
  CHECK(moment_map(make_empirical({-1.0, 2.0}, {0.25, 0.75}),
                   orlicz_power(2.0)) ==
        doctest::Approx(3.25).epsilon(1e-14));

  for (double R : {0.8, 2.0}) {
    const TiltSolution ts = solve_alpha_star(orlicz_power(1.5), R);
    CHECK(moment_map(gibbs_density(orlicz_power(1.5), ts.alpha_star),
                     orlicz_power(1.5)) == doctest::Approx(R).epsilon(1e-6));
  }

  CHECK(moment_map(gaussian_density(0.0, 1.0), orlicz_power(2.0)) ==
        doctest::Approx(1.0).epsilon(1e-9));

  // Mass outside a confined cost's interval costs +inf.
  CHECK(moment_map(gaussian_density(0.0, 1.0), boxed_abs()) == kInf);
  CHECK(moment_map(make_empirical({0.2, 3.0}), boxed_abs()) == kInf);

  Density1D cauchy;
  cauchy.name = "cauchy";
  cauchy.log_pdf = [](double x) {
    return -std::log(M_PI) - std::log1p(x * x);
  };
  CHECK(moment_map(cauchy, orlicz_power(2.0)) == kInf);
}

TEST_CASE("sanov rate for measures constrained to the ball") {
  const OrliczFunction sq = orlicz_power(2.0);

  CHECK(orlicz_sanov_rate(gaussian_density(0.0, 1.0), sq, 1.0) <= 1e-8);
  CHECK(orlicz_sanov_rate(gaussian_density(0.0, 1.0), sq, 1.0) >= 0.0);

  // For a centered Gaussian inside the ball the entropy and tilt terms
  // combine to -log(s2)/2.
  const double s2 = 0.6;
  const double rate =
      orlicz_sanov_rate(gaussian_density(0.0, std::sqrt(s2)), sq, 1.0);
  CHECK(rate == doctest::Approx(-0.5 * std::log(s2)).epsilon(1e-6));
  const TiltSolution ts = solve_alpha_star(sq, 1.0);
  const double by_hand =
      relative_entropy(gaussian_density(0.0, std::sqrt(s2)),
                       gibbs_density(sq, ts.alpha_star)) +
      ts.alpha_star * (s2 - 1.0);
  CHECK(rate == doctest::Approx(by_hand).epsilon(1e-8));

  // Excess second moment is infeasible.
  CHECK(orlicz_sanov_rate(gaussian_density(0.0, std::sqrt(2.0)), sq, 1.0) ==
        kInf);
  // Atomic measures are singular against the Gibbs density.
  CHECK(orlicz_sanov_rate(make_empirical({0.1, -0.4}), sq, 1.0) == kInf);

  int tested = 0;
  for (double m : {0.0, 0.2, 0.4, 0.6})
    for (double v : {0.3, 0.5, 0.7, 0.8, 0.9}) {
      if (m * m + v > 0.99) continue;
      const double r =
          orlicz_sanov_rate(gaussian_density(m, std::sqrt(v)), sq, 1.0);
      CHECK(r > 1e-6);
      ++tested;
    }
  CHECK(tested >= 15);
}
