#include "ldp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ldp/distributions.hpp"
#include "ldp/empirical.hpp"
#include "ldp/orlicz.hpp"
#include "ldp/orlicz_function.hpp"
#include "ldp/rng.hpp"

using namespace ldp;

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double variance_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

double std_error(const std::vector<double>& v) {
  return std::sqrt(variance_of(v) / static_cast<double>(v.size()));
}

// Three binomial standard errors for a probability estimate from n draws.
double three_se(double p, int n) {
  return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace

TEST_CASE("lp ball draws respect their constraints") {
  Rng rng = make_stream(101, 0);
  for (double p : {1.0, 2.0, 3.5, kInf}) {
    for (int n : {1, 3, 10}) {
      for (int rep = 0; rep < 200; ++rep) {
        const auto x = sample_lp_ball(rng, n, p, BallMode::uniform);
        CHECK(lp_norm(x, p) <= 1.0);
        const auto c = sample_lp_ball(rng, n, p, BallMode::cone);
        CHECK(lp_norm(c, p) == doctest::Approx(1.0).epsilon(1e-12));
        const auto s = sample_scaled_lp_ball(rng, n, p);
        const double cap = p == kInf ? 1.0 : std::pow(n, 1.0 / p);
        CHECK(lp_norm(s, p) <= cap * (1.0 + 1e-15));
      }
    }
  }
  CHECK_THROWS_AS(sample_lp_ball(rng, 0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(sample_lp_ball(rng, 4, 0.7), std::invalid_argument);
}

TEST_CASE("low dimensional cell probabilities match exact areas") {
  const int n_draws = 1000000;

  // In one dimension the ball sampler reduces to a uniform sign-symmetric
  // draw, so |X| is uniform on [0, 1].
  {
    Rng rng = make_stream(102, 0);
    std::vector<double> absx(n_draws);
    for (int i = 0; i < n_draws; ++i)
      absx[i] = std::abs(sample_lp_ball(rng, 1, 1.0)[0]);
    CHECK(std::abs(mean_of(absx) - 0.5) <= 3.0 * std_error(absx));
  }

  // Cross-polytope of area 2: quadrant, corner triangle, vertical band, and
  // diagonal half-plane probabilities from plane geometry.
  {
    Rng rng = make_stream(102, 1);
    int quadrant = 0, corner = 0, band = 0, diagonal = 0;
    for (int i = 0; i < n_draws; ++i) {
      const auto x = sample_lp_ball(rng, 2, 1.0);
      if (x[0] > 0 && x[1] > 0) ++quadrant;
      if (x[0] > 0 && x[1] > 0 && x[0] + x[1] < 0.5) ++corner;
      if (std::abs(x[0]) < 0.25) ++band;
      if (x[1] > x[0]) ++diagonal;
    }
    const double inv = 1.0 / n_draws;
    CHECK(std::abs(quadrant * inv - 0.25) <= three_se(0.25, n_draws));
    CHECK(std::abs(corner * inv - 1.0 / 16) <= three_se(1.0 / 16, n_draws));
    const double p_band = 1.0 - 0.75 * 0.75;
    CHECK(std::abs(band * inv - p_band) <= three_se(p_band, n_draws));
    CHECK(std::abs(diagonal * inv - 0.5) <= three_se(0.5, n_draws));
  }

  // Unit disk of area pi: same four cells with circular-segment areas.
  {
    Rng rng = make_stream(102, 2);
    int quadrant = 0, corner = 0, band = 0, diagonal = 0;
    for (int i = 0; i < n_draws; ++i) {
      const auto x = sample_lp_ball(rng, 2, 2.0);
      if (x[0] > 0 && x[1] > 0) ++quadrant;
      if (x[0] > 0 && x[1] > 0 && x[0] + x[1] < 0.5) ++corner;
      if (std::abs(x[0]) < 0.25) ++band;
      if (x[1] > x[0]) ++diagonal;
    }
    const double inv = 1.0 / n_draws;
    CHECK(std::abs(quadrant * inv - 0.25) <= three_se(0.25, n_draws));
    const double p_corner = 0.125 / M_PI;
    CHECK(std::abs(corner * inv - p_corner) <= three_se(p_corner, n_draws));
    const double t = 0.25;
    const double p_band =
        2.0 * (t * std::sqrt(1.0 - t * t) + std::asin(t)) / M_PI;
    CHECK(std::abs(band * inv - p_band) <= three_se(p_band, n_draws));
    CHECK(std::abs(diagonal * inv - 0.5) <= three_se(0.5, n_draws));
  }
}

TEST_CASE("scaled ball norms follow the law of large numbers") {
  const int n = 10000;
  const int reps = 50;

  {
    Rng rng = make_stream(103, 0);
    std::vector<double> ratio(reps);
    for (int r = 0; r < reps; ++r) {
      const auto x = sample_scaled_lp_ball(rng, n, 1.0);
      ratio[r] = lp_norm(x, 2.0) / std::sqrt(n);
    }
    CHECK(std::abs(mean_of(ratio) - std::sqrt(2.0)) < 0.01);
    CHECK(std::abs(mean_of(ratio) - std::sqrt(moment_Mpq(1.0, 2.0))) < 0.01);
  }

  {
    Rng rng = make_stream(103, 1);
    std::vector<double> ratio(reps);
    for (int r = 0; r < reps; ++r) {
      const auto x = sample_scaled_lp_ball(rng, n, 2.0);
      ratio[r] = lp_norm(x, 2.0) / std::sqrt(n);
      CHECK(ratio[r] <= 1.0 + 1e-12);
    }
    CHECK(mean_of(ratio) > 0.999);
  }
}

TEST_CASE("orlicz ball sampler matches closed form laws") {
  // d = 1: the ball {x^2 <= 1} is the interval [-1, 1], so draws are
  // uniform with mean 0 and variance 1/3.
  {
    Rng rng = make_stream(104, 0);
    OrliczBallSampler sampler(1, orlicz_power(2.0), 1.0);
    const int n_draws = 100000;
    std::vector<double> xs(n_draws);
    for (int i = 0; i < n_draws; ++i) {
      xs[i] = sampler.draw(rng)[0];
      CHECK(std::abs(xs[i]) <= 1.0);
    }
    CHECK(std::abs(mean_of(xs)) <= 3.0 * std_error(xs));
    std::vector<double> sq(n_draws);
    for (int i = 0; i < n_draws; ++i) sq[i] = xs[i] * xs[i];
    CHECK(std::abs(variance_of(xs) - 1.0 / 3) <= 3.0 * std_error(sq));
  }

  // M = |x|^p with R = 1 carves out the ball of radius (d R)^{1/p} = d^{1/p},
  // exactly the target of the scaled lp sampler; first-coordinate moments
  // from the two samplers must agree.
  {
    const int d = 20;
    const double p = 3.0;
    const int n_draws = 4000;
    Rng rng = make_stream(104, 1);
    OrliczBallSampler sampler(d, orlicz_power(p), 1.0);
    std::vector<double> a(n_draws), b(n_draws);
    for (int i = 0; i < n_draws; ++i) {
      const auto x = sampler.draw(rng);
      double s = 0.0;
      for (double v : x) s += std::pow(std::abs(v), p);
      CHECK(s <= d * 1.0);
      a[i] = std::pow(std::abs(x[0]), 1.5);
      b[i] = std::pow(std::abs(sample_scaled_lp_ball(rng, d, p)[0]), 1.5);
    }
    const double gap = std::abs(mean_of(a) - mean_of(b));
    const double se = std::sqrt(variance_of(a) / n_draws +
                                variance_of(b) / n_draws);
    CHECK(gap <= 3.0 * se);
  }
}

TEST_CASE("rejection and hit and run agree") {
  const int d = 50;
  const int n_draws = 10000;
  const auto M = orlicz_power(2.0);

  Rng rng_a = make_stream(105, 0);
  OrliczBallSampler rejection(d, M, 1.0, OrliczMethod::rejection);
  std::vector<double> stat_a(n_draws);
  for (int i = 0; i < n_draws; ++i) {
    const auto x = rejection.draw(rng_a);
    double s = 0.0;
    for (double v : x) s += v * v;
    CHECK(s <= d * 1.0);
    stat_a[i] = s / d;
  }

  Rng rng_b = make_stream(105, 1);
  OrliczBallSampler chain(d, M, 1.0, OrliczMethod::hit_and_run);
  std::vector<double> stat_b(n_draws);
  for (int i = 0; i < n_draws; ++i) {
    chain.draw(rng_b);
    const auto x = chain.draw(rng_b);
    double s = 0.0;
    for (double v : x) s += v * v;
    CHECK(s <= d * 1.0);
    stat_b[i] = s / d;
  }

  CHECK(ks_two_sample(stat_a, stat_b) < 0.02);
}

TEST_CASE("acceptance estimates track measurements") {
  const auto M = orlicz_power(2.0);

  CHECK(acceptance_rate_estimate(1, M, 1.0) > 0.2);
  CHECK(acceptance_rate_estimate(1, M, 1.0) <= 1.0);

  double prev = 2.0;
  for (int d : {1, 2, 5, 10, 50, 100, 400}) {
    const double est = acceptance_rate_estimate(d, M, 1.0);
    CHECK(est < prev);
    prev = est;
  }

  {
    Rng rng = make_stream(106, 0);
    OrliczBallSampler sampler(100, M, 1.0);
    for (int i = 0; i < 200; ++i) sampler.draw(rng);
    const double measured = sampler.measured_acceptance();
    const double est = acceptance_rate_estimate(100, M, 1.0);
    CHECK(est / measured > 1.0 / 3);
    CHECK(est / measured < 3.0);
  }

  CHECK(acceptance_rate_estimate(40000000, M, 1.0) < 1e-4);
  CHECK_THROWS_WITH_AS(
      OrliczBallSampler(40000000, M, 1.0, OrliczMethod::rejection),
      doctest::Contains("hit_and_run"), std::runtime_error);
}

TEST_CASE("dichotomy confirmed by direct simulation") {
  // Uniform draws from {sum x_i^2 <= d} checked against the companion
  // constraint sum |x_i| <= d R2, on both sides of theta = sqrt(2/pi).
  const int d = 200;
  const int n_draws = 400;
  const auto M1 = orlicz_power(2.0);
  const auto M2 = orlicz_power(1.0);

  CHECK(intersection_ratio_limit(M1, 1.0, M2, 1.0) == IntersectionLimit::one);
  CHECK(intersection_ratio_limit(M1, 1.0, M2, 0.5) == IntersectionLimit::zero);

  Rng rng = make_stream(107, 0);
  OrliczBallSampler sampler(d, M1, 1.0);
  int inside_one = 0, inside_zero = 0;
  for (int i = 0; i < n_draws; ++i) {
    const auto x = sampler.draw(rng);
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    if (s <= d * 1.0) ++inside_one;
    if (s <= d * 0.5) ++inside_zero;
  }
  CHECK(inside_one > 0.95 * n_draws);
  CHECK(inside_zero <= 0.005 * n_draws);
}

TEST_CASE("haar frames are orthonormal and exchangeable") {
  const int n = 50;
  const int k = 3;
  const int n_draws = 100000;

  Rng rng = make_stream(108, 0);
  std::vector<double> top(n_draws);
  for (int i = 0; i < n_draws; ++i) {
    const StiefelFrame A = sample_haar_stiefel(rng, n, k);
    if (i < 100) CHECK(frame_defect(A) <= 1e-10);
    top[i] = A(0, 0);
  }

  // A unit row is exchangeable over the n coordinates, so each squared
  // entry has mean 1/n.
  std::vector<double> sq(n_draws);
  for (int i = 0; i < n_draws; ++i) sq[i] = top[i] * top[i];
  CHECK(std::abs(mean_of(sq) - 1.0 / n) <= 3.0 * std_error(sq));

  // Direct oracle for one coordinate of a Haar row: a normalized Gaussian.
  Rng rng_o = make_stream(108, 1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> oracle(n_draws);
  for (int i = 0; i < n_draws; ++i) {
    double z0 = 0.0, ss = 0.0;
    for (int j = 0; j < n; ++j) {
      const double z = gauss(rng_o);
      if (j == 0) z0 = z;
      ss += z * z;
    }
    oracle[i] = z0 / std::sqrt(ss);
  }
  CHECK(ks_two_sample(top, oracle) < 0.012);

  CHECK_THROWS_AS(sample_haar_stiefel(rng, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(sample_haar_stiefel(rng, 3, 0), std::invalid_argument);
}

TEST_CASE("projected coordinates form the predicted empirical measure") {
  Rng rng = make_stream(109, 0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  {
    const StiefelFrame A = sample_haar_stiefel(rng, 30, 7);
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<double> x(30);
      for (double& v : x) v = gauss(rng);
      const auto [y, emp] = project_empirical(A, x);
      CHECK(lp_norm(y, 2.0) <= lp_norm(x, 2.0) * (1.0 + 1e-12));
      CHECK(emp.normalized());
      CHECK(static_cast<int>(emp.atoms.size()) == 7);
    }
    std::vector<double> bad(31, 0.0);
    CHECK_THROWS_AS(project_empirical(A, bad), std::invalid_argument);
  }

  {
    const StiefelFrame A = sample_haar_stiefel(rng, 8, 8);
    std::vector<double> x(8);
    for (double& v : x) v = gauss(rng);
    const auto [y, emp] = project_empirical(A, x);
    CHECK(lp_norm(y, 2.0) == doctest::Approx(lp_norm(x, 2.0)).epsilon(1e-10));
  }

  // Sublinear regime: projecting uniform draws from sqrt(n) B_2^n onto
  // k = sqrt(n) Haar directions produces standard Gaussian coordinates.
  {
    const int n = 4096;
    const int k = 64;
    const int reps = 40;
    Rng rng_p = make_stream(109, 1);
    std::vector<double> pooled;
    pooled.reserve(reps * k);
    for (int r = 0; r < reps; ++r) {
      const auto x = sample_scaled_lp_ball(rng_p, n, 2.0);
      const StiefelFrame A = sample_haar_stiefel(rng_p, n, k);
      const auto [y, emp] = project_empirical(A, x);
      pooled.insert(pooled.end(), y.begin(), y.end());
    }
    Rng rng_o = make_stream(109, 2);
    std::vector<double> reference(pooled.size());
    for (double& v : reference) v = gauss(rng_o);
    CHECK(ks_two_sample(pooled, reference) < 0.05);
  }
}

TEST_CASE("identical seeds reproduce draws") {
  for (int run = 0; run < 2; ++run) {
    Rng a = make_stream(110, 7);
    Rng b = make_stream(110, 7);
    CHECK(sample_lp_ball(a, 12, 1.5) == sample_lp_ball(b, 12, 1.5));
    CHECK(sample_scaled_lp_ball(a, 5, kInf) ==
          sample_scaled_lp_ball(b, 5, kInf));

    OrliczBallSampler ra(6, orlicz_power(2.0), 1.0);
    OrliczBallSampler rb(6, orlicz_power(2.0), 1.0);
    CHECK(ra.draw(a) == rb.draw(b));

    OrliczBallSampler ha(6, orlicz_power(2.0), 1.0, OrliczMethod::hit_and_run);
    OrliczBallSampler hb(6, orlicz_power(2.0), 1.0, OrliczMethod::hit_and_run);
    CHECK(ha.draw(a) == hb.draw(b));

    const StiefelFrame fa = sample_haar_stiefel(a, 9, 4);
    const StiefelFrame fb = sample_haar_stiefel(b, 9, 4);
    CHECK(fa.entries == fb.entries);
  }
}
