#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "ldp/empirical.hpp"
#include "ldp/rng.hpp"

using namespace ldp;

TEST_CASE("empirical measure normalization and moments") {
  EmpiricalMeasure mu = make_empirical({1.0, 2.0, 3.0, 4.0});
  CHECK(mu.normalized());
  CHECK(mu.mean() == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(mu.abs_moment(2.0) == doctest::Approx(7.5).epsilon(1e-14));
  EmpiricalMeasure w = make_empirical({0.0, 1.0}, {3.0, 1.0});
  CHECK(w.normalized());
  CHECK(w.mean() == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("ks distance of the midpoint grid against the uniform cdf") {
  const int n = 500;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = (i + 0.5) / n;
  const double d = ks_distance(grid, [](double x) { return x; });
  CHECK(d == doctest::Approx(0.5 / n).epsilon(1e-10));
}

TEST_CASE("two-sample ks is zero on identical samples and detects shifts") {
  Rng rng = make_stream(3, 0);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<double> a(20000), b(20000);
  for (auto& x : a) x = nd(rng);
  CHECK(ks_two_sample(a, a) == 0.0);
  for (auto& x : b) x = nd(rng) + 0.1;
  const double d = ks_two_sample(a, b);
  // Shift of 0.1 moves the cdf by about phi(0) * 0.1 = 0.04.
  CHECK(d > 0.02);
  CHECK(d < 0.07);
}

TEST_CASE("wasserstein distance between samples") {
  Rng rng = make_stream(4, 0);
  std::exponential_distribution<double> ed(1.0);
  std::vector<double> a(5000), b(5000);
  for (auto& x : a) x = ed(rng);
  for (size_t i = 0; i < b.size(); ++i) b[i] = a[i] + 0.25;
  CHECK(wasserstein1_samples(a, b) == doctest::Approx(0.25).epsilon(1e-12));
  // Unequal sizes fall back to the quantile integral.
  std::vector<double> c(a.begin(), a.begin() + 3000);
  const double d = wasserstein1_samples(a, c);
  CHECK(d < 0.05);
}

TEST_CASE("wasserstein distance against a tabulated law") {
  Density1D uniform;
  uniform.log_pdf = [](double x) {
    return (x >= 0.0 && x <= 1.0) ? 0.0 : -kInf;
  };
  uniform.support_lo = 0.0;
  uniform.support_hi = 1.0;
  CdfTable table(uniform, 0.0, 1.0, 512);
  CHECK(table.mass_defect() < 1e-12);
  const int n = 2000;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = (i + 0.5) / n;
  CHECK(wasserstein1(grid, table) < 1e-3);
  std::vector<double> shifted(grid);
  for (double& x : shifted) x += 0.2;
  const double d = wasserstein1(shifted, table);
  CHECK(d == doctest::Approx(0.2).epsilon(0.02));
}
