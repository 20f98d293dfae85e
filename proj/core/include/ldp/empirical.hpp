#pragma once

#include <functional>
#include <vector>

#include "ldp/density.hpp"

namespace ldp {

// Finite weighted atom list; weights always sum to 1.
struct EmpiricalMeasure {
  std::vector<double> atoms;
  std::vector<double> weights;

  double total_weight() const;
  bool normalized(double tol = 1e-12) const;
  double mean() const;
  // Weighted sum of |x|^q over the atoms.
  double abs_moment(double q) const;
  double moment(int k) const;
};

EmpiricalMeasure make_empirical(std::vector<double> points);
EmpiricalMeasure make_empirical(std::vector<double> points,
                                std::vector<double> weights);

// Kolmogorov-Smirnov distance between an empirical measure (uniform weights
// assumed sorted or not) and a reference cdf.
double ks_distance(std::vector<double> sample,
                   const std::function<double(double)>& cdf);
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// First Wasserstein distance computed from quantile functions.
double wasserstein1_samples(std::vector<double> a, std::vector<double> b);
// W1 between an empirical sample and a tabulated cdf, as the integral of
// |F_n - F| over the union of both ranges.
double wasserstein1(std::vector<double> sample, const CdfTable& law);

}  // namespace ldp
