#include "ldp/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ldp {

double EmpiricalMeasure::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

bool EmpiricalMeasure::normalized(double tol) const {
  return atoms.size() == weights.size() &&
         std::abs(total_weight() - 1.0) <= tol;
}

double EmpiricalMeasure::mean() const {
  double s = 0;
  for (size_t i = 0; i < atoms.size(); ++i) s += weights[i] * atoms[i];
  return s;
}

double EmpiricalMeasure::abs_moment(double q) const {
  double s = 0;
  for (size_t i = 0; i < atoms.size(); ++i)
    s += weights[i] * std::pow(std::abs(atoms[i]), q);
  return s;
}

double EmpiricalMeasure::moment(int k) const {
  double s = 0;
  for (size_t i = 0; i < atoms.size(); ++i)
    s += weights[i] * std::pow(atoms[i], k);
  return s;
}

EmpiricalMeasure make_empirical(std::vector<double> points) {
  if (points.empty()) throw std::invalid_argument("make_empirical: no atoms");
  EmpiricalMeasure mu;
  const double w = 1.0 / static_cast<double>(points.size());
  mu.weights.assign(points.size(), w);
  mu.atoms = std::move(points);
  return mu;
}

EmpiricalMeasure make_empirical(std::vector<double> points,
                                std::vector<double> weights) {
  if (points.size() != weights.size() || points.empty())
    throw std::invalid_argument("make_empirical: size mismatch");
  double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0)) throw std::invalid_argument("make_empirical: zero mass");
  for (double& w : weights) w /= total;
  EmpiricalMeasure mu;
  mu.atoms = std::move(points);
  mu.weights = std::move(weights);
  return mu;
}

double ks_distance(std::vector<double> sample,
                   const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_distance: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0;
  for (size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

double wasserstein1_samples(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("wasserstein1_samples: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a.size() == b.size()) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s / static_cast<double>(a.size());
  }
  // General case: integrate |Qa - Qb| over u in (0,1) on the merged grid of
  // quantile breakpoints.
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::vector<double> cuts;
  cuts.reserve(a.size() + b.size());
  for (size_t i = 1; i < a.size(); ++i) cuts.push_back(static_cast<double>(i) / na);
  for (size_t j = 1; j < b.size(); ++j) cuts.push_back(static_cast<double>(j) / nb);
  cuts.push_back(0.0);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  double s = 0;
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double du = cuts[k + 1] - cuts[k];
    if (du <= 0) continue;
    const double u = 0.5 * (cuts[k] + cuts[k + 1]);
    const double qa = a[std::min(a.size() - 1, static_cast<size_t>(u * na))];
    const double qb = b[std::min(b.size() - 1, static_cast<size_t>(u * nb))];
    s += du * std::abs(qa - qb);
  }
  return s;
}

double wasserstein1(std::vector<double> sample, const CdfTable& law) {
  if (sample.empty()) throw std::invalid_argument("wasserstein1: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  const double lo = std::min(sample.front(), law.lo());
  const double hi = std::max(sample.back(), law.hi());
  // F_n is piecewise constant; integrate |F_n - F| with a fine trapezoid on
  // each interval between consecutive breakpoints.
  std::vector<double> cuts;
  cuts.push_back(lo);
  for (double x : sample)
    if (x > cuts.back()) cuts.push_back(x);
  if (hi > cuts.back()) cuts.push_back(hi);
  double total = 0;
  size_t idx = 0;
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    while (idx < sample.size() && sample[idx] <= cuts[k]) ++idx;
    const double fn = static_cast<double>(idx) / n;
    const double a = cuts[k], b = cuts[k + 1];
    const int m = 8;
    double acc = 0;
    for (int j = 0; j <= m; ++j) {
      const double x = a + (b - a) * j / m;
      const double w = (j == 0 || j == m) ? 0.5 : 1.0;
      acc += w * std::abs(fn - law.cdf(x));
    }
    total += acc * (b - a) / m;
  }
  return total;
}

}  // namespace ldp
