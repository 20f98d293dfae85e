#pragma once

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace ldp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// One-dimensional probability density represented through its log. The
// log_pdf returns -inf outside [support_lo, support_hi]; interior values of
// +inf are allowed for integrable singularities.
struct Density1D {
  std::function<double(double)> log_pdf;
  double support_lo = -kInf;
  double support_hi = kInf;
  bool normalization_checked = false;
  std::string name;

  double pdf(double x) const;
};

// Integrates the density over its support and checks the total mass against
// 1 within tol. Sets normalization_checked when the check passes.
bool check_normalization(Density1D& f, double tol = 1e-6);

// Finite interval carrying all but a ~cut fraction of the mass. Used to pick
// integration and tabulation ranges for full-line densities.
std::pair<double, double> effective_bounds(const Density1D& f,
                                           double cut = 1e-16);

// Cumulative distribution function tabulated on a fixed grid, with inverse
// lookup for sampling and distance computations. Each panel is integrated
// adaptively, so interior integrable singularities are handled.
class CdfTable {
 public:
  CdfTable() = default;
  CdfTable(const Density1D& f, double lo, double hi, int panels = 2048);

  double cdf(double x) const;
  double inverse(double u) const;
  double mass_defect() const { return mass_defect_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<double>& grid() const { return x_; }
  const std::vector<double>& cumulative() const { return c_; }

 private:
  std::vector<double> x_;
  std::vector<double> c_;
  double lo_ = 0;
  double hi_ = 0;
  double mass_defect_ = 0;
};

Density1D gaussian_density(double mean, double sigma);

}  // namespace ldp
