#include "ldp/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ldp/quad.hpp"

namespace ldp {

double Density1D::pdf(double x) const {
  const double lp = log_pdf(x);
  return std::isfinite(lp) ? std::exp(lp) : (lp > 0 ? kInf : 0.0);
}

bool check_normalization(Density1D& f, double tol) {
  auto [lo, hi] = effective_bounds(f);
  const QuadResult q =
      integrate([&](double x) { return f.pdf(x); }, lo, hi, 1e-10, 1e-12);
  const bool ok = q.converged && std::abs(q.value - 1.0) <= tol;
  if (ok) f.normalization_checked = true;
  return ok;
}

std::pair<double, double> effective_bounds(const Density1D& f, double cut) {
  double lo = f.support_lo;
  double hi = f.support_hi;
  if (std::isfinite(lo) && std::isfinite(hi)) return {lo, hi};

  // Scan a geometric grid for the highest finite log density.
  double best_x = 0.0;
  double best = -kInf;
  auto consider = [&](double x) {
    if (x < f.support_lo || x > f.support_hi) return;
    const double lp = f.log_pdf(x);
    if (std::isfinite(lp) && lp > best) {
      best = lp;
      best_x = x;
    }
  };
  consider(std::min(std::max(0.0, f.support_lo), f.support_hi));
  for (double t = 1e-6; t < 1e9; t *= 1.7) {
    consider(t);
    consider(-t);
  }
  if (!std::isfinite(best))
    throw std::runtime_error("effective_bounds: no finite density value found");

  const double thresh = best + std::log(cut);
  auto walk = [&](double dir, double bound) {
    if (std::isfinite(bound)) return bound;
    double x = best_x;
    double step = 1.0;
    int below = 0;
    while (below < 3) {
      x += dir * step;
      step *= 1.5;
      if (f.log_pdf(x) < thresh)
        ++below;
      else
        below = 0;
      if (std::abs(x) > 1e12)
        throw std::runtime_error("effective_bounds: density tail too heavy");
    }
    return x;
  };
  if (!std::isfinite(lo)) lo = walk(-1.0, f.support_lo);
  if (!std::isfinite(hi)) hi = walk(+1.0, f.support_hi);
  return {lo, hi};
}

CdfTable::CdfTable(const Density1D& f, double lo, double hi, int panels) {
  if (!(hi > lo) || panels < 2)
    throw std::invalid_argument("CdfTable: bad range or panel count");
  lo_ = lo;
  hi_ = hi;
  x_.resize(panels + 1);
  c_.resize(panels + 1);
  for (int i = 0; i <= panels; ++i)
    x_[i] = lo + (hi - lo) * static_cast<double>(i) / panels;
  c_[0] = 0.0;
  auto pdf = [&](double x) { return f.pdf(x); };
  for (int i = 0; i < panels; ++i) {
    const QuadResult q = integrate(pdf, x_[i], x_[i + 1], 1e-9, 1e-15, 200);
    c_[i + 1] = c_[i] + std::max(0.0, q.value);
  }
  const double total = c_.back();
  mass_defect_ = std::abs(total - 1.0);
  if (total <= 0)
    throw std::runtime_error("CdfTable: zero total mass on the given range");
  for (double& c : c_) c /= total;
  c_.back() = 1.0;
}

double CdfTable::cdf(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return 1.0;
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const size_t k = static_cast<size_t>(it - x_.begin()) - 1;
  const double w = (x - x_[k]) / (x_[k + 1] - x_[k]);
  return c_[k] + w * (c_[k + 1] - c_[k]);
}

double CdfTable::inverse(double u) const {
  if (u <= 0.0) return lo_;
  if (u >= 1.0) return hi_;
  const auto it = std::upper_bound(c_.begin(), c_.end(), u);
  const size_t k = static_cast<size_t>(it - c_.begin()) - 1;
  const double dc = c_[k + 1] - c_[k];
  if (dc <= 0) return 0.5 * (x_[k] + x_[k + 1]);
  const double w = (u - c_[k]) / dc;
  return x_[k] + w * (x_[k + 1] - x_[k]);
}

Density1D gaussian_density(double mean, double sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("gaussian_density: sigma <= 0");
  Density1D f;
  const double log_norm = -std::log(sigma) - 0.5 * std::log(2.0 * M_PI);
  f.log_pdf = [mean, sigma, log_norm](double x) {
    const double z = (x - mean) / sigma;
    return log_norm - 0.5 * z * z;
  };
  f.name = "gaussian";
  return f;
}

}  // namespace ldp
