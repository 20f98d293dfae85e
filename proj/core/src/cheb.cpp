#include "ldp/cheb.hpp"

#include <cmath>
#include <stdexcept>

namespace ldp {

ChebFit::ChebFit(const std::function<double(double)>& f, double a, double b,
                 int n)
    : a_(a), b_(b), coef_(static_cast<size_t>(n)) {
  if (!(b > a) || n < 2) throw std::invalid_argument("ChebFit: bad arguments");
  std::vector<double> fx(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double theta = M_PI * (j + 0.5) / n;
    const double x = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(theta);
    fx[static_cast<size_t>(j)] = f(x);
  }
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int j = 0; j < n; ++j)
      s += fx[static_cast<size_t>(j)] * std::cos(M_PI * k * (j + 0.5) / n);
    coef_[static_cast<size_t>(k)] = 2.0 * s / n;
  }
}

ChebFit ChebFit::derivative() const {
  const size_t n = coef_.size();
  ChebFit d;
  d.a_ = a_;
  d.b_ = b_;
  d.coef_.assign(n, 0.0);
  if (n < 2) return d;
  d.coef_[n - 2] = 2.0 * static_cast<double>(n - 1) * coef_[n - 1];
  for (size_t j = n - 2; j-- > 0;)
    d.coef_[j] = d.coef_[j + 2] + 2.0 * static_cast<double>(j + 1) * coef_[j + 1];
  const double scale = 2.0 / (b_ - a_);
  for (double& c : d.coef_) c *= scale;
  return d;
}

double ChebFit::operator()(double x) const {
  const double t = (2.0 * x - a_ - b_) / (b_ - a_);
  double d = 0.0, dd = 0.0;
  for (size_t k = coef_.size(); k-- > 1;) {
    const double sv = d;
    d = 2.0 * t * d - dd + coef_[k];
    dd = sv;
  }
  return t * d - dd + 0.5 * coef_[0];
}

}  // namespace ldp
