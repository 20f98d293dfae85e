#include "ldp/orlicz_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ldp {

double OrliczFunction::operator()(double x) const {
  if (std::abs(x) > domain_bound) return kInf;
  return eval(x);
}

OrliczFunction orlicz_power(double p) {
  if (!(p >= 1)) throw std::invalid_argument("orlicz_power: p must be >= 1");
  OrliczFunction m;
  m.eval = [p](double x) { return std::pow(std::abs(x), p); };
  m.superquadratic = p > 2;
  m.name = "power(" + std::to_string(p) + ")";
  return m;
}

OrliczFunction orlicz_exp_minus_one() {
  OrliczFunction m;
  m.eval = [](double x) {
    const double t = std::abs(x);
    return std::expm1(t) - t;
  };
  m.superquadratic = true;
  m.name = "exp_minus_one";
  return m;
}

OrliczFunction orlicz_piecewise(
    const std::vector<std::pair<double, double>>& knots) {
  if (knots.size() < 2 || knots.front().first != 0.0 ||
      knots.front().second != 0.0)
    throw std::invalid_argument("orlicz_piecewise: need knots starting at (0,0)");
  double prev_slope = 0.0;
  for (size_t i = 1; i < knots.size(); ++i) {
    const double dx = knots[i].first - knots[i - 1].first;
    const double dy = knots[i].second - knots[i - 1].second;
    if (!(dx > 0) || dy < 0)
      throw std::invalid_argument("orlicz_piecewise: knots must increase");
    const double slope = dy / dx;
    if (slope + 1e-12 < prev_slope)
      throw std::invalid_argument("orlicz_piecewise: knot sequence not convex");
    prev_slope = slope;
  }
  auto pts = knots;
  OrliczFunction m;
  m.eval = [pts](double x) {
    double t = std::abs(x);
    if (t >= pts.back().first) {
      const auto& a = pts[pts.size() - 2];
      const auto& b = pts.back();
      const double slope = (b.second - a.second) / (b.first - a.first);
      return b.second + slope * (t - b.first);
    }
    size_t k = 1;
    while (pts[k].first < t) ++k;
    const auto& a = pts[k - 1];
    const auto& b = pts[k];
    const double w = (t - a.first) / (b.first - a.first);
    return a.second + w * (b.second - a.second);
  };
  m.superquadratic = false;
  m.name = "piecewise";
  return m;
}

OrliczFunction orlicz_restrict(OrliczFunction M, double bound) {
  if (!(bound > 0)) throw std::invalid_argument("orlicz_restrict: bound <= 0");
  OrliczFunction m = M;
  m.domain_bound = bound;
  m.name = M.name + "|[-" + std::to_string(bound) + "," + std::to_string(bound) + "]";
  return m;
}

}  // namespace ldp
