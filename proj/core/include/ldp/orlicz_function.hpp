#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ldp/density.hpp"

namespace ldp {

// Even convex function with M(0) = 0, used to define Orlicz balls
// { x : sum M(x_i) <= d R }. A finite domain_bound means M is +inf outside
// [-domain_bound, domain_bound].
struct OrliczFunction {
  std::function<double(double)> eval;
  bool superquadratic = false;
  double domain_bound = kInf;
  std::string name;

  double operator()(double x) const;
};

// M(x) = |x|^p, p >= 1. Superquadratic iff p > 2.
OrliczFunction orlicz_power(double p);

// M(t) = e^{|t|} - 1 - |t|.
OrliczFunction orlicz_exp_minus_one();

// Piecewise linear interpolation of knots (x_i, y_i) given for x >= 0 with
// x_0 = 0, y_0 = 0, extended evenly to the line and linearly beyond the last
// knot. The knot sequence must be convex and increasing.
OrliczFunction orlicz_piecewise(const std::vector<std::pair<double, double>>& knots);

// Restriction of M to [-bound, bound], +inf outside.
OrliczFunction orlicz_restrict(OrliczFunction M, double bound);

}  // namespace ldp
