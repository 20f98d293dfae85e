#pragma once

#include <functional>
#include <vector>

namespace ldp {

struct ScalarMin {
  double x = 0.0;
  double f = 0.0;
  bool converged = false;
};

// Brent minimization on [a, b] (golden section with parabolic steps).
ScalarMin brent_min(const std::function<double(double)>& f, double a, double b,
                    double tol = 1e-10, int maxit = 200);

struct NmResult {
  std::vector<double> x;
  double f = 0.0;
  bool converged = false;
  int evals = 0;
};

// Nelder-Mead downhill simplex.  f may return +inf outside its domain; the
// start point must be strictly inside.
NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     const std::vector<double>& x0,
                     const std::vector<double>& step, double ftol = 1e-12,
                     int maxit = 4000);
NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     const std::vector<double>& x0, double step,
                     double ftol = 1e-12, int maxit = 4000);

// Root of a continuous function with a sign change on [lo, hi].
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol = 1e-13, int maxit = 200);

}  // namespace ldp
