#pragma once

#include <functional>

namespace ldp {

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;
  int evals = 0;
  bool converged = true;
};

// Adaptive Gauss-Kronrod 7/15 on a finite interval.  Splits the interval with
// the largest error estimate until the global estimate meets the tolerance.
// Integrable endpoint singularities (log, inverse square root) are handled by
// the subdivision clustering toward the endpoint.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-10, double abs_tol = 0.0,
                     int max_segments = 4000);

// Integral over the whole real line for a decaying integrand.  Locates the
// peak on a coarse scan, then truncates where |f| falls below `trunc` times
// the peak value.
QuadResult integrate_line(const std::function<double(double)>& f,
                          double rel_tol = 1e-10, double trunc = 1e-18);

// Same truncation strategy on [a, +inf).
QuadResult integrate_halfline(const std::function<double(double)>& f, double a,
                              double rel_tol = 1e-10, double trunc = 1e-18);

// log of the integral of e^{h(x)} over [a, +inf) or the whole line for a log
// integrand h that decays to -inf in the tails.  The integrand is shifted by
// its peak value so the quadrature never overflows.  Returns -inf when the
// integrand is negligible everywhere and +inf when h has not started to
// decay by the scan cap.
double log_integral_halfline(const std::function<double(double)>& h, double a,
                             double rel_tol = 1e-11);
double log_integral_line(const std::function<double(double)>& h,
                         double rel_tol = 1e-11);

}  // namespace ldp
