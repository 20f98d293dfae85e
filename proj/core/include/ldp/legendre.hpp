#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ldp {

// How a supremum was resolved. "boundary" covers both suprema approached at
// an effective-domain edge and finite limits at infinity.
enum class SupFlag { attained, boundary, unbounded, not_converged };

struct LegendreResult {
  double value = 0.0;
  std::vector<double> arg;
  SupFlag flag = SupFlag::attained;
};

// Log moment generating function (or any convex extended-real function of a
// tilt vector). Returns +inf outside the effective domain.
struct CumulantFunction {
  std::function<double(const std::vector<double>&)> eval;
  int dim = 1;
  std::string name;

  double operator()(const std::vector<double>& t) const { return eval(t); }
  double at(double t) const { return eval({t}); }
};

CumulantFunction cumulant_1d(std::function<double(double)> f,
                             std::string name = "");

// sup_t [t x - f(t)] with automatic bracket expansion. Growth past the walk
// cap is reported as unbounded (+inf); a finite limit approached at the cap
// or at a domain edge is reported with the boundary flag.
LegendreResult legendre_1d(const CumulantFunction& f, double x);

// sup_t [<t, x> - f(t)] for dim 2 or 3 by multi-start Nelder-Mead inside the
// effective domain. Requires f finite at 0.
LegendreResult legendre_nd(const CumulantFunction& f,
                           const std::vector<double>& x);

}  // namespace ldp
