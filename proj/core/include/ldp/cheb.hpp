#pragma once

#include <functional>
#include <vector>

namespace ldp {

// Chebyshev interpolant of a smooth function on [a, b]. Used to cache
// expensive 1D integrals that optimizers evaluate many times.
class ChebFit {
 public:
  ChebFit() = default;
  ChebFit(const std::function<double(double)>& f, double a, double b, int n);

  double operator()(double x) const;
  double lo() const { return a_; }
  double hi() const { return b_; }
  bool contains(double x) const { return x >= a_ && x <= b_; }

  // Interpolant of the derivative on the same interval, obtained by
  // differentiating the Chebyshev series.
  ChebFit derivative() const;

 private:
  double a_ = 0.0;
  double b_ = 1.0;
  std::vector<double> coef_;
};

}  // namespace ldp
