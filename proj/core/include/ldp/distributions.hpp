#pragma once

#include <vector>

#include "ldp/density.hpp"
#include "ldp/orlicz_function.hpp"
#include "ldp/rng.hpp"

namespace ldp {

// p-generalized Gaussian f_p(x) = exp(-|x|^p/p) / (2 p^{1/p} Gamma(1+1/p)).
double p_gaussian_log_pdf(double x, double p);
double p_gaussian_pdf(double x, double p);
Density1D p_gaussian_density(double p);

// Exact sampler: sign * (p G)^{1/p} with G ~ Gamma(1/p, 1). The p = 1 and
// p = 2 cases use the exponential and normal shortcuts.
double p_gaussian_sample(Rng& rng, double p);
std::vector<double> p_gaussian_sample_vec(Rng& rng, int n, double p);

// q-th absolute moment M_p(q) of f_p.
double moment_Mpq(double p, double q);

// Ullman density h_p on [-1, 1]; p = infinity gives the arcsine density.
double ullman_density(double x, double p);

// Support endpoint b_p of the rescaled law with unit p-th absolute moment;
// b_infinity is fixed to 1.
double ullman_support_bp(double p);

// Rescaled Ullman law on [-b_p, b_p], and its push-forward under |.| with
// density 2 b_p^{-1} h_p(x/b_p) on [0, b_p].
struct UllmanLaw {
  double p = 2;
  double b_p = 2;
  Density1D density;
  bool singular_variant = false;
};
UllmanLaw ullman_law(double p);
UllmanLaw ullman_singular_law(double p);

// Normalized density proportional to e^{alpha M(x)} on the domain of M.
// Requires alpha < 0 unless M has a bounded domain.
Density1D gibbs_density(const OrliczFunction& M, double alpha);

}  // namespace ldp
