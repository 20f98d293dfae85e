#pragma once

#include <utility>
#include <vector>

#include "ldp/density.hpp"
#include "ldp/empirical.hpp"
#include "ldp/orlicz.hpp"
#include "ldp/orlicz_function.hpp"
#include "ldp/rng.hpp"

namespace ldp {

// lp norm with the p = infinity convention; used by the ball samplers to
// enforce their hard constraints exactly.
double lp_norm(const std::vector<double>& x, double p);

enum class BallMode { uniform, cone };

// Schechtman-Zinn representation: Z has iid p-Gaussian coordinates and
// U^{1/n} Z / |Z|_p is uniform in the unit lp ball; dropping the radial
// factor gives the cone measure on the sphere. p = infinity falls back to
// coordinate-wise uniform draws, where the representation does not apply.
std::vector<double> sample_lp_ball(Rng& rng, int n, double p,
                                   BallMode mode = BallMode::uniform);

// Uniform in n^{1/p} B_p^n, the normalization under which coordinate
// empirical measures have order-one limits.
std::vector<double> sample_scaled_lp_ball(Rng& rng, int n, double p);

enum class OrliczMethod { rejection, hit_and_run };

// Analytic acceptance estimate for the tilted rejection sampler. Under the
// proposal the constraint statistic is asymptotically normal with mean dR
// and variance d sigma*^2, which gives exp(x^2/2) Phi(-x) at x =
// |alpha*| sigma* sqrt(d), decaying like 1/(|alpha*| sigma* sqrt(2 pi d)).
// Heuristic only; used to pick a method before committing to a run.
double acceptance_rate_estimate(int d, const OrliczFunction& M, double R);

// Uniform sampler on the Orlicz ball {x : sum_i M(x_i) <= d R}. The tilt
// solve and the proposal table are shared across draws, so batch sampling
// should reuse one object.
//
// rejection proposes iid coordinates from the Gibbs density of (M, alpha*)
// and accepts with probability exp(|alpha*| (sum M(x_i) - dR)) on the ball,
// which makes the accepted law exactly uniform. hit_and_run runs a chain of
// single-coordinate moves, each resampling one coordinate uniformly on its
// feasible chord; one draw advances d such moves after a burn-in.
class OrliczBallSampler {
 public:
  OrliczBallSampler(int d, OrliczFunction M, double R,
                    OrliczMethod method = OrliczMethod::rejection,
                    int burn_in = -1, double acceptance_floor = 1e-4);

  std::vector<double> draw(Rng& rng);

  int dim() const { return d_; }
  double level() const { return R_; }
  OrliczMethod method() const { return method_; }
  const TiltSolution& tilt() const { return tilt_; }
  // Accepted over proposed counts so far; 0 before the first proposal.
  double measured_acceptance() const;

 private:
  void chain_step(Rng& rng);

  int d_ = 0;
  OrliczFunction M_;
  double R_ = 0;
  OrliczMethod method_ = OrliczMethod::rejection;
  double floor_ = 1e-4;
  TiltSolution tilt_;
  CdfTable proposal_;
  std::vector<double> state_;
  double state_sum_ = 0;
  bool warmed_ = false;
  int burn_in_ = 0;
  long long proposals_ = 0;
  long long accepts_ = 0;
};

// One-shot convenience wrapper; batch callers should hold the sampler.
std::vector<double> sample_uniform_orlicz_ball(
    Rng& rng, int d, const OrliczFunction& M, double R,
    OrliczMethod method = OrliczMethod::rejection);

// Orthonormal k-frame in R^n, stored column-major.
struct StiefelFrame {
  int n = 0;
  int k = 0;
  std::vector<double> entries;

  double operator()(int i, int j) const { return entries[j * n + i]; }
};

// Largest entry of A^T A - I; the Haar sampler keeps this below 1e-10.
double frame_defect(const StiefelFrame& A);

// Haar frame via thin QR of a Gaussian matrix. Columns are flipped so the
// triangular factor has a positive diagonal; without that convention the
// factorization is only unique up to signs and the output law would depend
// on the QR implementation.
StiefelFrame sample_haar_stiefel(Rng& rng, int n, int k);

// A^T x together with the empirical measure of its k coordinates.
std::pair<std::vector<double>, EmpiricalMeasure> project_empirical(
    const StiefelFrame& A, const std::vector<double>& x);

}  // namespace ldp
