#include "ldp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "ldp/distributions.hpp"

namespace ldp {

namespace {

double unit_uniform(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng);
}

// Largest t with M(t) <= c, the half-width of the feasible chord of one
// coordinate. The returned point is itself feasible, so a uniform draw from
// [-t, t] never violates the constraint by rounding.
double chord_halfwidth(const OrliczFunction& M, double c) {
  if (!(c > 0.0) && M(0.0) >= c) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (M(hi) <= c) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e154) return lo;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (M(mid) <= c)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

double lp_norm(const std::vector<double>& x, double p) {
  double top = 0.0;
  for (double v : x) top = std::max(top, std::abs(v));
  if (top == 0.0 || p == kInf) return top;
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v) / top, p);
  return top * std::pow(s, 1.0 / p);
}

std::vector<double> sample_lp_ball(Rng& rng, int n, double p, BallMode mode) {
  if (n < 1) throw std::invalid_argument("sample_lp_ball: n must be positive");
  if (!(p >= 1.0))
    throw std::invalid_argument("sample_lp_ball: p must be in [1, infinity]");

  std::vector<double> x;
  if (p == kInf) {
    x.resize(n);
    double top = 0.0;
    do {
      for (double& v : x) v = 2.0 * unit_uniform(rng) - 1.0;
      top = lp_norm(x, p);
    } while (mode == BallMode::cone && top == 0.0);
    if (mode == BallMode::cone)
      for (double& v : x) v /= top;
    return x;
  }

  double norm = 0.0;
  do {
    x = p_gaussian_sample_vec(rng, n, p);
    norm = lp_norm(x, p);
  } while (norm == 0.0);
  double scale = 1.0 / norm;
  if (mode == BallMode::uniform)
    scale *= std::pow(unit_uniform(rng), 1.0 / n);
  for (double& v : x) v *= scale;
  const double check = lp_norm(x, p);
  if (check > 1.0)
    for (double& v : x) v /= check;
  return x;
}

std::vector<double> sample_scaled_lp_ball(Rng& rng, int n, double p) {
  std::vector<double> x = sample_lp_ball(rng, n, p, BallMode::uniform);
  if (p != kInf) {
    const double scale = std::pow(static_cast<double>(n), 1.0 / p);
    for (double& v : x) v *= scale;
  }
  return x;
}

double acceptance_rate_estimate(int d, const OrliczFunction& M, double R) {
  if (d < 1)
    throw std::invalid_argument("acceptance_rate_estimate: d must be positive");
  const TiltSolution ts = solve_alpha_star(M, R);
  const double a = std::abs(ts.alpha_star);
  const double x = a * std::sqrt(d * ts.sigma2_star);
  if (x < 1e-8) return 1.0;
  // exp(x^2/2) Phi(-x), switching to the Mills asymptote once erfc
  // underflows.
  if (x > 25.0) return 1.0 / (x * std::sqrt(2.0 * M_PI));
  const double v = std::exp(0.5 * x * x) * 0.5 * std::erfc(x / std::sqrt(2.0));
  return std::min(1.0, v);
}

OrliczBallSampler::OrliczBallSampler(int d, OrliczFunction M, double R,
                                     OrliczMethod method, int burn_in,
                                     double acceptance_floor)
    : d_(d),
      M_(std::move(M)),
      R_(R),
      method_(method),
      floor_(acceptance_floor),
      tilt_(solve_alpha_star(M_, R)) {
  if (d < 1)
    throw std::invalid_argument("OrliczBallSampler: d must be positive");

  if (method_ == OrliczMethod::rejection) {
    const double est = acceptance_rate_estimate(d_, M_, R_);
    if (est < floor_)
      throw std::runtime_error(
          "OrliczBallSampler: predicted acceptance " + std::to_string(est) +
          " is below the floor " + std::to_string(floor_) +
          "; use the hit_and_run method at this dimension");
    const Density1D g = gibbs_density(M_, tilt_.alpha_star);
    double lo = g.support_lo;
    double hi = g.support_hi;
    if (!std::isfinite(lo) || !std::isfinite(hi))
      std::tie(lo, hi) = effective_bounds(g);
    proposal_ = CdfTable(g, lo, hi, 4096);
  } else {
    state_.assign(d_, 0.0);
    state_sum_ = 0.0;
    burn_in_ = burn_in >= 0 ? burn_in : 10 * d_;
  }
}

void OrliczBallSampler::chain_step(Rng& rng) {
  std::uniform_int_distribution<int> pick(0, d_ - 1);
  const int i = pick(rng);
  const double rest = state_sum_ - M_(state_[i]);
  const double b = chord_halfwidth(M_, d_ * R_ - rest);
  const double t = b * (2.0 * unit_uniform(rng) - 1.0);
  state_[i] = t;
  state_sum_ = rest + M_(t);
}

std::vector<double> OrliczBallSampler::draw(Rng& rng) {
  if (method_ == OrliczMethod::rejection) {
    const double cap = d_ * R_;
    const long long max_attempts =
        std::max<long long>(1000000, static_cast<long long>(50.0 / floor_));
    for (long long attempt = 0; attempt < max_attempts; ++attempt) {
      std::vector<double> x(d_);
      double s = 0.0;
      for (double& v : x) {
        v = proposal_.inverse(unit_uniform(rng));
        s += M_(v);
      }
      ++proposals_;
      if (s > cap) continue;
      const double log_accept = tilt_.alpha_star < 0.0
                                    ? -tilt_.alpha_star * (s - cap)
                                    : -tilt_.alpha_star * s;
      if (std::log(unit_uniform(rng)) <= log_accept) {
        ++accepts_;
        return x;
      }
    }
    throw std::runtime_error(
        "OrliczBallSampler: no acceptance in " + std::to_string(max_attempts) +
        " proposals; use the hit_and_run method at this dimension");
  }

  if (!warmed_) {
    for (int s = 0; s < burn_in_; ++s) chain_step(rng);
    warmed_ = true;
  }
  for (int s = 0; s < d_; ++s) chain_step(rng);
  // Incremental sums drift at rounding level; refresh before handing the
  // state out so the ball constraint holds exactly.
  double fresh = 0.0;
  for (double v : state_) fresh += M_(v);
  state_sum_ = fresh;
  while (state_sum_ > d_ * R_) {
    for (double& v : state_) v *= 1.0 - 1e-12;
    state_sum_ = 0.0;
    for (double v : state_) state_sum_ += M_(v);
  }
  return state_;
}

double OrliczBallSampler::measured_acceptance() const {
  return proposals_ == 0
             ? 0.0
             : static_cast<double>(accepts_) / static_cast<double>(proposals_);
}

std::vector<double> sample_uniform_orlicz_ball(Rng& rng, int d,
                                               const OrliczFunction& M,
                                               double R, OrliczMethod method) {
  OrliczBallSampler sampler(d, M, R, method);
  return sampler.draw(rng);
}

double frame_defect(const StiefelFrame& A) {
  double worst = 0.0;
  for (int a = 0; a < A.k; ++a)
    for (int b = 0; b <= a; ++b) {
      double dot = 0.0;
      for (int i = 0; i < A.n; ++i) dot += A(i, a) * A(i, b);
      worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

StiefelFrame sample_haar_stiefel(Rng& rng, int n, int k) {
  if (k < 1 || k > n)
    throw std::invalid_argument("sample_haar_stiefel: need 1 <= k <= n");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd G(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) G(i, j) = gauss(rng);

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q =
      qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
  const Eigen::MatrixXd R =
      qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (int j = 0; j < k; ++j)
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);

  StiefelFrame A;
  A.n = n;
  A.k = k;
  A.entries.assign(Q.data(), Q.data() + static_cast<std::size_t>(n) * k);
  return A;
}

std::pair<std::vector<double>, EmpiricalMeasure> project_empirical(
    const StiefelFrame& A, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != A.n)
    throw std::invalid_argument("project_empirical: vector length " +
                                std::to_string(x.size()) +
                                " does not match frame rows " +
                                std::to_string(A.n));
  std::vector<double> y(A.k, 0.0);
  for (int j = 0; j < A.k; ++j) {
    double dot = 0.0;
    for (int i = 0; i < A.n; ++i) dot += A(i, j) * x[i];
    y[j] = dot;
  }
  return {y, make_empirical(y)};
}

}  // namespace ldp
