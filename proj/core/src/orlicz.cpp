#include "ldp/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "ldp/optim.hpp"
#include "ldp/quad.hpp"
#include "ldp/ratecalc.hpp"

namespace ldp {

namespace {

// Peak-shifted log integral of e^{h} on a finite interval.
double log_integral_interval(const std::function<double(double)>& h, double a,
                             double b) {
  const int n = 512;
  double m = -kInf;
  for (int i = 0; i <= n; ++i) {
    const double x = a + (b - a) * i / n;
    const double v = h(x);
    if (v > m && v < kInf) m = v;
  }
  if (m == -kInf) return -kInf;
  const QuadResult r = integrate(
      [&](double x) { return std::exp(h(x) - m); }, a, b, 1e-11);
  return m + std::log(r.value);
}

// A cost that stops growing has no integrable tilt on the full line.
void require_growth(const OrliczFunction& M) {
  const double base = M(100.0);
  for (double t : {1e4, 1e6, 1e9, 1e12}) {
    const double v = M(t);
    if (v == kInf || v > base + 1e-7) return;
  }
  throw std::domain_error(
      "phi: exp(alpha M) is not integrable; the cost must grow to +inf");
}

void check_tilt(const OrliczFunction& M, double alpha) {
  if (M.domain_bound < kInf) return;
  if (!(alpha < 0.0))
    throw std::domain_error(
        "phi: integral of exp(alpha M) diverges for alpha >= 0");
  require_growth(M);
}

// log of the half-integral of M(u)^k e^{alpha M(u)} over u >= 0. The even
// symmetry of the cost makes full-line quantities ratios of these.
double log_half_moment(const OrliczFunction& M, double alpha, int k) {
  auto h = [&](double u) {
    const double m = M(u);
    if (m == kInf) return -kInf;
    return (k == 0 ? 0.0 : k * std::log(m)) + alpha * m;
  };
  if (M.domain_bound < kInf) return log_integral_interval(h, 0.0, M.domain_bound);
  return log_integral_halfline(h, 0.0, 1e-11);
}

// Nonnegative integral against a density with expanding truncations; the
// monotone sequence either stabilizes or the moment is infinite. Window
// edges are additionally probed in log space, where a product whose density
// factor underflows but whose cost factor keeps pace is still visible; a
// plain quadrature would silently truncate such a divergent tail.
double nonneg_moment(const Density1D& mu,
                     const std::function<double(double)>& g) {
  auto f = [&](double x) {
    const double p = mu.pdf(x);
    if (!(p > 0.0)) return 0.0;
    const double v = g(x);
    return v >= kInf ? kInf : v * p;
  };
  auto edge_log = [&](double x) {
    double v = g(x);
    for (int k = 0; k < 64 && v >= kInf; ++k) {
      x *= 0.9;
      v = g(x);
    }
    if (v >= kInf) return kInf;
    if (!(v > 0.0)) return -kInf;
    const double lp = mu.log_pdf(x);
    if (lp == -kInf) return -kInf;
    return lp + std::log(v);
  };
  auto [lo, hi] = effective_bounds(mu);
  double val = 0.0;
  for (int j = 0; j < 15; ++j) {
    const double v = integrate(f, lo, hi, 1e-11).value;
    if (std::isnan(v) || v == kInf) return kInf;
    if (j > 0 && std::abs(v - val) <= 1e-10 * (1.0 + std::abs(v))) {
      const double cut = std::log(1.0 + std::abs(v)) - 40.0;
      const bool tail_lo = lo > mu.support_lo && edge_log(lo) > cut;
      const bool tail_hi = hi < mu.support_hi && edge_log(hi) > cut;
      if (!tail_lo && !tail_hi) return v;
    }
    val = v;
    const double w = hi - lo;
    lo = std::max(mu.support_lo, lo - w);
    hi = std::min(mu.support_hi, hi + w);
  }
  return kInf;
}

}  // namespace

double phi(const OrliczFunction& M, double alpha) {
  check_tilt(M, alpha);
  return std::log(2.0) + log_half_moment(M, alpha, 0);
}

double phi_prime(const OrliczFunction& M, double alpha) {
  check_tilt(M, alpha);
  return std::exp(log_half_moment(M, alpha, 1) - log_half_moment(M, alpha, 0));
}

double phi_doubleprime(const OrliczFunction& M, double alpha) {
  check_tilt(M, alpha);
  const double den = log_half_moment(M, alpha, 0);
  const double m1 = std::exp(log_half_moment(M, alpha, 1) - den);
  const double m2 = std::exp(log_half_moment(M, alpha, 2) - den);
  return m2 - m1 * m1;
}

TiltSolution solve_alpha_star(const OrliczFunction& M, double R) {
  if (!(R > 0.0) || !std::isfinite(R))
    throw std::invalid_argument("solve_alpha_star: R must be in (0, inf)");

  double astar = 0.0;
  if (M.domain_bound == kInf) {
    // The tilted mean runs from +inf down to 0 as alpha goes from 0- to
    // -inf, so bracket in log|alpha|.
    auto g = [&](double l) { return phi_prime(M, -std::exp(l)) - R; };
    const double l_lo = std::log(1e-9), l_hi = std::log(1e6);
    double prev_l = l_lo, prev_s = g(prev_l);
    double blo = 0.0, bhi = 0.0;
    bool found = false;
    for (int k = 1; k <= 60 && !found; ++k) {
      const double l = l_lo + k * (l_hi - l_lo) / 60.0;
      const double s = g(l);
      if (!std::isfinite(s)) continue;
      if (std::isfinite(prev_s) && (prev_s < 0.0) != (s < 0.0)) {
        blo = prev_l;
        bhi = l;
        found = true;
      }
      prev_l = l;
      prev_s = s;
    }
    if (!found)
      throw std::domain_error(
          "solve_alpha_star: no tilt in |alpha| in [1e-9, 1e6] reaches the "
          "level R");
    astar = -std::exp(bisect_root(g, blo, bhi, 1e-12));
  } else {
    // A confined cost caps the attainable mean by its maximum over the
    // interval; the tilt itself may take either sign.
    double mmax = 0.0;
    for (int i = 0; i <= 1024; ++i)
      mmax = std::max(mmax, M(M.domain_bound * i / 1024.0));
    if (!(R < mmax * (1.0 - 1e-9)))
      throw std::domain_error(
          "solve_alpha_star: R >= achievable range (0, " +
          std::to_string(mmax) + ") of the confined cost");
    auto g = [&](double a) { return phi_prime(M, a) - R; };
    double lo = -1.0, hi = 1.0;
    while (g(lo) > 0.0) {
      lo *= 2.0;
      if (lo < -1e12)
        throw std::domain_error("solve_alpha_star: bracketing failed below");
    }
    while (g(hi) < 0.0) {
      hi *= 2.0;
      if (hi > 1e12)
        throw std::domain_error("solve_alpha_star: bracketing failed above");
    }
    astar = bisect_root(g, lo, hi, 1e-13 * (1.0 - lo + hi));
  }

  // Newton polish pins the defining identity well below the contract
  // tolerance; bisection alone leaves it at the bracket width.
  for (int it = 0; it < 3; ++it) {
    const double err = phi_prime(M, astar) - R;
    const double curv = phi_doubleprime(M, astar);
    if (!(curv > 0.0) || !std::isfinite(err)) break;
    const double step = err / curv;
    if (astar - step >= 0.0 && M.domain_bound == kInf) break;
    astar -= step;
    if (std::abs(step) <= 1e-14 * (1.0 + std::abs(astar))) break;
  }

  TiltSolution ts;
  ts.alpha_star = astar;
  ts.R = R;
  ts.phi_at = phi(M, astar);
  ts.sigma2_star = phi_doubleprime(M, astar);
  if (!(ts.sigma2_star > 0.0))
    throw std::domain_error("solve_alpha_star: degenerate tilted variance");
  if (!(std::abs(phi_prime(M, astar) - R) <= 1e-8 * std::max(1.0, R)))
    throw std::domain_error("solve_alpha_star: root refinement failed");
  return ts;
}

double log_volume_limit(const OrliczFunction& M, double R) {
  const TiltSolution ts = solve_alpha_star(M, R);
  // A confined cost whose level exceeds the uniform mean has a positive
  // root; the volume constraint is then void and the ball fills the box.
  if (ts.alpha_star >= 0.0) return phi(M, 0.0);
  return ts.phi_at - ts.alpha_star * R;
}

VolumeEstimate volume_estimate(const OrliczFunction& M, double R, int d) {
  if (d <= 0) throw std::invalid_argument("volume_estimate: d must be >= 1");
  const TiltSolution ts = solve_alpha_star(M, R);
  if (!(ts.alpha_star < 0.0))
    throw std::domain_error(
        "volume_estimate: sharp asymptotics need a negative tilt (level "
        "below the uniform mean of the confined cost)");
  VolumeEstimate v;
  v.log_volume = d * (ts.phi_at - ts.alpha_star * R) -
                 std::log(-ts.alpha_star) -
                 0.5 * std::log(2.0 * M_PI * d * ts.sigma2_star);
  v.volume = std::exp(v.log_volume);
  return v;
}

IntersectionLimit intersection_ratio_limit(const OrliczFunction& M1, double R1,
                                           const OrliczFunction& M2,
                                           double R2) {
  if (!(R2 > 0.0))
    throw std::invalid_argument("intersection_ratio_limit: R2 must be > 0");
  const TiltSolution ts = solve_alpha_star(M1, R1);
  const Density1D p1 = gibbs_density(M1, ts.alpha_star);
  const double theta = moment_map(p1, M2);
  if (std::abs(theta - R2) <= 1e-8 * std::max(1.0, R2))
    return IntersectionLimit::critical;
  if (theta > R2) return IntersectionLimit::zero;
  const double second = nonneg_moment(p1, [&](double x) {
    const double v = M2(x);
    return v >= kInf ? kInf : v * v;
  });
  if (!std::isfinite(second)) return IntersectionLimit::inconclusive;
  return IntersectionLimit::one;
}

const char* to_string(IntersectionLimit v) {
  switch (v) {
    case IntersectionLimit::zero:
      return "zero";
    case IntersectionLimit::one:
      return "one";
    case IntersectionLimit::critical:
      return "critical";
    default:
      return "inconclusive";
  }
}

double moment_map(const Density1D& mu, const OrliczFunction& M) {
  if (M.domain_bound < kInf) {
    const double b = M.domain_bound;
    const double inside = integrate([&](double x) { return mu.pdf(x); },
                                    std::max(mu.support_lo, -b),
                                    std::min(mu.support_hi, b), 1e-11)
                              .value;
    if (inside < 1.0 - 1e-9) return kInf;
  }
  return nonneg_moment(mu, [&](double x) { return M(x); });
}

double moment_map(const EmpiricalMeasure& mu, const OrliczFunction& M) {
  double s = 0.0;
  for (size_t i = 0; i < mu.atoms.size(); ++i) {
    const double v = M(mu.atoms[i]);
    if (v == kInf && mu.weights[i] > 0.0) return kInf;
    s += mu.weights[i] * v;
  }
  return s;
}

double orlicz_sanov_rate(const Density1D& mu, const OrliczFunction& M,
                         double R) {
  const TiltSolution ts = solve_alpha_star(M, R);
  const double mm = moment_map(mu, M);
  // A quadrature-width band keeps the minimizer itself feasible.
  if (!(mm <= R + 1e-8 * std::max(1.0, R))) return kInf;
  const double h = relative_entropy(mu, gibbs_density(M, ts.alpha_star));
  if (h == kInf) return kInf;
  const double v = h + ts.alpha_star * (mm - R);
  return (v < 0.0 && v > -1e-8) ? 0.0 : v;
}

double orlicz_sanov_rate(const EmpiricalMeasure& mu, const OrliczFunction& M,
                         double R) {
  const TiltSolution ts = solve_alpha_star(M, R);
  const double mm = moment_map(mu, M);
  if (!(mm <= R + 1e-8 * std::max(1.0, R))) return kInf;
  // Atomic measures are singular against the Gibbs density, so the entropy
  // term is +inf by convention and the tilt term cannot rescue it.
  return relative_entropy(mu, gibbs_density(M, ts.alpha_star));
}

}  // namespace ldp
