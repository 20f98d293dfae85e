#include "ldp/ratecalc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "ldp/cheb.hpp"
#include "ldp/distributions.hpp"
#include "ldp/optim.hpp"
#include "ldp/quad.hpp"

namespace ldp {

namespace {

std::string fmt_power(const char* base, double e) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s^%.6g", base, e);
  return std::string(buf);
}

// log E exp(a |U|^q) for U p-Gaussian, by peak-shifted quadrature. Finite
// for every a when q < p.
double log_tilted_moment(double a, double p, double q) {
  const double log_half_norm = std::lgamma(1.0 + 1.0 / p) + std::log(p) / p;
  const double li = log_integral_halfline(
      [&](double u) {
        return a * std::pow(u, q) - std::pow(u, p) / p;
      },
      0.0, 1e-11);
  return li - log_half_norm;
}

// Interpolant cache for a -> log_tilted_moment(a, p, q) on [lo, hi], exact
// evaluation outside. The derivative (the tilted q-th absolute moment) is
// served from the differentiated fit inside the range and from a ratio of
// peak-shifted integrals outside.
struct TiltedMomentCache {
  double p, q, lo, hi;
  ChebFit fit;
  ChebFit dfit;

  TiltedMomentCache(double p_, double q_, double lo_, double hi_, int deg)
      : p(p_),
        q(q_),
        lo(lo_),
        hi(hi_),
        fit([&](double a) { return log_tilted_moment(a, p_, q_); }, lo_, hi_,
            deg),
        dfit(fit.derivative()) {}

  double operator()(double a) const {
    if (a >= lo && a <= hi) return fit(a);
    return log_tilted_moment(a, p, q);
  }

  double prime(double a) const {
    if (a >= lo && a <= hi) return dfit(a);
    const double num = log_integral_halfline(
        [&](double u) {
          return q * std::log(u) + a * std::pow(u, q) - std::pow(u, p) / p;
        },
        0.0, 1e-11);
    const double den = log_integral_halfline(
        [&](double u) {
          return a * std::pow(u, q) - std::pow(u, p) / p;
        },
        0.0, 1e-11);
    return std::exp(num - den);
  }
};

// The cumulant caches are expensive to build, so they are shared across all
// rate evaluations with the same exponents.
struct NormTables {
  std::shared_ptr<TiltedMomentCache> chi;
  CumulantFunction full;
};

struct ProjTables {
  std::shared_ptr<TiltedMomentCache> psi;
  CumulantFunction full;
};

std::shared_ptr<NormTables> norm_tables(double p, double q) {
  static std::mutex mu;
  static std::map<std::pair<double, double>, std::shared_ptr<NormTables>> reg;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(p, q);
  const auto it = reg.find(key);
  if (it != reg.end()) return it->second;
  auto tb = std::make_shared<NormTables>();
  tb->chi = std::make_shared<TiltedMomentCache>(p, q, -50.0, 50.0, 220);
  const auto cache = tb->chi;
  tb->full.dim = 2;
  tb->full.name = "lq_lp_cumulant";
  tb->full.eval = [cache, p, q](const std::vector<double>& t) {
    const double t1 = t[0], t2 = t[1];
    if (t2 >= 1.0 / p) return kInf;
    // Scaling out the |s|^p tilt turns the integral into a pure |s|^q tilt
    // of the p-Gaussian, which the cache knows.
    const double shrink = -std::log1p(-p * t2) / p;
    const double a = t1 * std::exp(q * shrink);
    return shrink + (a == 0.0 ? 0.0 : (*cache)(a));
  };
  reg[key] = tb;
  return tb;
}

std::shared_ptr<ProjTables> proj_tables(double p) {
  static std::mutex mu;
  static std::map<double, std::shared_ptr<ProjTables>> reg;
  std::lock_guard<std::mutex> lock(mu);
  const auto it = reg.find(p);
  if (it != reg.end()) return it->second;
  auto tb = std::make_shared<ProjTables>();
  tb->psi = std::make_shared<TiltedMomentCache>(p, 2.0, 0.0, 60.0, 220);
  const auto cache = tb->psi;
  tb->full.dim = 3;
  tb->full.name = "projection_cumulant";
  tb->full.eval = [cache, p](const std::vector<double>& t) {
    const double t0 = t[0], t1 = t[1], t2 = t[2];
    if (t0 >= 0.5 || t2 >= 1.0 / p) return kInf;
    // The Gaussian coordinate integrates out exactly, leaving a quadratic
    // tilt of the p-Gaussian with the |s|^p part scaled away as above.
    const double shrink = -std::log1p(-p * t2) / p;
    const double c =
        t1 * t1 * std::exp(2.0 * shrink) / (2.0 * (1.0 - 2.0 * t0));
    return -0.5 * std::log1p(-2.0 * t0) + shrink +
           (c == 0.0 ? 0.0 : (*cache)(c));
  };
  reg[p] = tb;
  return tb;
}

}  // namespace

double RateFunction::eval(const std::vector<double>& x) const {
  const double v = eval_raw(x);
  if (v < 0.0 && v > -1e-8) return 0.0;
  return v;
}

double cumulant_lq_lp(double t1, double t2, double p, double q) {
  if (!(q < p) || q < 1.0)
    throw std::invalid_argument("cumulant_lq_lp: requires 1 <= q < p");
  if (t2 >= 1.0 / p) return kInf;
  const double log_half_norm = std::lgamma(1.0 + 1.0 / p) + std::log(p) / p;
  const double li = log_integral_halfline(
      [&](double u) {
        return t1 * std::pow(u, q) + (t2 - 1.0 / p) * std::pow(u, p);
      },
      0.0, 1e-11);
  return li - log_half_norm;
}

CumulantFunction make_lq_lp_cumulant(double p, double q) {
  if (!(q < p) || q < 1.0)
    throw std::invalid_argument("make_lq_lp_cumulant: requires 1 <= q < p");
  return norm_tables(p, q)->full;
}

CumulantFunction make_projection_cumulant(double p) {
  if (!(p > 2.0))
    throw std::invalid_argument("make_projection_cumulant: requires p > 2");
  return proj_tables(p)->full;
}

LegendreResult lq_lp_cumulant_transform(double x1, double x2, double p,
                                        double q) {
  if (!(q < p) || q < 1.0)
    throw std::invalid_argument(
        "lq_lp_cumulant_transform: requires 1 <= q < p");
  const auto tb = norm_tables(p, q);
  LegendreResult out;
  out.arg = {0.0, 0.0};
  // The two coordinates are means of (|s|^q, |s|^p), which concentrate on
  // the strictly convex curve x2 = x1^{p/q}; mean pairs fill the open
  // region above it and nothing else, so everything on or below the curve
  // is an unbounded supremum.
  if (x1 <= 0.0 || x2 <= std::pow(x1, p / q)) {
    out.value = kInf;
    out.flag = SupFlag::unbounded;
    return out;
  }
  // Interior stationary points sweep out x2/x1^{p/q} strictly between 1 and
  // q^{p/q} Gamma((p+1)/q) / Gamma(1/q). Above that band the supremum moves
  // to the t2 = 1/p edge of the effective domain, where the |s|^p tilt
  // cancels and the remaining |s|^q profile maximizes in closed form.
  const double band = std::pow(q, p / q) *
                      std::exp(std::lgamma((p + 1.0) / q) - std::lgamma(1.0 / q));
  if (x2 >= band * std::pow(x1, p / q)) {
    out.value = x2 / p - 1.0 / q - std::log(q * x1) / q -
                std::lgamma(1.0 + 1.0 / q) + std::lgamma(1.0 + 1.0 / p) +
                std::log(p) / p;
    out.arg = {-1.0 / (q * x1), 1.0 / p};
    out.flag = SupFlag::boundary;
    return out;
  }
  const double lx1 = std::log(x1), lx2 = std::log(x2);
  auto resid = [&](double a) {
    const double cp = tb->chi->prime(a);
    const double w = 1.0 + q * a * cp;
    if (!(w > 0.0) || !(cp > 0.0)) return -1e18;
    return (p / q) * (lx1 - std::log(cp)) + std::log(w) - lx2;
  };

  // Bracket the unique stationary tilt: dense scan over the cached range,
  // then geometric extensions where the derivative needs direct quadrature.
  double alo = 0.0, ahi = 0.0;
  bool found = false;
  double prev_a = tb->chi->lo;
  double prev_s = resid(prev_a);
  for (int k = 1; k <= 100 && !found; ++k) {
    const double a = tb->chi->lo + k * (tb->chi->hi - tb->chi->lo) / 100.0;
    const double s = resid(a);
    if (prev_s == 0.0 || (prev_s < 0.0) != (s < 0.0)) {
      alo = prev_a;
      ahi = a;
      found = true;
    }
    prev_a = a;
    prev_s = s;
  }
  for (int side = 0; side < 2 && !found; ++side) {
    prev_a = side == 0 ? tb->chi->hi : tb->chi->lo;
    prev_s = resid(prev_a);
    for (int k = 0; k < 9 && !found; ++k) {
      const double a = 2.0 * prev_a;
      const double s = resid(a);
      if ((prev_s < 0.0) != (s < 0.0)) {
        alo = std::min(prev_a, a);
        ahi = std::max(prev_a, a);
        found = true;
      }
      prev_a = a;
      prev_s = s;
    }
  }
  if (!found) return legendre_nd(tb->full, {x1, x2});

  const double ahat = bisect_root(resid, alo, ahi,
                                  1e-12 * (1.0 + std::abs(alo) + std::abs(ahi)));
  const double cp = tb->chi->prime(ahat);
  const double u = x1 / cp;
  const double t1 = ahat / u;
  const double t2 = (1.0 - std::pow(u, -p / q)) / p;
  out.value = t1 * x1 + t2 * x2 - (std::log(u) / q + (*tb->chi)(ahat));
  out.arg = {t1, t2};
  out.flag = SupFlag::attained;
  return out;
}

LegendreResult projection_cumulant_transform(double tau0, double tau1,
                                             double tau2, double p) {
  if (!(p > 2.0))
    throw std::invalid_argument("projection_cumulant_transform: requires p > 2");
  const auto tb = proj_tables(p);
  LegendreResult out;
  out.arg = {0.0, 0.0, 0.0};
  // The coordinates are means of (z^2, zu, |u|^p). Cauchy-Schwarz plus the
  // power-mean bound E u^2 <= (E|u|^p)^{2/p} confine them to the open
  // region tau1^2 < tau0 tau2^{2/p}; outside it the supremum is unbounded.
  if (tau0 <= 0.0 || tau2 <= 0.0 ||
      tau1 * tau1 >= tau0 * std::pow(tau2, 2.0 / p)) {
    out.value = kInf;
    out.flag = SupFlag::unbounded;
    return out;
  }
  if (tau1 == 0.0) {
    const double t0 = 0.5 * (1.0 - 1.0 / tau0);
    const double t2 = (1.0 - 1.0 / tau2) / p;
    out.value = 0.5 * (tau0 - 1.0 - std::log(tau0)) +
                (tau2 - 1.0 - std::log(tau2)) / p;
    out.arg = {t0, 0.0, t2};
    out.flag = SupFlag::attained;
    return out;
  }

  const double target = 2.0 * std::log(std::abs(tau1)) - std::log(tau0) -
                        (2.0 / p) * std::log(tau2);
  auto resid = [&](double lc) {
    const double c = std::exp(lc);
    const double dp = tb->psi->prime(c);
    if (!(dp > 0.0)) return -1e18;
    const double w = 1.0 + 2.0 * c * dp;
    return std::log(2.0 * c) + 2.0 * std::log(dp) -
           (1.0 + 2.0 / p) * std::log(w) - target;
  };

  const double lcap = std::log(tb->psi->hi);
  double llo = 0.0, lhi = 0.0;
  bool found = false;
  double prev_l = std::log(1e-10);
  double prev_s = resid(prev_l);
  for (int k = 1; k <= 80 && !found; ++k) {
    const double l = std::log(1e-10) + k * (lcap - std::log(1e-10)) / 80.0;
    const double s = resid(l);
    if ((prev_s < 0.0) != (s < 0.0)) {
      llo = prev_l;
      lhi = l;
      found = true;
    }
    prev_l = l;
    prev_s = s;
  }
  for (int k = 0; k < 9 && !found; ++k) {
    const double l = prev_l + std::log(2.0);
    const double s = resid(l);
    if ((prev_s < 0.0) != (s < 0.0)) {
      llo = prev_l;
      lhi = l;
      found = true;
    }
    prev_l = l;
    prev_s = s;
  }
  if (!found) return legendre_nd(tb->full, {tau0, tau1, tau2});

  const double lhat = bisect_root(resid, llo, lhi, 1e-13);
  const double c = std::exp(lhat);
  const double dp = tb->psi->prime(c);
  const double w = 1.0 + 2.0 * c * dp;
  const double A = w / tau0;
  const double B = w / tau2;
  const double t0 = 0.5 * (1.0 - A);
  const double t2 = (1.0 - B) / p;
  const double t1 = 2.0 * c * dp / tau1;
  out.value = t0 * tau0 + t1 * tau1 + t2 * tau2 + 0.5 * std::log(A) +
              std::log(B) / p - (*tb->psi)(c);
  out.arg = {t0, t1, t2};
  out.flag = SupFlag::attained;
  return out;
}

double relative_entropy(const Density1D& nu, const Density1D& lambda) {
  const auto [a, b] = effective_bounds(nu, 1e-18);
  // Absolute-continuity scan: any visible nu mass where lambda vanishes
  // makes the entropy infinite.
  const int kScan = 1600;
  for (int i = 0; i <= kScan; ++i) {
    const double x = a + (b - a) * i / kScan;
    if (nu.log_pdf(x) > -40.0 && !std::isfinite(lambda.log_pdf(x)))
      return kInf;
  }
  const QuadResult r = integrate(
      [&](double x) {
        const double ln = nu.log_pdf(x);
        if (!std::isfinite(ln)) return 0.0;
        double ll = lambda.log_pdf(x);
        if (!std::isfinite(ll)) ll = -745.0;
        return std::exp(ln) * (ln - ll);
      },
      a, b, 1e-10, 1e-13);
  return std::max(0.0, r.value);
}

double relative_entropy(const EmpiricalMeasure& nu, const Density1D& lambda) {
  (void)nu;
  (void)lambda;
  // Atoms are never absolutely continuous with respect to a density.
  return kInf;
}

double smoothed_relative_entropy(const EmpiricalMeasure& nu,
                                 const Density1D& lambda, double bandwidth) {
  if (nu.atoms.empty())
    throw std::invalid_argument("smoothed_relative_entropy: empty measure");
  double h = bandwidth;
  if (!(h > 0.0)) {
    const double m = nu.mean();
    double var = 0.0, wsum = 0.0;
    for (size_t i = 0; i < nu.atoms.size(); ++i) {
      var += nu.weights[i] * (nu.atoms[i] - m) * (nu.atoms[i] - m);
      wsum += nu.weights[i];
    }
    var /= wsum;
    h = 1.06 * std::sqrt(std::max(var, 1e-12)) *
        std::pow(static_cast<double>(nu.atoms.size()), -0.2);
  }
  auto atoms = std::make_shared<std::vector<double>>(nu.atoms);
  auto logw = std::make_shared<std::vector<double>>();
  double wsum = 0.0;
  for (double w : nu.weights) wsum += w;
  for (double w : nu.weights) logw->push_back(std::log(w / wsum));
  const double log_norm = std::log(h) + 0.5 * std::log(2.0 * M_PI);
  Density1D kde;
  kde.name = "kde";
  kde.support_lo = -kInf;
  kde.support_hi = kInf;
  kde.log_pdf = [atoms, logw, h, log_norm](double x) {
    double m = -kInf;
    for (size_t i = 0; i < atoms->size(); ++i) {
      const double z = (x - (*atoms)[i]) / h;
      m = std::max(m, (*logw)[i] - 0.5 * z * z);
    }
    if (!std::isfinite(m)) return -kInf;
    double s = 0.0;
    for (size_t i = 0; i < atoms->size(); ++i) {
      const double z = (x - (*atoms)[i]) / h;
      s += std::exp((*logw)[i] - 0.5 * z * z - m);
    }
    return m + std::log(s) - log_norm;
  };
  return relative_entropy(kde, lambda);
}

double log_energy(const Density1D& mu) {
  const auto [a, b] = effective_bounds(mu, 1e-18);
  const QuadResult outer = integrate(
      [&](double x) {
        if (x <= a) return 0.0;
        const double px = mu.pdf(x);
        if (px == 0.0) return 0.0;
        const QuadResult inner = integrate(
            [&](double u) { return std::log(u) * mu.pdf(x - u); }, 0.0, x - a,
            1e-9, 1e-13);
        return px * inner.value;
      },
      a, b, 1e-8, 1e-12);
  return 2.0 * outer.value;
}

double log_energy(const EmpiricalMeasure& mu) {
  const size_t n = mu.atoms.size();
  if (n < 2) return -kInf;
  double wsum = 0.0;
  for (double w : mu.weights) wsum += w;
  double s = 0.0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const double d = std::abs(mu.atoms[i] - mu.atoms[j]);
      if (d == 0.0) return -kInf;
      s += 2.0 * mu.weights[i] * mu.weights[j] * std::log(d);
    }
  }
  return s / (wsum * wsum);
}

ContractResult contract_rate(const RateFunction& base, const VectorMap& map,
                             const std::vector<double>& y,
                             const SearchRegion& region) {
  const size_t d = region.lo.size();
  if (d == 0 || region.hi.size() != d)
    throw std::invalid_argument("contract_rate: bad region");
  for (size_t i = 0; i < d; ++i)
    if (!(region.hi[i] > region.lo[i]))
      throw std::invalid_argument("contract_rate: empty region");

  double ynorm = 0.0;
  for (double v : y) ynorm = std::max(ynorm, std::abs(v));
  const double feas_tol = 1e-6 * (1.0 + ynorm);

  auto sq = [&](const std::vector<double>& x) {
    const std::vector<double> m = map(x);
    if (m.size() != y.size())
      throw std::invalid_argument("contract_rate: map dimension mismatch");
    double s = 0.0;
    for (size_t j = 0; j < y.size(); ++j)
      s += (m[j] - y[j]) * (m[j] - y[j]);
    return s;
  };
  auto inside = [&](const std::vector<double>& x) {
    for (size_t i = 0; i < d; ++i)
      if (x[i] < region.lo[i] || x[i] > region.hi[i]) return false;
    return true;
  };

  // Coarse lattice pass to find promising basins.
  const int kPer = d == 1 ? 129 : d == 2 ? 33 : 11;
  std::vector<std::vector<double>> starts;
  std::vector<double> start_scores;
  std::vector<int> idx(d, 0);
  const double w0 = 1e3;
  while (true) {
    std::vector<double> x(d);
    for (size_t i = 0; i < d; ++i)
      x[i] = region.lo[i] +
             (region.hi[i] - region.lo[i]) * idx[i] / (kPer - 1);
    const double score = base.eval(x) + w0 * sq(x);
    if (std::isfinite(score)) {
      starts.push_back(x);
      start_scores.push_back(score);
    }
    size_t k = 0;
    while (k < d && ++idx[k] == kPer) idx[k++] = 0;
    if (k == d) break;
  }

  ContractResult out;
  out.value = kInf;
  out.arg.assign(d, 0.0);
  if (starts.empty()) return out;

  // Keep the three best lattice points as independent starts.
  std::vector<size_t> order(starts.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t i, size_t j) {
    return start_scores[i] < start_scores[j];
  });
  order.resize(std::min<size_t>(order.size(), 3));

  double best_val = kInf;
  std::vector<double> best_x;
  double best_sq = kInf;
  for (size_t oi : order) {
    std::vector<double> x = starts[oi];
    double step_frac = 0.1;
    for (double w : {1e3, 1e5, 1e7, 1e9}) {
      auto pen = [&](const std::vector<double>& t) {
        if (!inside(t)) return kInf;
        const double bv = base.eval(t);
        if (!std::isfinite(bv)) return kInf;
        return bv + w * sq(t);
      };
      std::vector<double> step(d);
      for (size_t i = 0; i < d; ++i)
        step[i] = step_frac * (region.hi[i] - region.lo[i]);
      const NmResult r = nelder_mead(pen, x, step, 1e-13, 3000);
      if (inside(r.x)) x = r.x;
      step_frac *= 0.2;
    }
    const double fs = sq(x);
    const double bv = base.eval(x);
    if (std::sqrt(fs) <= feas_tol && bv < best_val) {
      best_val = bv;
      best_x = x;
      best_sq = fs;
    }
  }
  if (best_x.empty()) return out;

  out.value = best_val;
  out.arg = best_x;
  out.feasible = std::sqrt(best_sq) <= feas_tol;
  for (size_t i = 0; i < d; ++i) {
    const double w = region.hi[i] - region.lo[i];
    if (best_x[i] - region.lo[i] <= 1e-3 * w ||
        region.hi[i] - best_x[i] <= 1e-3 * w)
      out.on_boundary = true;
  }
  return out;
}

namespace {

struct CombineSplit {
  double value = kInf;
  double z1 = 0.0, z2 = 0.0;
};

CombineSplit combine_core(const RateFunction& r1, const RateFunction& r2,
                          double z) {
  CombineSplit out;
  if (z < 0.0) return out;
  if (z == 0.0) {
    // One factor must vanish; the other is free.
    auto free_min = [&](const RateFunction& r) {
      double best = kInf, barg = 0.0;
      for (int k = -48; k <= 48; ++k) {
        const double zz = std::pow(10.0, k / 4.0);
        const double v = r.eval({zz});
        if (v < best) {
          best = v;
          barg = zz;
        }
      }
      if (std::isfinite(best)) {
        const ScalarMin m = brent_min(
            [&](double t) { return r.eval({std::exp(t)}); },
            std::log(barg) - 0.6, std::log(barg) + 0.6, 1e-10);
        if (m.f < best) {
          best = m.f;
          barg = std::exp(m.x);
        }
      }
      return std::make_pair(best, barg);
    };
    const auto [m2, a2] = free_min(r2);
    const auto [m1, a1] = free_min(r1);
    const double v10 = r1.eval({0.0}) + m2;
    const double v20 = r2.eval({0.0}) + m1;
    if (v10 <= v20) {
      out.value = v10;
      out.z1 = 0.0;
      out.z2 = a2;
    } else {
      out.value = v20;
      out.z1 = a1;
      out.z2 = 0.0;
    }
    return out;
  }

  auto obj = [&](double t) {
    const double v1 = r1.eval({std::exp(t)});
    if (!std::isfinite(v1)) return kInf;
    return v1 + r2.eval({z * std::exp(-t)});
  };
  double tb = 0.0, vb = kInf;
  for (int k = -60; k <= 60; ++k) {
    const double t = 0.5 * k;
    const double v = obj(t);
    if (v < vb) {
      vb = v;
      tb = t;
    }
  }
  if (!std::isfinite(vb)) return out;
  for (double dt : {-0.25, 0.25, -0.125, 0.125}) {
    const double v = obj(tb + dt);
    if (v < vb) {
      vb = v;
      tb = tb + dt;
    }
  }
  const ScalarMin m = brent_min(obj, tb - 0.3, tb + 0.3, 1e-11);
  if (m.f < vb) {
    vb = m.f;
    tb = m.x;
  }
  out.value = vb;
  out.z1 = std::exp(tb);
  out.z2 = z * std::exp(-tb);
  return out;
}

}  // namespace

double combine_independent_product(const RateFunction& r1,
                                   const RateFunction& r2, double z) {
  return combine_core(r1, r2, z).value;
}

double rate_uniform_power(double z) {
  if (z <= 0.0 || z > 1.0) return kInf;
  return -std::log(z);
}

double rate_gaussian_sum(double a) { return 0.5 * a * a; }

double rate_rademacher(double x) {
  if (std::abs(x) > 1.0) return kInf;
  auto term = [](double u) { return u > 0.0 ? 0.5 * u * std::log(u) : 0.0; };
  return term(1.0 + x) + term(1.0 - x);
}

double rate_stretched_cramer(double a, double c, double r, double m) {
  if (!(c > 0.0) || !(r > 0.0) || !(r < 1.0))
    throw std::invalid_argument("rate_stretched_cramer: need c>0, 0<r<1");
  if (a <= m) return 0.0;
  return c * std::pow(a - m, r);
}

double rate_projection_lowp(double x, double p) {
  if (!(p >= 1.0) || !(p < 2.0))
    throw std::invalid_argument("rate_projection_lowp: requires p in [1,2)");
  const double rp = 2.0 * p / (2.0 + p);
  return std::pow(std::abs(x), rp) / rp;
}

double rate_lqnorm_low(double z, double p, double q) {
  if (!(q > p) || !(p >= 1.0))
    throw std::invalid_argument("rate_lqnorm_low: requires q > p >= 1");
  if (z < 0.0) return kInf;
  const double m = moment_Mpq(p, q);
  const double d = std::pow(z, q) - m;
  // Roundoff at the almost-sure limit must not flip the value onto the
  // infinite branch, so a machine-scale band around the zero maps to 0.
  if (std::abs(d) <= 1e-12 * (1.0 + m)) return 0.0;
  if (d < 0.0) return kInf;
  return std::pow(d, p / q) / p;
}

double mdp_sigma2(double p, double q) {
  if (!(q < p) || !(q >= 1.0))
    throw std::invalid_argument("mdp_sigma2: requires 1 <= q < p");
  const double lg = std::lgamma(1.0 / p) + std::lgamma((2.0 * q + 1.0) / p) -
                    2.0 * std::lgamma((q + 1.0) / p);
  const double s2 = (std::exp(lg) - 1.0) / (q * q) - 1.0 / p;
  if (!(s2 > 0.0))
    throw std::domain_error("mdp_sigma2: variance formula nonpositive");
  return s2;
}

double mdp_rate(double t, double sigma2) {
  if (!(sigma2 > 0.0))
    throw std::domain_error("mdp_rate: sigma2 must be positive");
  return t * t / (2.0 * sigma2);
}

FlaggedRate rate_projection_highp(double x, double p) {
  FlaggedRate out;
  if (p == 2.0) {
    if (std::abs(x) >= 1.0) {
      out.value = kInf;
      return out;
    }
    out.value = -0.5 * std::log1p(-x * x);
    return out;
  }
  if (!(p > 2.0))
    throw std::invalid_argument("rate_projection_highp: requires p >= 2");

  // Fiber infimum over tau0, tau2 > 0 with tau1 determined by the target.
  auto transform_at = [&](const std::vector<double>& lam) {
    const double tau0 = std::exp(lam[0]);
    const double tau2 = std::exp(lam[1]);
    const double tau1 = x * std::sqrt(tau0) * std::pow(tau2, 1.0 / p);
    return projection_cumulant_transform(tau0, tau1, tau2, p);
  };
  auto obj = [&](const std::vector<double>& lam) {
    if (std::abs(lam[0]) > 40.0 || std::abs(lam[1]) > 40.0) return kInf;
    return transform_at(lam).value;
  };

  std::vector<double> best = {0.0, 0.0};
  double bv = obj(best);
  for (double l0 : {-1.0, 0.0, 1.0}) {
    for (double l2 : {-1.0, 0.0, 1.0}) {
      const std::vector<double> lam = {l0, l2};
      const double v = obj(lam);
      if (v < bv) {
        bv = v;
        best = lam;
      }
    }
  }
  NmResult r = nelder_mead(obj, best, 0.6, 1e-11, 400);
  for (double step : {0.08, 0.015}) {
    const NmResult r2 = nelder_mead(obj, r.x, step, 1e-12, 250);
    if (r2.f <= r.f) r = r2;
  }
  const LegendreResult fin = transform_at(r.x);
  out.value = std::max(0.0, fin.value);
  out.flag = fin.flag;
  return out;
}

FlaggedRate rate_lqnorm_high_directional(double z2, double p, double q) {
  FlaggedRate out;
  if (!(z2 > 0.0)) {
    out.value = kInf;
    return out;
  }
  // On the fiber x^{1/q} y^{-1/p} = z2, parameterize by w = log y.
  auto transform_at = [&](double w) {
    const double y = std::exp(w);
    const double xq = std::pow(z2, q) * std::pow(y, q / p);
    return lq_lp_cumulant_transform(xq, y, p, q);
  };
  auto obj = [&](double w) {
    if (std::abs(w) > 25.0) return kInf;
    return transform_at(w).value;
  };
  double wb = 0.0, vb = kInf;
  for (int k = -20; k <= 20; ++k) {
    const double v = obj(k * 1.0);
    if (v < vb) {
      vb = v;
      wb = k;
    }
  }
  if (!std::isfinite(vb)) {
    out.value = kInf;
    out.flag = SupFlag::not_converged;
    return out;
  }
  for (double dw : {-0.5, 0.5, -0.25, 0.25}) {
    const double v = obj(wb + dw);
    if (v < vb) {
      vb = v;
      wb = wb + dw;
    }
  }
  const ScalarMin m = brent_min(obj, wb - 0.6, wb + 0.6, 1e-11);
  if (m.f < vb) {
    vb = m.f;
    wb = m.x;
  }
  const LegendreResult fin = transform_at(wb);
  out.value = std::max(0.0, std::min(vb, fin.value));
  out.flag = fin.flag;
  return out;
}

FlaggedRate rate_lqnorm_high(double z, double p, double q) {
  FlaggedRate out;
  if (!(z > 0.0)) {
    out.value = kInf;
    return out;
  }
  RateFunction radial = rate_fn_uniform_power();
  RateFunction directional;
  directional.dim = 1;
  directional.eval_raw = [p, q](const std::vector<double>& v) {
    return rate_lqnorm_high_directional(v[0], p, q).value;
  };
  const CombineSplit c = combine_core(radial, directional, z);
  out.value = c.value;
  if (std::isfinite(c.value) && c.z2 > 0.0)
    out.flag = rate_lqnorm_high_directional(c.z2, p, q).flag;
  return out;
}

RateFunction rate_fn_uniform_power() {
  RateFunction r;
  r.eval_raw = [](const std::vector<double>& x) {
    return rate_uniform_power(x[0]);
  };
  r.domain_hint = "(0,1]";
  r.speed = "n";
  r.minimizer = std::vector<double>{1.0};
  r.name = "uniform_power";
  return r;
}

RateFunction rate_fn_gaussian_sum() {
  RateFunction r;
  r.eval_raw = [](const std::vector<double>& x) {
    return rate_gaussian_sum(x[0]);
  };
  r.domain_hint = "R";
  r.speed = "n";
  r.minimizer = std::vector<double>{0.0};
  r.name = "gaussian_sum";
  return r;
}

RateFunction rate_fn_rademacher() {
  RateFunction r;
  r.eval_raw = [](const std::vector<double>& x) {
    return rate_rademacher(x[0]);
  };
  r.domain_hint = "[-1,1]";
  r.speed = "n";
  r.minimizer = std::vector<double>{0.0};
  r.name = "rademacher";
  return r;
}

RateFunction rate_fn_stretched(double c, double r, double m) {
  RateFunction f;
  f.eval_raw = [c, r, m](const std::vector<double>& x) {
    return rate_stretched_cramer(x[0], c, r, m);
  };
  f.domain_hint = "upper tail from m";
  f.speed = fmt_power("n", r);
  f.minimizer = std::vector<double>{m};
  f.name = "stretched_cramer";
  return f;
}

RateFunction rate_fn_projection_lowp(double p) {
  RateFunction r;
  r.eval_raw = [p](const std::vector<double>& x) {
    return rate_projection_lowp(x[0], p);
  };
  r.domain_hint = "R";
  r.speed = fmt_power("n", 2.0 * p / (2.0 + p));
  r.minimizer = std::vector<double>{0.0};
  r.name = "projection_lowp";
  return r;
}

RateFunction rate_fn_projection_highp(double p) {
  RateFunction r;
  if (!(p >= 2.0))
    throw std::invalid_argument("rate_fn_projection_highp: requires p >= 2");
  r.eval_raw = [p](const std::vector<double>& x) {
    return rate_projection_highp(x[0], p).value;
  };
  r.domain_hint = "(-1,1)";
  r.speed = "n";
  r.minimizer = std::vector<double>{0.0};
  r.name = "projection_highp";
  return r;
}

RateFunction rate_fn_lqnorm_low(double p, double q) {
  RateFunction r;
  r.eval_raw = [p, q](const std::vector<double>& x) {
    return rate_lqnorm_low(x[0], p, q);
  };
  const double zstar = std::pow(moment_Mpq(p, q), 1.0 / q);
  r.domain_hint = "[M_p(q)^{1/q},inf)";
  r.speed = fmt_power("n", p / q);
  r.minimizer = std::vector<double>{zstar};
  r.name = "lqnorm_low";
  return r;
}

RateFunction rate_fn_lqnorm_high(double p, double q) {
  RateFunction r;
  if (!(q < p) || q < 1.0)
    throw std::invalid_argument("rate_fn_lqnorm_high: requires 1 <= q < p");
  r.eval_raw = [p, q](const std::vector<double>& x) {
    return rate_lqnorm_high(x[0], p, q).value;
  };
  r.domain_hint = "(0,inf)";
  r.speed = "n";
  r.minimizer = std::vector<double>{std::pow(moment_Mpq(p, q), 1.0 / q)};
  r.name = "lqnorm_high";
  return r;
}

RateFunction rate_fn_mdp(double p, double q) {
  const double s2 = mdp_sigma2(p, q);
  RateFunction r;
  r.eval_raw = [s2](const std::vector<double>& x) {
    return mdp_rate(x[0], s2);
  };
  r.domain_hint = "R";
  r.speed = "b_n^2";
  r.minimizer = std::vector<double>{0.0};
  r.name = "mdp";
  return r;
}

}  // namespace ldp
