#include "ldp/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ldp/density.hpp"
#include "ldp/optim.hpp"

namespace ldp {

namespace {

constexpr double kWalkCap = 1e9;

// Largest |t| in direction dir (from 0) where g stays finite, capped.
double finite_extent(const std::function<double(double)>& g, double dir) {
  double t_in = 0.0;
  double t_probe = 0.5 * dir;
  while (std::abs(t_probe) <= kWalkCap && std::isfinite(g(t_probe))) {
    t_in = t_probe;
    t_probe *= 2.0;
  }
  if (std::abs(t_probe) > kWalkCap) return dir * kWalkCap;
  // Domain edge between t_in and t_probe; bisect toward it from inside.
  double lo = t_in, hi = t_probe;
  for (int it = 0; it < 90; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (std::isfinite(g(mid)))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

CumulantFunction cumulant_1d(std::function<double(double)> f,
                             std::string name) {
  CumulantFunction c;
  c.eval = [g = std::move(f)](const std::vector<double>& t) { return g(t[0]); };
  c.dim = 1;
  c.name = std::move(name);
  return c;
}

LegendreResult legendre_1d(const CumulantFunction& f, double x) {
  if (f.dim != 1)
    throw std::invalid_argument("legendre_1d: cumulant must have dim 1");
  auto g = [&](double t) {
    const double v = f.at(t);
    return std::isfinite(v) ? t * x - v : -kInf;
  };
  if (!std::isfinite(g(0.0)))
    throw std::invalid_argument("legendre_1d: f must be finite at 0");

  LegendreResult out;
  out.value = g(0.0);
  out.arg = {0.0};
  out.flag = SupFlag::attained;

  for (double dir : {1.0, -1.0}) {
    const double t_end = finite_extent(g, dir);
    if (t_end == 0.0) continue;
    const double lo = std::min(0.0, t_end);
    const double hi = std::max(0.0, t_end);
    const auto neg = [&](double t) { return -g(t); };
    // Two-stage search: a coarse pass over the full bracket (which can be
    // enormous), then a tight pass around the coarse minimizer.
    const double tol1 = 1e-12 * (1.0 + hi - lo);
    ScalarMin m = brent_min(neg, lo, hi, tol1);
    const double delta = 8.0 * tol1 + 1e-9 * (1.0 + std::abs(m.x));
    const double rlo = std::max(lo, m.x - delta);
    const double rhi = std::min(hi, m.x + delta);
    if (rhi > rlo) {
      const ScalarMin m2 =
          brent_min(neg, rlo, rhi, 1e-14 * (1.0 + std::abs(m.x)));
      if (m2.f < m.f) m = m2;
    }
    struct Cand {
      double t, v;
    };
    Cand best{m.x, -m.f};
    const double g_end = g(t_end);
    // Prefer the endpoint on plateaus so finite limits at infinity get the
    // boundary classification and the exact limiting value.
    if (g_end >= best.v - 1e-12 * (1.0 + std::abs(best.v)))
      best = {t_end, std::max(g_end, best.v)};
    if (best.v > out.value) {
      out.value = best.v;
      out.arg = {best.t};
      out.flag = SupFlag::attained;
      const bool at_end =
          std::abs(best.t - t_end) <= 1e-7 * (1.0 + std::abs(t_end));
      if (at_end) {
        // Distinguish growth without bound from a finite limit by probing
        // the increment over the last doubling.
        const double g_e = g(t_end);
        const double inc = g_e - g(0.5 * t_end);
        if (std::abs(t_end) >= kWalkCap &&
            inc > 1e-7 * (1.0 + std::abs(g_e))) {
          out.value = kInf;
          out.flag = SupFlag::unbounded;
          return out;
        }
        out.flag = SupFlag::boundary;
        if (std::abs(t_end) >= kWalkCap) {
          // Evaluating t x - f(t) at the cap costs about |t x| ulp to
          // cancellation. Re-estimate the finite limit from the first
          // doubling rung where the approach has flattened.
          for (double tk = 2.0 * dir; std::abs(tk) <= 0.25 * std::abs(t_end);
               tk *= 2.0) {
            const double v1 = g(tk);
            const double v2 = g(2.0 * tk);
            if (!std::isfinite(v1) || !std::isfinite(v2)) continue;
            if (std::abs(v2 - v1) <= 1e-13 * (1.0 + std::abs(v2)) &&
                v2 >= g_e - 1e-6 * (1.0 + std::abs(g_e))) {
              out.value = std::max(v1, v2);
              out.arg = {2.0 * tk};
              break;
            }
          }
        }
      }
    }
  }
  return out;
}

LegendreResult legendre_nd(const CumulantFunction& f,
                           const std::vector<double>& x) {
  const int d = f.dim;
  if (d < 1 || d > 3 || static_cast<int>(x.size()) != d)
    throw std::invalid_argument("legendre_nd: dimension mismatch");
  auto neg_g = [&](const std::vector<double>& t) {
    double dot = 0.0;
    for (int i = 0; i < d; ++i) dot += t[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
    const double v = f(t);
    return std::isfinite(v) ? v - dot : kInf;
  };

  std::vector<std::vector<double>> starts;
  starts.emplace_back(static_cast<size_t>(d), 0.0);
  for (double scale : {0.25, 1.0}) {
    for (int i = 0; i < d; ++i) {
      for (double s : {scale, -scale}) {
        std::vector<double> t(static_cast<size_t>(d), 0.0);
        t[static_cast<size_t>(i)] = s;
        starts.push_back(t);
      }
    }
    starts.emplace_back(static_cast<size_t>(d), 0.3 * scale);
  }

  LegendreResult out;
  out.arg.assign(static_cast<size_t>(d), 0.0);
  out.flag = SupFlag::not_converged;
  bool any_feasible = false;
  NmResult best;
  best.f = kInf;
  for (const auto& s : starts) {
    if (!std::isfinite(neg_g(s))) continue;
    any_feasible = true;
    NmResult r = nelder_mead(neg_g, s, 0.4, 1e-13, 6000);
    if (r.f < best.f) best = r;
  }
  if (!any_feasible) {
    out.value = kInf;
    return out;
  }
  for (double step : {0.04, 0.004}) {
    NmResult r = nelder_mead(neg_g, best.x, step, 1e-14, 4000);
    if (r.f < best.f) best = r;
  }

  // Probe for an unbounded supremum along the direction found so far.
  double norm = 0.0;
  for (double t : best.x) norm = std::max(norm, std::abs(t));
  if (norm > 1e8 || (!std::isfinite(best.f) && best.f < 0.0)) {
    out.value = kInf;
    out.flag = SupFlag::unbounded;
    out.arg = best.x;
    return out;
  }
  while (norm > 1e4) {
    std::vector<double> t2 = best.x;
    for (double& t : t2) t *= 2.0;
    const double v2 = neg_g(t2);
    if (v2 < best.f - 1e-6 * (1.0 + std::abs(best.f))) {
      best.x = t2;
      best.f = v2;
      norm *= 2.0;
      if (norm > 1e8) {
        out.value = kInf;
        out.flag = SupFlag::unbounded;
        out.arg = best.x;
        return out;
      }
    } else {
      break;
    }
  }

  out.value = -best.f;
  out.arg = best.x;
  out.flag = best.converged ? SupFlag::attained : SupFlag::not_converged;
  // The supremum dominates the t = 0 value by definition.
  const double g0 = -neg_g(std::vector<double>(static_cast<size_t>(d), 0.0));
  if (g0 > out.value) {
    out.value = g0;
    out.arg.assign(static_cast<size_t>(d), 0.0);
  }
  return out;
}

}  // namespace ldp
