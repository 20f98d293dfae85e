#include "ldp/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "ldp/optim.hpp"

namespace ldp {
namespace {

constexpr double kInfQuad = std::numeric_limits<double>::infinity();

}  // namespace
namespace {

// 15-point Kronrod extension of 7-point Gauss, nodes on [-1, 1].
const double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
const double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
const double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, err;
  bool operator<(const Segment& o) const { return err < o.err; }
};

Segment eval_gk(const std::function<double(double)>& f, double a, double b,
                int* evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  // Evaluate with a nudge fallback so integrable singularities that land
  // exactly on a node do not poison the sum. The nudge distance shrinks with
  // the segment, so repeated splitting still converges.
  auto fval = [&](double x) {
    double v = f(x);
    if (std::isfinite(v)) return v;
    const double eps = std::max(1e-13 * (h + std::abs(x)), 1e-300);
    v = f(x + (x <= c ? eps : -eps));
    if (std::isfinite(v)) return v;
    v = f(x + (x <= c ? -eps : eps));
    return std::isfinite(v) ? v : 0.0;
  };
  double resk = 0.0, resg = 0.0;
  for (int j = 0; j < 8; ++j) {
    double fv;
    if (j == 7) {
      fv = fval(c);
      resk += kWgk[7] * fv;
      resg += kWg[3] * fv;
    } else {
      const double x = h * kXgk[j];
      const double f1 = fval(c - x);
      const double f2 = fval(c + x);
      fv = f1 + f2;
      resk += kWgk[j] * fv;
      if (j % 2 == 1) resg += kWg[j / 2] * fv;
    }
  }
  *evals += 15;
  Segment s;
  s.a = a;
  s.b = b;
  s.value = resk * h;
  s.err = std::abs((resk - resg) * h);
  return s;
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, double abs_tol, int max_segments) {
  QuadResult out;
  if (!(b > a)) return out;
  std::priority_queue<Segment> heap;
  Segment s0 = eval_gk(f, a, b, &out.evals);
  double total = s0.value, err = s0.err;
  heap.push(s0);
  int nseg = 1;
  auto tol = [&]() { return std::max(rel_tol * std::abs(total), abs_tol); };
  while (err > tol() && nseg < max_segments) {
    Segment top = heap.top();
    if (top.err <= 0.0) break;  // no further refinement possible
    heap.pop();
    const double mid = 0.5 * (top.a + top.b);
    if (mid <= top.a || mid >= top.b) {  // interval at machine resolution
      heap.push(Segment{top.a, top.b, top.value, 0.0});
      err -= top.err;
      continue;
    }
    Segment l = eval_gk(f, top.a, mid, &out.evals);
    Segment r = eval_gk(f, mid, top.b, &out.evals);
    total += l.value + r.value - top.value;
    err += l.err + r.err - top.err;
    heap.push(l);
    heap.push(r);
    ++nseg;
  }
  out.value = total;
  out.abs_err = err;
  out.converged = err <= std::max(tol(), 1e-300);
  return out;
}

namespace {

// Coarse scan for the peak of a decaying integrand.
double find_peak(const std::function<double(double)>& f, double lo_mag,
                 double hi_mag) {
  double best_x = 0.0, best = std::abs(f(0.0));
  for (double m = lo_mag; m <= hi_mag; m *= 1.6) {
    for (double s : {-1.0, 1.0}) {
      const double v = std::abs(f(s * m));
      if (std::isfinite(v) && v > best) {
        best = v;
        best_x = s * m;
      }
    }
  }
  return best_x;
}

// Walk outward from x0 in direction dir until |f| stays below cut.
double find_cutoff(const std::function<double(double)>& f, double x0,
                   double dir, double cut) {
  double step = std::max(1e-3, 1e-3 * std::abs(x0));
  double x = x0;
  int quiet = 0;
  for (int it = 0; it < 4000; ++it) {
    x += dir * step;
    const double v = std::abs(f(x));
    if (std::isfinite(v) && v > cut) {
      quiet = 0;
    } else {
      if (++quiet >= 4) return x;
    }
    step *= 1.25;
    if (std::abs(x) > 1e12) return x;
  }
  return x;
}

}  // namespace

QuadResult integrate_line(const std::function<double(double)>& f,
                          double rel_tol, double trunc) {
  const double xp = find_peak(f, 1e-3, 1e8);
  const double peak = std::max(std::abs(f(xp)), 1e-300);
  const double cut = peak * trunc;
  const double lo = find_cutoff(f, xp, -1.0, cut);
  const double hi = find_cutoff(f, xp, +1.0, cut);
  return integrate(f, lo, hi, rel_tol);
}

QuadResult integrate_halfline(const std::function<double(double)>& f, double a,
                              double rel_tol, double trunc) {
  double best_x = a, best = std::abs(f(a));
  for (double m = 1e-3; m <= 1e8; m *= 1.6) {
    const double v = std::abs(f(a + m));
    if (std::isfinite(v) && v > best) {
      best = v;
      best_x = a + m;
    }
  }
  const double cut = std::max(best, 1e-300) * trunc;
  const double hi = find_cutoff(f, best_x, +1.0, cut);
  return integrate(f, a, hi, rel_tol);
}

namespace {

constexpr double kLogDrop = 60.0;

// Walk from x0 in direction dir until h stays kLogDrop below the peak value.
// Returns NaN when h has not decayed by the cap (non-integrable input).
double log_cutoff(const std::function<double(double)>& h, double x0,
                  double dir, double peak) {
  double step = std::max(1e-3, 1e-3 * std::abs(x0));
  double x = x0;
  int quiet = 0;
  for (int it = 0; it < 4000; ++it) {
    x += dir * step;
    const double v = h(x);
    if (std::isfinite(v) && v > peak - kLogDrop) {
      quiet = 0;
    } else {
      if (++quiet >= 4) return x;
    }
    step *= 1.25;
    if (std::abs(x) > 1e12) return std::nan("");
  }
  return std::nan("");
}

double log_integral_core(const std::function<double(double)>& h, double lo_cap,
                         double peak_guess_lo, double rel_tol) {
  // Geometric scan for the peak of h, then a local polish so the shift
  // keeps the exponentiated integrand well conditioned.
  double best_x = lo_cap, best = h(lo_cap);
  if (!std::isfinite(best)) best = -kInfQuad;
  for (double m = peak_guess_lo; m <= 1e9; m *= 1.5) {
    for (double s : {1.0, -1.0}) {
      const double x = lo_cap == 0.0 && s < 0.0 ? -1.0 : lo_cap + s * m;
      if (x < lo_cap && lo_cap == 0.0) continue;
      const double v = h(x);
      if (std::isfinite(v) && v > best) {
        best = v;
        best_x = x;
      }
    }
  }
  if (best == -kInfQuad) return -kInfQuad;
  {
    const double w = std::max(std::abs(best_x), peak_guess_lo);
    double blo = best_x - 0.7 * w;
    if (blo < lo_cap) blo = lo_cap;
    const double bhi = best_x + 0.7 * w;
    const ScalarMin m =
        brent_min([&](double x) { return -h(x); }, blo, bhi,
                  1e-10 * (1.0 + std::abs(best_x)));
    if (-m.f > best) {
      best = -m.f;
      best_x = m.x;
    }
  }
  double lo = lo_cap;
  if (best_x > lo_cap) {
    lo = log_cutoff(h, best_x, -1.0, best);
    if (std::isnan(lo) || lo < lo_cap) lo = lo_cap;
  }
  const double hi = log_cutoff(h, best_x, +1.0, best);
  if (std::isnan(hi)) return kInfQuad;
  const double shift = best;
  const QuadResult q = integrate(
      [&](double x) {
        const double v = h(x);
        return std::isfinite(v) ? std::exp(v - shift) : 0.0;
      },
      lo, hi, rel_tol);
  return q.value > 0.0 ? shift + std::log(q.value) : -kInfQuad;
}

}  // namespace

double log_integral_halfline(const std::function<double(double)>& h, double a,
                             double rel_tol) {
  return log_integral_core(h, a, 1e-8, rel_tol);
}

double log_integral_line(const std::function<double(double)>& h,
                         double rel_tol) {
  double best_x = 0.0, best = h(0.0);
  if (!std::isfinite(best)) best = -kInfQuad;
  for (double m = 1e-8; m <= 1e9; m *= 1.5) {
    for (double s : {1.0, -1.0}) {
      const double v = h(s * m);
      if (std::isfinite(v) && v > best) {
        best = v;
        best_x = s * m;
      }
    }
  }
  if (best == -kInfQuad) return -kInfQuad;
  {
    const double w = std::max(std::abs(best_x), 1e-8);
    const ScalarMin m =
        brent_min([&](double x) { return -h(x); }, best_x - 0.7 * w,
                  best_x + 0.7 * w, 1e-10 * (1.0 + std::abs(best_x)));
    if (-m.f > best) {
      best = -m.f;
      best_x = m.x;
    }
  }
  const double lo = log_cutoff(h, best_x, -1.0, best);
  const double hi = log_cutoff(h, best_x, +1.0, best);
  if (std::isnan(lo) || std::isnan(hi)) return kInfQuad;
  const double shift = best;
  const QuadResult q = integrate(
      [&](double x) {
        const double v = h(x);
        return std::isfinite(v) ? std::exp(v - shift) : 0.0;
      },
      lo, hi, rel_tol);
  return q.value > 0.0 ? shift + std::log(q.value) : -kInfQuad;
}

}  // namespace ldp
