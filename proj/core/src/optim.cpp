#include "ldp/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ldp {

ScalarMin brent_min(const std::function<double(double)>& f, double a, double b,
                    double tol, int maxit) {
  const double gold = 0.3819660112501051;
  double x = a + gold * (b - a), w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  for (int it = 0; it < maxit; ++it) {
    const double m = 0.5 * (a + b);
    const double tol1 = tol * std::abs(x) + 1e-14;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) return {x, fx, true};
    bool use_gold = true;
    if (std::abs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double etemp = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * etemp) && p > q * (a - x) &&
          p < q * (b - x)) {
        use_gold = false;
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (m > x ? tol1 : -tol1);
      }
    }
    if (use_gold) {
      e = (x >= m ? a - x : b - x);
      d = gold * e;
    }
    const double u = (std::abs(d) >= tol1) ? x + d : x + (d > 0 ? tol1 : -tol1);
    const double fu = f(u);
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; w = x; x = u;
      fv = fw; fw = fx; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; w = u;
        fv = fw; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  return {x, fx, false};
}

NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     const std::vector<double>& x0,
                     const std::vector<double>& step, double ftol, int maxit) {
  const int n = static_cast<int>(x0.size());
  NmResult out;
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (int i = 1; i <= n; ++i) pts[i][i - 1] += step[i - 1];
  for (int i = 0; i <= n; ++i) {
    fv[i] = f(pts[i]);
    ++out.evals;
  }
  auto centroid = [&](int skip) {
    std::vector<double> c(n, 0.0);
    for (int i = 0; i <= n; ++i) {
      if (i == skip) continue;
      for (int j = 0; j < n; ++j) c[j] += pts[i][j];
    }
    for (double& v : c) v /= n;
    return c;
  };
  auto blend = [&](const std::vector<double>& c, const std::vector<double>& p,
                   double t) {
    std::vector<double> r(n);
    for (int j = 0; j < n; ++j) r[j] = c[j] + t * (p[j] - c[j]);
    return r;
  };
  for (int it = 0; it < maxit; ++it) {
    int lo = 0, hi = 0, nh = 0;
    for (int i = 1; i <= n; ++i) {
      if (fv[i] < fv[lo]) lo = i;
      if (fv[i] > fv[hi]) { nh = hi; hi = i; }
      else if (fv[i] > fv[nh] && i != hi) nh = i;
    }
    if (std::isfinite(fv[hi]) &&
        std::abs(fv[hi] - fv[lo]) <=
            ftol * (std::abs(fv[lo]) + std::abs(fv[hi])) + 1e-300) {
      out.x = pts[lo];
      out.f = fv[lo];
      out.converged = true;
      return out;
    }
    const auto c = centroid(hi);
    auto xr = blend(c, pts[hi], -1.0);
    double fr = f(xr);
    ++out.evals;
    if (fr < fv[lo]) {
      auto xe = blend(c, pts[hi], -2.0);
      double fe = f(xe);
      ++out.evals;
      if (fe < fr) { pts[hi] = xe; fv[hi] = fe; }
      else { pts[hi] = xr; fv[hi] = fr; }
    } else if (fr < fv[nh]) {
      pts[hi] = xr;
      fv[hi] = fr;
    } else {
      auto xc = blend(c, pts[hi], (fr < fv[hi]) ? -0.5 : 0.5);
      double fc = f(xc);
      ++out.evals;
      if (fc < std::min(fr, fv[hi])) {
        pts[hi] = xc;
        fv[hi] = fc;
      } else {  // shrink toward the best vertex
        for (int i = 0; i <= n; ++i) {
          if (i == lo) continue;
          for (int j = 0; j < n; ++j)
            pts[i][j] = pts[lo][j] + 0.5 * (pts[i][j] - pts[lo][j]);
          fv[i] = f(pts[i]);
          ++out.evals;
        }
      }
    }
  }
  int lo = 0;
  for (int i = 1; i <= n; ++i)
    if (fv[i] < fv[lo]) lo = i;
  out.x = pts[lo];
  out.f = fv[lo];
  out.converged = false;
  return out;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol, int maxit) {
  double flo = f(lo);
  for (int it = 0; it < maxit && hi - lo > tol * (1.0 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm <= 0.0) == (flo <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     const std::vector<double>& x0, double step, double ftol,
                     int maxit) {
  return nelder_mead(f, x0, std::vector<double>(x0.size(), step), ftol, maxit);
}

}  // namespace ldp
