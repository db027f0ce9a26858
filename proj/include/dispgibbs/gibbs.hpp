#pragma once

// Extrema of G_n(y,t) = I_{sigma k^n,0}(y,t) + 1 and the classical Gibbs reference.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "dispgibbs/dispersion.hpp"
#include "dispgibbs/parallel.hpp"
#include "dispgibbs/quadrature.hpp"
#include "dispgibbs/special_fn.hpp"

namespace dispgibbs {

/// (1/pi) Si(pi) - 1/2.
inline double wilbraham_gibbs_constant(int order = 64) {
  auto sinc = [](std::complex<double> z) {
    return z == std::complex<double>{0.0, 0.0} ? std::complex<double>{1.0, 0.0} : std::sin(z) / z;
  };
  const cplx si = integrate_segment(sinc, Segment{0.0, kPi, order});
  return si.real() / kPi - 0.5;
}

struct OvershootReport {
  int n = 0;
  cplx sigma{1.0, 0.0};
  double sup_re = 0.0, inf_re = 0.0;
  double sup_im = 0.0, inf_im = 0.0;
  double sup_abs = 0.0, inf_abs = 0.0;
  double arg_sup_re = 0.0;  ///< location of sup_re in y (at the chosen t)
};

struct OvershootOptions {
  double t = 1.0;
  double step = 0.05;     ///< coarse grid spacing, in units of t^{1/n}
  double y_tol = 1e-8;    ///< golden-section tolerance, same units
  int candidates = 3;
  EvalOptions eval{};
};

namespace detail {

/// Maximizes f on [a,b] by golden-section search.
inline std::pair<double, double> golden_max(const std::function<double(double)>& f, double a, double b,
                                            double tol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

/// Best of the grid maximum and the refined top local maxima of v = f(ys).
inline std::pair<double, double> refine_max(const std::vector<double>& ys, const std::vector<double>& v,
                                            const std::function<double(double)>& f, double h, double tol,
                                            int candidates) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < v.size(); ++k)
    if (v[k] > v[best]) best = k;
  std::pair<double, double> out{ys[best], v[best]};
  std::vector<std::size_t> peaks;
  for (std::size_t k = 1; k + 1 < v.size(); ++k)
    if (v[k] >= v[k - 1] && v[k] >= v[k + 1]) peaks.push_back(k);
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  if (peaks.size() > static_cast<std::size_t>(candidates)) peaks.resize(static_cast<std::size_t>(candidates));
  for (std::size_t k : peaks) {
    auto r = golden_max(f, ys[k] - h, ys[k] + h, tol);
    if (r.second > out.second) out = r;
  }
  return out;
}

}  // namespace detail

/// Extrema of Re, Im and |.| of G_n over y in [-L, L] t^{1/n}, L = max(10, 2n).
inline OvershootReport overshoot(int n, cplx sigma = {1.0, 0.0}, const OvershootOptions& opt = {}) {
  const DispersionRelation w = DispersionRelation::monomial(n, sigma);
  const double unit = std::pow(opt.t, 1.0 / n);
  const double L = std::max(10.0, 2.0 * n) * unit;
  const double h = opt.step * unit;
  std::vector<double> ys;
  const int count = static_cast<int>(std::lround(2.0 * L / h));
  for (int k = 0; k <= count; ++k) ys.push_back(-L + k * h);
  auto G = [&](double y) { return eval_I(w, 0, y, opt.t, opt.eval) + 1.0; };
  const std::vector<cplx> g = parallel_map(ys, G);

  OvershootReport rep;
  rep.n = n;
  rep.sigma = sigma;
  auto extremum = [&](auto proj, double sign) {
    std::vector<double> v(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) v[k] = sign * proj(g[k]);
    std::function<double(double)> f = [&](double y) { return sign * proj(G(y)); };
    auto r = detail::refine_max(ys, v, f, h, opt.y_tol * unit, opt.candidates);
    return std::pair{r.first, sign * r.second};
  };
  auto re = [](cplx z) { return z.real(); };
  auto im = [](cplx z) { return z.imag(); };
  auto ab = [](cplx z) { return std::abs(z); };
  auto sr = extremum(re, 1.0);
  rep.sup_re = sr.second;
  rep.arg_sup_re = sr.first;
  rep.inf_re = extremum(re, -1.0).second;
  rep.sup_im = extremum(im, 1.0).second;
  rep.inf_im = extremum(im, -1.0).second;
  rep.sup_abs = extremum(ab, 1.0).second;
  rep.inf_abs = extremum(ab, -1.0).second;
  return rep;
}

inline std::vector<OvershootReport> overshoot_table(const std::vector<int>& ns, cplx sigma = {1.0, 0.0},
                                                    const OvershootOptions& opt = {}) {
  std::vector<OvershootReport> out;
  for (int n : ns) out.push_back(overshoot(n, sigma, opt));
  return out;
}

/// Partial Fourier sum of the indicator of [-1,1] on the period [-2,2]:
/// 1/2 + sum_{k=1}^{n} 2 sin(k pi/2)/(k pi) cos(k pi x / 2).
inline std::vector<double> fourier_gibbs_reference(int n_terms, const std::vector<double>& xs) {
  if (n_terms < 1) throw Error(ErrorKind::InvalidArgument, "n_terms must be >= 1");
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    double s = 0.5;
    for (int k = 1; k <= n_terms; ++k) {
      if (k % 2 == 0) continue;
      s += 2.0 * std::sin(k * kPi / 2.0) / (k * kPi) * std::cos(k * kPi * x / 2.0);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace dispgibbs
