#pragma once

// Pole-avoiding contour C and piecewise-affine steepest-descent contours.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "dispgibbs/dispersion.hpp"
#include "dispgibbs/error.hpp"
#include "dispgibbs/quadrature.hpp"

namespace dispgibbs {

/// [-T,-r], 8 chords over the upper semicircle of radius r, [r,T].
inline Contour pole_avoiding_contour(double r, double T, int order = 32) {
  if (!(r > 0.0 && r < 1.0))
    throw Error(ErrorKind::InvalidArgument, "pole_avoiding_contour: radius must lie in (0,1)");
  if (!(T > 1.0) || !std::isfinite(T))
    throw Error(ErrorKind::InvalidArgument, "pole_avoiding_contour: truncation must exceed 1");
  Contour c;
  c.kind = Contour::Kind::PoleAvoiding;
  c.segments.push_back({cplx{-T, 0.0}, cplx{-r, 0.0}, order});
  constexpr int chords = 8;
  for (int k = 0; k < chords; ++k) {
    const double a0 = kPi * (1.0 - static_cast<double>(k) / chords);
    const double a1 = kPi * (1.0 - static_cast<double>(k + 1) / chords);
    cplx p0 = std::polar(r, a0), p1 = std::polar(r, a1);
    if (k == 0) p0 = cplx{-r, 0.0};
    if (k == chords - 1) p1 = cplx{r, 0.0};
    c.segments.push_back({p0, p1, order});
  }
  c.segments.push_back({cplx{r, 0.0}, cplx{T, 0.0}, order});
  return c;
}

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

inline double angle_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

/// Steepest-descent directions at infinity of exp(-i a z^n): -i a e^{i n theta} real negative.
inline std::vector<double> valley_angles(cplx a, int n) {
  std::vector<double> out;
  for (int j = 0; j < n; ++j) out.push_back(wrap_angle((1.5 * kPi - std::arg(a) + 2.0 * kPi * j) / n));
  std::sort(out.begin(), out.end());
  return out;
}

inline double nearest_angle(const std::vector<double>& angles, double target) {
  double best = angles.front();
  for (double a : angles)
    if (angle_distance(a, target) < angle_distance(best, target)) best = a;
  return best;
}

/// Splits [0, len] into pieces growing geometrically from `base`.
inline std::vector<double> geometric_breaks(double len, double base) {
  std::vector<double> out{0.0};
  base = std::clamp(base, len / 64.0, len);
  double step = base;
  while (out.back() + step < len * (1.0 - 1e-12)) {
    out.push_back(out.back() + step);
    step *= 2.0;
  }
  out.push_back(len);
  return out;
}

/// Distance along p + rho e^{i dir} at which `logmag` first falls below
/// `threshold`, by doubling from `rho0` and then bisection.
template <class G>
double ray_cutoff(G&& logmag, cplx p, double dir, double threshold, double rho0) {
  const cplx d = std::polar(1.0, dir);
  double lo = 0.0, hi = rho0;
  int guard = 0;
  while (!(logmag(p + hi * d) < threshold)) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 80) throw Error(ErrorKind::DegeneratePhase, "ray never enters a decaying sector");
  }
  for (int it = 0; it < 50 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (logmag(p + mid * d) < threshold) hi = mid;
    else lo = mid;
  }
  return hi;
}

/// Appends the ray p -> p + len e^{i dir} (or its reverse) as geometric pieces.
inline void append_ray(std::vector<Segment>& segs, cplx p, double dir, double len, double base,
                       bool inward, int order) {
  const cplx d = std::polar(1.0, dir);
  auto br = geometric_breaks(len, base);
  if (inward) {
    for (std::size_t k = br.size() - 1; k > 0; --k) segs.push_back({p + br[k] * d, p + br[k - 1] * d, order});
  } else {
    for (std::size_t k = 0; k + 1 < br.size(); ++k) segs.push_back({p + br[k] * d, p + br[k + 1] * d, order});
  }
}

struct DescentContour {
  Contour contour;
  cplx point;          ///< stationary point z_j
  double theta = 0.0;  ///< direction of traversal through z_j
  double half_length = 0.0;
  double valley_in = 0.0;   ///< asymptotic angle of the incoming ray
  double valley_out = 0.0;  ///< asymptotic angle of the outgoing ray
};

/// Contours Gamma_j chained from the valley nearest pi to the valley nearest 0.
struct DescentSystem {
  ScaledPhase phase;
  std::vector<cplx> points;
  std::vector<DescentContour> contours;
  std::vector<double> valleys;  ///< w_0 (nearest 0) ... w_N (nearest pi)
  /// Winding number about 0 of (chain) - (reference path passing above 0 for
  /// sigma = +1, below for sigma = -1).
  int winding = 0;
};

namespace detail {

inline double central_direction(cplx phi2, double w_prev, double w_next) {
  const double base = 0.5 * (kPi - std::arg(phi2));
  double best = base;
  double best_cost = std::numeric_limits<double>::infinity();
  for (double th : {base, base + kPi}) {
    const double cost = angle_distance(th, w_prev) + angle_distance(th + kPi, w_next);
    if (cost < best_cost) {
      best_cost = cost;
      best = wrap_angle(th);
    }
  }
  return best;
}

inline double winding_of_polygon(const std::vector<cplx>& pts) {
  double total = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const cplx a = pts[k], b = pts[(k + 1) % pts.size()];
    if (std::abs(a) == 0.0 || std::abs(b) == 0.0)
      throw Error(ErrorKind::DegeneratePhase, "contour passes through the pole");
    total += std::arg(b / a);
  }
  return total / (2.0 * kPi);
}

}  // namespace detail

struct DescentOptions {
  double c0 = 6.0;     ///< central half-length in Gaussian widths
  int order = 32;      ///< starting quadrature order per segment
  double cutoff = -45.0;
};

inline DescentSystem descent_system(const ScaledPhase& phi, const DescentOptions& opt = {}) {
  DescentSystem ds{phi, stationary_points(phi), {}, {}, 0};
  const int n = phi.degree();
  const int N = static_cast<int>(ds.points.size());
  if (N == 0) throw Error(ErrorKind::DegeneratePhase, "no stationary points in the upper half-plane");

  const cplx lead = phi.leading();
  auto va = valley_angles(lead, n);
  const double w0 = nearest_angle(va, 0.0);
  const double wN = nearest_angle(va, kPi);
  for (int k = 0; k <= n; ++k) {
    const double w = w0 + 2.0 * kPi * k / n;
    ds.valleys.push_back(w);
    if (angle_distance(w, wN) < 1e-9) break;
  }
  if (static_cast<int>(ds.valleys.size()) != N + 1)
    throw Error(ErrorKind::DegeneratePhase, std::to_string(N) + " stationary points but " +
                                                std::to_string(ds.valleys.size()) + " valleys");

  const double X = phi.amplitude;
  auto logmag = [&](cplx z) { return (X * phi(z)).real(); };

  for (int j = 0; j < N; ++j) {
    const cplx z = ds.points[static_cast<std::size_t>(j)];
    const double w_out = ds.valleys[static_cast<std::size_t>(j)];
    const double w_in = ds.valleys[static_cast<std::size_t>(j + 1)];
    const cplx p2 = phi.d2(z);
    if (std::abs(p2) == 0.0) throw Error(ErrorKind::DegeneratePhase, "degenerate stationary point");
    double sep = std::abs(z);
    for (int k = 0; k < N; ++k)
      if (k != j) sep = std::min(sep, std::abs(z - ds.points[static_cast<std::size_t>(k)]));
    const double h = std::min(opt.c0 / std::sqrt(X * std::abs(p2)), 0.5 * sep);
    const double theta = detail::central_direction(p2, w_out, w_in);
    const cplx e = std::polar(1.0, theta);
    const cplx a = z - h * e, b = z + h * e;
    const double thr = std::min(opt.cutoff, logmag(z) + opt.cutoff);

    DescentContour dc;
    dc.point = z;
    dc.theta = theta;
    dc.half_length = h;
    dc.valley_in = w_in;
    dc.valley_out = w_out;
    dc.contour.kind = Contour::Kind::Descent;
    dc.contour.index = j + 1;
    // When the Gaussian width is small against the distance to other
    // stationary points and the pole, the tails continue along the local
    // descent direction; otherwise they turn straight into the valleys.
    double dir_in = w_in, dir_out = w_out;
    double rho_in = 0.0, rho_out = 0.0;
    const auto b_loc = phi.shifted(z);
    auto local = [&](cplx p) {
      const cplx d = p - z;
      cplx acc{0.0, 0.0};
      for (std::size_t k = b_loc.size(); k-- > 2;) acc = acc * d + b_loc[k];
      return logmag(z) + (X * acc * d * d).real();
    };
    double loc_in = std::numeric_limits<double>::infinity(), loc_out = loc_in;
    try {
      loc_in = ray_cutoff(local, a, theta + kPi, thr, h);
      loc_out = ray_cutoff(local, b, theta, thr, h);
    } catch (const Error&) {
    }
    if (std::max(loc_in, loc_out) + h <= 0.25 * sep) {
      dir_in = theta + kPi;
      dir_out = theta;
      rho_in = loc_in;
      rho_out = loc_out;
    } else {
      rho_in = ray_cutoff(logmag, a, w_in, thr, std::max(h, 1e-3));
      rho_out = ray_cutoff(logmag, b, w_out, thr, std::max(h, 1e-3));
    }
    append_ray(dc.contour.segments, a, dir_in, rho_in, h, true, opt.order);
    dc.contour.segments.push_back({a, z, opt.order});
    dc.contour.segments.push_back({z, b, opt.order});
    append_ray(dc.contour.segments, b, dir_out, rho_out, h, false, opt.order);
    ds.contours.push_back(std::move(dc));
  }

  // Chain from valley w_N to w_0, tails pushed far out; then the reference
  // path backwards from w_0 to w_N.
  double big = 1.0;
  for (auto z : ds.points) big = std::max(big, std::abs(z));
  big *= 1e6;
  double r = std::numeric_limits<double>::infinity();
  for (auto z : ds.points) r = std::min(r, std::abs(z));
  for (const auto& dc : ds.contours)
    for (const auto& s : dc.contour.segments) {
      // distance from 0 to the segment
      const cplx d = s.end - s.start;
      const double u = std::clamp(-(std::conj(d) * s.start).real() / std::norm(d), 0.0, 1.0);
      r = std::min(r, std::abs(s.start + u * d));
    }
  if (!(r > 0.0)) throw Error(ErrorKind::DegeneratePhase, "descent contour passes through the pole");
  r *= 0.5;

  std::vector<cplx> loop;
  for (int j = N - 1; j >= 0; --j) {
    const auto& dc = ds.contours[static_cast<std::size_t>(j)];
    const cplx e = std::polar(1.0, dc.theta);
    const cplx a = dc.point - dc.half_length * e, b = dc.point + dc.half_length * e;
    loop.push_back(a + big * std::polar(1.0, dc.valley_in));
    loop.push_back(a);
    loop.push_back(dc.point);
    loop.push_back(b);
    loop.push_back(b + big * std::polar(1.0, dc.valley_out));
  }
  const double side = phi.sigma > 0 ? 1.0 : -1.0;
  loop.push_back(big * std::polar(1.0, ds.valleys.front()));
  loop.push_back(cplx{r, 0.0});
  loop.push_back(cplx{0.0, side * r});
  loop.push_back(cplx{-r, 0.0});
  loop.push_back(big * std::polar(1.0, ds.valleys.back()));
  ds.winding = static_cast<int>(std::lround(detail::winding_of_polygon(loop)));
  return ds;
}

struct DescentReport {
  double max_excess = 0.0;  ///< max over samples of Re(X Phi) - Re(X Phi(z_j))
  bool passed = true;
  int samples = 0;
};

/// Samples Re(X Phi) along every segment; the stationary point must be the maximum.
inline DescentReport validate_descent(const DescentSystem& ds, int samples = 64) {
  DescentReport rep;
  const double X = ds.phase.amplitude;
  for (const auto& dc : ds.contours) {
    const auto b = ds.phase.shifted(dc.point);
    const double tol = 1e-10;
    for (const auto& s : dc.contour.segments) {
      for (int k = 0; k <= samples; ++k) {
        const cplx z = s.start + (s.end - s.start) * (static_cast<double>(k) / samples);
        const cplx d = z - dc.point;
        cplx acc{0.0, 0.0};
        for (std::size_t j = b.size(); j-- > 1;) acc = acc * d + b[j];
        const double excess = (X * acc * d).real();
        rep.max_excess = std::max(rep.max_excess, excess);
        if (excess > tol) rep.passed = false;
        ++rep.samples;
      }
    }
  }
  return rep;
}

}  // namespace dispgibbs
