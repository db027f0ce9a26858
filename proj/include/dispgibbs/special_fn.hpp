#pragma once

// I_{omega,m}(y,t) = (1/2pi) int_C e^{iky - i omega(k) t} / (ik)^{m+1} dk and
// the quantities derived from it.

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "dispgibbs/contour.hpp"
#include "dispgibbs/dispersion.hpp"
#include "dispgibbs/error.hpp"
#include "dispgibbs/quadrature.hpp"

namespace dispgibbs {

enum class Method { Auto, Direct, Descent };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::Auto: return "auto";
    case Method::Direct: return "direct";
    case Method::Descent: return "descent";
  }
  return "auto";
}

inline Method parse_method(std::string_view s) {
  if (s == "auto") return Method::Auto;
  if (s == "direct") return Method::Direct;
  if (s == "descent") return Method::Descent;
  throw Error(ErrorKind::Parse, "unknown method '" + std::string(s) + "'");
}

struct EvalOptions {
  Method method = Method::Auto;
  double rel_tol = 1e-10;
  int max_order = 2048;
  double threshold = 4.0;  ///< |y| t^{-1/n} at and above which descent is used
  double c0 = 6.0;
  double radius = 0.5;     ///< semicircle radius of the direct contour
  double core = 1.0;       ///< the direct contour leaves the real axis at +-core
  int order = 32;
};

struct SpecialFunctionQuery {
  DispersionRelation omega;
  int m = 0;
  double y = 0.0;
  double t = 1.0;
};

namespace detail {

inline cplx ipow(cplx z, int p) {
  cplx r{1.0, 0.0};
  for (int k = 0; k < p; ++k) r *= z;
  return r;
}

inline double factorial(int m) {
  double f = 1.0;
  for (int k = 2; k <= m; ++k) f *= k;
  return f;
}

inline void check_query(const SpecialFunctionQuery& q) {
  if (q.m < -1) throw Error(ErrorKind::InvalidArgument, "m must be >= -1");
  if (!std::isfinite(q.y)) throw Error(ErrorKind::InvalidArgument, "y must be finite");
  if (!(q.t >= 0.0) || !std::isfinite(q.t)) throw Error(ErrorKind::InvalidArgument, "t must be finite and >= 0");
  if (q.t == 0.0 && q.m == -1) throw Error(ErrorKind::InvalidArgument, "kernel undefined at t = 0");
  if (q.omega.drift().imag() != 0.0)
    throw Error(ErrorKind::InvalidArgument, "complex drift is not supported");
}

/// Direct quadrature at t = 1 over the pole-avoiding core with tails along the
/// valleys of the leading term nearest 0 and pi.
inline cplx direct_unit(const DispersionRelation& w, int m, double s, const EvalOptions& opt) {
  const int n = w.degree();
  auto coeffs = w.coefficients();
  auto f = [&](cplx k) { return std::exp(kI * k * s - kI * horner(coeffs, k)) / ipow(kI * k, m + 1); };
  auto logmag = [&](cplx k) {
    return (kI * k * s - kI * horner(coeffs, k)).real() - (m + 1) * std::log(std::abs(k));
  };
  auto va = valley_angles(w.leading(), n);
  const double right = nearest_angle(va, 0.0), left = nearest_angle(va, kPi);
  const double L = opt.core;

  Contour c = pole_avoiding_contour(opt.radius, 2.0 * L, opt.order);
  c.segments.front().start = cplx{-L, 0.0};
  c.segments.back().end = cplx{L, 0.0};
  std::vector<Segment> segs;
  const double rho_l = ray_cutoff(logmag, cplx{-L, 0.0}, left, -45.0, 1.0);
  const double rho_r = ray_cutoff(logmag, cplx{L, 0.0}, right, -45.0, 1.0);
  append_ray(segs, cplx{-L, 0.0}, left, rho_l, 0.5, true, opt.order);
  segs.insert(segs.end(), c.segments.begin(), c.segments.end());
  append_ray(segs, cplx{L, 0.0}, right, rho_r, 0.5, false, opt.order);
  c.segments = std::move(segs);
  return integrate_contour(f, c, QuadOptions{opt.rel_tol, opt.max_order}) / (2.0 * kPi);
}

/// Residue of e^{X Phi(z)} / (iz)^{m+1} at z = 0.
inline cplx phase_residue(const ScaledPhase& phi, int m) {
  if (m < 0) return {0.0, 0.0};
  std::vector<cplx> p(phi.coeffs.size());
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = phi.amplitude * phi.coeffs[j];
  auto e = exp_taylor(p, m);
  return e[static_cast<std::size_t>(m)] / ipow(kI, m + 1);
}

inline cplx descent_prefactor(const ScaledPhase& phi, int m) {
  const double sg = ((m + 1) % 2 == 0 || phi.sigma > 0) ? 1.0 : -1.0;
  return sg * std::pow(phi.lambda(), -m) / (2.0 * kPi);
}

struct UnitParts {
  cplx contour;  ///< integrals over the descent contours
  cplx residue;  ///< pole correction
};

/// Steepest-descent evaluation at t = 1; DegeneratePhase if the contour
/// system cannot be built or fails validation.
inline UnitParts descent_parts(const DispersionRelation& w, int m, double s, const EvalOptions& opt) {
  ScaledPhase phi = scaled_phase(w, s, 1.0);
  DescentSystem ds = descent_system(phi, DescentOptions{opt.c0, opt.order, -45.0});
  if (!validate_descent(ds).passed) throw Error(ErrorKind::DegeneratePhase, "descent contour validation failed");
  const double X = phi.amplitude;
  cplx sum{0.0, 0.0};
  for (const auto& dc : ds.contours) {
    // e^{X Phi(z_j)} factored out, the rest expanded about z_j
    const cplx peak = X * phi(dc.point);
    if (peak.real() < -745.0) continue;
    auto b = phi.shifted(dc.point);
    b[0] = 0.0;
    for (auto& c : b) c *= X;
    auto g = [&](cplx z) { return std::exp(horner(b, z - dc.point)) / ipow(kI * z, m + 1); };
    sum += std::exp(peak) * integrate_contour(g, dc.contour, QuadOptions{opt.rel_tol, opt.max_order});
  }
  cplx res{0.0, 0.0};
  if (ds.winding != 0) res = -2.0 * kPi * kI * static_cast<double>(ds.winding) * phase_residue(phi, m);
  const cplx pre = descent_prefactor(phi, m);
  return {pre * sum, pre * res};
}

inline cplx descent_unit(const DispersionRelation& w, int m, double s, const EvalOptions& opt) {
  const UnitParts p = descent_parts(w, m, s, opt);
  return p.contour + p.residue;
}

inline cplx eval_unit(const DispersionRelation& w, int m, double s, const EvalOptions& opt) {
  switch (opt.method) {
    case Method::Direct: return direct_unit(w, m, s, opt);
    case Method::Descent: return descent_unit(w, m, s, opt);
    case Method::Auto: break;
  }
  if (std::abs(s) >= opt.threshold) {
    try {
      return descent_unit(w, m, s, opt);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegeneratePhase) throw;
    }
  }
  return direct_unit(w, m, s, opt);
}

}  // namespace detail

/// Exact t = 0 value for m >= 0, y != 0: -chi_{y<0} y^m / m!.
inline cplx eval_I_at_zero_time(int m, double y) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "kernel undefined at t = 0");
  if (y == 0.0) throw Error(ErrorKind::InvalidArgument, "t = 0 requires y != 0");
  if (y > 0.0) return {0.0, 0.0};
  return {-std::pow(y, m) / detail::factorial(m), 0.0};
}

/// Uses I_{omega,m}(y,t) = t^{m/n} I_{omega_t,m}(y t^{-1/n}, 1) after removing
/// drift and the constant phase.
inline cplx eval_I(const SpecialFunctionQuery& q, const EvalOptions& opt = {}) {
  detail::check_query(q);
  if (q.t == 0.0) return eval_I_at_zero_time(q.m, q.y);
  const int n = q.omega.degree();
  const double y = q.y - q.omega.drift().real() * q.t;
  const cplx phase = std::exp(-kI * q.omega.phase_rate() * q.t);
  const double s = y * std::pow(q.t, -1.0 / n);
  const DispersionRelation wt = q.omega.rescaled(q.t);
  return phase * std::pow(q.t, static_cast<double>(q.m) / n) * detail::eval_unit(wt, q.m, s, opt);
}

inline cplx eval_I(const DispersionRelation& w, int m, double y, double t, const EvalOptions& opt = {}) {
  return eval_I(SpecialFunctionQuery{w, m, y, t}, opt);
}

struct SplitValue {
  cplx contour;  ///< descent-contour part, computed without subtracting the residue
  cplx residue;
  cplx total() const { return contour + residue; }
};

/// eval_I by steepest descent, keeping the residue term separate so that
/// exponentially small remainders are not lost to cancellation.
inline SplitValue eval_I_split(const SpecialFunctionQuery& q, const EvalOptions& opt = {}) {
  detail::check_query(q);
  if (q.t == 0.0) throw Error(ErrorKind::InvalidArgument, "eval_I_split requires t > 0");
  const int n = q.omega.degree();
  const double y = q.y - q.omega.drift().real() * q.t;
  const double s = y * std::pow(q.t, -1.0 / n);
  const cplx scale = std::exp(-kI * q.omega.phase_rate() * q.t) * std::pow(q.t, static_cast<double>(q.m) / n);
  const auto p = detail::descent_parts(q.omega.rescaled(q.t), q.m, s, opt);
  return {scale * p.contour, scale * p.residue};
}

/// E^sigma_{n,m}(s) = I_{sigma k^n, m}(s, 1).
inline cplx eval_E(int n, int m, cplx sigma, double s, const EvalOptions& opt = {}) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "n must be >= 2");
  if (std::abs(std::abs(sigma) - 1.0) > 1e-12) throw Error(ErrorKind::InvalidArgument, "|sigma| must be 1");
  return eval_I(DispersionRelation::monomial(n, sigma), m, s, 1.0, opt);
}

/// K_t(x) = I_{omega,-1}(x,t).
inline cplx eval_kernel(const DispersionRelation& w, double x, double t, const EvalOptions& opt = {}) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "kernel requires t > 0");
  return eval_I(w, -1, x, t, opt);
}

struct AsymptoticValue {
  cplx residue_part;
  cplx oscillatory_part;
  double order_estimate = 0.0;
  cplx total() const { return residue_part + oscillatory_part; }
};

/// -i Res_{k=0} e^{iky - i omega(k) t} / (ik)^{m+1} for y < 0, zero otherwise.
inline cplx residue_part(const SpecialFunctionQuery& q) {
  if (q.m < 0 || q.y >= 0.0) return {0.0, 0.0};
  auto full = q.omega.full_coefficients();
  std::vector<cplx> p(full.size());
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = -kI * q.t * full[j];
  p[1] += kI * q.y;
  auto e = exp_taylor(p, q.m);
  return -kI * e[static_cast<std::size_t>(q.m)] / detail::ipow(kI, q.m + 1);
}

/// Leading-order large-|y|/t^{1/n} behavior: residue term plus one Gaussian
/// contribution per stationary point.
inline AsymptoticValue asymptotic_I(const SpecialFunctionQuery& q, const EvalOptions& opt = {}) {
  detail::check_query(q);
  if (q.t == 0.0) throw Error(ErrorKind::InvalidArgument, "asymptotic_I requires t > 0");
  const int n = q.omega.degree();
  const double y = q.y - q.omega.drift().real() * q.t;
  const double s = y * std::pow(q.t, -1.0 / n);
  if (std::abs(s) < opt.threshold)
    throw Error(ErrorKind::InvalidArgument, "asymptotic_I requires |y| t^{-1/n} >= threshold");
  const DispersionRelation wt = q.omega.rescaled(q.t);
  ScaledPhase phi = scaled_phase(wt, s, 1.0);
  DescentSystem ds = descent_system(phi, DescentOptions{opt.c0, opt.order, -45.0});
  const double X = phi.amplitude;
  cplx sum{0.0, 0.0};
  for (const auto& dc : ds.contours) {
    const cplx z = dc.point;
    sum += std::exp(X * phi(z) + kI * dc.theta) / detail::ipow(kI * z, q.m + 1) *
           std::sqrt(2.0 * kPi / (X * std::abs(phi.d2(z))));
  }
  const cplx scale = std::exp(-kI * q.omega.phase_rate() * q.t) * std::pow(q.t, static_cast<double>(q.m) / n);
  AsymptoticValue out;
  out.residue_part = residue_part(q);
  out.oscillatory_part = scale * detail::descent_prefactor(phi, q.m) * sum;
  out.order_estimate = 1.0 / X;
  return out;
}

/// Weights c[d][k] for the d-th derivative at x0 from samples at x[k].
inline std::vector<std::vector<double>> fornberg_weights(double x0, const std::vector<double>& x, int max_d) {
  const int N = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(static_cast<std::size_t>(max_d) + 1, std::vector<double>(x.size(), 0.0));
  c[0][0] = 1.0;
  double c1 = 1.0;
  double c4 = x[0] - x0;
  for (int i = 1; i < N; ++i) {
    const int mn = std::min(i, max_d);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[static_cast<std::size_t>(i)] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
              c1 * (k * c[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i - 1)] -
                    c5 * c[static_cast<std::size_t>(k)][static_cast<std::size_t>(i - 1)]) / c2;
        c[0][static_cast<std::size_t>(i)] = -c1 * c5 * c[0][static_cast<std::size_t>(i - 1)] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
            (c4 * c[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] -
             k * c[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j)]) / c3;
      c[0][static_cast<std::size_t>(j)] = c4 * c[0][static_cast<std::size_t>(j)] / c3;
    }
    c1 = c2;
  }
  return c;
}

/// Residual of the order-n equation
///   d/dy omega'(-i d/dy) I_m = (y/t) dI_m/dy - (m/t) I_m,
/// from central differences with step h, scaled by |(y/t) I_m'| + |(m/t) I_m| + 1.
inline double ode_residual(const DispersionRelation& w, int m, double y, double t, double h,
                           const EvalOptions& opt = {}) {
  if (!(t > 0.0) || !(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "ode_residual requires t > 0, h > 0");
  const int n = w.degree();
  const int p = (n + 1) / 2 + 4;
  std::vector<double> xs;
  std::vector<cplx> v;
  for (int k = -p; k <= p; ++k) {
    xs.push_back(y + k * h);
    v.push_back(eval_I(w, m, y + k * h, t, opt));
  }
  auto c = fornberg_weights(y, xs, n);
  auto deriv = [&](int d) {
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < v.size(); ++k) acc += c[static_cast<std::size_t>(d)][k] * v[k];
    return acc;
  };
  auto full = w.full_coefficients();
  cplx lhs{0.0, 0.0};
  for (int j = 1; j <= n; ++j) lhs += static_cast<double>(j) * full[static_cast<std::size_t>(j)] * detail::ipow(-kI, j - 1) * deriv(j);
  const cplx d1 = deriv(1), d0 = v[static_cast<std::size_t>(p)];
  const cplx rhs = (y / t) * d1 - (static_cast<double>(m) / t) * d0;
  return std::abs(lhs - rhs) / (std::abs(y / t) * std::abs(d1) + std::abs(m / t) * std::abs(d0) + 1.0);
}

}  // namespace dispgibbs
