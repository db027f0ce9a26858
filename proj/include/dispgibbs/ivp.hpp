#pragma once

// Exact solutions of i q_t - omega(-i d/dx) q = 0 for compactly supported
// piecewise-polynomial initial data, as finite sums of I_{omega,m} terms.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "dispgibbs/dispersion.hpp"
#include "dispgibbs/error.hpp"
#include "dispgibbs/special_fn.hpp"

namespace dispgibbs {

using Poly = std::vector<cplx>;  ///< coefficients of 1, x, x^2, ...

inline cplx poly_eval(const Poly& p, cplx x) { return horner(p, x); }

inline Poly poly_derivative(const Poly& p, int times = 1) {
  Poly d = p;
  for (int k = 0; k < times; ++k) d = derivative_coeffs(d);
  return d;
}

/// Degree ignoring trailing zeros; -1 for the zero polynomial.
inline int poly_degree(const Poly& p) {
  for (int j = static_cast<int>(p.size()) - 1; j >= 0; --j)
    if (p[static_cast<std::size_t>(j)] != cplx{0.0, 0.0}) return j;
  return -1;
}

/// q_o = pieces[i] on (c_i, c_{i+1}), zero outside [c_1, c_N].
struct PiecewisePolynomialIC {
  std::vector<double> breakpoints;
  std::vector<Poly> pieces;

  void validate(int max_degree = 8) const {
    if (breakpoints.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two breakpoints");
    if (pieces.size() + 1 != breakpoints.size())
      throw Error(ErrorKind::InvalidArgument, "need exactly one piece per interval");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
      if (!std::isfinite(breakpoints[i])) throw Error(ErrorKind::InvalidArgument, "breakpoints must be finite");
      if (i > 0 && !(breakpoints[i] > breakpoints[i - 1]))
        throw Error(ErrorKind::InvalidArgument, "breakpoints must be strictly increasing");
    }
    for (const auto& p : pieces) {
      if (poly_degree(p) > max_degree)
        throw Error(ErrorKind::InvalidArgument, "piece degree exceeds " + std::to_string(max_degree));
      for (auto c : p)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
          throw Error(ErrorKind::InvalidArgument, "piece coefficients must be finite");
    }
  }

  int max_degree() const {
    int d = -1;
    for (const auto& p : pieces) d = std::max(d, poly_degree(p));
    return d;
  }

  /// Index of the piece containing x, -1 outside the support. Breakpoints
  /// themselves belong to no piece.
  int piece_index(double x) const {
    if (x <= breakpoints.front() || x >= breakpoints.back()) return -1;
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    const int i = static_cast<int>(it - breakpoints.begin()) - 1;
    if (breakpoints[static_cast<std::size_t>(i)] == x) return -1;
    return i;
  }

  bool is_breakpoint(double x) const {
    return std::find(breakpoints.begin(), breakpoints.end(), x) != breakpoints.end();
  }

  Poly local_piece(double x) const {
    const int i = piece_index(x);
    return i < 0 ? Poly{} : pieces[static_cast<std::size_t>(i)];
  }

  cplx operator()(double x) const { return poly_eval(local_piece(x), x); }
};

inline PiecewisePolynomialIC box_ic() { return {{-1.0, 1.0}, {{cplx{1.0, 0.0}}}}; }

inline PiecewisePolynomialIC tent_ic() {
  return {{-1.0, 0.0, 1.0}, {{cplx{1.0, 0.0}, cplx{1.0, 0.0}}, {cplx{1.0, 0.0}, cplx{-1.0, 0.0}}}};
}

/// Box with a linear ramp on (-1-delta, -1).
inline PiecewisePolynomialIC smoothed_box(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw Error(ErrorKind::InvalidArgument, "smoothed_box: delta must be positive");
  return {{-1.0 - delta, -1.0, 1.0},
          {{cplx{(1.0 + delta) / delta, 0.0}, cplx{1.0 / delta, 0.0}}, {cplx{1.0, 0.0}}}};
}

/// a*f + b*g on the union of breakpoints.
inline PiecewisePolynomialIC combine(cplx a, const PiecewisePolynomialIC& f, cplx b,
                                     const PiecewisePolynomialIC& g) {
  std::vector<double> bp = f.breakpoints;
  bp.insert(bp.end(), g.breakpoints.begin(), g.breakpoints.end());
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  PiecewisePolynomialIC out;
  out.breakpoints = bp;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double mid = 0.5 * (bp[i] + bp[i + 1]);
    Poly pf = f.local_piece(mid), pg = g.local_piece(mid);
    Poly p(std::max(pf.size(), pg.size()), cplx{0.0, 0.0});
    for (std::size_t j = 0; j < pf.size(); ++j) p[j] += a * pf[j];
    for (std::size_t j = 0; j < pg.size(); ++j) p[j] += b * pg[j];
    out.pieces.push_back(p);
  }
  return out;
}

struct Jump {
  double c = 0.0;
  int m = 0;        ///< derivative order
  cplx value;       ///< q_o^{(m)}(c+) - q_o^{(m)}(c-)
};

struct JumpDecomposition {
  std::vector<Jump> jumps;

  cplx value(double c, int m) const {
    for (const auto& j : jumps)
      if (j.c == c && j.m == m) return j.value;
    return {0.0, 0.0};
  }

  /// sum_i sum_{m>=p} J_{i,m} (-c_i)^{m-p} / (m-p)!; vanishes for every p
  /// because the transform of compactly supported data has no pole at k = 0.
  cplx moment(int p) const {
    cplx acc{0.0, 0.0};
    for (const auto& j : jumps)
      if (j.m >= p) acc += j.value * std::pow(-j.c, j.m - p) / detail::factorial(j.m - p);
    return acc;
  }
};

/// All derivative jumps up to the maximal piece degree; exact zeros dropped.
inline JumpDecomposition jump_decomposition(const PiecewisePolynomialIC& ic) {
  ic.validate(std::max(8, ic.max_degree()));
  JumpDecomposition out;
  const int D = std::max(0, ic.max_degree());
  const std::size_t N = ic.breakpoints.size();
  for (std::size_t i = 0; i < N; ++i) {
    const double c = ic.breakpoints[i];
    const Poly left = i == 0 ? Poly{} : ic.pieces[i - 1];
    const Poly right = i + 1 == N ? Poly{} : ic.pieces[i];
    for (int m = 0; m <= D; ++m) {
      const cplx v = poly_eval(poly_derivative(right, m), c) - poly_eval(poly_derivative(left, m), c);
      if (v != cplx{0.0, 0.0}) out.jumps.push_back({c, m, v});
    }
  }
  return out;
}

/// q(x,t) = sum J * I_{omega,m}(x - c, t).
inline cplx solve(const JumpDecomposition& jd, const DispersionRelation& w, double x, double t,
                  const EvalOptions& opt = {}) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "t must be finite and >= 0");
  if (w.drift().imag() != 0.0) throw Error(ErrorKind::InvalidArgument, "complex drift is not supported");
  cplx acc{0.0, 0.0};
  for (const auto& j : jd.jumps) {
    if (t == 0.0 && x == j.c) throw Error(ErrorKind::InvalidArgument, "t = 0 at a breakpoint has no value");
    acc += j.value * eval_I(w, j.m, x - j.c, t, opt);
  }
  return acc;
}

inline cplx solve(const PiecewisePolynomialIC& ic, const DispersionRelation& w, double x, double t,
                  const EvalOptions& opt = {}) {
  if (t == 0.0 && ic.is_breakpoint(x))
    throw Error(ErrorKind::InvalidArgument, "t = 0 at a breakpoint has no value");
  return solve(jump_decomposition(ic), w, x, t, opt);
}

/// sum_{j=0}^M (-it)^j / j! * omega(-i d/dx)^j applied to the local piece at x.
inline cplx taylor_away(const PiecewisePolynomialIC& ic, const DispersionRelation& w, double x, double t,
                        int M) {
  if (M < 0) throw Error(ErrorKind::InvalidArgument, "M must be >= 0");
  if (ic.is_breakpoint(x)) throw Error(ErrorKind::InvalidArgument, "x must not be a breakpoint");
  Poly p = ic.local_piece(x);
  const int deg = poly_degree(p);
  if (deg < 0) return {0.0, 0.0};
  const int n = w.degree();
  if (deg < n * M)
    throw Error(ErrorKind::PieceTooShallow, "piece degree " + std::to_string(deg) + " < n*M = " +
                                                std::to_string(n * M));
  const auto full = w.full_coefficients();
  auto apply_L = [&](const Poly& q) {
    Poly out(q.size(), cplx{0.0, 0.0});
    Poly d = q;
    cplx mi{1.0, 0.0};
    for (int j = 0; j <= n && !d.empty(); ++j) {
      for (std::size_t k = 0; k < d.size(); ++k) out[k] += full[static_cast<std::size_t>(j)] * mi * d[k];
      d = derivative_coeffs(d);
      mi *= -kI;
    }
    return out;
  };
  cplx acc{0.0, 0.0};
  cplx coef{1.0, 0.0};
  Poly term = p;
  for (int j = 0; j <= M; ++j) {
    if (j > 0) {
      term = apply_L(term);
      coef *= -kI * t / static_cast<double>(j);
    }
    acc += coef * poly_eval(term, x);
  }
  return acc;
}

/// (q(c + x |omega_n t|^{1/n}, t) - q_c) / [q_o(c)] with
/// q_c = q(c,t) - [q_o(c)] I_{omega,0}(0,t).
inline std::vector<cplx> rescaled_profile(const PiecewisePolynomialIC& ic, const DispersionRelation& w, double c,
                                          const std::vector<double>& x_grid, double t,
                                          const EvalOptions& opt = {}) {
  if (!w.is_monomial() || w.drift() != cplx{0.0, 0.0} || w.phase_rate() != cplx{0.0, 0.0})
    throw Error(ErrorKind::InvalidArgument, "rescaled_profile requires a monomial dispersion relation");
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "rescaled_profile requires t > 0");
  const JumpDecomposition jd = jump_decomposition(ic);
  const cplx J = jd.value(c, 0);
  if (J == cplx{0.0, 0.0}) throw Error(ErrorKind::NotAJump, "no jump of q_o at c");
  const double scale = std::pow(std::abs(w.leading()) * t, 1.0 / w.degree());
  const cplx qc = solve(jd, w, c, t, opt) - J * eval_I(w, 0, 0.0, t, opt);
  std::vector<cplx> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) out.push_back((solve(jd, w, c + x * scale, t, opt) - qc) / J);
  return out;
}

}  // namespace dispgibbs
