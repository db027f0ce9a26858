#pragma once

// Clenshaw-Curtis quadrature on affine complex segments and piecewise-affine
// contours, with nested order doubling.

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "dispgibbs/error.hpp"

namespace dispgibbs {

/// Straight piece of a contour; `order` is the starting Clenshaw-Curtis order.
struct Segment {
  std::complex<double> start;
  std::complex<double> end;
  int order = 32;
};

struct Contour {
  enum class Kind { PoleAvoiding, Descent, Custom };
  std::vector<Segment> segments;
  Kind kind = Kind::Custom;
  int index = 0;  ///< stationary point index j for Descent contours
};

struct CCRule {
  int order = 0;
  std::vector<double> nodes;    ///< cos(pi k / N), k = 0..N
  std::vector<double> weights;
};

namespace detail {

inline CCRule build_cc_rule(int N) {
  CCRule r;
  r.order = N;
  r.nodes.resize(static_cast<std::size_t>(N) + 1);
  r.weights.resize(static_cast<std::size_t>(N) + 1);
  const double pi = std::numbers::pi;
  for (int k = 0; k <= N; ++k) {
    r.nodes[static_cast<std::size_t>(k)] = std::cos(pi * k / N);
    const double ck = (k == 0 || k == N) ? 1.0 : 2.0;
    double sum = 0.0;
    for (int j = 1; j <= N / 2; ++j) {
      const double bj = (2 * j == N) ? 1.0 : 2.0;
      sum += bj / (4.0 * j * j - 1.0) * std::cos(2.0 * j * k * pi / N);
    }
    r.weights[static_cast<std::size_t>(k)] = ck / N * (1.0 - sum);
  }
  // Exact symmetry; the middle node is exactly zero.
  for (int k = 0; k <= N / 2; ++k) {
    const auto a = static_cast<std::size_t>(k), b = static_cast<std::size_t>(N - k);
    const double w = 0.5 * (r.weights[a] + r.weights[b]);
    const double x = 0.5 * (r.nodes[a] - r.nodes[b]);
    r.weights[a] = r.weights[b] = w;
    r.nodes[a] = x;
    r.nodes[b] = -x;
  }
  r.nodes[static_cast<std::size_t>(N / 2)] = 0.0;
  return r;
}

}  // namespace detail

/// Cached rule; N must be even and at least 2.
inline const CCRule& cc_rule(int N) {
  if (N < 2 || N % 2 != 0)
    throw Error(ErrorKind::InvalidArgument, "cc_rule: order must be even and >= 2, got " + std::to_string(N));
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CCRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[N];
  if (!slot) slot = std::make_unique<CCRule>(detail::build_cc_rule(N));
  return *slot;
}

using ComplexFn = std::function<std::complex<double>(std::complex<double>)>;

/// (end-start)/2 * sum_k w_k f(mid + (end-start)/2 x_k).
template <class F>
std::complex<double> integrate_segment(F&& f, const Segment& seg, int order) {
  const CCRule& rule = cc_rule(order);
  const std::complex<double> mid = 0.5 * (seg.start + seg.end);
  const std::complex<double> half = 0.5 * (seg.end - seg.start);
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const std::complex<double> v = f(mid + half * rule.nodes[k]);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorKind::NonFinite, "integrand not finite on segment");
    acc += rule.weights[k] * v;
  }
  return half * acc;
}

template <class F>
std::complex<double> integrate_segment(F&& f, const Segment& seg) {
  return integrate_segment(std::forward<F>(f), seg, seg.order);
}

struct QuadOptions {
  double rel_tol = 1e-10;
  int max_order = 2048;
};

struct SegmentResult {
  std::complex<double> value;
  std::complex<double> previous;
  double l1 = 0.0;        ///< |half| sum w |f|, a scale for relative tolerances
  double error = 0.0;     ///< |last - previous|
  int order = 0;
  bool converged = false;
};

namespace detail {

/// Nested doubling: the nodes of order N are the even-indexed nodes of 2N.
template <class F>
SegmentResult adapt_segment(F& f, const Segment& seg, const QuadOptions& opt, double abs_floor) {
  const std::complex<double> mid = 0.5 * (seg.start + seg.end);
  const std::complex<double> half = 0.5 * (seg.end - seg.start);
  int N = std::max(2, seg.order + (seg.order % 2));
  std::vector<std::complex<double>> vals(static_cast<std::size_t>(N) + 1);
  auto eval = [&](double x) {
    const std::complex<double> v = f(mid + half * x);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorKind::NonFinite, "integrand not finite on segment");
    return v;
  };
  {
    const CCRule& r = cc_rule(N);
    for (int k = 0; k <= N; ++k) vals[static_cast<std::size_t>(k)] = eval(r.nodes[static_cast<std::size_t>(k)]);
  }
  auto sum = [&](int order, double& l1) {
    const CCRule& r = cc_rule(order);
    std::complex<double> acc{0.0, 0.0};
    double a1 = 0.0;
    for (int k = 0; k <= order; ++k) {
      acc += r.weights[static_cast<std::size_t>(k)] * vals[static_cast<std::size_t>(k)];
      a1 += r.weights[static_cast<std::size_t>(k)] * std::abs(vals[static_cast<std::size_t>(k)]);
    }
    l1 = a1 * std::abs(half);
    return half * acc;
  };
  SegmentResult res;
  double l1 = 0.0;
  std::complex<double> prev = sum(N, l1);
  while (N < opt.max_order) {
    const int M = 2 * N;
    std::vector<std::complex<double>> next(static_cast<std::size_t>(M) + 1);
    const CCRule& r = cc_rule(M);
    for (int k = 0; k <= M; ++k)
      next[static_cast<std::size_t>(k)] =
          (k % 2 == 0) ? vals[static_cast<std::size_t>(k / 2)] : eval(r.nodes[static_cast<std::size_t>(k)]);
    vals.swap(next);
    N = M;
    const std::complex<double> cur = sum(N, l1);
    res.value = cur;
    res.previous = prev;
    res.l1 = l1;
    res.error = std::abs(cur - prev);
    res.order = N;
    if (res.error <= opt.rel_tol * std::max(l1, abs_floor)) {
      res.converged = true;
      return res;
    }
    prev = cur;
  }
  res.converged = false;
  if (res.order == 0) {
    res.value = res.previous = prev;
    res.l1 = l1;
    res.order = N;
  }
  return res;
}

}  // namespace detail

struct ContourResult {
  std::complex<double> value;
  double l1 = 0.0;
  double error = 0.0;
};

/// Sum of adaptive segment integrals. Each segment doubles its order until two
/// successive estimates agree to rel_tol, measured against the larger of the
/// segment's own L1 mass and an equal share of the contour's mass.
template <class F>
ContourResult integrate_contour_detailed(F&& f, const Contour& c, const QuadOptions& opt = {}) {
  ContourResult out;
  if (c.segments.empty()) return out;
  double mass = 0.0;
  for (const auto& seg : c.segments) {
    const CCRule& r = cc_rule(8);
    const std::complex<double> mid = 0.5 * (seg.start + seg.end);
    const std::complex<double> half = 0.5 * (seg.end - seg.start);
    for (std::size_t k = 0; k < r.nodes.size(); ++k) mass += r.weights[k] * std::abs(f(mid + half * r.nodes[k])) * std::abs(half);
  }
  const double floor = std::isfinite(mass) ? mass / static_cast<double>(c.segments.size()) : 0.0;
  std::complex<double> total{0.0, 0.0}, total_prev{0.0, 0.0};
  bool ok = true;
  for (const auto& seg : c.segments) {
    SegmentResult r = detail::adapt_segment(f, seg, opt, std::max(floor, 1e-300));
    total += r.value;
    total_prev += r.previous;
    out.l1 += r.l1;
    out.error += r.error;
    if (!r.converged) ok = false;
  }
  out.value = total;
  if (!ok)
    throw NoConvergence("contour quadrature did not converge by order " + std::to_string(opt.max_order) +
                            " (error estimate " + std::to_string(out.error) + ")",
                        total_prev, total);
  return out;
}

template <class F>
std::complex<double> integrate_contour(F&& f, const Contour& c, const QuadOptions& opt = {}) {
  return integrate_contour_detailed(std::forward<F>(f), c, opt).value;
}

}  // namespace dispgibbs
