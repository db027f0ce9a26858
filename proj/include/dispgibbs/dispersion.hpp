#pragma once

// Polynomial dispersion relations omega(k) = sum_j omega_j k^j, their
// normalization, and the rescaled steepest-descent phase used for large |x|/t.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Eigenvalues>

#include "dispgibbs/error.hpp"

namespace dispgibbs {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

/// Horner evaluation; coefficients ordered from degree 0 upward.
inline cplx horner(std::span<const cplx> coeffs, cplx z) {
  cplx acc{0.0, 0.0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

inline std::vector<cplx> derivative_coeffs(std::span<const cplx> coeffs) {
  std::vector<cplx> d;
  if (coeffs.size() <= 1) return d;
  d.resize(coeffs.size() - 1);
  for (std::size_t j = 1; j < coeffs.size(); ++j) d[j - 1] = static_cast<double>(j) * coeffs[j];
  return d;
}

/// Taylor coefficients of exp(p(z)) at z = 0 up to degree `order`, exact
/// recursion n e_n = sum_k k p_k e_{n-k}.
inline std::vector<cplx> exp_taylor(std::span<const cplx> p, int order) {
  std::vector<cplx> e(static_cast<std::size_t>(order) + 1, cplx{0.0, 0.0});
  e[0] = std::exp(p.empty() ? cplx{0.0, 0.0} : p[0]);
  for (int n = 1; n <= order; ++n) {
    cplx acc{0.0, 0.0};
    for (int k = 1; k <= n && k < static_cast<int>(p.size()); ++k)
      acc += static_cast<double>(k) * p[static_cast<std::size_t>(k)] * e[static_cast<std::size_t>(n - k)];
    e[static_cast<std::size_t>(n)] = acc / static_cast<double>(n);
  }
  return e;
}

/// Normalized polynomial dispersion relation: only degrees 2..n are stored;
/// the removed constant and linear terms are kept as phase_rate and drift.
class DispersionRelation {
 public:
  /// omega(k) = c k^n with no lower terms and no drift.
  static DispersionRelation monomial(int n, cplx c);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  cplx coeff(int j) const noexcept {
    return (j >= 2 && j <= degree()) ? coeffs_[static_cast<std::size_t>(j)] : cplx{0.0, 0.0};
  }
  cplx leading() const noexcept { return coeffs_.back(); }
  cplx drift() const noexcept { return drift_; }
  cplx phase_rate() const noexcept { return phase_rate_; }

  /// Indexed by degree; entries 0 and 1 are zero.
  std::span<const cplx> coefficients() const noexcept { return coeffs_; }

  /// Nonzero coefficients of degree >= 2.
  std::map<int, cplx> coefficient_map() const {
    std::map<int, cplx> out;
    for (int j = 2; j <= degree(); ++j)
      if (coeff(j) != cplx{0.0, 0.0}) out[j] = coeff(j);
    return out;
  }

  /// Coefficients including the removed phase_rate (degree 0) and drift (degree 1).
  std::vector<cplx> full_coefficients() const {
    std::vector<cplx> c = coeffs_;
    c[0] = phase_rate_;
    c[1] = drift_;
    return c;
  }

  cplx operator()(cplx k) const { return horner(coeffs_, k); }
  cplx eval(cplx k) const { return horner(coeffs_, k); }

  cplx derivative(cplx k) const {
    auto d = derivative_coeffs(coeffs_);
    return horner(d, k);
  }

  /// omega_t(k) = omega(k t^{-1/n}) t, i.e. omega_j -> omega_j t^{1 - j/n}.
  DispersionRelation rescaled(double t) const {
    if (!(t > 0.0) || !std::isfinite(t))
      throw Error(ErrorKind::InvalidArgument, "rescaled: t must be positive and finite");
    DispersionRelation out = *this;
    const double n = static_cast<double>(degree());
    for (int j = 2; j < degree(); ++j)
      out.coeffs_[static_cast<std::size_t>(j)] *= std::pow(t, 1.0 - j / n);
    out.drift_ *= std::pow(t, 1.0 - 1.0 / n);
    out.phase_rate_ *= t;
    return out;
  }

  /// factor * omega(k); used for the trivial identity I_{omega,m}(y,t) = I_{t omega,m}(y,1).
  DispersionRelation scaled_by(double factor) const {
    DispersionRelation out = *this;
    for (auto& c : out.coeffs_) c *= factor;
    out.drift_ *= factor;
    out.phase_rate_ *= factor;
    return out;
  }

  bool is_monomial() const noexcept {
    for (int j = 2; j < degree(); ++j)
      if (coeff(j) != cplx{0.0, 0.0}) return false;
    return true;
  }

  friend DispersionRelation normalize(const std::map<int, cplx>& raw);
  friend bool operator==(const DispersionRelation&, const DispersionRelation&) = default;

 private:
  DispersionRelation() = default;

  std::vector<cplx> coeffs_;
  cplx drift_{0.0, 0.0};
  cplx phase_rate_{0.0, 0.0};
};

namespace detail {

inline std::string format_cplx(cplx c) {
  std::ostringstream os;
  os.precision(17);
  os << c.real();
  if (c.imag() != 0.0) os << (c.imag() < 0.0 ? "" : "+") << c.imag() << "i";
  return os.str();
}

/// Im omega(k) on the real line must be bounded above: the highest-degree
/// coefficient with nonzero imaginary part must be of even degree and negative.
inline void check_well_posed(const std::vector<cplx>& c) {
  double scale = 0.0;
  for (const auto& v : c) scale = std::max(scale, std::abs(v));
  const double tol = 1e-14 * scale;
  for (int j = static_cast<int>(c.size()) - 1; j >= 1; --j) {
    const double im = c[static_cast<std::size_t>(j)].imag();
    if (std::abs(im) <= tol) continue;
    if (j % 2 == 1)
      throw Error(ErrorKind::IllPosed, "coefficient of k^" + std::to_string(j) + " = " +
                                           format_cplx(c[static_cast<std::size_t>(j)]) +
                                           " must be real (odd degree)");
    if (im > 0.0)
      throw Error(ErrorKind::IllPosed, "coefficient of k^" + std::to_string(j) + " = " +
                                           format_cplx(c[static_cast<std::size_t>(j)]) +
                                           " has positive imaginary part");
    return;
  }
}

}  // namespace detail

inline DispersionRelation normalize(const std::map<int, cplx>& raw) {
  int n = -1;
  for (const auto& [j, c] : raw) {
    if (j < 0) throw Error(ErrorKind::InvalidDispersion, "negative degree " + std::to_string(j));
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorKind::InvalidDispersion, "non-finite coefficient of k^" + std::to_string(j));
    if (c != cplx{0.0, 0.0}) n = std::max(n, j);
  }
  if (n < 2)
    throw Error(ErrorKind::InvalidDispersion, "polynomial degree must be at least 2");

  std::vector<cplx> c(static_cast<std::size_t>(n) + 1, cplx{0.0, 0.0});
  for (const auto& [j, v] : raw)
    if (j <= n) c[static_cast<std::size_t>(j)] = v;
  detail::check_well_posed(c);

  double scale = 0.0;
  for (const auto& v : c) scale = std::max(scale, std::abs(v));
  // Odd leading coefficient is real; strip round-off imaginary parts.
  for (int j = n; j >= 1; --j) {
    auto& v = c[static_cast<std::size_t>(j)];
    if (j % 2 == 1 && std::abs(v.imag()) <= 1e-14 * scale) v = cplx{v.real(), 0.0};
    if (j == n) break;
  }

  DispersionRelation out;
  out.phase_rate_ = c[0];
  out.drift_ = n >= 1 ? c[1] : cplx{0.0, 0.0};
  c[0] = c[1] = cplx{0.0, 0.0};
  out.coeffs_ = std::move(c);
  return out;
}

inline DispersionRelation DispersionRelation::monomial(int n, cplx c) {
  return normalize({{n, c}});
}

namespace detail {

inline double parse_double(std::string_view s, std::string_view context) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorKind::Parse, "bad number '" + std::string(s) + "' in '" + std::string(context) + "'");
  return v;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Complex literal: "a", "a+bi", "a-bi", "bi", "-i".
inline cplx parse_complex(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (s.empty()) throw Error(ErrorKind::Parse, "empty complex literal");
  if (s.back() != 'i') return {detail::parse_double(s, text), 0.0};
  s.remove_suffix(1);
  std::size_t split = std::string_view::npos;
  for (std::size_t p = s.size(); p-- > 1;) {
    if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  auto imag_part = [&](std::string_view im) {
    if (im.empty() || im == "+") return 1.0;
    if (im == "-") return -1.0;
    return detail::parse_double(im, text);
  };
  if (split == std::string_view::npos) return {0.0, imag_part(s)};
  return {detail::parse_double(s.substr(0, split), text), imag_part(s.substr(split))};
}

/// Text format "j:c,j:c,..." e.g. "3:1" or "2:0-1i" or "4:1,3:2".
inline std::map<int, cplx> parse_dispersion_raw(std::string_view text) {
  std::map<int, cplx> raw;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view entry =
        detail::trim(text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos));
    if (entry.empty()) throw Error(ErrorKind::Parse, "empty entry in '" + std::string(text) + "'");
    std::size_t colon = entry.find(':');
    if (colon == std::string_view::npos)
      throw Error(ErrorKind::Parse, "entry '" + std::string(entry) + "' lacks ':'");
    std::string_view deg = detail::trim(entry.substr(0, colon));
    int j = 0;
    auto [ptr, ec] = std::from_chars(deg.data(), deg.data() + deg.size(), j);
    if (ec != std::errc{} || ptr != deg.data() + deg.size())
      throw Error(ErrorKind::Parse, "bad degree '" + std::string(deg) + "'");
    if (j < 0) throw Error(ErrorKind::Parse, "negative degree " + std::to_string(j));
    if (raw.count(j)) throw Error(ErrorKind::Parse, "duplicate degree " + std::to_string(j));
    raw[j] = parse_complex(entry.substr(colon + 1));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return raw;
}

inline DispersionRelation parse_dispersion(std::string_view text) {
  return normalize(parse_dispersion_raw(text));
}

inline std::string format_dispersion(const DispersionRelation& w) {
  std::string out;
  auto put = [&](int j, cplx c) {
    if (c == cplx{0.0, 0.0}) return;
    if (!out.empty()) out += ",";
    out += std::to_string(j) + ":" + detail::format_cplx(c);
  };
  for (int j = w.degree(); j >= 2; --j) put(j, w.coeff(j));
  put(1, w.drift());
  put(0, w.phase_rate());
  return out;
}

/// Phase after k = sigma (|x|/t)^{1/(n-1)} z:
/// Phi(z) = i z - i omega_n sigma^n z^n - i sum_{j<n} omega_j (|x|/t)^{(j-n)/(n-1)} (sigma z)^j.
struct ScaledPhase {
  DispersionRelation base;
  int sigma;           ///< sign of x
  double ratio;        ///< |x| / t
  double amplitude;    ///< X = |x| (|x|/t)^{1/(n-1)}
  std::vector<cplx> coeffs;  ///< Phi(z) = sum_j coeffs[j] z^j

  int degree() const noexcept { return base.degree(); }
  /// omega_n sigma^n
  cplx leading() const noexcept { return kI * coeffs.back(); }
  /// (|x|/t)^{1/(n-1)}: the k-per-z scale.
  double lambda() const { return std::pow(ratio, 1.0 / (degree() - 1)); }

  cplx operator()(cplx z) const { return horner(coeffs, z); }
  cplx d1(cplx z) const { return horner(derivative_coeffs(coeffs), z); }
  cplx d2(cplx z) const {
    auto d = derivative_coeffs(coeffs);
    return horner(derivative_coeffs(d), z);
  }
  /// Taylor coefficients of Phi about z0, so that X (Phi(z) - Phi(z0)) keeps
  /// full precision near z0 when X is large.
  std::vector<cplx> shifted(cplx z0) const {
    std::vector<cplx> b = coeffs;
    const std::size_t n = b.size();
    for (std::size_t k = 0; k + 1 < n; ++k)
      for (std::size_t j = n - 1; j-- > k;) b[j] += z0 * b[j + 1];
    return b;
  }
};

inline ScaledPhase scaled_phase(const DispersionRelation& w, double x, double t) {
  if (x == 0.0 || !std::isfinite(x))
    throw Error(ErrorKind::InvalidArgument, "scaled_phase: x must be nonzero and finite");
  if (!(t > 0.0) || !std::isfinite(t))
    throw Error(ErrorKind::InvalidArgument, "scaled_phase: t must be positive");
  const int n = w.degree();
  const int sigma = x > 0.0 ? 1 : -1;
  const double ratio = std::abs(x) / t;
  const double amplitude = std::abs(x) * std::pow(ratio, 1.0 / (n - 1));
  std::vector<cplx> c(static_cast<std::size_t>(n) + 1, cplx{0.0, 0.0});
  c[1] = kI;
  for (int j = 2; j <= n; ++j) {
    const double sj = (j % 2 == 0) ? 1.0 : static_cast<double>(sigma);
    const double scale = (j == n) ? 1.0 : std::pow(ratio, static_cast<double>(j - n) / (n - 1));
    c[static_cast<std::size_t>(j)] = -kI * w.coeff(j) * scale * sj;
  }
  return ScaledPhase{w, sigma, ratio, amplitude, std::move(c)};
}

/// Roots of a polynomial (coefficients lowest degree first, nonzero leading)
/// from companion-matrix eigenvalues, each polished by one Newton step.
inline std::vector<cplx> polynomial_roots(std::span<const cplx> p) {
  const int d = static_cast<int>(p.size()) - 1;
  if (d < 1) return {};
  const cplx lead = p.back();
  if (d == 1) return {-p[0] / lead};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -p[static_cast<std::size_t>(i)] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::DegeneratePhase, "companion eigenvalue solver failed");
  auto dp = derivative_coeffs(p);
  std::vector<cplx> roots;
  roots.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    cplx z = solver.eigenvalues()(i);
    const cplx slope = horner(dp, z);
    if (std::abs(slope) > 0.0) z -= horner(p, z) / slope;
    roots.push_back(z);
  }
  return roots;
}

/// Number of stationary points in the closed upper half-plane for a real
/// leading coefficient c = omega_n sigma^n.
inline int expected_stationary_count(int n, double c) {
  if (n % 2 == 0) return 1 + (n - 2) / 2;
  return c > 0.0 ? 2 + (n - 3) / 2 : (n - 1) / 2;
}

/// Argument in [0, pi] for points in the closed upper half-plane.
inline double upper_arg(cplx z) {
  if (z.imag() <= 0.0) return z.real() >= 0.0 ? 0.0 : kPi;
  return std::arg(z);
}

/// Roots of Phi'(z) = 0 in the closed upper half-plane, ordered counterclockwise
/// from the positive real axis.
inline std::vector<cplx> stationary_points(const ScaledPhase& phi) {
  auto roots = polynomial_roots(derivative_coeffs(phi.coeffs));
  for (std::size_t a = 0; a < roots.size(); ++a)
    for (std::size_t b = a + 1; b < roots.size(); ++b) {
      const double scale = std::max(std::abs(roots[a]), std::abs(roots[b]));
      if (std::abs(roots[a] - roots[b]) < 1e-6 * scale)
        throw Error(ErrorKind::DegeneratePhase, "stationary points collide");
    }
  std::vector<cplx> upper;
  for (auto z : roots) {
    if (z.imag() >= -1e-12 * std::max(1.0, std::abs(z))) {
      if (z.imag() < 0.0) z = cplx{z.real(), 0.0};
      upper.push_back(z);
    }
  }
  std::sort(upper.begin(), upper.end(),
            [](cplx a, cplx b) { return upper_arg(a) < upper_arg(b); });
  const cplx c = phi.leading();
  if (std::abs(c.imag()) <= 1e-14 * std::abs(c)) {
    const int expected = expected_stationary_count(phi.degree(), c.real());
    if (static_cast<int>(upper.size()) != expected)
      throw Error(ErrorKind::DegeneratePhase,
                  "found " + std::to_string(upper.size()) + " stationary points, expected " +
                      std::to_string(expected));
  }
  return upper;
}

}  // namespace dispgibbs
