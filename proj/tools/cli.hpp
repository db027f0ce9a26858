#pragma once

// Command-line front end. `run` is kept free of process state so the tests can
// drive it with an argument vector and string streams.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dispgibbs/dispgibbs.hpp"
#include "verify.hpp"

namespace dispgibbs::cli {

enum class Format { Csv, Json, Markdown };

inline Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  if (s == "markdown" || s == "md") return Format::Markdown;
  throw Error(ErrorKind::Parse, "unknown format '" + s + "'");
}

struct Grid {
  double a = 0.0, b = 0.0;
  int n = 0;
  std::vector<double> points() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) out.push_back(k + 1 == n ? b : a + (b - a) * k / (n - 1));
    return out;
  }
};

/// "a:b:n" with n >= 2.
inline Grid parse_grid(const std::string& text) {
  const auto p1 = text.find(':');
  const auto p2 = p1 == std::string::npos ? std::string::npos : text.find(':', p1 + 1);
  if (p2 == std::string::npos) throw Error(ErrorKind::Parse, "grid must be a:b:n, got '" + text + "'");
  Grid g;
  g.a = detail::parse_double(text.substr(0, p1), text);
  g.b = detail::parse_double(text.substr(p1 + 1, p2 - p1 - 1), text);
  const std::string ns = text.substr(p2 + 1);
  auto [ptr, ec] = std::from_chars(ns.data(), ns.data() + ns.size(), g.n);
  if (ec != std::errc{} || ptr != ns.data() + ns.size()) throw Error(ErrorKind::Parse, "bad grid count '" + ns + "'");
  if (g.n < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least 2 points");
  return g;
}

inline std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  for (;;) {
    const auto comma = text.find(',', pos);
    out.push_back(detail::parse_double(detail::trim(text.substr(pos, comma - pos)), text));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_double_list(text)) {
    if (v != std::floor(v)) throw Error(ErrorKind::Parse, "expected integers in '" + text + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

inline cplx json_number(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorKind::Parse, "coefficient must be a number or [re, im]");
}

/// {"breakpoints":[...], "pieces":[[c0,c1,...],...]}, coefficients in powers of x.
inline PiecewisePolynomialIC parse_ic_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("IC JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("breakpoints") || !j.contains("pieces"))
    throw Error(ErrorKind::Parse, "IC JSON needs 'breakpoints' and 'pieces'");
  PiecewisePolynomialIC ic;
  for (const auto& b : j["breakpoints"]) {
    if (!b.is_number()) throw Error(ErrorKind::Parse, "breakpoints must be numbers");
    ic.breakpoints.push_back(b.get<double>());
  }
  for (const auto& p : j["pieces"]) {
    if (!p.is_array()) throw Error(ErrorKind::Parse, "each piece must be an array");
    Poly poly;
    for (const auto& c : p) poly.push_back(json_number(c));
    ic.pieces.push_back(poly);
  }
  ic.validate();
  return ic;
}

/// box, tent, smoothed-box:delta, or a path to an IC JSON file.
inline PiecewisePolynomialIC resolve_ic(const std::string& spec) {
  if (spec == "box") return box_ic();
  if (spec == "tent") return tent_ic();
  const std::string sb = "smoothed-box:";
  if (spec.rfind(sb, 0) == 0) return smoothed_box(detail::parse_double(spec.substr(sb.size()), spec));
  std::ifstream in(spec);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open IC file '" + spec + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_ic_json(ss.str());
}

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct RunConfig {
  std::string subcommand;
  std::string output;
  std::string format = "csv";
  std::string omega;
  int m = 0;
  double t = 1.0;
  std::string t_list = "1";
  std::string y_grid;
  std::string x_grid;
  std::string ic = "box";
  std::string method = "auto";
  std::string n_list = "2,3,4,5,6,7,8";
  std::string sigma = "1";
  double x = 1.0;
  std::string kind = "descent";
  double radius = 0.5;
  double truncation = 10.0;
  std::string suite;
};

namespace detail_cli {

/// Rethrows with the failing query appended to the message.
template <class F>
auto with_query(const std::string& query, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), e.message() + " [query: " + query + "]");
  }
}

inline void table(std::ostream& out, Format fmt, const std::vector<std::string>& header,
                  const std::vector<std::vector<double>>& rows, nlohmann::json meta) {
  if (fmt == Format::Csv) {
    for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
    out << "\n";
    for (const auto& r : rows) {
      for (std::size_t k = 0; k < r.size(); ++k) out << (k ? "," : "") << fmt17(r[k]);
      out << "\n";
    }
  } else if (fmt == Format::Markdown) {
    out << "|";
    for (const auto& h : header) out << " " << h << " |";
    out << "\n|";
    for (std::size_t k = 0; k < header.size(); ++k) out << "---|";
    out << "\n";
    for (const auto& r : rows) {
      out << "|";
      for (double v : r) out << " " << fmt17(v) << " |";
      out << "\n";
    }
  } else {
    nlohmann::json rowsj = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json o;
      for (std::size_t k = 0; k < r.size(); ++k) o[header[k]] = r[k];
      rowsj.push_back(o);
    }
    meta["rows"] = rowsj;
    out << meta.dump(2) << "\n";
  }
}

inline int run_eval(const RunConfig& c, std::ostream& out, bool kernel) {
  const DispersionRelation w = parse_dispersion(c.omega);
  EvalOptions opt;
  opt.method = parse_method(c.method);
  const Format fmt = parse_format(c.format);
  const int m = kernel ? -1 : c.m;
  if (m < -1) throw Error(ErrorKind::InvalidArgument, "--m must be >= -1");
  if (kernel ? !(c.t > 0.0) : !(c.t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "--t out of range");
  const std::vector<double> ys = parse_grid(kernel ? c.x_grid : c.y_grid).points();
  auto vals = parallel_map(ys, [&](double y) {
    return with_query("omega=" + c.omega + " m=" + std::to_string(m) + " y=" + fmt17(y) + " t=" + fmt17(c.t),
                      [&] { return eval_I(w, m, y, c.t, opt); });
  });
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < ys.size(); ++k) rows.push_back({ys[k], vals[k].real(), vals[k].imag()});
  nlohmann::json meta{{"omega", format_dispersion(w)}, {"m", m}, {"t", c.t}, {"method", c.method}};
  table(out, fmt, {kernel ? "x" : "y", "re", "im"}, rows, meta);
  return 0;
}

inline int run_solve(const RunConfig& c, std::ostream& out) {
  const DispersionRelation w = parse_dispersion(c.omega);
  EvalOptions opt;
  opt.method = parse_method(c.method);
  const Format fmt = parse_format(c.format);
  const PiecewisePolynomialIC ic = resolve_ic(c.ic);
  const JumpDecomposition jd = jump_decomposition(ic);
  const std::vector<double> ts = parse_double_list(c.t_list);
  const std::vector<double> xs = parse_grid(c.x_grid).points();
  for (double t : ts)
    if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "--t values must be >= 0");
  std::vector<std::pair<double, double>> pts;
  for (double t : ts)
    for (double x : xs) {
      if (t == 0.0 && ic.is_breakpoint(x))
        throw Error(ErrorKind::InvalidArgument, "t = 0 at breakpoint x = " + fmt17(x));
      pts.emplace_back(t, x);
    }
  auto vals = parallel_map(pts, [&](const std::pair<double, double>& p) {
    return with_query("omega=" + c.omega + " ic=" + c.ic + " x=" + fmt17(p.second) + " t=" + fmt17(p.first),
                      [&] { return solve(jd, w, p.second, p.first, opt); });
  });
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < pts.size(); ++k)
    rows.push_back({pts[k].first, pts[k].second, vals[k].real(), vals[k].imag()});
  nlohmann::json meta{{"omega", format_dispersion(w)}, {"ic", c.ic}, {"method", c.method}};
  table(out, fmt, {"t", "x", "re", "im"}, rows, meta);
  return 0;
}

inline int run_gibbs(const RunConfig& c, std::ostream& out) {
  const Format fmt = parse_format(c.format);
  const std::vector<int> ns = parse_int_list(c.n_list);
  const cplx sigma = parse_complex(c.sigma);
  OvershootOptions opt;
  opt.t = c.t;
  if (!(c.t > 0.0)) throw Error(ErrorKind::InvalidArgument, "--t must be positive");
  for (int n : ns) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "--n entries must be >= 2");
    (void)DispersionRelation::monomial(n, sigma);
  }
  std::vector<std::vector<double>> rows;
  for (int n : ns) {
    auto r = with_query("n=" + std::to_string(n) + " sigma=" + c.sigma, [&] { return overshoot(n, sigma, opt); });
    rows.push_back({static_cast<double>(n), sigma.real(), sigma.imag(), r.sup_re, r.inf_re, r.sup_im, r.inf_im,
                    r.sup_abs, r.inf_abs, r.arg_sup_re});
  }
  nlohmann::json meta{{"t", c.t}, {"wilbraham_gibbs", wilbraham_gibbs_constant()}};
  table(out, fmt,
        {"n", "sigma_re", "sigma_im", "sup_re", "inf_re", "sup_im", "inf_im", "sup_abs", "inf_abs", "arg_sup_re"},
        rows, meta);
  return 0;
}

inline nlohmann::json segments_json(const Contour& ct) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : ct.segments)
    arr.push_back({{"re0", s.start.real()}, {"im0", s.start.imag()}, {"re1", s.end.real()},
                   {"im1", s.end.imag()}, {"order", s.order}});
  return arr;
}

inline int run_contour_dump(const RunConfig& c, std::ostream& out) {
  nlohmann::json arr = nlohmann::json::array();
  if (c.kind == "pole") {
    arr = segments_json(pole_avoiding_contour(c.radius, c.truncation));
  } else if (c.kind == "descent") {
    const DispersionRelation w = parse_dispersion(c.omega);
    const ScaledPhase phi = scaled_phase(w, c.x, c.t);
    const DescentSystem ds = with_query("omega=" + c.omega + " x=" + fmt17(c.x) + " t=" + fmt17(c.t),
                                        [&] { return descent_system(phi); });
    for (const auto& dc : ds.contours)
      for (auto& s : segments_json(dc.contour)) arr.push_back(s);
  } else {
    throw Error(ErrorKind::InvalidArgument, "--kind must be descent or pole");
  }
  out << arr.dump(2) << "\n";
  return 0;
}

}  // namespace detail_cli

/// Exit status: 0 success, 1 verify failure, 2 invalid input, 3 numerical failure.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Dispersive special functions, exact piecewise-polynomial solutions and Gibbs overshoots"};
  app.require_subcommand(1, 1);
  app.add_option("-o,--output", c.output, "write to this file instead of stdout");

  auto* eval = app.add_subcommand("eval", "tabulate I_{omega,m}(y,t) on a y grid");
  eval->add_option("--omega", c.omega, "dispersion relation, e.g. 2:0-1i")->required();
  eval->add_option("--m", c.m, "order m >= -1");
  eval->add_option("--t", c.t, "time t >= 0");
  eval->add_option("--y-grid", c.y_grid, "a:b:n")->required();
  eval->add_option("--method", c.method, "auto|direct|descent");
  eval->add_option("--format", c.format, "csv|json|markdown");

  auto* slv = app.add_subcommand("solve", "solve the IVP for piecewise-polynomial initial data");
  slv->add_option("--omega", c.omega)->required();
  slv->add_option("--ic", c.ic, "box|tent|smoothed-box:delta|<file.json>");
  slv->add_option("--t", c.t_list, "comma-separated times");
  slv->add_option("--x-grid", c.x_grid, "a:b:n")->required();
  slv->add_option("--method", c.method);
  slv->add_option("--format", c.format);

  auto* gib = app.add_subcommand("gibbs-table", "extrema of G_n(y,1) = I_{sigma k^n,0}(y,1) + 1");
  gib->add_option("--n", c.n_list, "comma-separated degrees");
  gib->add_option("--sigma", c.sigma, "unit leading coefficient");
  gib->add_option("--t", c.t);
  gib->add_option("--format", c.format);

  auto* ker = app.add_subcommand("kernel", "tabulate K_t(x) = I_{omega,-1}(x,t)");
  ker->add_option("--omega", c.omega)->required();
  ker->add_option("--t", c.t);
  ker->add_option("--x-grid", c.x_grid)->required();
  ker->add_option("--method", c.method);
  ker->add_option("--format", c.format);

  auto* dump = app.add_subcommand("contour-dump", "emit contour segments as JSON");
  dump->add_option("--kind", c.kind, "descent|pole");
  dump->add_option("--omega", c.omega);
  dump->add_option("--x", c.x);
  dump->add_option("--t", c.t);
  dump->add_option("--radius", c.radius);
  dump->add_option("--truncation", c.truncation);

  auto* ver = app.add_subcommand("verify", "run a built-in check suite");
  ver->add_option("suite", c.suite, "oracles|ode|limits|gibbs")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!c.output.empty()) {
    file.open(c.output);
    if (!file) {
      err << "cannot open output '" << c.output << "'\n";
      return 2;
    }
    sink = &file;
  }
  std::ostringstream buffer;
  try {
    int status = 0;
    if (eval->parsed()) status = detail_cli::run_eval(c, buffer, false);
    else if (slv->parsed()) status = detail_cli::run_solve(c, buffer);
    else if (gib->parsed()) status = detail_cli::run_gibbs(c, buffer);
    else if (ker->parsed()) status = detail_cli::run_eval(c, buffer, true);
    else if (dump->parsed()) {
      if (c.kind == "descent" && c.omega.empty()) throw Error(ErrorKind::InvalidArgument, "--omega is required");
      status = detail_cli::run_contour_dump(c, buffer);
    } else if (ver->parsed()) status = verify::run_suite(c.suite, buffer);
    *sink << buffer.str();
    return status;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return is_numerical(e.kind()) ? 3 : 2;
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"dispgibbs"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace dispgibbs::cli
