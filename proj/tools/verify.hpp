#pragma once

// Built-in check suites behind `dispgibbs verify <suite>`.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "dispgibbs/dispgibbs.hpp"
#include "oracles.hpp"

namespace dispgibbs::verify {

struct Line {
  std::string name;
  double measured;
  double tol;
  bool pass() const { return measured < tol; }
};

inline int report(const std::vector<Line>& lines, std::ostream& out) {
  int failures = 0;
  for (const auto& l : lines) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s %s measured=%.3e tol=%.1e\n", l.pass() ? "PASS" : "FAIL", l.name.c_str(),
                  l.measured, l.tol);
    out << buf;
    if (!l.pass()) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

inline std::vector<double> s_grid() {
  std::vector<double> s;
  for (int k = 0; k <= 200; ++k) s.push_back(-10.0 + 0.1 * k);
  return s;
}

inline std::vector<Line> oracles() {
  const auto s = s_grid();
  const auto heat = parse_dispersion("2:0-1i"), schr = parse_dispersion("2:1"), stokes = parse_dispersion("3:-1");
  double eh = 0.0, es = 0.0, ek = 0.0;
  for (double v : s) {
    eh = std::max(eh, std::abs(eval_I(heat, 0, v, 1.0) - oracle::heat_I0(v)));
    es = std::max(es, std::abs(eval_I(schr, 0, v, 1.0) - oracle::schrodinger_I0(v)));
    ek = std::max(ek, std::abs(eval_I(stokes, 0, v, 1.0) - oracle::stokes_I0(v)));
  }
  return {{"heat_vs_erf", eh, 1e-8}, {"schrodinger_vs_complex_erf", es, 1e-8}, {"stokes_vs_airy_primitive", ek, 1e-6}};
}

inline std::vector<Line> ode() {
  struct Case {
    const char* omega;
    int m;
    double y, t;
  };
  const std::vector<Case> cases{{"2:0-1i", 0, 1.0, 1.0}, {"2:1", 0, 0.7, 1.0},    {"2:1", 1, -1.3, 0.5},
                                {"3:1", 0, 2.0, 0.5},    {"3:1", 1, 2.0, 0.5},     {"3:-1", 1, -0.8, 1.0},
                                {"4:1,3:2", 0, 0.4, 1.0}, {"4:1", 1, -1.5, 2.0},  {"4:0-1i", 0, 0.9, 1.0}};
  double worst = 0.0;
  for (const auto& c : cases) worst = std::max(worst, ode_residual(parse_dispersion(c.omega), c.m, c.y, c.t, 0.05));
  return {{"ode_residual_max", worst, 1e-4}};
}

inline std::vector<Line> limits() {
  std::vector<Line> out;
  for (const char* o : {"2:0-1i", "2:1", "3:1", "3:-1", "4:1", "4:1,3:2", "5:1"}) {
    const auto w = parse_dispersion(o);
    double worst = 0.0;
    for (double t : {1.0, 0.1}) {
      const double Y = 1e6 * std::pow(t, 1.0 / w.degree());
      worst = std::max(worst, std::abs(eval_I(w, 0, Y, t)));
      worst = std::max(worst, std::abs(eval_I(w, 0, -Y, t) + 1.0));
    }
    out.push_back({std::string("limits_") + o, worst, 1e-3});
  }
  return out;
}

inline std::vector<Line> gibbs() {
  const double g = wilbraham_gibbs_constant();
  std::vector<Line> out{{"wilbraham_gibbs_vs_0.089490", std::abs(g - 0.089490), 5e-7}};
  double prev = 1.0;
  bool monotone = true;
  double last = 0.0;
  for (int n : {3, 5, 9, 17, 33}) {
    last = std::abs(overshoot(n).sup_re - (1.0 + g));
    if (!(last < prev)) monotone = false;
    prev = last;
  }
  out.push_back({"overshoot_monotone_in_n", monotone ? 0.0 : 1.0, 0.5});
  out.push_back({"overshoot_gap_n33", last, 0.02});
  return out;
}

inline int run_suite(const std::string& suite, std::ostream& out) {
  if (suite == "oracles") return report(oracles(), out);
  if (suite == "ode") return report(ode(), out);
  if (suite == "limits") return report(limits(), out);
  if (suite == "gibbs") return report(gibbs(), out);
  throw Error(ErrorKind::InvalidArgument, "unknown suite '" + suite + "' (oracles|ode|limits|gibbs)");
}

}  // namespace dispgibbs::verify
