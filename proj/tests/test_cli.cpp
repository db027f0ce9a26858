#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "cli.hpp"

using namespace dispgibbs;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(call({"--help"}).code, 0);
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  EXPECT_EQ(call({"eval", "--y-grid", "0:1:3"}).code, 2);  // --omega missing
  EXPECT_EQ(call({"eval", "--omega", "2:1", "--y-grid", "0:1:3", "--m", "x"}).code, 2);
}

TEST(Cli, InvalidInputIsStatusTwo) {
  EXPECT_EQ(call({"eval", "--omega", "2:0+1i", "--y-grid", "0:1:3"}).code, 2);  // ill-posed
  EXPECT_EQ(call({"eval", "--omega", "2:1", "--y-grid", "0:1:1"}).code, 2);
  EXPECT_EQ(call({"eval", "--omega", "2:1", "--y-grid", "0:1"}).code, 2);
  EXPECT_EQ(call({"eval", "--omega", "2:1", "--y-grid", "0:1:3", "--format", "xml"}).code, 2);
  EXPECT_EQ(call({"eval", "--omega", "2:1", "--y-grid", "0:1:3", "--method", "magic"}).code, 2);
  EXPECT_EQ(call({"solve", "--omega", "2:1", "--ic", "/nonexistent.json", "--x-grid", "0:1:3"}).code, 2);
  EXPECT_EQ(call({"kernel", "--omega", "2:1", "--t", "0", "--x-grid", "0:1:3"}).code, 2);
  EXPECT_EQ(call({"gibbs-table", "--n", "1"}).code, 2);
  EXPECT_EQ(call({"contour-dump", "--kind", "spiral"}).code, 2);
  EXPECT_EQ(call({"verify", "everything"}).code, 2);
}

TEST(Cli, NumericalFailureEchoesQuery) {
  // degenerate stationary points, descent forced
  auto r = call({"eval", "--omega", "3:1,2:1", "--method", "descent", "--y-grid", "-0.33333333333333331:-0.2:2"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("DegeneratePhase"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("query"), std::string::npos) << r.err;
  auto d = call({"eval", "--omega", "2:1", "--method", "direct", "--y-grid", "100:101:2"});
  EXPECT_EQ(d.code, 3);
  EXPECT_NE(d.err.find("y=100"), std::string::npos) << d.err;
  EXPECT_EQ(d.err.find("NonFinite: NonFinite"), std::string::npos) << d.err;
}

TEST(Cli, EvalHeatCsv) {
  auto r = call({"eval", "--omega", "2:0-1i", "--m", "0", "--t", "1", "--y-grid", "-8:8:161"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 162u);
  EXPECT_EQ(ls[0], "y,re,im");
  double y, re, im;
  ASSERT_EQ(std::sscanf(ls[81].c_str(), "%lf,%lf,%lf", &y, &re, &im), 3);
  EXPECT_EQ(y, 0.0);
  EXPECT_NEAR(re, -0.5, 1e-14);
  ASSERT_EQ(std::sscanf(ls[1].c_str(), "%lf,%lf,%lf", &y, &re, &im), 3);
  EXPECT_EQ(y, -8.0);
  EXPECT_NEAR(re, 0.5 * (std::erf(-4.0) - 1.0), 1e-12);
}

TEST(Cli, Headers) {
  EXPECT_EQ(first_line(call({"kernel", "--omega", "3:1", "--x-grid", "-1:1:3"}).out), "x,re,im");
  EXPECT_EQ(first_line(call({"solve", "--omega", "3:1", "--t", "0.01,0.1", "--x-grid", "-1.5:1.5:4"}).out),
            "t,x,re,im");
  EXPECT_EQ(first_line(call({"gibbs-table", "--n", "2"}).out),
            "n,sigma_re,sigma_im,sup_re,inf_re,sup_im,inf_im,sup_abs,inf_abs,arg_sup_re");
  auto md = call({"kernel", "--omega", "3:1", "--x-grid", "-1:1:3", "--format", "markdown"});
  EXPECT_EQ(first_line(md.out), "| x | re | im |");
}

TEST(Cli, SolveRowsInOrder) {
  auto r = call({"solve", "--omega", "2:0-1i", "--t", "0.01,0.1", "--x-grid", "-2:2:5"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 11u);
  double t, x, re, im;
  ASSERT_EQ(std::sscanf(ls[8].c_str(), "%lf,%lf,%lf,%lf", &t, &x, &re, &im), 4);
  EXPECT_EQ(t, 0.1);
  EXPECT_EQ(x, 0.0);
  EXPECT_NEAR(re, std::erf(1.0 / (2.0 * std::sqrt(0.1))), 1e-12);
}

TEST(Cli, GibbsPassthrough) {
  auto r = call({"gibbs-table", "--n", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const auto ref = overshoot(2);
  EXPECT_EQ(j["rows"][0]["sup_re"].get<double>(), ref.sup_re);
  EXPECT_EQ(j["rows"][0]["inf_abs"].get<double>(), ref.inf_abs);
  EXPECT_EQ(j["wilbraham_gibbs"].get<double>(), wilbraham_gibbs_constant());
  auto csv = call({"gibbs-table", "--n", "2"});
  EXPECT_NE(csv.out.find(cli::fmt17(ref.sup_re)), std::string::npos);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"solve", "--omega", "5:1", "--ic", "box", "--t", "1e-6", "--x-grid", "-2:2:101"};
  const auto a = call(args), b = call(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  setenv("DISPGIBBS_THREADS", "1", 1);
  const auto c = call(args);
  unsetenv("DISPGIBBS_THREADS");
  EXPECT_EQ(a.out, c.out);
}

TEST(Cli, OutputFile) {
  const std::string path = ::testing::TempDir() + "dispgibbs_cli_out.csv";
  auto r = call({"-o", path, "kernel", "--omega", "2:0-1i", "--x-grid", "0:1:2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string head;
  std::getline(in, head);
  EXPECT_EQ(head, "x,re,im");
  std::remove(path.c_str());
}

TEST(Cli, ContourDump) {
  auto r = call({"contour-dump", "--kind", "descent", "--omega", "3:1", "--x", "5", "--t", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  ASSERT_FALSE(j.empty());
  for (const auto& s : j) {
    EXPECT_TRUE(s.contains("re0") && s.contains("im1") && s.contains("order"));
    EXPECT_GE(s["order"].get<int>(), 2);
  }
  auto p = call({"contour-dump", "--kind", "pole", "--radius", "0.5", "--truncation", "10"});
  ASSERT_EQ(p.code, 0);
  const auto jp = nlohmann::json::parse(p.out);
  EXPECT_EQ(jp.size(), 10u);
  EXPECT_EQ(jp.front()["re0"].get<double>(), -10.0);
  EXPECT_EQ(call({"contour-dump", "--kind", "pole", "--radius", "2"}).code, 2);
  EXPECT_EQ(call({"contour-dump", "--kind", "descent"}).code, 2);
}

TEST(Cli, IcJson) {
  const auto ic = cli::parse_ic_json(R"({"breakpoints":[-1,0,1],"pieces":[[1,1],[1,[-1,0]]]})");
  EXPECT_EQ(ic.breakpoints.size(), 3u);
  EXPECT_EQ(ic(0.5), cplx(0.5));
  EXPECT_THROW(cli::parse_ic_json("{"), Error);
  EXPECT_THROW(cli::parse_ic_json(R"({"breakpoints":[0,1]})"), Error);
  EXPECT_THROW(cli::parse_ic_json(R"({"breakpoints":[1,0],"pieces":[[1]]})"), Error);
  EXPECT_THROW(cli::parse_ic_json(R"({"breakpoints":[0,1],"pieces":[["a"]]})"), Error);

  const std::string path = ::testing::TempDir() + "dispgibbs_tent.json";
  {
    std::ofstream f(path);
    f << R"({"breakpoints":[-1,0,1],"pieces":[[1,1],[1,-1]]})";
  }
  const auto a = call({"solve", "--omega", "3:1", "--ic", path, "--t", "0.01", "--x-grid", "-1:1:5"});
  const auto b = call({"solve", "--omega", "3:1", "--ic", "tent", "--t", "0.01", "--x-grid", "-1:1:5"});
  std::remove(path.c_str());
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, Grid) {
  const auto g = cli::parse_grid("-2:2:5").points();
  EXPECT_EQ(g, (std::vector<double>{-2.0, -1.0, 0.0, 1.0, 2.0}));
  EXPECT_THROW(cli::parse_grid("a:2:5"), Error);
  EXPECT_EQ(cli::parse_int_list("3, 5,9"), (std::vector<int>{3, 5, 9}));
  EXPECT_THROW(cli::parse_int_list("2.5"), Error);
}

TEST(Cli, VerifySuites) {
  for (const char* s : {"oracles", "ode", "limits"}) {
    auto r = call({"verify", s});
    EXPECT_EQ(r.code, 0) << s << "\n" << r.out << r.err;
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
  }
}
