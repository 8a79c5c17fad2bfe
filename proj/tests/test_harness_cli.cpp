#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "spectra_cert/config.hpp"
#include "spectra_cert/enumerate.hpp"
#include "spectra_cert/errors.hpp"
#include "spectra_cert/harness.hpp"
#include "spectra_cert/report.hpp"
#include "spectra_cert/spectral.hpp"

using namespace spectra_cert;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("spectra_cert_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

struct Command {
  int status = -1;
  std::string output;
};

Command run_cli(const std::string& args) {
  Command c;
  const std::string cmd = std::string(SPECTRA_CERT_CLI) + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return c;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) c.output.append(buf, n);
  const int st = ::pclose(pipe);
  c.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return c;
}

int parse_error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

/// A small campaign covering every suite kind.
const char* kSmallConfig = R"({
  "n_max": {"main_theorem": 5, "stoploss": 5, "r1": 5, "vertex_gain": 4, "deletion": 5,
            "applications": 5, "psi_edges": 4, "line_square_edges": 4, "path_moment_n": 8},
  "p_grid": [2, 3],
  "t_grid": [0, 1, 2.5, 4],
  "x_grid": ["1/4", "1"],
  "cycle_m_max": 4,
  "splice_max": 4,
  "d_max": 6,
  "prec": 128
})";

nlohmann::json strip_runtime(nlohmann::json j) {
  for (auto& r : j["reports"]) r.erase("runtime_ms");
  return j;
}

}  // namespace

TEST(Config, DefaultsAndOverrides) {
  const CampaignConfig d = parse_config("{}");
  EXPECT_EQ(d.n_max.main_theorem, 8);
  EXPECT_EQ(d.t_grid.size(), 21u);
  EXPECT_EQ(d.t_grid.back(), 5.0);
  const CampaignConfig c = parse_config(R"({"p_grid": [2, 4.5], "x_grid": ["1/3", "2.5"], "suites": {"r1": false}})");
  EXPECT_EQ(c.p_grid, (std::vector<double>{2, 4.5}));
  EXPECT_EQ(c.x_grid, (std::vector<Rational>{Rational(1, 3), Rational(5, 2)}));
  // A suites object is an allowlist.
  EXPECT_FALSE(c.suites.r1);
  EXPECT_FALSE(c.suites.main_theorem);
  EXPECT_TRUE(parse_config(R"({"suites": {"r1": true}})").suites.r1);
  const CampaignConfig shipped = load_config(std::string(SPECTRA_CERT_SOURCE_DIR) + "/configs/default.json");
  EXPECT_EQ(shipped.p_grid.size(), 9u);
  EXPECT_EQ(shipped.output.json, "report.json");
}

TEST(Config, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line("{\n  \"p_grid\": [2, 3],\n  \"bogus\": 1\n}"), 3);
  EXPECT_EQ(parse_error_line("{\n  \"p_grid\": [3, 2]\n}"), 2);
  EXPECT_EQ(parse_error_line("{\n  \"n_max\": {\n    \"main_theorem\": 99\n  }\n}"), 3);
  EXPECT_EQ(parse_error_line("{\n  \"p_grid\": [2,\n  ]\n}"), 3);
  EXPECT_EQ(parse_error_line("{\n\n  \"x_grid\": [\"1/0\"]\n}"), 3);
  EXPECT_EQ(parse_error_line("{\n  \"t_grid\": [0, 6]\n}"), 2);
  EXPECT_THROW(load_config("/nonexistent/spectra.json"), IoError);
}

TEST(Run, EmptySelectionExitsZero) {
  TempDir dir;
  const fs::path cfg = dir.path() / "empty.json";
  const fs::path out = dir.path() / "out.json";
  write(cfg, R"({"suites": {"main_theorem": false, "stoploss": false, "r1": false, "deletion_theory": false,
    "interval_domination": false, "applications": false, "bernstein": false, "interval": false},
    "output": {"json": ")" + out.string() + "\"}}");
  testing::internal::CaptureStdout();
  EXPECT_EQ(run(cfg.string()), 0);
  testing::internal::GetCapturedStdout();
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_TRUE(j["reports"].empty());
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(Run, SmallCampaignPassesAndIsDeterministic) {
  const CampaignConfig cfg = parse_config(kSmallConfig);
  const auto a = run_suites(cfg);
  const auto b = run_suites(cfg);
  ASSERT_EQ(a.size(), 8u);
  for (const auto& r : a) {
    EXPECT_TRUE(r.passed()) << r.suite;
    EXPECT_GT(r.instances, 0) << r.suite;
    for (const auto& ne : r.near_equalities) EXPECT_NE(ne.outcome, "unresolved") << r.suite << " " << ne.graph6;
  }
  const auto ja = nlohmann::json::parse(reports_to_json(a));
  const auto jb = nlohmann::json::parse(reports_to_json(b));
  EXPECT_EQ(strip_runtime(ja).dump(), strip_runtime(jb).dump());
  for (const auto& r : ja["reports"])
    for (const char* key : {"suite", "config", "instances", "failures", "near_equalities", "runtime_ms"})
      EXPECT_TRUE(r.contains(key)) << key;
}

TEST(Run, ThreadCountDoesNotChangeReports) {
  CampaignConfig one = parse_config(kSmallConfig);
  one.suites = no_suites();
  one.suites.main_theorem = one.suites.stoploss = true;
  CampaignConfig many = one;
  one.threads = 1;
  many.threads = 3;
  auto ja = strip_runtime(nlohmann::json::parse(reports_to_json(run_suites(one))));
  auto jb = strip_runtime(nlohmann::json::parse(reports_to_json(run_suites(many))));
  for (auto* j : {&ja, &jb})
    for (auto& r : (*j)["reports"]) r["config"].erase("threads");
  EXPECT_EQ(ja.dump(), jb.dump());
}

TEST(Recorder, InjectedPerturbationYieldsOneNamedFailure) {
  // E_2(G) >= E_2(P_n) over connected graphs with n <= 5, with the direction flipped for K_3.
  const CampaignConfig cfg = parse_config("{}");
  VerificationReport rep;
  rep.suite = "fixture";
  Recorder rec(rep, cfg.tolerance);
  const auto levels = enumerate_connected_upto(5, GraphClass::all);
  for (int n = 1; n <= 5; ++n)
    for (const auto& g : levels[n]) {
      const Value e = p_energy(g, 2), ep = p_energy(make_path(n), 2);
      const std::string id = to_graph6(g);
      // E_2 = 2|E| exactly, so ties are settled by edge counts.
      const int diff = g.m() - (n - 1);
      if (id == "Bw")
        rec.ge(id, "p=2", ep.v, e.v, e.err + ep.err, [&] { return Recheck{-(diff > 0) + (diff < 0), true, "exact-integer"}; });
      else
        rec.ge(id, "p=2", e.v, ep.v, e.err + ep.err, [&] { return Recheck{(diff > 0) - (diff < 0), true, "exact-integer"}; });
    }
  ASSERT_EQ(rep.failures.size(), 1u);
  EXPECT_EQ(rep.failures[0].graph6, "Bw");
  EXPECT_EQ(rep.failures[0].param, "p=2");
  EXPECT_NEAR(rep.failures[0].margin, -2.0, 1e-9);
  EXPECT_FALSE(rep.passed());
}

TEST(Recorder, NearTiesGoThroughRecheck) {
  const CampaignConfig cfg = parse_config("{}");
  VerificationReport rep;
  Recorder rec(rep, cfg.tolerance);
  const Recheck eq = rec.ge("a", "t=0", 1.0, 1.0 + 1e-15, 1e-15, [] { return Recheck{0, true, "exact-integer"}; });
  EXPECT_TRUE(eq.resolved);
  const Recheck unresolved = rec.ge("b", "t=0", 1.0, 1.0 + 1e-15, 1e-15, [] { return Recheck{0, false, "hp-1024"}; });
  EXPECT_FALSE(unresolved.resolved);
  rec.ge("c", "t=0", 1.0, 1.0 + 1e-15, 1e-15, [] { return Recheck{-1, true, "exact-integer"}; });
  ASSERT_EQ(rep.near_equalities.size(), 3u);
  EXPECT_EQ(rep.near_equalities[0].outcome, "equal");
  EXPECT_EQ(rep.near_equalities[1].outcome, "unresolved");
  EXPECT_EQ(rep.near_equalities[2].outcome, "less");
  ASSERT_EQ(rep.failures.size(), 2u);
  EXPECT_EQ(rep.failures[0].graph6, "b");
  EXPECT_EQ(rep.failures[1].graph6, "c");
}

TEST(Report, CsvAndMarkdownEmission) {
  VerificationReport r;
  r.suite = "demo";
  r.instances = 3;
  r.failures.push_back({"Bw", "p=3", 1.0, 2.0, -1.0});
  VerificationReport ok;
  ok.suite = "clean";
  ok.instances = 2;
  TempDir dir;
  emit_report({r, ok}, ReportFormat::csv, (dir.path() / "r.csv").string());
  emit_report({r, ok}, ReportFormat::md, (dir.path() / "r.md").string());
  emit_report({r, ok}, ReportFormat::json, (dir.path() / "r.json").string());
  const std::string csv = slurp(dir.path() / "r.csv");
  EXPECT_NE(csv.find("Bw"), std::string::npos);
  EXPECT_NE(csv.find("demo"), std::string::npos);
  EXPECT_EQ(csv.find(",,,,,,,,"), std::string::npos);
  const std::string md = slurp(dir.path() / "r.md");
  EXPECT_NE(md.find("| suite |"), std::string::npos);
  EXPECT_NE(md.find("| demo | 3 | 1 |"), std::string::npos);
  EXPECT_NE(md.find("FAIL"), std::string::npos);
  const auto j = nlohmann::json::parse(slurp(dir.path() / "r.json"));
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_EQ(j["reports"][0]["failures"][0]["graph6"], "Bw");
  EXPECT_EQ(parse_report_format("md"), ReportFormat::md);
  EXPECT_THROW(parse_report_format("xml"), ParameterError);
  EXPECT_THROW(emit_report({r}, ReportFormat::json, "/nonexistent/dir/r.json"), IoError);
}

TEST(Cli, EnumerateAndSpectra) {
  const Command e = run_cli("enumerate --n 4 --class trees --format graph6");
  EXPECT_EQ(e.status, 0);
  EXPECT_EQ(std::count(e.output.begin(), e.output.end(), '\n'), 2);
  const Command s = run_cli("spectra --graph6 Bw --p 3");
  ASSERT_EQ(s.status, 0) << s.output;
  const auto j = nlohmann::json::parse(s.output);
  EXPECT_EQ(j["n"], 3);
  EXPECT_NEAR(j["energies"][0]["E_p"].get<double>(), 10.0, 1e-10);
  EXPECT_NEAR(j["energies"][0]["E_p_path"].get<double>(), 2 * std::pow(2.0, 1.5), 1e-10);
}

TEST(Cli, MalformedGraph6LineIsNamed) {
  TempDir dir;
  const fs::path f = dir.path() / "graphs.g6";
  write(f, "Bw\nA_\n\nC~\nB!!!\n");
  const Command c = run_cli("spectra --file " + f.string());
  EXPECT_EQ(c.status, 2);
  EXPECT_NE(c.output.find("line 5"), std::string::npos) << c.output;
}

TEST(Cli, ArgumentErrors) {
  EXPECT_NE(run_cli("certify-interval --prec 8").status, 0);
  EXPECT_NE(run_cli("enumerate --n 4 --class cubic").status, 0);
  EXPECT_NE(run_cli("run --config /nonexistent.json").status, 0);
  const Command d = run_cli("certify-domination --dmax 8");
  EXPECT_EQ(d.status, 0) << d.output;
}
