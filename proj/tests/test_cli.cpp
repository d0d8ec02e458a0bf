/*
 * Copyright 2026 The ttorus Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "ttorus/dirac.hpp"
#include "ttorus/serialize.hpp"
#include "ttorus/svg.hpp"

namespace ttorus::cli {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() / ("ttorus_cli_" + std::string(info->name()) + "_" +
                                         std::to_string(::getpid()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

Json read_json(const fs::path& p) {
  std::ifstream in(p);
  return Json::parse(in);
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig config_for(Command c, const fs::path& dir) {
  RunConfig cfg;
  cfg.command = c;
  cfg.output_dir = dir;
  return cfg;
}

void write_samples(const fs::path& p, int count, double (*fn)(double)) {
  std::ofstream os(p);
  os << "# samples\n";
  for (int j = 0; j < count; ++j) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g 0\n", fn(2 * M_PI * j / count));
    os << buf;
  }
}

void expect_exit_matches_checks(const Json& report, int status) {
  bool all = !report["checks"].empty();
  for (const Json& c : report["checks"]) all = all && c["passed"].get<bool>();
  EXPECT_EQ(status == kExitPass, all);
}

TEST(LoadSymbol, Builtins) {
  EXPECT_LT(coefficient_distance(load_symbol("cos4k:2"), FourierSeries::cosine(8)), 1e-300);
  EXPECT_LT(coefficient_distance(load_symbol("const:1"), FourierSeries::constant(1.0)), 1e-300);
  EXPECT_THROW(load_symbol("cos4k:1.5"), ConfigError);
  EXPECT_THROW(load_symbol("sin4k:1"), ConfigError);
  EXPECT_THROW(load_symbol("const:x"), ConfigError);
}

TEST(LoadSymbol, SampleFileRoundTrip) {
  TempDir dir;
  const fs::path p = dir.path() / "cos4.txt";
  write_samples(p, 64, [](double t) { return std::cos(4 * t); });
  EXPECT_LT(coefficient_distance(load_symbol(p.string()), FourierSeries::cosine(4)), 1e-12);
}

TEST(LoadSymbol, SampleFileErrors) {
  TempDir dir;
  const fs::path odd = dir.path() / "odd.txt";
  write_samples(odd, 48, [](double t) { return std::cos(t); });
  EXPECT_THROW(load_symbol(odd.string()), ConfigError);
  const fs::path bad = dir.path() / "bad.txt";
  std::ofstream(bad) << "1 2 3\n";
  EXPECT_THROW(load_symbol(bad.string()), ConfigError);
  const fs::path junk = dir.path() / "junk.txt";
  std::ofstream(junk) << "abc\n";
  EXPECT_THROW(load_symbol(junk.string()), ConfigError);
}

TEST(ParseArgs, Defaults) {
  ::unsetenv(kOutputDirEnv);
  const RunConfig c = parse_args({"spectrum"});
  EXPECT_EQ(c.command, Command::spectrum);
  EXPECT_EQ(c.n, 256);
  EXPECT_EQ(c.sizes, (std::vector<int>{64, 128, 256, 512}));
  EXPECT_FALSE(c.epsilon);
  EXPECT_EQ(c.output_dir, fs::path("."));
}

TEST(ParseArgs, OptionsAndEnvironment) {
  ::setenv(kOutputDirEnv, "/tmp/from_env", 1);
  const RunConfig c = parse_args({"sweep", "--sizes", "32,64", "--target", "delta", "--order", "2",
                                  "--svg", "--tol-stabilization", "1e-4"});
  EXPECT_EQ(c.sizes, (std::vector<int>{32, 64}));
  EXPECT_TRUE(c.sizes_given);
  EXPECT_EQ(c.sweep_target, "delta");
  EXPECT_EQ(c.order, 2);
  EXPECT_TRUE(c.emit_svg);
  EXPECT_EQ(c.tol.stabilization, 1e-4);
  EXPECT_EQ(c.output_dir, fs::path("/tmp/from_env"));
  EXPECT_EQ(parse_args({"polar", "--output-dir", "x"}).output_dir, fs::path("x"));
  ::unsetenv(kOutputDirEnv);
  const RunConfig s = parse_args({"summability", "--epsilon", "0", "--K", "1000"});
  ASSERT_TRUE(s.epsilon);
  EXPECT_EQ(*s.epsilon, 0.0);
  EXPECT_EQ(s.K, 1000);
}

TEST(ParseArgs, Rejections) {
  EXPECT_THROW(parse_args({}), ConfigError);
  EXPECT_THROW(parse_args({"frobnicate"}), ConfigError);
  EXPECT_THROW(parse_args({"spectrum", "--n", "1"}), ConfigError);
  EXPECT_THROW(parse_args({"sweep", "--sizes", "64,32"}), ConfigError);
  EXPECT_THROW(parse_args({"summability", "--epsilon", "-1"}), ConfigError);
  EXPECT_THROW(parse_args({"spectrum", "--epsilon", "1"}), ConfigError);
  EXPECT_THROW(parse_args({"spectrum", "--help"}), HelpRequested);
}

TEST(Run, SpectrumReportAndArtifacts) {
  TempDir dir;
  RunConfig cfg = config_for(Command::spectrum, dir.path());
  cfg.n = 32;
  cfg.emit_svg = true;
  const int status = run(cfg);
  EXPECT_EQ(status, kExitPass);
  const Json r = read_json(dir.path() / "report.json");
  for (const char* key : {"command", "config", "checks", "artifacts", "data", "timestamp"})
    EXPECT_TRUE(r.contains(key)) << key;
  EXPECT_EQ(r["command"], "spectrum");
  EXPECT_EQ(r["artifacts"], Json::array({"data.csv", "plot.svg"}));
  EXPECT_EQ(r["data"]["eigenvalues"].size(), 64u);
  EXPECT_EQ(r["data"]["spurious"].size(), 1u);
  expect_exit_matches_checks(r, status);
  const std::string svg = read_text(dir.path() / "plot.svg");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("<circle"), std::string::npos);
  const std::string csv = read_text(dir.path() / "data.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 65);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(Run, ReportIsReproducibleUpToTimestamp) {
  TempDir a, b;
  RunConfig cfg = config_for(Command::sweep, a.path());
  cfg.sizes = {32, 64};
  run(cfg);
  cfg.output_dir = b.path();
  run(cfg);
  Json ra = read_json(a.path() / "report.json"), rb = read_json(b.path() / "report.json");
  ra.erase("timestamp");
  rb.erase("timestamp");
  ra["config"].erase("output_dir");
  rb["config"].erase("output_dir");
  EXPECT_EQ(ra.dump(), rb.dump());
  EXPECT_EQ(read_text(a.path() / "data.csv"), read_text(b.path() / "data.csv"));
}

TEST(Run, VerifyCosine) {
  TempDir dir;
  RunConfig cfg = config_for(Command::verify, dir.path());
  cfg.n = 128;
  cfg.symbol_spec = "cos4k:1";
  const int status = run(cfg);
  EXPECT_EQ(status, kExitPass);
  expect_exit_matches_checks(read_json(dir.path() / "report.json"), status);
}

TEST(Run, SummabilityDiagnosis) {
  TempDir dir;
  RunConfig cfg = config_for(Command::summability, dir.path());
  cfg.epsilon = 0.0;
  cfg.K = 100000;
  EXPECT_EQ(run(cfg), kExitPass);
  const Json r = read_json(dir.path() / "report.json");
  EXPECT_EQ(r["data"]["diagnostic"]["verdict"].get<std::string>().rfind("not trace class at eps=0", 0), 0u);
  cfg.epsilon = 1.0;
  EXPECT_EQ(run(cfg), kExitPass);
  EXPECT_NEAR(read_json(dir.path() / "report.json")["data"]["zeta_limit"].get<double>(),
              M_PI * M_PI / 3 - 1, 1e-14);
}

TEST(Run, IndexAndPolar) {
  TempDir dir;
  RunConfig cfg = config_for(Command::index, dir.path());
  EXPECT_EQ(run(cfg), kExitPass);
  EXPECT_EQ(read_json(dir.path() / "report.json")["data"]["pairs"].size(), 3u);
  cfg.command = Command::polar;
  cfg.n = 64;
  EXPECT_EQ(run(cfg), kExitPass);
  cfg.margin = 40;
  EXPECT_EQ(run(cfg), kExitCheckFailure);
}

TEST(Run, WedgeFailureIsCheckFailure) {
  TempDir dir;
  const fs::path p = dir.path() / "sin4.txt";
  write_samples(p, 64, [](double t) { return std::sin(4 * t); });
  RunConfig cfg = config_for(Command::wedge, dir.path());
  cfg.symbol_spec = p.string();
  const int status = run(cfg);
  EXPECT_EQ(status, kExitCheckFailure);
  expect_exit_matches_checks(read_json(dir.path() / "report.json"), status);
}

TEST(Run, RoughSweepFails) {
  TempDir dir;
  RunConfig cfg = config_for(Command::sweep, dir.path());
  cfg.symbol_spec = "rough";
  cfg.sweep_target = "delta";
  cfg.sizes = {64, 128, 256};
  EXPECT_EQ(run(cfg), kExitCheckFailure);
  EXPECT_EQ(read_json(dir.path() / "report.json")["data"]["trend"], "growing");
}

TEST(Run, UsageErrorsWriteErrorRecord) {
  TempDir dir;
  RunConfig cfg = config_for(Command::verify, dir.path());
  cfg.symbol_spec = "nonsense";
  EXPECT_EQ(run(cfg), kExitUsage);
  const Json r = read_json(dir.path() / "report.json");
  EXPECT_EQ(r["error"]["kind"], "usage");
  expect_exit_matches_checks(r, kExitUsage);
  // Non-wedge symbols are not in the algebra a sweep is defined on.
  cfg.command = Command::sweep;
  cfg.symbol_spec = dir.path() / "sin4.txt";
  write_samples(cfg.symbol_spec, 64, [](double t) { return std::sin(4 * t); });
  EXPECT_EQ(run(cfg), kExitUsage);
}

TEST(Run, UnwritableOutput) {
  TempDir dir;
  const fs::path file = dir.path() / "plain";
  std::ofstream(file) << "x";
  EXPECT_EQ(run(config_for(Command::polar, file / "sub")), kExitUsage);
}

TEST(ExitStatus, Classification) {
  EXPECT_EQ(exit_status_for(ConfigError("x")), kExitUsage);
  EXPECT_EQ(exit_status_for(NotInAlgebra("x")), kExitUsage);
  EXPECT_EQ(exit_status_for(NormNotConverged("x")), kExitNumerical);
  EXPECT_EQ(exit_status_for(IndexError("x")), kExitNumerical);
}

TEST(Svg, LogAxesAndLegend) {
  PlotSpec spec{"t", "x", "y", true, true, {{"a", {1, 10, 100}, {1, 2, 4}, false}}};
  const std::string svg = render_svg(spec);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_NE(svg.find(">a<"), std::string::npos);
  EXPECT_EQ(svg.find("nan"), std::string::npos);
}

}  // namespace
}  // namespace ttorus::cli
