#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "umbilic/cli.hpp"

using namespace umbilic;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("umbilic-cli-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
  static inline int counter = 0;
};

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult result;
  result.code = cli::run_cli(args, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("RunConfig round-trips through the config format") {
  cli::RunConfig config;
  config.family = "sphere";
  config.lambda = 0.45;
  config.R0 = 2.0;
  config.epsilon = 0.25;
  config.grid = 150;
  config.samples = 64;
  config.seed = 987654321;
  config.out = "some/report.csv";
  CHECK(cli::RunConfig::parse_text(config.serialize()) == config);

  cli::RunConfig defaults;  // lambda unset, out empty
  CHECK(cli::RunConfig::parse_text(defaults.serialize()) == defaults);
  CHECK(defaults.serialize().find("lambda=") == std::string::npos);
}

TEST_CASE("RunConfig parse diagnostics carry line and field") {
  CHECK_THROWS_WITH_AS(cli::RunConfig::parse_text("family=flat\nbogus line\n"),
                       "config line 2: expected key=value", InvalidParamsError);
  CHECK_THROWS_WITH_AS(cli::RunConfig::parse_text("unknown=1\n"),
                       "config line 1: unknown key 'unknown'", InvalidParamsError);
  CHECK_THROWS_WITH_AS(cli::RunConfig::parse_text("n=abc\n"),
                       "config line 1: invalid value for 'n'", InvalidParamsError);
}

TEST_CASE("verify command: pass, fail-fast on bad lambda") {
  TempDir tmp;
  const std::string out_path = tmp.file("report.csv");
  const CliResult ok = run({"verify", "--family", "flat", "--n", "2", "--m", "1",
                            "--lambda", "0.3", "--samples", "40", "--out", out_path});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("all residuals vanish") != std::string::npos);
  const std::string csv = slurp(out_path);
  CHECK(csv.rfind("# umbilic-lab report v1\n", 0) == 0);
  CHECK(csv.find("testeqn8") != std::string::npos);

  const std::string bad_path = tmp.file("bad.csv");
  const CliResult bad = run({"verify", "--family", "flat", "--lambda", "1.5",
                             "--out", bad_path});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("lambda must be < 1") != std::string::npos);
  CHECK_FALSE(fs::exists(bad_path));  // failed runs leave no partial output
}

TEST_CASE("verify command: sphere family") {
  TempDir tmp;
  const std::string out_path = tmp.file("sphere.csv");
  const CliResult r = run({"verify", "--family", "sphere", "--lambda", "0.5",
                           "--R0", "1.0", "--samples", "40", "--out", out_path});
  CHECK(r.code == 0);
  CHECK(slurp(out_path).find("testeqn16b") != std::string::npos);
}

TEST_CASE("index command output") {
  TempDir tmp;
  const CliResult flat = run({"index", "--family", "flat", "--n", "3", "--m", "1",
                              "--lambda", "0.1", "--grid", "60", "--out",
                              tmp.file("flat_idx.csv")});
  CHECK(flat.code == 0);
  CHECK(flat.out.find("origin: index 3/2") != std::string::npos);

  const CliResult sphere = run({"index", "--family", "sphere", "--lambda", "0.5",
                                "--grid", "80", "--out", tmp.file("sphere_idx.csv")});
  CHECK(sphere.code == 0);
  CHECK(sphere.out.find("south pole (xi'=0): index 2") != std::string::npos);
  CHECK(sphere.out.find("total=2=chi(S^2)") != std::string::npos);

  const CliResult totally = run({"index", "--family", "flat", "--lambda", "0",
                                 "--grid", "40", "--out", tmp.file("tu.csv")});
  CHECK(totally.code == 0);
  CHECK(totally.out.find("totally umbilic") != std::string::npos);
}

TEST_CASE("budget command") {
  TempDir tmp;
  const CliResult flat = run({"budget", "--family", "flat", "--epsilon", "0.1",
                              "--out", tmp.file("budget.csv")});
  CHECK(flat.code == 0);
  CHECK(flat.out.find("0.398942") != std::string::npos);
  CHECK(flat.out.find("within budget") != std::string::npos);

  const CliResult sphere = run({"budget", "--family", "sphere", "--epsilon", "0.1",
                                "--R0", "1.0", "--out", tmp.file("budget_s.csv")});
  CHECK(sphere.code == 0);

  const CliResult zero = run({"budget", "--family", "flat", "--epsilon", "0",
                              "--out", tmp.file("never.csv")});
  CHECK(zero.code == 2);
  CHECK(zero.err.find("epsilon must be > 0") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp.file("never.csv")));

  // an over-sized lambda blows the budget: verification failure, not usage error
  const CliResult blown = run({"budget", "--family", "sphere", "--epsilon", "0.1",
                               "--lambda", "3.0", "--out", tmp.file("blown.csv")});
  CHECK(blown.code == 1);
  CHECK(blown.out.find("BUDGET VIOLATION") != std::string::npos);
  CHECK(fs::exists(tmp.file("blown.csv")));  // the report itself is still written
}

TEST_CASE("foliation command writes an SVG") {
  TempDir tmp;
  const std::string svg_path = tmp.file("f.svg");
  const CliResult r = run({"foliation", "--family", "flat", "--n", "1", "--m", "1",
                           "--lambda", "0.3", "--grid", "50", "--out", svg_path});
  CHECK(r.code == 0);
  const std::string svg = slurp(svg_path);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);

  const CliResult flat0 = run({"foliation", "--family", "flat", "--lambda", "0",
                               "--grid", "40", "--out", tmp.file("f0.svg")});
  CHECK(flat0.code == 0);
  CHECK(slurp(tmp.file("f0.svg")).find("<polyline") != std::string::npos);

  const CliResult sphere = run({"foliation", "--family", "sphere", "--lambda",
                                "0.5", "--grid", "60", "--out", tmp.file("fs.svg")});
  CHECK(sphere.code == 0);
  CHECK(sphere.out.find("south pole") != std::string::npos);
  CHECK(slurp(tmp.file("fs.svg")).find("<circle") != std::string::npos);
}

TEST_CASE("config file merges under CLI flags") {
  TempDir tmp;
  cli::RunConfig file_config;
  file_config.family = "flat";
  file_config.n = 2;
  file_config.m = 1;
  file_config.lambda = 0.4;
  file_config.samples = 30;
  const std::string config_path = tmp.file("run.cfg");
  {
    std::ofstream f(config_path);
    f << file_config.serialize();
  }
  const std::string out_path = tmp.file("merged.csv");
  const CliResult r = run({"verify", "--config", config_path, "--lambda", "0.3",
                           "--out", out_path});
  CHECK(r.code == 0);
  // flag wins over the file value
  CHECK(slurp(out_path).find("lambda=0.3") != std::string::npos);
  CHECK(slurp(out_path).find("n=2") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "--family", "klein"}).code == 2);
  CHECK(run({"verify", "--no-such-flag"}).code == 2);
}

TEST_CASE("help exits cleanly") {
  const CliResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("verify") != std::string::npos);
  CHECK(help.out.find("foliation") != std::string::npos);
}
