#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

const fs::path kDir = fs::temp_directory_path() / "alphadpp_cli_test";

std::string path(const std::string& name) { return (kDir / name).string(); }

void write_file(const std::string& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void ensure_scratch();

// Runs the installed binary, returns the exit code; stdout/stderr land in
// out.txt / err.txt inside the scratch directory.
int run(const std::string& args, const std::string& env = "") {
  ensure_scratch();
  const std::string cmd = env + (env.empty() ? "" : " ") + ALPHADPP_CLI_PATH + " " + args + " > " +
                          path("out.txt") + " 2> " + path("err.txt");
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string out_text() { return slurp(path("out.txt")); }
std::string err_text() { return slurp(path("err.txt")); }

const char* kDetConfig = R"json({"alpha": "-1", "matrix": [[1, 2], [3, 4]]})json";

const char* kTwoModeConfig = R"json({
  "kernel": {
    "kind": "finite-rank",
    "level": 2,
    "modes": [
      {"eigenvalue": 0.7,
       "coefficients": {"(0;0)": 0.7071067811865476, "(0;1)": 0.7071067811865476}},
      {"eigenvalue": 0.3,
       "coefficients": {"(0;0)": 0.7071067811865476, "(0;1)": -0.7071067811865476}}
    ]
  },
  "alpha": "-1",
  "level": 2,
  "rank": 2,
  "window": [0.0, 1.0],
  "samples": 500,
  "seed": 7,
  "query": {"cells": ["(0;0)"]}
})json";

const char* kGaussConfig = R"json({
  "kernel": {"kind": "gaussian", "gamma": 1.0, "amplitude": 0.5},
  "alpha": "-1/2",
  "level": 1,
  "rank": 2,
  "window": [0.0, 1.0],
  "query": {"cells": ["(0;)"]}
})json";

void ensure_scratch() {
  static const bool ready = [] {
    fs::create_directories(kDir);
    write_file(path("det.json"), kDetConfig);
    write_file(path("two_mode.json"), kTwoModeConfig);
    write_file(path("gauss.json"), kGaussConfig);
    return true;
  }();
  (void)ready;
}

}  // namespace

TEST_CASE("alpha-det evaluates the configured matrix") {
  CHECK(run("alpha-det --config " + path("det.json")) == 0);
  CHECK(out_text() == "-2\n");
  CHECK(run("alpha-det --config " + path("det.json") + " --method naive") == 0);
  CHECK(out_text() == "-2\n");
  CHECK(run("alpha-det --config " + path("det.json") + " --alpha 1") == 0);
  CHECK(out_text() == "10\n");
  CHECK(run("alpha-det --config " + path("det.json") + " --alpha 2") == 0);
  CHECK(out_text() == "16\n");
}

TEST_CASE("usage and configuration errors exit with 2") {
  CHECK(run("") == 2);  // a subcommand is required
  CHECK(run("no-such-command") == 2);
  CHECK(run("alpha-det --config " + path("det.json") + " --alpha 3/4") == 2);
  CHECK(err_text().find("admissible") != std::string::npos);
  CHECK(run("alpha-det --config " + path("det.json") + " --no-such-flag") == 2);
  write_file(path("broken.json"), "{oops");
  CHECK(run("alpha-det --config " + path("broken.json")) == 2);
  write_file(path("unknown.json"), R"json({"alpha": "-1", "mystery": 1})json");
  CHECK(run("alpha-det --config " + path("unknown.json")) == 2);
  CHECK(run("project --config " + path("gauss.json") + " --window nonsense") == 2);
  CHECK(run("project --config " + path("gauss.json") + " --window 0,0.7") == 2);
  CHECK(run("parseval --config " + path("det.json")) == 2);  // no kernel
}

TEST_CASE("missing input and unwritable output exit with 3") {
  CHECK(run("alpha-det --config " + path("missing.json")) == 3);
  CHECK(run("project --config " + path("gauss.json") + " --out /nonexistent-dir/x.json") == 3);
}

TEST_CASE("help exits cleanly") {
  CHECK(run("--help") == 0);
  CHECK(run("sample --help") == 0);
  CHECK(out_text().find("--seed") != std::string::npos);
}

TEST_CASE("project emits json or csv") {
  CHECK(run("project --config " + path("gauss.json")) == 0);
  CHECK(out_text().find("\"kernel_trace\"") != std::string::npos);
  CHECK(run("project --config " + path("gauss.json") + " --format csv") == 0);
  CHECK(out_text().rfind("i,j,re,im\n", 0) == 0);
}

TEST_CASE("spectrum and parseval report pass/fail through the exit code") {
  CHECK(run("spectrum --config " + path("two_mode.json")) == 0);
  CHECK(run("parseval --config " + path("two_mode.json")) == 0);
  CHECK(run("parseval --config " + path("gauss.json") + " --rank 6") == 0);
  // an unreachable tolerance flips the verdict
  CHECK(run("parseval --config " + path("gauss.json") + " --rank 2 --tolerance 1e-12") == 1);
  CHECK(run("verify-lift --config " + path("two_mode.json")) == 0);
}

TEST_CASE("sampling is reproducible and thread-count independent") {
  const std::string base = "sample --config " + path("two_mode.json") + " --samples 300";
  CHECK(run(base + " --threads 1 --out " + path("a.jsonl")) == 0);
  CHECK(run(base + " --threads 4 --out " + path("b.jsonl")) == 0);
  CHECK(run(base + " --out " + path("c.jsonl"), "ALPHADPP_THREADS=2") == 0);
  const std::string a = slurp(path("a.jsonl"));
  CHECK(a == slurp(path("b.jsonl")));
  CHECK(a == slurp(path("c.jsonl")));
  // 300 JSON lines, keys in sorted order
  CHECK(std::count(a.begin(), a.end(), '\n') == 300);
  const std::string first = a.substr(0, a.find('\n'));
  const auto c = first.find("\"counts\""), i = first.find("\"indices\""), p = first.find("\"points\"");
  REQUIRE(c != std::string::npos);
  REQUIRE(i != std::string::npos);
  REQUIRE(p != std::string::npos);
  CHECK(c < i);
  CHECK(i < p);
  // a different seed changes the stream
  CHECK(run(base + " --seed 8 --out " + path("d.jsonl")) == 0);
  CHECK(a != slurp(path("d.jsonl")));
}

TEST_CASE("reports are byte-stable across reruns") {
  const std::string cmd = "verify-lift --config " + path("two_mode.json");
  CHECK(run(cmd + " --out " + path("r1.json") + " --threads 3") == 0);
  CHECK(run(cmd + " --out " + path("r2.json") + " --threads 1") == 0);
  CHECK(slurp(path("r1.json")) == slurp(path("r2.json")));
}
