#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "cicrdbo/export.hpp"

namespace fs = std::filesystem;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

const fs::path kWork = fs::temp_directory_path() / "cicrdbo_test_cli";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Result run(const std::string& args) {
  fs::create_directories(kWork);
  const fs::path err = kWork / "stderr.txt";
  const std::string cmd = std::string("\"") + CICRDBO_CLI_PATH + "\" " + args + " 2>\"" +
                          err.string() + "\"";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err);
  return r;
}

std::size_t lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("bench --list names the suite", "[cli]") {
  const auto r = run("bench --list");
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 10);
  CHECK_THAT(r.out, ContainsSubstring("ackley [-32, 32]^30"));
  CHECK_THAT(r.out, ContainsSubstring("quartic"));
}

TEST_CASE("bench writes stats and traces", "[cli]") {
  const fs::path out = kWork / "bench" / "stats.csv";
  const fs::path traces = kWork / "bench" / "traces";
  fs::remove_all(kWork / "bench");
  const auto r = run("bench --algo both --functions sphere,rastrigin --dim 5 --pop 8 --iters 30 "
                     "--runs 2 --seed 4 --out \"" + out.string() + "\" --trace-dir \"" +
                     traces.string() + "\"");
  REQUIRE(r.code == 0);
  const auto rows = cicrdbo::read_stats_csv(out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].algorithm == "dbo");
  CHECK(rows[1].algorithm == "cicrdbo");
  CHECK(rows[2].objective == "rastrigin");
  CHECK(rows[3].stats.n_runs == 2);
  CHECK(rows[3].iters == 30);
  const auto trace = slurp(traces / "cicrdbo_sphere_seed5.csv");
  CHECK_THAT(trace, StartsWith(std::string(cicrdbo::kTraceHeader) + "\n0,"));
  CHECK(lines(trace) == 1 + 31);
}

TEST_CASE("bench output is reproducible on stdout", "[cli]") {
  const std::string args = "bench --algo cicrdbo --functions griewank --dim 4 --pop 6 --iters 20 --runs 3 --seed 9";
  const auto a = run(args);
  const auto b = run(args + " --threads 2");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK_THAT(a.out, StartsWith(std::string(cicrdbo::kStatsHeader) + "\n"));
}

TEST_CASE("sweep writes one row per value", "[cli]") {
  const fs::path out = kWork / "sweep.csv";
  const auto r = run("sweep --param pop_size --values 10,30 --function sphere --algo cicrdbo --dim 3 "
                     "--iters 10 --runs 2 --out \"" + out.string() + "\"");
  REQUIRE(r.code == 0);
  const auto text = slurp(out);
  CHECK(lines(text) == 3);
  CHECK_THAT(text, StartsWith(std::string("param,value,") + cicrdbo::kStatsHeader));
  CHECK_THAT(text, ContainsSubstring("\npop_size,30,cicrdbo,sphere,3,30,10,2,"));
}

TEST_CASE("configuration and I/O errors exit nonzero with one line", "[cli]") {
  const auto banana = run("sweep --param banana --values 1,2 --iters 2 --runs 1");
  CHECK(banana.code != 0);
  CHECK_THAT(banana.err, StartsWith("error: "));
  CHECK_THAT(banana.err, ContainsSubstring("banana"));
  CHECK(lines(banana.err) == 1);

  const auto fn = run("bench --functions nope --iters 2 --runs 1");
  CHECK(fn.code != 0);
  CHECK_THAT(fn.err, ContainsSubstring("nope"));

  const auto pv = run("bench --algo cicrdbo --functions sphere --ph 0.2 --pv 0.5 --iters 2 --runs 1");
  CHECK(pv.code != 0);

  const auto algo = run("bench --algo pso --functions sphere --iters 2 --runs 1");
  CHECK(algo.code != 0);

  const fs::path blocker = kWork / "blocker";
  std::ofstream(blocker) << "x";
  const auto io = run("bench --functions sphere --dim 2 --pop 4 --iters 2 --runs 1 --out \"" +
                      (blocker / "x.csv").string() + "\"");
  CHECK(io.code != 0);
  CHECK_THAT(io.err, ContainsSubstring((blocker / "x.csv").string()));

  const auto missing = run("tune-rf --data /nonexistent/file.csv --pop 2 --iters 1");
  CHECK(missing.code != 0);
  CHECK_THAT(missing.err, ContainsSubstring("/nonexistent/file.csv"));

  CHECK(run("").code != 0);
}

TEST_CASE("tune-rf on a generated CSV reports the documented fields", "[cli]") {
  const fs::path csv = kWork / "synthetic.csv";
  REQUIRE(run("gen-synthetic --seed 3 --out \"" + csv.string() + "\"").code == 0);
  const fs::path json_path = kWork / "tune.json";
  const fs::path table = kWork / "table.csv";
  const auto r = run("tune-rf --data \"" + csv.string() + "\" --algo cicrdbo --pop 3 --iters 1 --cv-folds 3 "
                     "--out \"" + json_path.string() + "\" --report-table \"" + table.string() + "\"");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(json_path));
  for (const char* key : {"algorithm", "best_hyperparams", "cv_auc", "test_precision", "test_recall",
                          "test_f1", "test_auc", "default_cv_auc"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["algorithm"] == "cicrdbo");
  CHECK(j["cv_auc"].get<double>() >= j["default_cv_auc"].get<double>());
  const auto t = slurp(table);
  CHECK(lines(t) == 4);
  CHECK_THAT(t, StartsWith("model,precision,recall,f1,auc\nDefault Parameters,"));
  CHECK_THAT(t, ContainsSubstring("\nDBO,"));
  CHECK_THAT(t, ContainsSubstring("\nCICRDBO,"));
}
