// End-to-end runs of the installed command-line surface: exit codes, output
// envelopes, format variants, config-file precedence, and byte-level
// determinism across reruns and thread counts.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

using ojson = nlohmann::ordered_json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(ORBITPRIMES_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

ojson result_of(const RunResult& r) {
  REQUIRE(r.code == 0);
  return ojson::parse(r.out);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes separate success, argument errors, and capability") {
  CHECK(run_cli("--version").code == 0);
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("").code == 2);                                  // no command
  CHECK(run_cli("density --d 3 --c 1 --bogus 7").code == 2);     // unknown flag
  CHECK(run_cli("density --d 2 --c 1 --X 1").code == 2);         // domain error
  CHECK(run_cli("newton --d 2 --c 3 --n 2").code == 2);          // missing --p
  CHECK(run_cli("orbit --d 2 --c 3 --N 40").code == 3);          // bit cap
  CHECK(run_cli("factor --d 2 --c 1 --n 7").code == 3);          // degree cap
  CHECK(run_cli("rds-check --d 2 --c 1 --primes 2,x").code == 2);
  CHECK(run_cli("stability --d 2 --c 2").code == 2);             // no mode picked
  CHECK(run_cli("witness --d 2 --c 1 --n 4 --format csv").code == 2);
}

TEST_CASE("every run embeds version, command, seed, and resolved config") {
  auto doc = result_of(run_cli("orbit --d 2 --c -1 --N 4 --seed 123"));
  CHECK(doc["tool"] == "orbitprimes");
  CHECK(doc["version"].is_string());
  CHECK(doc["command"] == "orbit");
  CHECK(doc["seed"] == 123);
  CHECK(doc["config"]["d"] == 2);
  CHECK(doc["config"]["c"] == "-1");
  CHECK(doc["config"]["N"] == 4);
  CHECK(doc["config"]["seed"] == 123);
  CHECK(doc["result"]["finite"] == true);
  CHECK(doc["result"]["values"][0] == "-1");
}

TEST_CASE("orbit classifies a prime against the critical orbit") {
  auto doc = result_of(run_cli("orbit --d 3 --c 1 --q 5"));
  CHECK(doc["result"]["verdict"] == "divides");
  CHECK(doc["result"]["n"] == 4);

  auto fast = result_of(run_cli("orbit --d 3 --c 1 --q 5 --fast"));
  CHECK(fast["result"]["verdict"] == "divides");
  CHECK(fast["result"]["n"] == -1);  // permutation shortcut skips the walk
}

TEST_CASE("factor reproduces the four-quadratic split at level three") {
  auto doc = result_of(run_cli("factor --d 2 --c -16/9 --n 3"));
  const auto& fl = doc["result"]["factorization"];
  REQUIRE(fl["factors"].size() == 4);
  CHECK(fl["certified"] == true);
  for (const auto& e : fl["factors"]) CHECK(e["degree"] == 2);

  // the h(z)h(-z) shape describes the two-factor split at level one; the
  // four-factor level three correctly fails it
  auto one = result_of(run_cli("factor --d 2 --c -16/9 --n 1 --shape"));
  CHECK(one["result"]["shape_verified"] == true);
  auto shaped = result_of(run_cli("factor --d 2 --c -16/9 --n 3 --shape --track 3"));
  CHECK(shaped["result"]["shape_verified"] == false);
  CHECK(shaped["result"]["factor_count_track"][2] == ojson::array({3, 4}));
}

TEST_CASE("galois-sim exact distribution matches the known binary law") {
  auto doc = result_of(run_cli("galois-sim --d 2 --t0 1 --kernels full,full --exact"));
  const auto& lvl2 = doc["result"]["levels"][2];
  CHECK(lvl2["prob_positive"] == "3/8");
  CHECK(lvl2["entries"]["0"] == "5/8");
  CHECK(lvl2["entries"]["2"] == "1/4");
  CHECK(lvl2["entries"]["4"] == "1/8");
  CHECK(lvl2["expectation"] == "1");
}

TEST_CASE("galois-sim extinction csv carries the exact early rows") {
  auto res = run_cli(
      "galois-sim --extinction --d 2 --t0 1 --N 4 --format csv --seed 9");
  REQUIRE(res.code == 0);
  CHECK(res.out.find("# seed=9\n") != std::string::npos);
  CHECK(res.out.find("n,extinct,survival,survival_approx\n") != std::string::npos);
  CHECK(res.out.find("3,89/128,39/128,") != std::string::npos);
}

TEST_CASE("galois-sim monte carlo is independent of the thread split") {
  std::string base =
      "galois-sim --mc --d 2 --t0 1 --kernels full,full --samples 4000 --seed 11";
  auto one = run_cli(base + " --threads 1");
  auto three = run_cli(base + " --threads 3");
  REQUIRE(one.code == 0);
  REQUIRE(three.code == 0);
  auto a = ojson::parse(one.out), b = ojson::parse(three.out);
  a["config"].erase("threads");
  b["config"].erase("threads");
  CHECK(a == b);
  // estimate lands near the exact 3/8 survival at depth two
  double approx = a["result"]["levels"][2]["survival_approx"].get<double>();
  CHECK(approx > 0.35);
  CHECK(approx < 0.40);
}

TEST_CASE("density csv restates the cumulative curve with exact ratios") {
  auto res = run_cli(
      "density --d 3 --c 1 --a0 0 --X 10000 --classes 1%3,2%3 --format csv");
  REQUIRE(res.code == 0);
  CHECK(res.out.find("X,class,primes,divides,ratio\n") != std::string::npos);
  CHECK(res.out.find("1000,1%3,80,10,1/8\n") != std::string::npos);
  CHECK(res.out.find("1000,2%3,87,87,1\n") != std::string::npos);
  CHECK(res.out.find("10000,1%3,611,30,30/611\n") != std::string::npos);
  CHECK(res.out.find("10000,2%3,617,617,1\n") != std::string::npos);
}

TEST_CASE("density json reruns byte-identically and ignores thread count") {
  std::string base = "density --d 3 --c 1 --X 20000 --chunk 1024";
  auto first = run_cli(base);
  auto second = run_cli(base);
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);

  auto one = ojson::parse(run_cli(base + " --threads 1").out);
  auto four = ojson::parse(run_cli(base + " --threads 4").out);
  one["config"].erase("threads");
  four["config"].erase("threads");
  CHECK(one == four);
}

TEST_CASE("config file fills gaps and loses to explicit flags") {
  std::string path = "cli_test_config.json";
  {
    std::ofstream out(path);
    out << R"({"d": 3, "c": "1", "X": 2000, "seed": 99, "format": "json"})";
  }
  auto doc = result_of(run_cli("density --config " + path));
  CHECK(doc["seed"] == 99);
  CHECK(doc["config"]["X"] == 2000);
  CHECK(doc["config"]["d"] == 3);

  auto over = result_of(run_cli("density --config " + path + " --X 1000 --seed 5"));
  CHECK(over["config"]["X"] == 1000);
  CHECK(over["seed"] == 5);
  std::remove(path.c_str());

  CHECK(run_cli("density --config no_such_file.json --d 2 --c 1").code == 2);
}

TEST_CASE("stability modes certify, fail, and run the non-cube suite") {
  auto good = result_of(run_cli("stability --d 2 --c 2 --firststab --N 12"));
  CHECK(good["result"]["kind"] == "firststab_certified");
  CHECK(good["result"]["N"] == 12);

  auto bad = result_of(run_cli("stability --d 2 --c -9/8 --firststab --N 4"));
  CHECK(bad["result"]["kind"] == "firststab_fails");
  CHECK(bad["result"]["n"] == 2);
  CHECK(bad["result"]["offending_value"] == "9/64");

  auto zc = result_of(run_cli("stability --zcase --p 3 --c 2 --N 6"));
  CHECK(zc["result"]["all_certified"] == true);
  CHECK(zc["result"]["entries"].size() == 6);

  auto ev = result_of(run_cli("stability --d 2 --c -16/9 --eventual-stability"));
  CHECK(ev["result"]["kind"] == "eventually_stable");
}

TEST_CASE("newton and ramify report hull slopes and tower data") {
  auto np = result_of(run_cli("newton --d 2 --c 3 --p 3 --n 3"));
  CHECK(np["result"]["single_segment"] == true);
  CHECK(np["result"]["slopes"][0]["slope"] == "-1/8");
  CHECK(np["result"]["slopes"][0]["length"] == 8);

  auto ku = result_of(run_cli("ramify --kummer --d 6 --r 4"));
  CHECK(ku["result"]["degree"] == 3);

  auto tw = result_of(run_cli("ramify --tower --d 2 --r 2 --N 5"));
  CHECK(tw["result"]["e"] == ojson::array({"1", "1", "2", "4", "8", "16"}));
  CHECK(tw["result"]["k"] == ojson::array({"2", "1", "1", "1", "1", "1"}));
  CHECK(tw["result"]["n0"] == 1);
  CHECK(tw["result"]["ok"] == true);
}

TEST_CASE("witness finds the first maximality primes") {
  auto w3 = result_of(run_cli("witness --d 2 --c 1 --n 3"));
  CHECK(w3["result"]["found"] == true);
  CHECK(w3["result"]["witness"]["p"] == "5");

  auto w4 = result_of(run_cli("witness --d 2 --c 1 --n 4"));
  CHECK(w4["result"]["found"] == true);
  CHECK(w4["result"]["witness"]["p"] == "13");
}

TEST_CASE("rds-check reports the valuation grid") {
  auto doc = result_of(run_cli("rds-check --d 2 --c 1 --primes 2,5,13 --N 12"));
  CHECK(doc["result"]["ok"] == true);
  // v_5 positive exactly at indices 3, 6, 9, 12 with value 1
  auto v5 = doc["result"]["valuations"][1];
  for (int n = 1; n <= 12; ++n) CHECK(v5[n - 1] == (n % 3 == 0 ? 1 : 0));
}

TEST_CASE("text format flattens the envelope") {
  auto res = run_cli("orbit --d 2 --c -1 --N 3 --format text");
  REQUIRE(res.code == 0);
  CHECK(res.out.find("command = orbit\n") != std::string::npos);
  CHECK(res.out.find("seed = 0\n") != std::string::npos);
  CHECK(res.out.find("result.values[0] = -1\n") != std::string::npos);
}

TEST_CASE("output file gets the same bytes as stdout") {
  std::string path = "cli_test_out.json";
  auto direct = run_cli("galois-sim --extinction --d 2 --t0 1 --N 3");
  auto to_file = run_cli("galois-sim --extinction --d 2 --t0 1 --N 3 --output " + path);
  REQUIRE(direct.code == 0);
  REQUIRE(to_file.code == 0);
  CHECK(to_file.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::string written((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(written == direct.out);
  std::remove(path.c_str());
}

}  // TEST_SUITE
