#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
};

std::string bin() { return std::string("\"") + QWZETA_BIN + "\""; }

RunResult run_cli(const std::string& command) {
  const std::string wrapped = "{ " + command + " ; } 2>/dev/null";
  FILE* pipe = popen(wrapped.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buffer[4096];
  std::size_t got;
  while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0)
    out.append(buffer, got);
  const int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), out};
}

json parse_line(const std::string& out) { return json::parse(out); }

}  // namespace

TEST_CASE("ihara value round trips through gen") {
  const RunResult r =
      run_cli(bin() + " gen cycle 3 | " + bin() + " ihara --t 0.5,0");
  REQUIRE(r.code == 0);
  const json doc = parse_line(r.out);
  CHECK(std::abs(doc["value"][0].get<double>() - 64.0 / 49.0) < 1e-12);
  CHECK(std::abs(doc["value"][1].get<double>()) < 1e-15);
}

TEST_CASE("output is byte-identical across reruns") {
  const std::string cmd = bin() + " gen petersen | " + bin() +
                          " charpoly --method konno-sato";
  const RunResult a = run_cli(cmd);
  const RunResult b = run_cli(cmd);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("walk zeta at the origin is exactly one") {
  const RunResult r = run_cli(bin() + " gen complete 4 | " + bin() +
                              " qw-zeta --u 0,0 --method reduced");
  REQUIRE(r.code == 0);
  const json doc = parse_line(r.out);
  CHECK(doc["value"][0].get<double>() == 1.0);
  CHECK(doc["value"][1].get<double>() == 0.0);
}

TEST_CASE("spectrum csv prints one eigenvalue per arc") {
  const RunResult r = run_cli(bin() + " gen cycle 4 | " + bin() +
                              " spectrum --format csv");
  REQUIRE(r.code == 0);
  int lines = 0;
  std::size_t pos = 0;
  while ((pos = r.out.find('\n', pos)) != std::string::npos) {
    ++lines;
    ++pos;
  }
  CHECK(lines == 8);
  double re = 0.0;
  double im = 0.0;
  CHECK(std::sscanf(r.out.c_str(), "%lf,%lf", &re, &im) == 2);
}

TEST_CASE("validation failures exit with code 1") {
  CHECK(run_cli("echo '{' | " + bin() + " ihara --t 0.1,0").code == 1);
  CHECK(run_cli(bin() + " gen cycle").code == 1);
  CHECK(run_cli(bin() + " gen cycle 3 | " + bin() +
                " qw-zeta --u 0.1,0 --method bogus")
            .code == 1);
  const RunResult bad = run_cli("echo '{}' | " + bin() + " ihara --t 0.1,0");
  CHECK(bad.code == 1);
  CHECK(parse_line(bad.out)["error"]["kind"].get<std::string>() ==
        "validation");
}

TEST_CASE("poles exit with code 2 and name the vanishing factor") {
  const RunResult r =
      run_cli(bin() + " gen complete 4 | " + bin() + " ihara --t 1,0");
  CHECK(r.code == 2);
  const json err = parse_line(r.out)["error"];
  CHECK(err["kind"].get<std::string>() == "pole");
  CHECK(err["code"].get<int>() == 2);
  CHECK(err["vanishing_factor"][0].get<double>() == 0.0);
}

TEST_CASE("branch violations exit with code 2 and report the fiber") {
  const std::string cmd = bin() + " gen grid2d | " + bin() +
                          " periodic-ihara --t 0.3,0 --grid 8";
  const RunResult r = run_cli(cmd);
  CHECK(r.code == 2);
  const json err = parse_line(r.out)["error"];
  CHECK(err["kind"].get<std::string>() == "branch_violation");
  REQUIRE(err["theta"].is_array());
  CHECK(err["theta"].size() == 2);
  // the offending fiber is reported deterministically
  CHECK(run_cli(cmd).out == r.out);
}

TEST_CASE("fault injection drives the cross-check exit code") {
  const RunResult finite = run_cli(bin() + " gen cycle 5 | " + bin() +
                                   " cross_check --inject-fault");
  CHECK(finite.code == 3);
  const json fdoc = parse_line(finite.out);
  CHECK_FALSE(fdoc["pass"].get<bool>());
  bool found = false;
  for (const json& c : fdoc["checks"])
    if (c["identity"] == "bass-cycle-count-series") {
      found = true;
      CHECK_FALSE(c["pass"].get<bool>());
    }
  CHECK(found);

  const RunResult periodic =
      run_cli(bin() + " gen honeycomb | " + bin() +
              " cross_check --grid 12 --inject-fault");
  CHECK(periodic.code == 3);
  const json pdoc = parse_line(periodic.out);
  for (const json& c : pdoc["checks"])
    if (c["identity"] == "interior-arc-route-agreement")
      CHECK_FALSE(c["pass"].get<bool>());
}

TEST_CASE("cross-check sniffs the input kind from stdin") {
  const RunResult finite =
      run_cli(bin() + " gen petersen | " + bin() + " cross_check");
  REQUIRE(finite.code == 0);
  CHECK(parse_line(finite.out)["pass"].get<bool>());

  const RunResult periodic = run_cli(bin() + " gen honeycomb | " + bin() +
                                     " cross_check --grid 12");
  REQUIRE(periodic.code == 0);
  const json doc = parse_line(periodic.out);
  CHECK(doc["pass"].get<bool>());
  CHECK(doc["params"].contains("grid"));
}

TEST_CASE("quotient unfolds the line into a cycle") {
  const RunResult r =
      run_cli(bin() + " gen line | " + bin() + " quotient --L 3");
  REQUIRE(r.code == 0);
  const json doc = parse_line(r.out);
  CHECK(doc["n"].get<int>() == 3);
  CHECK(doc["edges"].size() == 3);
}

TEST_CASE("periodic walk zeta of the line is trivial") {
  for (const std::string method : {"interior", "arc"}) {
    const RunResult r =
        run_cli(bin() + " gen line | " + bin() +
                " periodic-qw --u 0.2,0 --grid 64 --method " + method);
    REQUIRE(r.code == 0);
    const json doc = parse_line(r.out);
    CHECK(std::abs(doc["value"][0].get<double>() - 1.0) < 1e-10);
    CHECK(std::abs(doc["value"][1].get<double>()) < 1e-12);
  }
}

TEST_CASE("thread count does not change the bytes") {
  const std::string head = bin() + " gen honeycomb | ";
  const std::string tail = " periodic-ihara --t 0.2,0 --grid 18";
  const RunResult one = run_cli(head + "QWZETA_THREADS=1 " + bin() + tail);
  const RunResult four = run_cli(head + "QWZETA_THREADS=4 " + bin() + tail);
  REQUIRE(one.code == 0);
  REQUIRE(four.code == 0);
  CHECK(one.out == four.out);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli(bin() + " --help >/dev/null").code == 0);
  CHECK(run_cli(bin() + " ihara --help >/dev/null").code == 0);
}

TEST_CASE("graph files load the same as stdin") {
  const RunResult gen = run_cli(bin() + " gen complete 5");
  REQUIRE(gen.code == 0);
  const std::string path = "/tmp/qwzeta_cli_test_graph.json";
  {
    std::ofstream f(path);
    f << gen.out;
  }
  const RunResult from_file =
      run_cli(bin() + " ihara --graph " + path + " --t 0.2,0");
  const RunResult from_stdin =
      run_cli(bin() + " gen complete 5 | " + bin() + " ihara --t 0.2,0");
  REQUIRE(from_file.code == 0);
  CHECK(from_file.out == from_stdin.out);
  std::remove(path.c_str());
}
