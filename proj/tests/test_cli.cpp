// End-to-end runs of the installed binary; exercises exit codes and the
// JSON output surface.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "cdito/instance.hpp"

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

CommandResult run_cli(const std::string& args) {
  std::string out_file = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                         "/cdito_cli_out.txt";
  std::string cmd = std::string(CDITO_CLI_PATH) + " " + args + " > " + out_file + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  CommandResult res;
  res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(out_file);
  res.out.assign((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return res;
}

std::string fixture() { return std::string(CDITO_TEST_DATA_DIR) + "/motivating.json"; }

}  // namespace

TEST_CASE("cli: gen writes a loadable instance") {
  std::string path = "/tmp/cdito_cli_gen.json";
  auto res = run_cli("gen --flows 3 --seed 9 -o " + path);
  REQUIRE(res.exit_code == 0);
  cdito::Instance inst = cdito::load_instance(path);
  REQUIRE(inst.flows.size() == 3);
  REQUIRE(inst.seed == 9);
}

TEST_CASE("cli: solve the mission fixture with both solvers") {
  for (std::string solver : {"cdito", "ito"}) {
    auto res = run_cli("solve --instance " + fixture() + " --solver " + solver +
                       " --timeout 30 --json");
    REQUIRE(res.exit_code == 0);
    auto j = nlohmann::json::parse(res.out);
    REQUIRE(j["status"] == "SOLVED");
    REQUIRE(j["order"] == std::vector<int>{2, 4, 1, 3, 5});
  }
}

TEST_CASE("cli: truncated instance file exits with the input-error code") {
  std::string path = "/tmp/cdito_cli_trunc.json";
  {
    std::ofstream f(path);
    f << "{\"version\": 1, \"meta\": {\"seed\"";
  }
  auto res = run_cli("solve --instance " + path + " --solver cdito --timeout 5");
  REQUIRE(res.exit_code == 3);
}

TEST_CASE("cli: missing instance file exits with the input-error code") {
  REQUIRE(run_cli("solve --instance /tmp/does_not_exist_cdito.json").exit_code == 3);
}

TEST_CASE("cli: unknown solver name is rejected") {
  REQUIRE(run_cli("solve --instance " + fixture() + " --solver magic").exit_code == 3);
}

TEST_CASE("cli: bench emits the table and the report file") {
  std::string path = "/tmp/cdito_cli_bench.json";
  auto res = run_cli("bench --flows 2 --trials 2 --timeout 10 --seed 3 -o " + path);
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.out.find("#flows") != std::string::npos);
  std::ifstream in(path);
  auto j = nlohmann::json::parse(in);
  REQUIRE(j["rows"].size() == 1);
  REQUIRE(j["rows"][0]["flows"] == 2);
  REQUIRE(j["trials"].size() == 2);
}
