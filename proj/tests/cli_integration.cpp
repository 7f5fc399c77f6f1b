// Drives the installed CLI binary end to end through a shell, checking
// outputs, artifacts and exit codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = {}) {
  const std::string cmd = env_prefix + std::string(SUPERTASK_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  while (std::size_t got = std::fread(buffer, 1, sizeof(buffer), pipe))
    result.output.append(buffer, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "supertask_cli_scratch";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& contents) {
  const auto path = scratch_dir() / name;
  std::ofstream out(path);
  out << contents;
  return path.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("construct reproduces the worked example and round-trips its file") {
    const std::string out = (scratch_dir() / "chain.json").string();
    const RunResult run = run_cli(
        "construct --target '{\"kind\":\"residue\",\"mod\":2,\"res\":0}' --p 1/3 --steps 8 "
        "--mode greedy --out " + out);
    CHECK(run.exit_code == 0);
    const json doc = json::parse(run.output);
    CHECK(doc["added"] == json::parse("[1,2,3,4,5,7,6,9,11]"));
    CHECK(read_file(out) == run.output);
  }

  TEST_CASE("density on the worked three-ball chain") {
    const std::string chain = write_file("z3.json", R"({"added":[1,2,3]})");
    const std::string event = write_file("final1.json", R"({"op":"atom","atom":"final_is","ball":1})");
    const RunResult run = run_cli("density --chain " + chain + " --event " + event + " --n 3");
    CHECK(run.exit_code == 0);
    const json doc = json::parse(run.output);
    CHECK(doc["value"] == "1/3");
    CHECK(doc["hits"] == 2);
  }

  TEST_CASE("verify passes and exits zero") {
    const std::string chain = write_file("z4.json", R"({"added":[1,2,3,4]})");
    const std::string event = write_file("b1.json", R"({"op":"atom","atom":"final_is","ball":2})");
    const RunResult run =
        run_cli("verify --chain " + chain + " --event " + event + " --k 1 --n 4");
    CHECK(run.exit_code == 0);
    CHECK(json::parse(run.output)["verdict"] == "pass");
  }

  TEST_CASE("survival reports the exact share") {
    const std::string chain = write_file("z4s.json", R"({"added":[1,2,3,4]})");
    const RunResult run = run_cli("survival --chain " + chain + " --ball 1 --k 2 --n 4");
    CHECK(run.exit_code == 0);
    CHECK(json::parse(run.output)["value"] == "1/2");
  }

  TEST_CASE("simulate is reproducible and worker-independent") {
    const std::string chain = write_file("z6.json", R"({"added":[1,2,3,4,5,6]})");
    const std::string base =
        "simulate --chain " + chain + " --trials 20000 --seed 77 --target "
        "'{\"kind\":\"residue\",\"mod\":2,\"res\":0}'";
    const RunResult one = run_cli(base + " --workers 1");
    const RunResult eight = run_cli(base + " --workers 8");
    CHECK(one.exit_code == 0);
    CHECK(one.output == eight.output);
    const json doc = json::parse(one.output);
    std::uint64_t sum = 0;
    for (const json& row : doc["counts"]) sum += row["count"].get<std::uint64_t>();
    CHECK(sum == 20000);
  }

  TEST_CASE("limits reads a trace and diagnoses it") {
    const std::string trace = write_file("trace.csv",
                                         "k,count,density_num,density_den\n"
                                         "1,0,0,1\n2,1,1,2\n3,1,1,3\n4,2,1,2\n5,2,2,5\n"
                                         "6,3,1,2\n7,3,3,7\n8,4,1,2\n9,4,4,9\n10,5,1,2\n");
    const RunResult run = run_cli("limits --trace " + trace + " --window 0.5 --tol 1/4");
    CHECK(run.exit_code == 0);
    const json doc = json::parse(run.output);
    CHECK(doc["verdict"] == "converged");
    CHECK(doc["window_count"] == 5);
  }

  TEST_CASE("run executes a manifest and writes its artifacts") {
    const auto dir = scratch_dir();
    json manifest;
    manifest["format_version"] = 1;
    manifest["name"] = "cli-run";
    manifest["target"] = json::parse(R"({"kind":"residue","mod":2,"res":0})");
    manifest["p"] = "1/2";
    manifest["steps"] = 2000;
    manifest["mode"] = "paper";
    manifest["n"] = 5;
    manifest["trials"] = 20000;
    manifest["seed"] = 11;
    manifest["outputs"]["chain"] = (dir / "run_chain.json").string();
    manifest["outputs"]["trace"] = (dir / "run_trace.csv").string();
    manifest["outputs"]["report"] = (dir / "run_report.json").string();
    const std::string path = write_file("manifest.json", manifest.dump());

    const RunResult run = run_cli("run --manifest " + path);
    CHECK(run.exit_code == 0);
    const json report = json::parse(run.output);
    CHECK(report["exact"]["bridge_ok"] == true);
    CHECK(std::filesystem::exists(dir / "run_chain.json"));
    CHECK(std::filesystem::exists(dir / "run_trace.csv"));
    CHECK(std::filesystem::exists(dir / "run_report.json"));
  }

  TEST_CASE("residue demo exits zero when every class converges") {
    const RunResult run = run_cli("residue-demo --mod 2 --p 1/3 --p 1/2 --steps 3000");
    CHECK(run.exit_code == 0);
    const json doc = json::parse(run.output);
    CHECK(doc["rows"].size() == 4);
  }

  TEST_CASE("usage errors exit with code two") {
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("density --chain missing.json --event missing.json --n 3").exit_code == 2);
    CHECK(run_cli("construct --p 1/2").exit_code == 2);  // missing required --target
    const std::string chain = write_file("z11.json", R"({"added":[1,2,3,4,5,6,7,8,9,10,11]})");
    const std::string event = write_file("triv.json", R"({"op":"and","args":[]})");
    CHECK(run_cli("density --chain " + chain + " --event " + event + " --n 11").exit_code == 2);
  }

  TEST_CASE("SUPERTASK_CAP lowers the enumeration ceiling") {
    const std::string chain = write_file("z4cap.json", R"({"added":[1,2,3,4]})");
    const std::string event = write_file("triv2.json", R"({"op":"and","args":[]})");
    const std::string args = "density --chain " + chain + " --event " + event + " --n 4";
    CHECK(run_cli(args).exit_code == 0);
    CHECK(run_cli(args, "SUPERTASK_CAP=3 ").exit_code == 2);
    // Values above the ceiling never raise it.
    CHECK(run_cli(args, "SUPERTASK_CAP=99 ").exit_code == 0);
  }

  TEST_CASE("construction refuses finite targets with an explanation") {
    const RunResult run = run_cli(
        "construct --target '{\"kind\":\"periodic\",\"prefix\":\"0000001\",\"block\":\"0\"}' "
        "--p 1/2 --steps 10");
    CHECK(run.exit_code == 2);
  }
}
