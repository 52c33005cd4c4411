#include <catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* tool() {
  const char* t = std::getenv("SRTOOL");
  if (!t) SKIP("SRTOOL is not set");
  return t;
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("srtool-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(tool()) + " " + args + " >" + (scratch() / "stdout").string() + " 2>" +
                          (scratch() / "stderr").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<json> read_jsonl(const fs::path& p) {
  std::ifstream in(p);
  std::vector<json> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("usage errors exit with 2", "[cli]") {
  CHECK(run("enumerate --group 6 --out " + (scratch() / "x.cat").string()) == 2);
  CHECK(run("enumerate --group 3^^3 --out " + (scratch() / "x.cat").string()) == 2);
  CHECK(run("table1 --p 2") == 2);
  CHECK(run("no-such-command") == 2);
  CHECK(run("ci --catalog " + (scratch() / "missing.cat").string()) == 2);
  CHECK(run("theorem1 --group 3^3") == 2);  // needs --extended
}

TEST_CASE("enumerate writes a catalog", "[cli]") {
  const auto out = scratch() / "c8.cat";
  REQUIRE(run("enumerate --group 2^3 --filter all --out " + out.string()) == 0);
  const auto lines = read_jsonl(out);
  REQUIRE(!lines.empty());
  CHECK(lines[0]["format"] == "srtool-catalog");
  CHECK(lines[0]["count"] == 9);
  CHECK(lines.size() == 10);
  CHECK_FALSE(fs::exists(out.string() + ".checkpoint"));

  const auto p27 = scratch() / "c27.cat";
  REQUIRE(run("enumerate --group 3^3 --filter p-srings --out " + p27.string()) == 0);
  CHECK(read_jsonl(p27)[0]["count"] == 6);
}

TEST_CASE("ci reports every entry", "[cli]") {
  const auto cat = scratch() / "c8ci.cat";
  REQUIRE(run("enumerate --group 2^3 --out " + cat.string()) == 0);
  const auto dir = scratch() / "ci";
  REQUIRE(run("ci --catalog " + cat.string() + " --method bruteforce --out " + dir.string()) == 0);
  const auto lines = read_jsonl(dir / "ci-2^3.jsonl");
  std::size_t entries = 0;
  for (const auto& j : lines)
    if (j.contains("verdict")) {
      CHECK(j["verdict"] == "CI");
      CHECK(j["method"] == "bruteforce");
      ++entries;
    }
  CHECK(entries == 9);

  const auto p27 = scratch() / "c27ci.cat";
  REQUIRE(run("enumerate --group 3^3 --filter p-srings --out " + p27.string()) == 0);
  REQUIRE(run("ci --catalog " + p27.string() + " --method auto --out " + dir.string()) == 0);
  for (const auto& j : read_jsonl(dir / "ci-3^3.jsonl"))
    if (j.contains("verdict")) {
      CHECK(j["verdict"] == "CI");
      CHECK_FALSE(j["method"].get<std::string>().empty());
    }
  // Brute force is limited to order 8.
  CHECK(run("ci --catalog " + p27.string() + " --method bruteforce --out " + dir.string()) == 2);
  // A bound too small for the regular-subgroup method leaves entries undecided.
  CHECK(run("ci --catalog " + p27.string() + " --method regular-subgroups --regular-bound 10 --out " + dir.string()) ==
        3);
}

TEST_CASE("table1 and theorem1 reports", "[cli]") {
  const auto dir = scratch() / "t1";
  REQUIRE(run("table1 --p 3 --out " + dir.string()) == 0);
  const auto lines = read_jsonl(dir / "table1-p3.jsonl");
  REQUIRE(!lines.empty());
  CHECK(lines.front()["seed"].is_number());
  CHECK(lines.back()["status"] == "match");

  for (const char* g : {"2^3", "2^2x3"}) {
    INFO(g);
    CHECK(run(std::string("theorem1 --group ") + g + " --out " + dir.string()) == 0);
    const auto rep = read_jsonl(dir / ("theorem1-" + std::string(g) + ".jsonl"));
    REQUIRE(!rep.empty());
    CHECK(rep.back()["soundness_violations"] == 0);
  }
}

TEST_CASE("lift and build subcommands", "[cli]") {
  CHECK(run("lift --group 2^3 --instances 20 --seed 4 --out " + (scratch() / "lift").string()) == 0);
  CHECK(run("build --group 3^3 --expr 'cyc([110/011/001])'") == 0);
  std::ifstream in(scratch() / "stdout");
  const auto j = json::parse(in);
  CHECK(j["rank"] == 11);
  CHECK(j["thin_radical"] == 3);
  CHECK(run("build --group 3^3 --expr 'wr(Z'") == 2);
}
