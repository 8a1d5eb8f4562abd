#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

std::string cli_path() {
  const char* path = std::getenv("VENN_CLI");
  REQUIRE_MESSAGE(path != nullptr, "VENN_CLI must point at the CLI binary");
  return path;
}

RunResult run(const std::string& args) {
  const std::string command = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer;
  while (std::size_t got = fread(buffer.data(), 1, buffer.size(), pipe)) {
    result.output.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("validate exit codes") {
  CHECK(run("validate -n 7 --alpha 3,2,3,4").exit_code == 0);
  CHECK(run("validate -n 7 --alpha 3,2,4,3").exit_code == 0);
  CHECK(run("validate -n 7 --alpha 4,3,2,3").exit_code == 1);
  CHECK(run("validate -n 7 --alpha 3,2,3,4 --oracle").exit_code == 0);

  const RunResult nine = run("validate -n 9 --alpha 1,2,3");
  CHECK(nine.exit_code == 2);
  CHECK(nine.output.find("odd prime") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run("validate -n 7 --alpha 3,2,3,4 --no-such-flag").exit_code == 2);
  CHECK(run("no-such-subcommand").exit_code == 2);
  CHECK(run("validate -n 7").exit_code == 2);  // no alpha source
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("missing files") {
  CHECK(run("validate -n 7 --alpha-file /nonexistent/alphas.txt").exit_code == 3);
}

TEST_CASE("search round trip") {
  const std::string out = temp_path("venn_cli_results.txt");
  std::filesystem::remove(out);
  std::filesystem::remove(out + ".json");

  const RunResult search = run("search -n 7 --threads 2 --out " + out);
  CHECK(search.exit_code == 0);
  CHECK(search.output.find("complete") != std::string::npos);

  std::ifstream results(out);
  REQUIRE(results.good());
  std::stringstream buf;
  buf << results.rdbuf();
  CHECK(buf.str() == "3,2,3,4\n3,2,4,3\n");

  CHECK(run("validate -n 7 --alpha-file " + out).exit_code == 0);

  std::ifstream sidecar(out + ".json");
  REQUIRE(sidecar.good());
  const nlohmann::json meta = nlohmann::json::parse(sidecar);
  CHECK(meta.at("n") == 7);
  CHECK(meta.at("valid_count") == 2);
  CHECK(meta.at("complete") == true);
  CHECK(meta.contains("nodes"));
  CHECK(meta.contains("elapsed_ms"));
  CHECK(meta.contains("version"));

  std::filesystem::remove(out);
  std::filesystem::remove(out + ".json");
}

TEST_CASE("search checkpoint resume") {
  const std::string ckpt = temp_path("venn_cli_ckpt.json");
  std::filesystem::remove(ckpt);
  CHECK(run("search -n 7 --checkpoint " + ckpt).exit_code == 0);
  const RunResult second = run("search -n 7 --checkpoint " + ckpt);
  CHECK(second.exit_code == 0);
  CHECK(second.output.find("valid 2") != std::string::npos);
  std::filesystem::remove(ckpt);
}

TEST_CASE("render writes an SVG file") {
  const std::string out = temp_path("venn_cli_m4.svg");
  std::filesystem::remove(out);
  CHECK(run("render -n 7 --alpha 3,2,3,4 --layout radial --shade -o " + out).exit_code == 0);
  std::ifstream svg(out);
  REQUIRE(svg.good());
  std::string first_line;
  std::getline(svg, first_line);
  CHECK(first_line.rfind("<?xml", 0) == 0);
  CHECK(run("render -n 7 --alpha 3,2,3,4 --layout cylinder -o " + out).exit_code == 0);
  CHECK(run("render -n 7 --alpha 3,2,3,4 --layout wavy -o " + out).exit_code == 2);
  CHECK(run("render -n 7 --alpha 4,3,2,3 -o " + out).exit_code == 1);
  std::filesystem::remove(out);
}

TEST_CASE("dual export") {
  const RunResult from_inline = run("dual -n 7 --alpha 3,2,3,4 --format edges");
  CHECK(from_inline.exit_code == 0);
  std::istringstream in(from_inline.output);
  std::string line;
  std::size_t count = 0;
  while (std::getline(in, line)) ++count;
  CHECK(count == 252);

  const RunResult dot = run("dual -n 7 --alpha 3,2,3,4 --format dot");
  CHECK(dot.exit_code == 0);
  CHECK(dot.output.rfind("graph dual {", 0) == 0);

  // Orders with an empty alpha are reachable through an empty alpha file.
  const RunResult three = run("dual -n 3 --alpha-file /dev/null --format edges");
  CHECK(three.exit_code == 0);
  std::istringstream three_in(three.output);
  std::size_t three_count = 0;
  std::string edge;
  while (std::getline(three_in, edge)) ++three_count;
  CHECK(three_count == 12);
}

TEST_CASE("info") {
  const RunResult plain = run("info -n 7");
  CHECK(plain.exit_code == 0);
  CHECK(plain.output.find("cluster length 18") != std::string::npos);
  CHECK(plain.output.find("alpha length 4") != std::string::npos);

  const RunResult with_alpha = run("info -n 7 --alpha 3,2,3,4");
  CHECK(with_alpha.exit_code == 0);
  CHECK(with_alpha.output.find("crosscuts 7") != std::string::npos);
  CHECK(with_alpha.output.find("crosscut symmetry: yes") != std::string::npos);
  CHECK(with_alpha.output.find("polar symmetry: no") != std::string::npos);

  const RunResult hamilton = run("info -n 7 --alpha 3,2,4,3");
  CHECK(hamilton.output.find("polar symmetry: yes") != std::string::npos);
}

TEST_CASE("canon") {
  const RunResult result = run("canon --seq 3,1,2");
  CHECK(result.exit_code == 0);
  CHECK(result.output == "1,3,2\n");
}
