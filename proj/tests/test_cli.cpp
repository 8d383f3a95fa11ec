// End-to-end tests that drive the installed command-line binary through a
// shell, checking output shape, reproducibility, config merging, and exit
// codes.  The binary path is injected by the build as SCARLAB_CLI_PATH.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "scarlab/basis.hpp"
#include "scarlab/circuits.hpp"
#include "scarlab/geometry.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI with the given arguments, capturing stdout; stderr is
// discarded so usage errors don't pollute the test log.
CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(SCARLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buf[4096];
  size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
  int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  result.exit_code = WEXITSTATUS(status);
  return result;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<double> csv_column(const std::vector<std::string>& lines,
                               const std::string& name) {
  REQUIRE(lines.size() >= 2);
  std::vector<std::string> header;
  {
    std::istringstream in(lines[1]);
    std::string cell;
    while (std::getline(in, cell, ',')) header.push_back(cell);
  }
  int col = -1;
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) col = static_cast<int>(i);
  REQUIRE(col >= 0);
  std::vector<double> values;
  for (size_t i = 2; i < lines.size(); ++i) {
    std::istringstream in(lines[i]);
    std::string cell;
    for (int j = 0; j <= col; ++j) REQUIRE(std::getline(in, cell, ','));
    values.push_back(std::stod(cell));
  }
  return values;
}

}  // namespace

TEST_CASE("spectrum command emits a well-formed table with flagged scars") {
  CliResult r = run_cli("spectrum --L 3 --g 0.9");
  CHECK(r.exit_code == 0);
  auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 2 + 32);  // config header + column header + sector rows
  CHECK(lines[0].rfind("# config: {", 0) == 0);
  CHECK(lines[1] == "index,energy,s_dist,s_symm,s_total,is_scar");
  auto flags = csv_column(lines, "is_scar");
  int n_scars = 0;
  for (double f : flags) {
    CHECK((f == 0.0 || f == 1.0));
    n_scars += f == 1.0;
  }
  CHECK(n_scars == 12);  // 4L zero modes in the L=3 sector
  auto energies = csv_column(lines, "energy");
  for (size_t i = 1; i < energies.size(); ++i) CHECK(energies[i - 1] <= energies[i] + 1e-12);
}

TEST_CASE("subspace and full-Hamiltonian echoes agree for a scar start") {
  std::string common = "--L 5 --g 0.9 --alpha 1 --kidx 2 --times 0:5:11";
  CliResult sub = run_cli("echo --route subspace " + common);
  CliResult full = run_cli("echo --route hamiltonian --initial scar " + common);
  REQUIRE(sub.exit_code == 0);
  REQUIRE(full.exit_code == 0);
  auto a = csv_column(split_lines(sub.out), "abs");
  auto b = csv_column(split_lines(full.out), "abs");
  REQUIRE(a.size() == 11);
  REQUIRE(b.size() == 11);
  for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-8);
  CHECK(a[0] == 1.0);  // |<psi|psi>| at t = 0
}

TEST_CASE("identical seeded invocations produce identical bytes") {
  std::string args = "echo --route circuit --L 3 --g 0.9 --layers 3 --seed 7 --times 0:2:5";
  CliResult first = run_cli(args);
  CliResult second = run_cli(args);
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK_FALSE(first.out.empty());
}

TEST_CASE("config file values load and explicit flags override them") {
  std::string path = "cli_test_config.json";
  {
    std::ofstream f(path);
    f << "{\"command\": \"spectrum\", \"L\": 5, \"g\": 0.3}\n";
  }
  CliResult r = run_cli("spectrum --config " + path + " --L 3");
  std::remove(path.c_str());
  REQUIRE(r.exit_code == 0);
  auto lines = split_lines(r.out);
  REQUIRE(lines.size() >= 2);
  // The echoed config reflects the merged settings: file g, flag L.
  CHECK(lines[0].find("\"L\":3") != std::string::npos);
  CHECK(lines[0].find("\"g\":0.3") != std::string::npos);
  CHECK(lines.size() == 2 + 32);  // L=3 sector despite L=5 in the file
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("spectrum --no-such-flag").exit_code == 2);
  CHECK(run_cli("spectrum --side ising --L 3 --k 3").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);

  std::string path = "cli_test_bad_config.json";
  {
    std::ofstream f(path);
    f << "{\"command\": \"spectrum\", \"unknown_key\": 1}\n";
  }
  CliResult r = run_cli("spectrum --config " + path);
  std::remove(path.c_str());
  CHECK(r.exit_code == 2);
}

TEST_CASE("verify command reports passing checks as JSON") {
  CliResult r = run_cli("verify --L 3 --g 0.9 --format json");
  CHECK(r.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("passed").get<bool>());
  auto& checks = doc.at("checks");
  REQUIRE(checks.is_array());
  CHECK(checks.size() > 0);
  for (auto& c : checks) {
    CHECK(c.at("passed").get<bool>());
    CHECK(c.at("residual").get<double>() <= c.at("tolerance").get<double>());
  }
}

TEST_CASE("basis dump matches the enumerated sector") {
  CliResult r = run_cli("basis --L 3 --k 2 --vx 1 --vy 1");
  REQUIRE(r.exit_code == 0);
  auto lines = split_lines(r.out);

  scarlab::LadderGeometry geom(3, 2);
  scarlab::SectorBasis basis = scarlab::enumerate_lgt_sector(geom, +1, +1);
  REQUIRE(int64_t(lines.size()) == basis.dimension());
  for (int64_t i = 0; i < basis.dimension(); ++i) {
    uint64_t state = basis.state_at(i);
    std::string bits(size_t(geom.n_links), '0');
    for (int q = 0; q < geom.n_links; ++q)
      if ((state >> q) & 1) bits[size_t(geom.n_links - 1 - q)] = '1';
    CHECK(lines[size_t(i)] == bits);
  }
}

TEST_CASE("emitted preparation circuits round-trip and validate") {
  for (std::string route : {"resolve", "local", "mcm"}) {
    CAPTURE(route);
    CliResult r = run_cli("circuit --L 3 --alpha 2 --kidx 3 --route " + route);
    REQUIRE(r.exit_code == 0);
    scarlab::Circuit c = scarlab::Circuit::from_text(r.out);
    CHECK_NOTHROW(c.validate());
    CHECK(c.n_data == 12);
    CHECK(c.to_text() == scarlab::Circuit::from_text(c.to_text()).to_text());
  }
  // The mirrored-sector variant is only reachable through measurement.
  CHECK(run_cli("circuit --L 3 --vy -1 --route local").exit_code == 2);
  CHECK(run_cli("circuit --L 3 --vy -1 --route mcm").exit_code == 0);
}
