#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "graphrep/fixtures.hpp"

using namespace graphrep;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string fixture(const std::string& name) {
  return (std::filesystem::path(GRAPHREP_FIXTURE_DIR) / (name + ".gm")).string();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("optimize prints the final zeta line") {
  auto r = run({"optimize", fixture("algorithm2"), "--trace"});
  REQUIRE(r.status == cli::kExitOk);
  std::string last;
  for (const auto& l : lines(r.out))
    if (l.rfind("zeta: ", 0) == 0) last = l;
  CHECK(last == "zeta: 5 + 9t + 15t^2 + ...");
  CHECK(r.out.find("result: optimal") != std::string::npos);
  CHECK(r.out.find("peripheral: p1 q1") != std::string::npos);
}

TEST_CASE("analyze emits versioned JSON") {
  auto r = run({"analyze", fixture("henon"), "--json"});
  REQUIRE(r.status == cli::kExitOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["format"] == 1);
  CHECK(j["growth"].get<double>() == doctest::Approx(1.6956).epsilon(1e-4));
  CHECK(j["entropy"].get<double>() == doctest::Approx(0.5281).epsilon(1e-4));
}

TEST_CASE("expect-optimal signals a reduction") {
  CHECK(run({"optimize", fixture("ar-reduction"), "--expect-optimal"}).status == cli::kExitReduction);
  CHECK(run({"optimize", fixture("ar-reduction")}).status == cli::kExitOk);
  CHECK(run({"optimize", fixture("henon"), "--expect-optimal"}).status == cli::kExitOk);
}

TEST_CASE("check passes on every shipped fixture") {
  for (const auto& ex : builtin_examples()) {
    CAPTURE(ex.name);
    auto r = run({"check", fixture(ex.name)});
    CHECK(r.status == cli::kExitOk);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }
}

TEST_CASE("itineraries of the horseshoe") {
  auto r = run({"itineraries", "horseshoe", "-n", "10", "--keep", "R0,R1", "--json"});
  REQUIRE(r.status == cli::kExitOk);
  auto j = nlohmann::json::parse(r.out);
  for (int n = 1; n <= 10; ++n) {
    CHECK(j["words_per_length"][n] == (1 << n));
    CHECK(j["closed_counts"][n] == (1 << n));
  }
  CHECK(run({"itineraries", "henon", "-n", "3"}).status == cli::kExitError);
}

TEST_CASE("reduce applies the reduction") {
  auto r = run({"reduce", "ar-reduction"});
  REQUIRE(r.status == cli::kExitOk);
  CHECK(r.out.find("reduction: attractor-repellor") != std::string::npos);
  CHECK(r.out.find("graphmap ar-reduction-attractor") != std::string::npos);
  CHECK(run({"reduce", "henon"}).out.find("reduction: none") != std::string::npos);
}

TEST_CASE("dot and flags") {
  auto r = run({"optimize", "rose", "--dot"});
  CHECK(r.status == cli::kExitOk);
  CHECK(r.out.rfind("digraph", 0) == 0);
  CHECK(run({"optimize", "rose", "--dot", "--json"}).status != cli::kExitOk);
  CHECK(run({"analyze", "rose", "--tol", "1e-10", "--zeta-order", "4"}).status == cli::kExitOk);
  CHECK(run({"optimize", "algorithm2", "--max-moves", "1"}).status == cli::kExitError);
  CHECK(run({"check", "henon", "--seed", "7"}).status == cli::kExitOk);
}

TEST_CASE("errors are reported") {
  auto r = run({"optimize", "/nonexistent/file.gm"});
  CHECK(r.status == cli::kExitError);
  CHECK(r.err.find("cannot open") != std::string::npos);
  CHECK(run({}).status != cli::kExitOk);
  CHECK(run({"frobnicate"}).status != cli::kExitOk);
}

TEST_CASE("examples listing and writing") {
  auto r = run({"examples"});
  CHECK(r.out.find("henon") != std::string::npos);
  CHECK(run({"examples", "rose"}).out == find_example("rose")->text);
  auto dir = std::filesystem::temp_directory_path() / "graphrep-cli-test";
  std::filesystem::remove_all(dir);
  CHECK(run({"examples", "--write", dir.string()}).status == cli::kExitOk);
  CHECK(std::filesystem::exists(dir / "henon.gm"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("output is deterministic") {
  for (const char* name : {"algorithm2", "henon", "horseshoe"}) {
    auto a = run({"optimize", name, "--trace", "--json"});
    auto b = run({"optimize", name, "--trace", "--json"});
    CHECK(a.out == b.out);
  }
}
