#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "holo/error.hpp"
#include "holo_cli/report.hpp"
#include "holo_cli/scenario_io.hpp"

using namespace holo;
using namespace holo::cli;

namespace {

const std::filesystem::path kFixtures = HOLO_FIXTURE_DIR;

int run(const std::string& args) {
  const std::string cmd = std::string(HOLOBOUND_EXE) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("every fixture round-trips losslessly") {
  for (const auto& entry : std::filesystem::directory_iterator(kFixtures)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    const auto file = load_scenario(entry.path());
    const auto again = parse_scenario(to_json(file));
    CHECK(again == file);
    CHECK(to_json(again) == to_json(file));
    CHECK_NOTHROW(holobound::evaluate_bound(to_scenario(file)));
  }
}

TEST_CASE("log_of quantities multiply their factors") {
  const auto q = Quantity::log_of_product({Rational(256), Rational(1, 2)});
  CHECK(q.value == doctest::Approx(std::log(128.0)));
}

TEST_CASE("schema errors") {
  const auto base = to_json(load_scenario(kFixtures / "zeta25_circle.json"));
  auto unknown = base;
  unknown["surprise"] = 1;
  CHECK_THROWS_AS(parse_scenario(unknown), Error);
  auto bad_kind = base;
  bad_kind["places"][0]["kind"] = "complex";
  CHECK_THROWS_AS(parse_scenario(bad_kind), Error);
  auto no_tau = base;
  no_tau.erase("tau");
  CHECK_THROWS_AS(parse_scenario(no_tau), Error);
  auto bad_map = base;
  bad_map["places"][0]["map"]["kind"] = "spiral";
  try {
    parse_scenario(bad_map);
    FAIL("expected SCHEMA_ERROR");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaError);
  }
}

TEST_CASE("reports are deterministic") {
  const auto file = load_scenario(kFixtures / "zeta25_brute.json");
  const auto s = to_scenario(file);
  const auto a = report_json(file, holobound::evaluate_bound(s), std::nullopt).dump();
  const auto b = report_json(file, holobound::evaluate_bound(s), std::nullopt).dump();
  CHECK(a == b);
}

TEST_CASE("six significant digits") {
  CHECK(fmt6(4.432060123) == "4.43206");
  CHECK(fmt6(1.0 / 0.0) == "inf");
}

TEST_CASE("exit codes") {
  CHECK(run("bound " + (kFixtures / "zeta25_circle.json").string()) == 0);
  CHECK(run("dirichlet --n 0 --Q 1 --N 1") == 0);
  CHECK(run("bound /nonexistent.json") == 2);
  CHECK(run("zeta2 --k 2 --prec banana") == 2);
  CHECK(run("kappa " + (kFixtures / "zeta25_brute.json").string()) == 2);
  CHECK(run("kappa " + (kFixtures / "zeta25_circle.json").string() + " --target-m 4") == 1);
}

TEST_CASE("CLI output is byte-identical across runs") {
  const auto tmp = std::filesystem::temp_directory_path();
  const std::string fixture = (kFixtures / "zeta25_lune.json").string();
  const std::string a = (tmp / "holo_det_a.json").string(), b = (tmp / "holo_det_b.json").string();
  CHECK(std::system((std::string(HOLOBOUND_EXE) + " kappa " + fixture + " --json > " + a).c_str()) == 0);
  CHECK(std::system((std::string(HOLOBOUND_EXE) + " --threads 1 kappa " + fixture + " --json > " + b).c_str()) == 0);
  const auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK_FALSE(slurp(a).empty());
  CHECK(slurp(a) == slurp(b));
}
