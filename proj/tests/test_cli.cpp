#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cz/commands.hpp"
#include "cz/errors.hpp"

using namespace cz;
namespace fs = std::filesystem;

namespace {

RunConfig config_for(Command command, std::string surface, std::optional<std::string> profile = std::nullopt,
                     int n = 64) {
  RunConfig c;
  c.command = command;
  c.surface = std::move(surface);
  c.profile = std::move(profile);
  c.nu = c.nv = n;
  return c;
}

const CheckRecord* find(const Report& r, const std::string& name) {
  for (const CheckRecord& c : r.checks())
    if (c.name == name) return &c;
  return nullptr;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int czkit(const std::string& args) {
  const int status = std::system((std::string(CZKIT_PATH) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cz_cli_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("argument parsing") {
  CHECK(parse_grid("64x32") == std::pair{64, 32});
  CHECK_THROWS_AS(parse_grid("64"), Error);
  CHECK_THROWS_AS(parse_grid("4x4"), Error);
  CHECK_THROWS_AS(parse_grid("ax8"), Error);
  CHECK(parse_params("") == std::vector<double>{});
  CHECK(parse_params("2,0.5") == std::vector<double>{2.0, 0.5});
  CHECK_THROWS_AS(parse_params("1,,2"), Error);
  CHECK(parse_tolerance("closure=1e-3") == std::pair<std::string, double>{"closure", 1e-3});
  CHECK_THROWS_AS(parse_tolerance("closure=-1"), Error);
  CHECK_THROWS_AS(parse_tolerance("closure"), Error);
  CHECK(parse_command("grove") == Command::grove);
  CHECK_THROWS_AS(parse_command("plot"), Error);
}

TEST_CASE("verify") {
  SUBCASE("sphere passes with trivially zero Hopf checks") {
    const RunOutput out = cmd_verify(config_for(Command::verify, "sphere"));
    CHECK(out.report.all_pass());
    const auto json = out.report.to_json();
    CHECK(json["meta"]["results"]["trivially_zero"].size() == 4);
    CHECK(out.tables.count("curvature.csv") == 1);
    CHECK(out.tables.count("hopf.csv") == 1);
  }
  SUBCASE("catenoid Hopf checks") {
    const RunOutput out = cmd_verify(config_for(Command::verify, "catenoid", std::nullopt, 128));
    CHECK(out.report.all_pass());
    REQUIRE(find(out.report, "hopf_cr_residual"));
    CHECK(find(out.report, "hopf_cr_residual")->max_residual < 1e-6);
    CHECK(find(out.report, "hopf_catenoid_q"));
  }
  SUBCASE("unattainable tolerance") {
    RunConfig c = config_for(Command::verify, "torus_rev");
    c.tolerances["all"] = 1e-30;
    std::ostringstream log;
    CHECK(run(c, log) == 2);
    CHECK(log.str().find("FAIL") != std::string::npos);
  }
  SUBCASE("unknown fixture is a configuration error") {
    std::ostringstream log;
    CHECK(run(config_for(Command::verify, "klein_bottle"), log) == 1);
  }
}

TEST_CASE("transform") {
  SUBCASE("constant profile on the cylinder") {
    const RunOutput out = cmd_transform(config_for(Command::transform, "cylinder", "const:0.5", 32));
    CHECK(out.report.all_pass());
    REQUIRE(find(out.report, "cmc_reduction"));
    CHECK(find(out.report, "cmc_reduction")->max_residual == 0.0);
  }
  SUBCASE("linear profile on a generated surface") {
    const RunOutput out = cmd_transform(config_for(Command::transform, "rotational", "linear:1,0.25", 64));
    CHECK(out.report.all_pass());
    for (const char* name : {"recovery_roundtrip", "negative_control", "flat_metric", "completeness", "closure"})
      CHECK(find(out.report, name));
    CHECK(find(out.report, "recovery_roundtrip")->max_residual < 1e-6);
  }
  SUBCASE("square root profile aborts") {
    const RunOutput out = cmd_transform(config_for(Command::transform, "cylinder", "sqrt:0.5", 16));
    REQUIRE(out.report.checks().size() == 1);
    const CheckRecord& c = out.report.checks().front();
    CHECK(c.name == "ellipticity");
    CHECK_FALSE(c.pass);
    REQUIRE(c.error);
    CHECK(c.error->find("ellipticity-failure") != std::string::npos);
  }
  SUBCASE("profile is required") {
    CHECK_THROWS_AS(cmd_transform(config_for(Command::transform, "cylinder")), Error);
  }
}

TEST_CASE("generate, grove and index") {
  SUBCASE("sphere profile") {
    RunConfig c = config_for(Command::generate, "", "const:0.5");
    const RunOutput out = cmd_generate(c);
    CHECK(out.report.all_pass());
    const auto json = out.report.to_json();
    CHECK(std::abs(json["meta"]["results"]["height"].get<double>() - 4.0) < 1e-6);
    REQUIRE(out.tables.count("profile.csv"));
    CHECK(out.tables.at("profile.csv").str().rfind("s,r,z,theta,kappa1,kappa2,H,K\n", 0) == 0);
  }
  SUBCASE("grove on the spheroid") {
    const RunOutput out = cmd_grove(config_for(Command::grove, "ellipsoid_rev", std::nullopt, 128));
    CHECK(out.report.all_pass());
    const std::string csv = out.tables.at("grove.csv").str();
    CHECK(csv.find("hk_res_h,hk_res_k,f1_res_re,f1_res_im") != std::string::npos);
  }
  SUBCASE("index of the spheroid pole") {
    RunConfig c = config_for(Command::index, "ellipsoid_rev");
    c.expect_index = 1;
    const RunOutput out = cmd_index(c);
    CHECK(out.report.all_pass());
    CHECK(out.report.to_json()["meta"]["results"]["foliation_index"] == 1.0);
    c.expect_index = -1;
    CHECK_FALSE(cmd_index(c).report.all_pass());
  }
}

TEST_CASE("executable") {
  const fs::path a = scratch("a"), b = scratch("b");
  CHECK(czkit("verify --surface ellipsoid_rev --grid 32x32 --out " + a.string() + " --tol all=1") == 0);
  CHECK(czkit("verify --surface ellipsoid_rev --grid 32x32 --out " + b.string() + " --tol all=1") == 0);
  for (const char* file : {"report.json", "curvature.csv", "hopf.csv"}) {
    CAPTURE(file);
    REQUIRE(fs::exists(a / file));
    CHECK(slurp(a / file) == slurp(b / file));
  }
  const std::string report = slurp(a / "report.json");
  CHECK(report.find("\"checks\"") != std::string::npos);
  CHECK(report.find("\"max_residual\"") != std::string::npos);

  CHECK(czkit("verify --surface sphere --grid 16x16 --tol all=1e-30") == 2);
  CHECK(czkit("verify --surface nowhere") == 1);
  CHECK(czkit("verify --surface sphere --grid 16") == 1);
  CHECK(czkit("transform --surface cylinder --profile sqrt:0.5 --grid 16x16") == 2);
  CHECK(czkit("frobnicate") == 1);
  fs::remove_all(a);
  fs::remove_all(b);
}
