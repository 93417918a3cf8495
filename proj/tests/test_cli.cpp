#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cob/cli.hpp"
#include "cob/groups.hpp"
#include "cob/matrix_io.hpp"

using namespace cob;
using namespace cob::cli;
using nlohmann::json;

namespace {

RunConfig config(const std::string& command) {
  RunConfig c;
  c.command = command;
  c.trials = 3;
  return c;
}

int run_capture(const RunConfig& c, std::string& out, std::string& err) {
  std::ostringstream o;
  std::ostringstream e;
  const int code = run(c, o, e);
  out = o.str();
  err = e.str();
  return code;
}

std::string temp_path(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST_CASE("FNV-1a digests") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("invalid configurations exit with 2") {
  std::string out;
  std::string err;
  RunConfig c = config("transpose-norm");
  c.n = 0;
  CHECK(run_capture(c, out, err) == 2);
  CHECK(err.find("--n") != std::string::npos);
  CHECK(out.empty());

  c = config("transpose-norm");
  c.tol = 0.0;
  CHECK(run_capture(c, out, err) == 2);
  c.tol = -1.0;
  CHECK(run_capture(c, out, err) == 2);

  c = config("kesten");
  c.trials = 0;
  CHECK(run_capture(c, out, err) == 2);

  c = config("group");
  c.group = "S5";
  CHECK(run_capture(c, out, err) == 2);

  c = config("schatten-identities");
  c.p = "0.5";
  CHECK(run_capture(c, out, err) == 2);
  c.p = "two";
  CHECK(run_capture(c, out, err) == 2);

  c = config("no-such-suite");
  CHECK(run_capture(c, out, err) == 2);

  c = config("cob-schur");
  c.symbol_file = "/nonexistent/symbol.txt";
  CHECK(run_capture(c, out, err) == 2);

  CHECK_THROWS_AS(run_suite(config("bogus")), DomainError);
  CHECK_THROWS_AS(parse_format("xml"), DomainError);
  CHECK(config_error(config("report")).empty());
}

TEST_CASE("documented invocations") {
  std::string out;
  std::string err;
  SUBCASE("transposition norm") {
    RunConfig c = config("transpose-norm");
    c.n = 3;
    c.tol = 1e-5;
    REQUIRE(run_capture(c, out, err) == 0);
    const json j = json::parse(out);
    CHECK(j["schema"] == 1);
    CHECK(j["pass"] == true);
    CHECK(j["records"][0]["anchor"] == "transposition-cb-norm-equals-n");
    CHECK(std::abs(j["records"][0]["values"]["value"].get<double>() - 3.0) <= 1e-5);
  }
  SUBCASE("cyclic group suite") {
    RunConfig c = config("group");
    c.group = "cyclic:5";
    REQUIRE(run_capture(c, out, err) == 0);
    const json j = json::parse(out);
    bool seen = false;
    for (const auto& r : j["records"]) {
      if (r["operation"] == "identity_cob") {
        CHECK(r["values"]["identity_cob"] == 1.0);
        seen = true;
      }
    }
    CHECK(seen);
  }
  SUBCASE("Schur suite") {
    RunConfig c = config("cob-schur");
    c.n = 4;
    c.trials = 20;
    c.seed = 7;
    REQUIRE(run_capture(c, out, err) == 0);
    double worst = 0.0;
    int count = 0;
    const json j = json::parse(out);
    for (const auto& r : j["records"]) {
      if (r["anchor"] != "schur-cob-equals-modulus-norm") continue;
      worst = std::max(worst, r["values"]["abs_diff"].get<double>());
      ++count;
    }
    CHECK(count == 20);
    CHECK(worst <= 1e-4);
  }
}

TEST_CASE("reports are deterministic apart from wall time") {
  for (const char* command : {"cob-schur", "sandwich", "s1-check", "group", "kesten", "schatten-identities"}) {
    RunConfig c = config(command);
    c.n = 2;
    c.seed = 123;
    const auto a = report_json(c, run_suite(c), false).dump();
    const auto b = report_json(c, run_suite(c), false).dump();
    CHECK(a == b);
    CHECK(a.find("wall_time_s") == std::string::npos);
  }
  RunConfig c = config("cob-schur");
  c.n = 2;
  const auto base = report_json(c, run_suite(c), false).dump();
  c.seed = 1;
  CHECK(report_json(c, run_suite(c), false).dump() != base);
}

TEST_CASE("every record names its claim and digests its inputs") {
  RunConfig c = config("report");
  c.n = 2;
  c.trials = 1;
  c.group = "Q8";
  const auto records = run_suite(c);
  CHECK(records.size() > 20);
  for (const auto& r : records) {
    CHECK_FALSE(r.anchor.empty());
    CHECK(r.pass);
    const json j = record_json(r);
    CHECK(j["inputs_digest"] == fnv1a_hex(r.inputs.dump()));
    CHECK(j.contains("tolerances"));
    CHECK(j["wall_time_s"].get<double>() >= 0.0);
  }
}

TEST_CASE("output formats and files") {
  RunConfig c = config("kesten");
  c.group = "D4";
  const auto records = run_suite(c);

  c.format = Format::Csv;
  std::ostringstream csv;
  render(csv, c, records);
  std::istringstream lines(csv.str());
  std::string line;
  int count = 0;
  std::getline(lines, line);
  CHECK(line == "operation,anchor,inputs_digest,pass,wall_time_s,values");
  while (std::getline(lines, line)) ++count;
  CHECK(count == 3);

  c.format = Format::Text;
  std::ostringstream text;
  render(text, c, records);
  CHECK(text.str().find("3/3 records passed") != std::string::npos);
  CHECK(format_name(parse_format("text")) == "text");

  c.format = Format::Json;
  c.out = temp_path("cob_cli_report.json");
  std::string out;
  std::string err;
  REQUIRE(run_capture(c, out, err) == 0);
  CHECK(out.empty());
  std::ifstream in(*c.out);
  const json j = json::parse(in);
  CHECK(j["command"] == "kesten");
  CHECK(j["records"].size() == 3);
  std::filesystem::remove(*c.out);
}

TEST_CASE("input files") {
  SUBCASE("symbol file") {
    const auto path = temp_path("cob_cli_symbol.txt");
    CMatrix h(2, 2);
    h << 1, 1, 1, -1;
    save_matrix(path, h);
    RunConfig c = config("cb-schur");
    c.symbol_file = path;
    const auto records = run_suite(c);
    CHECK(records.size() == 2);
    for (const auto& r : records) CHECK(r.pass);
    CHECK(records[0].values["haagerup"].get<double>() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    std::filesystem::remove(path);
  }
  SUBCASE("group file") {
    const auto path = temp_path("cob_cli_group.txt");
    {
      std::ofstream out(path);
      groups::write_catalog(out, groups::catalog("S3"));
    }
    RunConfig c = config("compare-herz-schur");
    c.group_file = path;
    const auto records = run_suite(c);
    REQUIRE(records.size() == 1);
    CHECK(records[0].values["schur_cob"] == 6.0);
    CHECK(records[0].values["herz_schur_cob"] == 2.0);
    std::filesystem::remove(path);
  }
}

TEST_CASE("assertion failures exit with 1 and echo the record") {
  RunConfig c = config("transpose-norm");
  c.n = 2;
  c.tol = 1e-15;
  std::string out;
  std::string err;
  CHECK(run_capture(c, out, err) == 1);
  CHECK(err.find("FAILED") != std::string::npos);
  CHECK(json::parse(out)["pass"] == false);
}
