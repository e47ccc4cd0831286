#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "config.hpp"
#include "run.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using shiftop::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> const& args) {
  std::ostringstream out;
  std::ostringstream err;
  int const code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(std::string const& name) { return std::string(SHIFTOP_FIXTURE_DIR) + "/" + name + ".json"; }

json read_fixture(std::string const& name) {
  std::ifstream in(fixture(name));
  return json::parse(in);
}

std::string write_temp(std::string const& name, json const& doc) {
  fs::path const dir = fs::temp_directory_path() / "shiftop_cli_tests";
  fs::create_directories(dir);
  fs::path const path = dir / name;
  std::ofstream(path) << doc.dump(2);
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("analyze reports the fixture verdicts") {
  std::map<std::string, std::string> const expected{{"F1", "two_sided"}, {"F2", "two_sided"}, {"F4", "right_only"},
                                                    {"F5", "left_only"}, {"F6", "neither"},   {"F7", "neither"},
                                                    {"F8", "neither"},   {"F9", "two_sided"}};
  for (auto const& [name, verdict] : expected) {
    Outcome const o = invoke({"analyze", "-c", fixture(name)});
    CHECK(o.code == 0);
    json const doc = json::parse(o.out);
    CHECK_MESSAGE(doc.at("verdict") == verdict, name);
    CHECK(doc.contains("structure"));
    CHECK(doc.contains("partition"));
    CHECK(doc.contains("sigma_extrema"));
  }
  json const f6 = json::parse(invoke({"analyze", "-c", fixture("F6")}).out);
  CHECK(f6["conditions"]["R"]["holds"] == "false");
  CHECK(f6["conditions"]["R"]["witness"]["n"] == 0);
}

TEST_CASE("analyze output is byte-identical across runs and written files") {
  Outcome const a = invoke({"analyze", "-c", fixture("F4")});
  Outcome const b = invoke({"analyze", "-c", fixture("F4")});
  CHECK(a.out == b.out);
  fs::path const out = fs::temp_directory_path() / "shiftop_cli_tests" / "report.json";
  fs::create_directories(out.parent_path());
  CHECK(invoke({"analyze", "-c", fixture("F4"), "-o", out.string()}).code == 0);
  std::ifstream in(out, std::ios::binary);
  std::stringstream file;
  file << in.rdbuf();
  CHECK(file.str() == a.out);
}

TEST_CASE("numbers carry at most twelve significant digits") {
  json const doc = json::parse(invoke({"radius", "-c", fixture("F1"), "--weight", "1"}).out);
  CHECK(doc["radius"].get<double>() == 1.64026699176);
  CHECK(doc["bound"].get<double>() == 1.64026699176);
  CHECK(doc["p"].get<double>() == 2.0);
}

TEST_CASE("config errors exit with code 2 and cite the path") {
  json bad = read_fixture("F1");
  bad["space"]["alpha"] = 0;
  Outcome const o = invoke({"analyze", "-c", write_temp("alpha.json", bad)});
  CHECK(o.code == 2);
  CHECK(o.err.find("/space/alpha") != std::string::npos);

  json extra = read_fixture("F1");
  extra["oracle"]["bogus"] = 1;
  Outcome const e = invoke({"analyze", "-c", write_temp("extra.json", extra)});
  CHECK(e.code == 2);
  CHECK(e.err.find("/oracle/bogus") != std::string::npos);

  json lift = read_fixture("F1");
  lift["shift"]["lift"] = "2*t";
  CHECK(invoke({"analyze", "-c", write_temp("lift.json", lift)}).code == 2);

  json grids = read_fixture("F1");
  grids["oracle"]["grids"] = json::array({256, 100, 512});
  Outcome const g = invoke({"verify", "-c", write_temp("grids.json", grids)});
  CHECK(g.code == 2);
  CHECK(g.err.find("/oracle/grids/1") != std::string::npos);

  json missing = read_fixture("F1");
  missing.erase("a");
  Outcome const m = invoke({"analyze", "-c", write_temp("missing.json", missing)});
  CHECK(m.code == 2);
  CHECK(m.err.find("/a") != std::string::npos);

  CHECK(invoke({"analyze", "-c", "/nonexistent/config.json"}).code == 2);
  CHECK(invoke({"analyze", "-c", fixture("F1"), "--bogus"}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"spectrum", "-c", fixture("F1"), "--weight", "sin("}).code == 2);
}

TEST_CASE("undecidable verdicts exit with code 3") {
  json doc = read_fixture("F1");
  doc["shift"]["lift"] = "t + 0.05*sin(2*pi*(t - 0.1234567))^2/(2*pi)";
  Outcome const o = invoke({"analyze", "-c", write_temp("tangent.json", doc)});
  CHECK(o.code == 3);
  CHECK(json::parse(o.out)["verdict"] == "undecidable");
}

TEST_CASE("defaults apply to omitted sections") {
  json doc{{"shift", {{"lift", "t + 0.1*sin(2*pi*t)"}}}, {"a", "2"}, {"b", "1"}};
  shiftop::cli::Config const cfg = shiftop::cli::parse_config(doc);
  CHECK(cfg.alpha == 0.5);
  CHECK(cfg.beta == 0.5);
  CHECK(cfg.fundamental_type);
  CHECK(cfg.orientation == shiftop::OrientationHint::automatic);
  CHECK(cfg.oracle.grids == std::vector<int>{256, 512, 1024});
  CHECK(cfg.oracle.seed == 0x5EED);
  CHECK(cfg.tolerances.band == 1e-10);
  CHECK(invoke({"analyze", "-c", write_temp("minimal.json", doc)}).code == 0);
}

TEST_CASE("spectrum writes the annulus CSV") {
  Outcome const o = invoke({"spectrum", "-c", fixture("F1"), "--weight", "1", "--samples", "512"});
  CHECK(o.code == 0);
  CHECK(o.out.find("kind,r_in|re,r_out|im\n") == 0);
  CHECK(o.out.find("annulus,0.7837,1.6403") != std::string::npos);
  CHECK(invoke({"spectrum", "-c", fixture("F1"), "--weight", "1", "--samples", "8"}).code == 2);
}

TEST_CASE("decompose reports the periodic structure") {
  json const doc = json::parse(invoke({"decompose", "-c", fixture("F1")}).out);
  CHECK(doc["m"] == 1);
  CHECK(doc["y"].size() == 2);
  REQUIRE(doc["gamma"].size() == 2);
  CHECK(doc["gamma"][0]["tau_plus"].get<double>() == 0.5);
  json const rot = json::parse(invoke({"decompose", "-c", fixture("F9")}).out);
  CHECK(rot["m"] == 2);
}

TEST_CASE("radius needs fixed points") {
  Outcome const o = invoke({"radius", "-c", fixture("F9"), "--weight", "1"});
  CHECK(o.code == 1);
  CHECK(invoke({"radius", "-c", fixture("F1"), "--weight", "1", "--p", "0.5"}).code == 2);
  json const p4 = json::parse(invoke({"radius", "-c", fixture("F1"), "--weight", "1", "--p", "4"}).out);
  CHECK(p4["radius"].get<double>() == doctest::Approx(std::pow(1.0 - 0.2 * M_PI, -0.25)).epsilon(1e-11));
}

TEST_CASE("verify agrees with analyze") {
  json doc = read_fixture("F7");
  doc["oracle"]["grids"] = json::array({64, 128, 256});
  Outcome const o = invoke({"verify", "-c", write_temp("verify.json", doc)});
  CHECK(o.code == 0);
  json const out = json::parse(o.out);
  CHECK(out["verdict"] == "neither");
  CHECK(out["agreement"] == true);
  CHECK(out["evidence"]["label"] == "EVIDENCE");
  CHECK(out["evidence"]["rungs"].size() == 3);
}

TEST_CASE("help exits cleanly") {
  Outcome const o = invoke({"--help"});
  CHECK(o.code == 0);
  CHECK(o.out.find("analyze") != std::string::npos);
}

}
