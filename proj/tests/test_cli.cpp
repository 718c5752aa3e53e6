#include <doctest.h>

#include <filesystem>
#include <set>
#include <fstream>
#include <sstream>

#include "limitwave/cli.hpp"

using namespace limitwave;

namespace {
struct Result {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kCantor = R"({"A": [[3]], "m": {"dim": 1, "coeffs": [{"k": 0, "re": 0.7071067811865476}, {"k": 2, "re": 0.7071067811865476}]}})";
const std::string kHaar = R"({"dim": 1, "coeffs": [{"k": [0], "re": 0.7071067811865476}, {"k": [1], "re": 0.7071067811865476}]})";

Json strip_time(Json j) {
  j.erase("wall_time");
  return j;
}
}  // namespace

TEST_CASE("verify-filter exit codes") {
  const auto ok = run({"verify-filter", "--filter", kCantor});
  CHECK(ok.code == 0);
  CHECK(ok.json()["pass"] == true);
  CHECK(ok.json()["checks"][0]["residual"].get<double>() <= 1e-14);

  const auto bad = run({"verify-filter", "--filter", R"({"dim":1,"coeffs":[{"k":0,"re":1},{"k":1,"re":1}]})", "--matrix", "2"});
  CHECK(bad.code == 1);
  CHECK(bad.json()["checks"][0]["residual"].get<double>() == doctest::Approx(2.0));

  CHECK(run({"verify-filter", "--filter", "/nonexistent/m.json"}).code == 2);
  CHECK(run({"verify-filter", "--filter", kHaar}).code == 2);  // no matrix
  CHECK(run({"verify-filter", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"verify-filter", "--filter", "{not json"}).code == 2);
}

TEST_CASE("report fields and tolerance overrides") {
  const auto r = run({"verify-filter", "--filter", kHaar, "--matrix", "[[2]]"});
  REQUIRE(r.code == 0);
  const Json j = r.json();
  CHECK(j["command"] == "verify-filter");
  CHECK(j.contains("wall_time"));
  CHECK(j["version"] == cli::kVersion);
  CHECK(j["args"].size() == 5);
  for (const auto& c : j["checks"]) CHECK(c["pass"] == (c["residual"].get<double>() <= c["tolerance"].get<double>()));

  // two copies of the low-pass filter: not a Cuntz family
  const auto strict = run({"cuntz-check", "--bank", R"({"A":2,"filters":[{"dim":1,"coeffs":[{"k":0,"re":0.7071067811865476},{"k":1,"re":0.7071067811865476}]},{"dim":1,"coeffs":[{"k":0,"re":0.7071067811865476},{"k":1,"re":0.7071067811865476}]}]})", "--radius", "2"});
  CHECK(strict.code == 1);
  const auto loose = run({"cuntz-check", "--bank", R"({"A":2,"filters":[{"dim":1,"coeffs":[{"k":0,"re":0.7071067811865476},{"k":1,"re":0.7071067811865476}]},{"dim":1,"coeffs":[{"k":0,"re":0.7071067811865476},{"k":1,"re":0.7071067811865476}]}]})", "--radius", "2", "--tol.cuntz", "10"});
  CHECK(loose.code == 0);
}

TEST_CASE("determinism") {
  const auto a = run({"tau-consistency", "--filter", kCantor, "--level", "3", "--K", "4"});
  const auto b = run({"tau-consistency", "--filter", kCantor, "--level", "3", "--K", "4"});
  REQUIRE(a.code == 0);
  CHECK(strip_time(a.json()).dump() == strip_time(b.json()).dump());
}

TEST_CASE("construction commands") {
  const auto mf = run({"make-filter", "--matrix", "3", "--vector", "[0.7071067811865476, 0, 0.7071067811865476]"});
  CHECK(mf.code == 0);
  const auto mb = run({"make-bank", "--matrix", "2", "--basis", "[[0.6, 0.8], [0.8, -0.6]]"});
  CHECK(mb.code == 0);
  CHECK(mb.json()["data"]["bank"]["filters"].size() == 2);
  CHECK(run({"make-filter", "--matrix", "2", "--vector", "[1, 1]"}).code == 2);
  const auto p = run({"purity", "--filter", kCantor});
  CHECK(p.json()["data"]["purity"] == "PureByNonUnimodular");
  const auto pf = run({"purity", "--filter", R"({"A":2,"m":{"breakpoints":["0","1/6","5/6"],"values":[1.4142135623730951,0,1.4142135623730951]},"B":[["-1/3","1/3"]]})"});
  CHECK(pf.code == 0);
  CHECK(pf.json()["data"]["purity"] == "PureByComplement");
}

TEST_CASE("fractal commands") {
  CHECK(run({"cantor-wavelets"}).code == 0);
  CHECK(run({"cantor-gram", "--J", "2", "--K", "3"}).code == 0);
  const auto rf = run({"r-family", "--r", "0.3"});
  CHECK(rf.code == 0);
  CHECK(run({"r-family", "--r", "0.9"}).code == 2);
  const auto tau = run({"tau-int", "--filter", kCantor, "--level", "1", "--g", R"({"dim":1,"coeffs":[{"k":2,"re":1}]})"});
  REQUIRE(tau.code == 0);
  CHECK(tau.json()["data"]["value"]["re"].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("cascade output") {
  const auto dir = std::filesystem::temp_directory_path() / "limitwave_cli_test";
  std::filesystem::create_directories(dir);
  const auto csv = (dir / "phi.csv").string();
  const auto r = run({"cascade", "--filter", kHaar, "--matrix", "2", "--depth", "10", "--box", "2", "--step", "1/4",
                      "--out", csv, "--format", "csv"});
  REQUIRE(r.code == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x1,re,im");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 17);

  const auto chk = run({"cascade-check", "--filter", kHaar, "--matrix", "2", "--box", "16", "--step", "1/32", "--K", "10", "--tol.partition_of_unity", "0.05"});
  CHECK(chk.code == 0);
  const Json d = chk.json()["data"];
  CHECK(d.contains("scaling_residual"));
  CHECK(d.contains("pou_deviation"));
  CHECK(d["cohen_min"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("winding-check") {
  const auto plain = run({"winding-check", "--level", "0", "--K", "1", "--box", "16", "--step", "1/64"});
  CHECK(plain.code == 1);  // tail of sinc^2 at T = 16 exceeds 3e-3
  const auto extra = run({"winding-check", "--level", "0", "--K", "1", "--box", "16", "--step", "1/64", "--quadrature", "extrapolated"});
  CHECK(extra.code == 0);
  CHECK(extra.json()["data"]["quadrature"] == "simpson-extrapolated");
  CHECK(run({"winding-check", "--filter", kCantor, "--box", "9", "--step", "1/9", "--level", "0", "--K", "0"}).code == 1);
}

TEST_CASE("config file") {
  const auto dir = std::filesystem::temp_directory_path() / "limitwave_cli_test";
  std::filesystem::create_directories(dir);
  const auto cfg = (dir / "cfg.json").string();
  std::ofstream(cfg) << R"({"command": "cantor-gram", "J": 1, "K": 2, "tol": {"fractal_gram": 1e-13}})";
  const auto r = run({"--config", cfg});
  REQUIRE(r.code == 0);
  CHECK(r.json()["data"]["fractal_family_size"] == 2 * 3 * 5);
  CHECK(r.json()["checks"][0]["tolerance"].get<double>() == 1e-13);
  // flags on the command line win over config keys
  const auto o = run({"cantor-gram", "--config", cfg, "--K", "1"});
  CHECK(o.json()["data"]["fractal_family_size"] == 2 * 3 * 3);
}

TEST_CASE("pipelines") {
  for (const char* preset : {"cantor", "cantor-r", "frame", "d4", "quincunx", "haar"}) {
    CAPTURE(preset);
    const auto r = run({"pipeline", "--preset", preset});
    CHECK(r.code == 0);
    if (r.code != 0) MESSAGE(r.out << r.err);
    else CHECK_FALSE(r.json()["data"].contains("first_failure"));
  }
  CHECK(run({"pipeline", "--preset", "nope"}).code == 2);
  const auto frame = run({"pipeline", "--preset", "frame"}).json();
  std::set<std::string> names;
  for (const auto& c : frame["checks"]) names.insert(c["name"]);
  CHECK(names.count("generalized_filter"));
  CHECK(names.count("purity"));
  CHECK(names.count("parseval_frame"));
}
