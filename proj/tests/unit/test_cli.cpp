#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/cli.hpp"
#include "lfs/error.hpp"

using namespace lfs;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "lfscat");
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const json& j) {
  const auto path = std::filesystem::temp_directory_path() / ("lfscat_test_" + name + ".json");
  std::ofstream(path) << j.dump(2);
  return path.string();
}

json small_sweep() {
  return json::parse(R"({
    "command": "amp2d",
    "profile": {"type": "gaussian_y", "params": {"z0": 0.3, "L": 1.0}},
    "physics": {"ell": 0.1, "kl": {"start": 0.05, "stop": 0.2, "count": 4},
                "theta": {"start": 0, "stop": "pi", "count": 5}, "theta0": "pi/6"},
    "methods": ["order1", "order2"]
  })");
}

}  // namespace

TEST_CASE("angle expressions") {
  CHECK(cli::parse_angle(json(0.25)) == 0.25);
  CHECK(cli::parse_angle(json("pi/3")) == doctest::Approx(kPi / 3));
  CHECK(cli::parse_angle(json("4pi/3")) == doctest::Approx(4 * kPi / 3));
  CHECK(cli::parse_angle(json("-0.5*pi")) == doctest::Approx(-kPi / 2));
  CHECK(cli::parse_angle(json("3pi/4")) == doctest::Approx(3 * kPi / 4));
  CHECK(cli::parse_angle(json("1.5")) == 1.5);
  CHECK_THROWS_AS(cli::parse_angle(json("tau")), ValidationError);
  CHECK_THROWS_AS(cli::parse_angle(json(true)), ValidationError);
}

TEST_CASE("every preset validates") {
  for (const auto& [name, _] : cli::presets()) {
    const Result r = invoke({"validate", "--preset", name});
    CHECK_MESSAGE(r.code == 0, name << ": " << r.err);
  }
  CHECK(cli::presets().size() == 5);
  const Result bad = invoke({"validate", "--preset", "fig99"});
  CHECK(bad.code == 2);
}

TEST_CASE("validation lists every violation") {
  json j = small_sweep();
  j["physics"]["theta0"] = "pi/2";
  j["physics"]["kl"] = {{"start", 0.3}, {"stop", 0.1}, {"count", 3}};
  j["output"] = {{"format", "xml"}};
  const Result r = invoke({"validate", "--config", write_temp("violations", j)});
  CHECK(r.code == 2);
  const json diag = json::parse(r.err);
  CHECK(diag.at("kind") == "validation");
  CHECK(diag.at("errors").size() == 3);
}

TEST_CASE("forbidden detector angles") {
  json j = small_sweep();
  j["physics"]["theta"] = json::array({"pi/3", "pi/2"});
  CHECK(invoke({"run", "--config", write_temp("explicit", j)}).code == 2);
  j["physics"]["theta"] = json::array({"pi/3", "-pi/2"});
  CHECK(invoke({"validate", "--config", write_temp("explicit2", j)}).code == 2);
  // Ranges silently drop the excluded point and record it.
  std::vector<std::string> errors;
  const cli::RunConfig c = cli::parse_config(small_sweep(), "", errors);
  CHECK(errors.empty());
  CHECK(c.theta.size() == 4);
  CHECK(c.skipped == 1);
}

TEST_CASE("empty ranges and malformed input") {
  json j = small_sweep();
  j["physics"]["kl"] = json::array();
  CHECK(invoke({"validate", "--config", write_temp("empty", j)}).code == 2);
  const auto path = std::filesystem::temp_directory_path() / "lfscat_test_broken.json";
  std::ofstream(path) << "{ not json";
  CHECK(invoke({"run", "--config", path.string()}).code == 2);
  CHECK(invoke({"run"}).code == 2);
  CHECK(invoke({"run", "--preset", "fig3", "--format", "xml"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("output is deterministic and independent of the worker count") {
  const std::string cfg = write_temp("det", small_sweep());
  const Result a = invoke({"run", "--config", cfg, "--threads", "1"});
  const Result b = invoke({"run", "--config", cfg, "--threads", "4"});
  const Result c = invoke({"run", "--config", cfg, "--threads", "3"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  std::istringstream lines(a.out);
  std::string meta, header;
  std::getline(lines, meta);
  std::getline(lines, header);
  CHECK(meta.rfind("# ", 0) == 0);
  CHECK(header == "kl,theta,re_f,im_f,abs2_f,order,method");
  std::size_t rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 4 * 4 * 2);

  const Result j = invoke({"run", "--config", cfg, "--format", "json"});
  const json doc = json::parse(j.out);
  CHECK(doc.at("rows").size() == 32);
  CHECK(doc.at("meta").at("skipped_forbidden_angles") == 1);
}

TEST_CASE("output file") {
  const auto out = std::filesystem::temp_directory_path() / "lfscat_test_out.csv";
  std::filesystem::remove(out);
  const Result r = invoke({"run", "--config", write_temp("file", small_sweep()), "--out", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(std::filesystem::file_size(out) > 100);
}

TEST_CASE("numerical failures exit with 3") {
  const json j = json::parse(R"({
    "command": "dyson1d",
    "profile": {"kind": "constant", "value": 3.0},
    "physics": {"ell": 1, "kl": 2.0},
    "dyson": {"mode": "series", "max_terms": 2}
  })");
  const Result r = invoke({"run", "--config", write_temp("dyson_fail", j)});
  CHECK(r.code == 3);
  CHECK(json::parse(r.err).at("kind") == "numerical");
}

TEST_CASE("dyson1d and kernels-check commands") {
  const json d = json::parse(R"({
    "command": "dyson1d",
    "profile": {"kind": "constant", "value": 1.25},
    "physics": {"ell": 1, "kl": [0.1, 0.5]},
    "dyson": {"mode": "stepping"}
  })");
  const cli::Table t = cli::run_document(d, "", 2);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.number(0, "det_error") < 1e-12);

  const json k = json::parse(R"({
    "command": "kernels-check",
    "profile": "gaussian_fig4",
    "physics": {"ell": 0.1, "kl": 0.1, "theta": [0.3, 2.0], "theta0": -0.4},
    "numerics": {"nodes": 61}
  })");
  const cli::Table kt = cli::run_document(k, "", 1);
  CHECK(kt.rows.size() == 2);
  CHECK(kt.meta.at("max_rel_diff").get<double>() < 1e-6);
}

TEST_CASE("exact2d skips k above alpha") {
  const json e = json::parse(R"({
    "command": "exact2d",
    "profile": "ex1_fig3",
    "physics": {"ell": 0.001, "kl": [0.3, 0.5, 0.55], "theta": "pi/3", "theta0": "4pi/3"}
  })");
  const cli::Table t = cli::run_document(e, "", 1);
  CHECK(t.rows.size() == 2);
  CHECK(t.text(0, "order") == "exact");
}

TEST_CASE("cloak preset designs and verifies the coating") {
  const cli::Table t = cli::run_document(cli::preset_document("fig4"), "", 1);
  CHECK(t.rows.size() == 161);
  const json& v = t.meta.at("verification");
  CHECK(v.at("residual_m0").get<double>() < 1e-12);
  CHECK(v.at("coated_f1").get<double>() < 1e-8 * v.at("bare_f1").get<double>());
  CHECK(t.meta.at("geometry").at("feasible").get<bool>());
}
