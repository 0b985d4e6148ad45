#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qlucas/cli.hpp"

using namespace qlucas;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args, int expected_code = 0) {
  args.insert(args.begin(), "--json");
  const auto r = run(args);
  CHECK(r.code == expected_code);
  return nlohmann::json::parse(r.out);
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = "qlucas_test_" + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("cyclotomic command") {
  const auto r = run({"cyclotomic", "12"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "q^4 - q^2 + 1\n");
  const auto j = run_json({"cyclotomic", "12"});
  CHECK(j["result"]["polynomial"] == nlohmann::json({"1", "0", "-1", "0", "1"}));
  CHECK(run({"cyclotomic", "0"}).code == kExitConfigError);
}

TEST_CASE("check-landau from a file") {
  const auto path = temp_file("apery.json", R"({"dim": 2, "e": [[2,1],[1,1]], "f": [[1,0],[1,0],[1,0],[0,1],[0,1]]})");
  const auto r = run({"check-landau", "--spec", path});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("criterion_D: true") != std::string::npos);
  const auto j = run_json({"check-landau", "--spec", path});
  CHECK(j["result"]["criterion_D"] == true);
  CHECK(j["result"]["cell_count"] == 4);

  const auto inverse = temp_file("inverse.json", R"({"dim": 1, "e": [[1],[1]], "f": [[2]]})");
  const auto bad = run_json({"check-landau", "--spec", inverse}, kExitVerificationFailed);
  CHECK(bad["result"]["integrality"] == false);
  CHECK(bad["status"] == "failed");
  CHECK_FALSE(bad["result"]["violating_cells"].empty());
  std::remove(path.c_str());
  std::remove(inverse.c_str());
}

TEST_CASE("configuration errors exit with 2") {
  CHECK(run({}).code == kExitConfigError);
  CHECK(run({"no-such-command"}).code == kExitConfigError);
  CHECK(run({"qratio", "--spec", "central"}).code == kExitConfigError);
  CHECK(run({"qratio", "--spec", "central", "--n", "x"}).code == kExitConfigError);
  CHECK(run({"check-landau", "--spec", "/nonexistent/spec.json"}).code == kExitConfigError);
  const auto malformed = temp_file("malformed.json", R"({"dim": 2, "e": [[1]], "f": [[1,0]]})");
  const auto r = run({"check-landau", "--spec", malformed});
  CHECK(r.code == kExitConfigError);
  CHECK(r.err.find("invalid spec") != std::string::npos);
  std::remove(malformed.c_str());
  const auto inverse = temp_file("inverse2.json", R"({"dim": 1, "e": [[1],[1]], "f": [[2]]})");
  CHECK(run({"verify-congruence", "--spec", inverse, "--n-box", "2"}).code == kExitConfigError);
  CHECK(run({"verify-ld", "--g", "central:1", "--p", "4"}).code == kExitConfigError);
  std::remove(inverse.c_str());
}

TEST_CASE("qratio command") {
  const auto j = run_json({"qratio", "--spec", "central", "--n", "3"});
  CHECK(j["result"]["methods_agree"] == true);
  CHECK(j["result"]["value_at_one"] == "20");
  const auto inverse = temp_file("inverse3.json", R"({"dim": 1, "e": [[1],[1]], "f": [[2]]})");
  const auto bad = run_json({"qratio", "--spec", inverse, "--n", "1", "--method", "direct"}, kExitVerificationFailed);
  CHECK(bad["result"]["error"] == "NotDivisible");
  std::remove(inverse.c_str());
}

TEST_CASE("verification commands") {
  CHECK(run({"verify-apery", "--family", "a", "--t", "1", "--b-max", "10", "--n-max", "40"}).code == kExitOk);
  CHECK(run({"verify-congruence", "--spec", "central:2", "--b-max", "6", "--n-box", "3"}).code == kExitOk);
  CHECK(run({"verify-plucas", "--spec", "apery-a", "--p-max", "5", "--n-box", "3,3"}).code == kExitOk);
  CHECK(run({"verify-inter2", "--spec", "apery-b", "--b", "3", "--n-box", "2"}).code == kExitOk);
  CHECK(run({"verify-ld", "--g", "central:2", "--p", "5", "--order", "30"}).code == kExitOk);
  const auto fail = run_json({"verify-ld", "--g", "factorial", "--p", "2", "--order", "16"}, kExitVerificationFailed);
  CHECK(fail["result"]["witness"] == nlohmann::json({2}));
  CHECK(run({"extract-cofactor", "--spec", "apery-a", "--t", "1,0", "--m", "1,1", "--b", "3", "--order", "30"}).code ==
        kExitOk);
}

TEST_CASE("series commands") {
  const auto j = run_json({"specialize", "--spec", "apery-a", "--t", "0,0", "--m", "1,1", "--order", "4"});
  const auto& series = j["result"]["series"];
  REQUIRE(series.size() == 5);
  CHECK(series[4]["coeff"].size() > 1);
  const auto b = run_json({"build-series", "--spec", "central", "--cap", "3"});
  CHECK(b["result"]["series"].size() == 4);
  CHECK(run({"specialize", "--spec", "apery-a", "--m", "0,1", "--order", "3"}).code == kExitConfigError);
}

TEST_CASE("find-relations command") {
  const auto j = run_json({"find-relations", "--series", "central:1", "--dx", "1", "--dy", "2", "--order", "30"});
  REQUIRE(j["result"]["candidates"].size() == 1);
  CHECK(j["result"]["candidates"][0]["text"] == "4*x*y1^2 - y1^2 + 1");
  const auto q = run_json({"find-relations", "--series", "qcentral:1@1/2", "--dx", "1", "--dy", "1", "--order", "20"});
  CHECK(q["result"]["candidates"].empty());
}

TEST_CASE("config files and flag precedence") {
  const auto cfg = temp_file("config.json", R"({"spec": "central", "b-max": 4, "n-box": [3]})");
  const auto a = run_json({"verify-congruence", "--config", cfg});
  CHECK(a["result"]["ranges"]["b"] == nlohmann::json({1, 4}));
  const auto b = run_json({"verify-congruence", "--config", cfg, "--b-max", "6"});
  CHECK(b["result"]["ranges"]["b"] == nlohmann::json({1, 6}));
  std::remove(cfg.c_str());
}

TEST_CASE("reports are deterministic apart from the timestamp") {
  const std::vector<std::string> args{"--json", "--no-timestamp", "check-landau", "--spec", "apery-b"};
  const auto first = run(args), second = run(args);
  CHECK(first.out == second.out);
  const auto with_ts = run_json({"verify-apery", "--b-max", "5", "--n-max", "10"});
  CHECK(with_ts.contains("timestamp"));
  auto x = run_json({"verify-apery", "--b-max", "5", "--n-max", "10", "--jobs", "2"});
  x.erase("timestamp");
  auto y = with_ts;
  y.erase("timestamp");
  CHECK(x == y);
}

TEST_CASE("long polynomials are elided in text mode only") {
  const auto text = run({"qbinom", "30", "15"});
  CHECK(text.out.find("terms elided") != std::string::npos);
  const auto j = run_json({"qbinom", "30", "15"});
  CHECK(j["result"]["polynomial"].size() == 226);
}

TEST_CASE("output file") {
  const std::string path = "qlucas_test_out.txt";
  const auto r = run({"--output", path, "cyclotomic", "6"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "q^2 - q + 1");
  std::remove(path.c_str());
}
