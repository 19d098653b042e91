#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "distmul/cli.hpp"
#include "distmul/error.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace distmul;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> lines(const std::string& s) {
  std::vector<json> v;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) v.push_back(json::parse(line));
  return v;
}

}  // namespace

TEST_CASE("grid parsing") {
  const auto g = cli::parse_grid("-1:1:0.5");
  REQUIRE(g.size() == 5);
  CHECK(g.front() == -1.0);
  CHECK(g.back() == doctest::Approx(1.0));
  CHECK_THROWS_AS(cli::parse_grid("0:1"), Error);
  CHECK_THROWS_AS(cli::parse_grid("0:1:0"), Error);
  CHECK_THROWS_AS(cli::parse_grid("1:0:0.1"), Error);
}

TEST_CASE("moments command") {
  const auto r = invoke({"moments", "--m", "6", "--j", "2", "--j", "4"});
  CHECK(r.code == cli::kOk);
  const auto v = lines(r.out);
  REQUIRE(v.size() == 2);
  CHECK(v[0]["A_j"].get<double>() == doctest::Approx(2.29726611401354862).epsilon(1e-9));
  CHECK(v[1]["j"] == 4);
  CHECK(v[0]["m"] == 6);
}

TEST_CASE("product command and validity") {
  const auto ok = invoke({"product", "--l", "0", "--k", "0", "--alpha", "2", "--json"});
  CHECK(ok.code == cli::kOk);
  const auto v = lines(ok.out);
  REQUIRE(v.size() == 1);
  CHECK(v[0]["converged"].get<bool>());

  const auto bad = invoke({"product", "--alpha", "1"});
  CHECK(bad.code == cli::kUsage);
  CHECK(bad.err.find("outside") != std::string::npos);

  const auto expl = invoke({"product", "--alpha", "1", "--exploratory", "--steps", "6"});
  CHECK(expl.code == cli::kVerificationFailed);
}

TEST_CASE("verify-table succeeds with defaults") {
  const auto r = invoke({"verify-table", "--human"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("output formats are exclusive") {
  CHECK(invoke({"moments", "--j", "2", "--csv", "--json"}).code == cli::kUsage);
  const auto csv = invoke({"red", "--k", "1", "--eps", "0.1", "--grid", "-1:1:0.5", "--csv"});
  CHECK(csv.code == cli::kOk);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 6);
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == cli::kUsage);
  CHECK(invoke({"frobnicate"}).code == cli::kUsage);
  CHECK(invoke({"moments", "--m", "3", "--j", "2"}).code == cli::kUsage);
  CHECK(invoke({"seq", "--n", "0", "--grid", "0:1:0.5"}).code == cli::kUsage);
  CHECK(invoke({"red", "--eps", "-1", "--grid", "0:1:0.5"}).code == cli::kUsage);
  CHECK(invoke({"--help"}).code == cli::kOk);
}

TEST_CASE("scatter and diverge-demo") {
  const auto s = invoke({"scatter", "--V0", "1", "--k", "2"});
  CHECK(s.code == cli::kOk);
  const auto v = lines(s.out);
  REQUIRE(v.size() == 1);
  CHECK(v[0]["R"].get<double>() + v[0]["T"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

  const auto d = invoke({"diverge-demo", "--steps", "8"});
  CHECK(d.code == cli::kOk);
}

TEST_CASE("config file supplies defaults below explicit flags") {
  const auto path = std::filesystem::temp_directory_path() / "distmul_test_config.txt";
  {
    std::ofstream f(path);
    f << "# comment\nm = 4\nj = 2\n";
  }
  const auto args = cli::config_arguments(path.string(), {"moments", "--m", "6"});
  CHECK(args == std::vector<std::string>{"--j", "2"});

  const auto r = invoke({"--config", path.string(), "moments"});
  CHECK(r.code == cli::kOk);
  CHECK(lines(r.out).at(0)["m"] == 4);
  const auto r2 = invoke({"moments", "--m", "6", "--config", path.string()});
  CHECK(lines(r2.out).at(0)["m"] == 6);

  {
    std::ofstream f(path);
    f << "no equals sign\n";
  }
  CHECK(invoke({"--config", path.string(), "moments", "--j", "2"}).code == cli::kUsage);
  CHECK(invoke({"--config", "/nonexistent/x", "moments", "--j", "2"}).code == cli::kUsage);
  std::filesystem::remove(path);
}

TEST_CASE("reference CLI examples") {
  const auto t = invoke({"verify-table", "--m", "6", "--tol", "5e-3", "--human"});
  CHECK(t.code == cli::kOk);
  size_t passes = 0;
  for (size_t pos = t.out.find("PASS ("); pos != std::string::npos; pos = t.out.find("PASS (", pos + 1)) ++passes;
  CHECK(passes == 6);

  const auto m = invoke({"moments", "--m", "6", "--j", "3"});
  CHECK(lines(m.out).at(0)["A_j"].get<double>() == 0.0);

  const auto p = invoke({"product", "--l", "0", "--k", "0", "--alpha", "1", "--beta", "1"});
  CHECK(p.code == cli::kUsage);
  CHECK(p.err.find("outside") != std::string::npos);
}
