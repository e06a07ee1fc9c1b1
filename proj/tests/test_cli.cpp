#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = mlf::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("eval-ml csv") {
  Result r = call({"eval-ml", "--alpha", "1", "--beta", "1", "--z", "-1+0i", "--z", "0"});
  REQUIRE(r.code == 0);
  std::vector<std::string> l = lines(r.out);
  REQUIRE(l.size() == 3);
  CHECK(l[0] == "z_re,z_im,re,im,abs,est_error,method");
  double re = std::stod(l[1].substr(l[1].find(',', l[1].find(',') + 1) + 1));
  CHECK(std::abs(re - std::exp(-1.0)) < 1e-14);
  CHECK(l[2].rfind("0,0,1,0,1,") == 0);
}

TEST_CASE("eval-ml json and reciprocal gamma") {
  Result r = call({"eval-ml", "--alpha", "0.7", "--beta", "1.3", "--z", "0", "--format", "json",
                   "--no-timestamp"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "eval-ml");
  CHECK_FALSE(j.contains("timestamp"));
  CHECK(std::abs(j["records"][0]["value_re"].get<double>() - 1.0 / std::tgamma(1.3)) < 1e-15);
}

TEST_CASE("validation errors exit with code 2") {
  Result r = call({"eval-ml", "--alpha", "2.5", "--z", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("0 < alpha < 2") != std::string::npos);
  CHECK(call({"transform", "--xi-points", "0"}).code == 2);
  CHECK(call({"lp-region", "--sigma", "0.9", "--dim", "3"}).code == 2);
  CHECK(call({"no-such-command"}).code == 2);
  CHECK(call({"eval-ml", "--z", "1+"}).code == 2);
}

TEST_CASE("series outside its accuracy domain exits with code 3") {
  CHECK(call({"eval-bessel", "--lambda", "0", "--r", "41"}).code == 3);
}

TEST_CASE("eval-bessel methods agree") {
  for (std::string m : {"series", "poisson"}) {
    Result r = call({"eval-bessel", "--lambda", "1", "--r", "2", "--method", m, "--format", "json"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(std::abs(j["records"][0]["value_re"].get<double>() - 0.5767248077568734) < 1e-12);
  }
}

TEST_CASE("transform json round trip and determinism") {
  std::vector<std::string> args{"transform", "--alpha", "0.8", "--phi", "pi", "--sigma", "0.7",
                                "--dim", "1", "--xi-min", "0.1", "--xi-max", "10",
                                "--xi-points", "3", "--strategy", "rotation", "--format", "json",
                                "--no-timestamp"};
  setenv("MLF_THREADS", "1", 1);
  Result a = call(args);
  setenv("MLF_THREADS", "2", 1);
  Result b = call(args);
  unsetenv("MLF_THREADS");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  json j = json::parse(a.out);
  REQUIRE(j["records"].size() == 3);
  CHECK(j["records"][1]["xi_mag"].get<double>() == doctest::Approx(1.0));
  CHECK(std::abs(j["records"][1]["value_re"].get<double>() - 0.0594682) < 1e-6);
  CHECK(json::parse(j.dump()) == j);
  CHECK(j["params"]["phi"].get<double>() == doctest::Approx(3.141592653589793));
}

TEST_CASE("transform of the exponential profile") {
  Result r = call({"transform", "--alpha", "1", "--beta", "1", "--phi", "pi", "--sigma", "1",
                   "--dim", "1", "--xi-min", "0.5", "--xi-max", "0.5", "--xi-points", "1"});
  REQUIRE(r.code == 0);
  std::vector<std::string> l = lines(r.out);
  REQUIRE(l.size() == 2);
  CHECK(l[0] == "xi,re,im,abs,est_error");
  double re = std::stod(l[1].substr(l[1].find(',') + 1));
  CHECK(std::abs(re - 2.0 / (1 + std::acos(-1.0) * std::acos(-1.0))) < 1e-9);
}

TEST_CASE("invalid thread count is a validation error") {
  setenv("MLF_THREADS", "many", 1);
  Result r = call({"transform", "--xi-min", "1", "--xi-max", "2", "--xi-points", "2"});
  unsetenv("MLF_THREADS");
  CHECK(r.code == 2);
}

TEST_CASE("lp-region json") {
  Result r = call({"lp-region", "--sigma", "2", "--dim", "3", "--no-timestamp"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["theorem3"]["lower"] == 1.0);
  CHECK(j["theorem3"]["upper"] == 3.0);
  CHECK(j["theorem3"]["lower_open"] == true);
  CHECK(j["hausdorff_young"]["lower"] == 2.0);
  CHECK(j["hausdorff_young"]["lower_open"] == false);
  Result s = call({"lp-region", "--sigma", "1.2", "--dim", "3"});
  REQUIRE(s.code == 0);
  CHECK(json::parse(s.out)["hausdorff_young"].is_null());
  CHECK(json::parse(r.out)["leading_term_vanishes"] == true);
  Result u = call({"lp-region", "--alpha", "0.8", "--sigma", "2", "--dim", "3"});
  CHECK(json::parse(u.out)["leading_term_vanishes"] == false);
  Result t = call({"lp-region", "--sigma", "3", "--dim", "2"});
  CHECK(json::parse(t.out)["theorem3"]["upper"] == "inf");
}

TEST_CASE("verify-asymptotics exit codes") {
  Result ok = call({"verify-asymptotics", "--alpha", "0.8", "--sigma", "1.5", "--dim", "2",
                    "--law", "small"});
  CHECK(ok.code == 0);
  json j = json::parse(ok.out);
  CHECK(j["report"]["small_xi_law"] == "power");
  Result off = call({"verify-asymptotics", "--alpha", "0.8", "--sigma", "0.7", "--dim", "1",
                     "--law", "small"});
  CHECK(off.code == 4);
  CHECK(call({"verify-asymptotics", "--xi-min", "1e-6", "--law", "small"}).code == 2);
}

TEST_CASE("ibp-check and --out") {
  std::string path = "test_cli_ibp.json";
  Result r = call({"ibp-check", "--alpha", "0.8", "--sigma", "0.7", "--dim", "1", "--xi", "2",
                   "--N", "2", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  json j = json::parse(in);
  CHECK(j["relative_difference"].get<double>() < 1e-8);
  std::remove(path.c_str());
}
